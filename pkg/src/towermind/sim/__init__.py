from .engine import Engine, resolve_attack
from .state import ActionRecord, GameState

__all__ = ["Engine", "GameState", "ActionRecord", "resolve_attack"]
