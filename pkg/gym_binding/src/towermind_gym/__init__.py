"""Gym-style binding for the towermind environment.

Environment ids: "towermind/Lv1" .. "towermind/Lv5" (or bare "Lv1" etc.,
or a path to a level file). Transport is the towermind stdio protocol; the
engine runs in a server subprocess.
"""

from .env import ENV_ID_PREFIX, TowerMindEnv, make
from .spaces import Box, Discrete, Hybrid, Text
from .vector import VectorEnv, vector_make

ENV_IDS = tuple(f"{ENV_ID_PREFIX}Lv{i}" for i in range(1, 6))

__all__ = [
    "Box", "Discrete", "ENV_IDS", "Hybrid", "Text",
    "TowerMindEnv", "VectorEnv", "make", "vector_make",
]
