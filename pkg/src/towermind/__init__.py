"""towermind: a headless, deterministic tower-defense environment for agent
research, with textual, structured, and pixel observations."""

from .catalog import EntityCatalog, Tuning, load_catalog
from .env import (
    DiscretizeActionWrapper,
    DownsampleWrapper,
    Env,
    HistoryWrapper,
    StepPenaltyWrapper,
    StepResult,
    continuous_to_grid,
    discretize,
)
from .level import (
    BENCHMARK_LEVEL_IDS,
    DifficultyComponents,
    LevelConfig,
    difficulty,
    import_editor_export,
    export_editor_document,
    load_benchmark_levels,
    load_level,
)
from .sim import ActionRecord, Engine, GameState, resolve_attack
from .sim.actions import Action

__version__ = "0.1.0"

__all__ = [
    "Action",
    "ActionRecord",
    "BENCHMARK_LEVEL_IDS",
    "DifficultyComponents",
    "DiscretizeActionWrapper",
    "DownsampleWrapper",
    "Engine",
    "EntityCatalog",
    "Env",
    "GameState",
    "HistoryWrapper",
    "LevelConfig",
    "StepPenaltyWrapper",
    "StepResult",
    "Tuning",
    "continuous_to_grid",
    "difficulty",
    "discretize",
    "export_editor_document",
    "import_editor_export",
    "load_benchmark_levels",
    "load_catalog",
    "load_level",
    "resolve_attack",
    "__version__",
]
