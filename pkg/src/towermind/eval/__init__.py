from .agents import Agent, NoopAgent, RandomAgent, ScriptedAgent, parse_action_text
from .metrics import (
    BaselineTable,
    EpisodeRecord,
    HUMAN_BASELINES,
    normalize,
    score,
    valid_action_rate,
)
from .prompt import build_prompt
from .runner import LevelReport, run_agent

__all__ = [
    "Agent", "NoopAgent", "RandomAgent", "ScriptedAgent", "parse_action_text",
    "BaselineTable", "EpisodeRecord", "HUMAN_BASELINES",
    "normalize", "score", "valid_action_rate",
    "build_prompt", "LevelReport", "run_agent",
]
