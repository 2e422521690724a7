"""Evaluation metrics: episode score, valid action rate, and human-relative
normalization against the bundled expert baselines."""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class EpisodeRecord:
    level_id: str
    seed: int
    rewards: tuple[float, ...]
    valid_action_count: int
    total_action_count: int
    parse_failure_count: int = 0
    victory: bool = False
    final_base_health: int = 0
    error_codes: tuple[int, ...] = ()

    @property
    def score(self) -> float:
        return sum(self.rewards)


def score(record: EpisodeRecord) -> float:
    """Episode score: the summed raw reward signal (pre-wrapper)."""
    return record.score


def valid_action_rate(record: EpisodeRecord) -> float:
    if record.total_action_count == 0:
        raise ValueError("valid action rate undefined for zero actions")
    return record.valid_action_count / record.total_action_count


def normalize(raw: float, human: float, minimum: float) -> float:
    """Human-relative value: (raw - min) / (human - min). May exceed 1 when
    the agent beats the human baseline."""
    if human == minimum:
        raise ValueError("normalization undefined when human baseline equals minimum")
    return (raw - minimum) / (human - minimum)


@dataclass(frozen=True)
class BaselineTable:
    """Per-level human expert means plus the metric minima."""

    human_score: dict[str, float]
    human_rate: dict[str, float]
    min_score: float = -20.0
    min_rate: float = 0.0

    def normalize_score(self, level_id: str, raw: float) -> float:
        return normalize(raw, self.human_score[level_id], self.min_score)

    def normalize_rate(self, level_id: str, raw: float) -> float:
        return normalize(raw, self.human_rate[level_id], self.min_rate)


# Average performance of the five human experts on the benchmark levels.
HUMAN_BASELINES = BaselineTable(
    human_score={"Lv1": 0.00, "Lv2": -0.20, "Lv3": -0.40, "Lv4": -1.80, "Lv5": -3.40},
    human_rate={"Lv1": 0.99, "Lv2": 0.98, "Lv3": 0.97, "Lv4": 0.94, "Lv5": 0.93},
)


def mean_and_se(values: list[float]) -> tuple[float, float]:
    n = len(values)
    if n == 0:
        raise ValueError("no values")
    mean = sum(values) / n
    if n == 1:
        return mean, 0.0
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(var / n)
