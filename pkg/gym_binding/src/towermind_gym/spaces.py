"""Space descriptors mirroring the gym conventions without a gym dependency."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Box:
    low: float
    high: float
    shape: tuple[int, ...]
    dtype: type

    def contains(self, value) -> bool:
        arr = np.asarray(value)
        return arr.shape == self.shape and bool(
            (arr >= self.low).all() and (arr <= self.high).all())


@dataclass(frozen=True)
class Discrete:
    n: int

    def contains(self, value) -> bool:
        return isinstance(value, (int, np.integer)) and 0 <= int(value) < self.n


@dataclass(frozen=True)
class Text:
    """Passthrough descriptor for the JSON game-state document."""

    def contains(self, value) -> bool:
        return isinstance(value, dict)


@dataclass(frozen=True)
class Hybrid:
    """Two bounded continuous coordinates plus a discrete action type."""

    low: float
    high: float
    n_types: int

    def contains(self, value) -> bool:
        try:
            x, y, c = value
        except (TypeError, ValueError):
            return False
        return (self.low <= float(x) <= self.high
                and self.low <= float(y) <= self.high
                and 0 <= int(c) < self.n_types)


STRUCTURED_OBS = Box(low=-np.inf, high=np.inf, shape=(759,), dtype=np.float32)
PIXEL_OBS = Box(low=0, high=255, shape=(512, 512, 3), dtype=np.uint8)
PIXEL_OBS_DOWNSAMPLED = Box(low=0, high=255, shape=(128, 128, 3), dtype=np.uint8)
TEXT_OBS = Text()
HYBRID_ACTIONS = Hybrid(low=-3.0, high=3.0, n_types=12)
DISCRETE_ACTIONS = Discrete(n=1200)
