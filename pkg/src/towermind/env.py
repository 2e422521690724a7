"""Episode interface: reset/step/seed, reward, termination, and the RL
preprocessing wrappers (action discretization, frame downsampling, step
penalty, observation history)."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .catalog import EntityCatalog, Tuning, load_catalog
from .constants import (
    ACTION_COUNT,
    DISCRETE_ACTION_SPACE,
    GRID_CELLS,
    GRID_PITCH,
    MAP_HALF,
    TICKS_PER_ACTION,
)
from .level import LevelConfig, load_level
from .obs import flatten, render_text, render_pixels
from .obs.pixels import downsample
from .sim.actions import Action, execute, validate
from .sim.engine import Engine

MODALITIES = ("text", "structured", "pixels")


@dataclass(frozen=True)
class StepResult:
    observation: Any
    reward: float
    done: bool
    info: dict


@dataclass(frozen=True)
class DiscretizedAction:
    i: int
    j: int
    c: int

    @property
    def flat(self) -> int:
        return (self.i * GRID_CELLS + self.j) * ACTION_COUNT + self.c


def discretize(flat_index: int) -> Action:
    """Decode a flat discrete-action index into the grid cell center."""
    if not 0 <= flat_index < DISCRETE_ACTION_SPACE:
        raise ValueError(f"flat action index out of range: {flat_index}")
    cell, c = divmod(flat_index, ACTION_COUNT)
    i, j = divmod(cell, GRID_CELLS)
    # integer arithmetic keeps the centers exact (-2.7, -2.1, ..., 2.7)
    x = (6 * i + 3 - 30) / 10
    y = (6 * j + 3 - 30) / 10
    return Action(x=x, y=y, c=c)


def continuous_to_grid(action: Action) -> DiscretizedAction:
    """Snap a continuous action onto the 10x10 grid."""
    i = min(GRID_CELLS - 1, max(0, int((action.x + MAP_HALF) / GRID_PITCH)))
    j = min(GRID_CELLS - 1, max(0, int((action.y + MAP_HALF) / GRID_PITCH)))
    return DiscretizedAction(i=i, j=j, c=action.c)


class Env:
    """One live episode per instance. step() applies the action at the start
    of a 16-tick window (0.32 s), then reports -1 reward per enemy that
    reached the base during the window."""

    def __init__(self, level: LevelConfig | str | Path, modality: str = "text",
                 catalog: EntityCatalog | None = None,
                 config_dir: str | Path | None = None,
                 tuning: Tuning | None = None,
                 ticks_per_action: int = TICKS_PER_ACTION):
        if isinstance(level, LevelConfig):
            self.level = level
        else:
            self.level = load_level(level, config_dir)
        self.catalog = catalog or load_catalog(config_dir)
        if isinstance(modality, str):
            if modality not in MODALITIES:
                raise ValueError(f"unknown modality {modality!r}")
        else:
            for m in modality:
                if m not in MODALITIES:
                    raise ValueError(f"unknown modality {m!r}")
            modality = tuple(modality)
        self.modality = modality
        self.ticks_per_action = ticks_per_action
        self.engine = Engine(self.level, self.catalog, seed=0, tuning=tuning)
        self._live = False

    @property
    def state(self):
        return self.engine.state

    def observe(self, modality: str | tuple[str, ...] | None = None) -> Any:
        modality = modality or self.modality
        if isinstance(modality, tuple):
            return {m: self.observe(m) for m in modality}
        if modality == "text":
            return render_text(self.engine)
        if modality == "structured":
            return flatten(self.engine)
        if modality == "pixels":
            return render_pixels(self.engine)
        raise ValueError(f"unknown modality {modality!r}")

    def reset(self, seed: int) -> Any:
        self.engine.reset(int(seed))
        self._live = True
        return self.observe()

    def validate_action(self, action: Action) -> int:
        return validate(self.engine, action.clamped())

    def step(self, action: Action | tuple) -> StepResult:
        if not self._live:
            raise RuntimeError("environment not reset")
        state = self.engine.state
        if state.done:
            raise RuntimeError("episode finished; call reset() before step()")
        if not isinstance(action, Action):
            action = Action(float(action[0]), float(action[1]), int(action[2]))
        record = execute(self.engine, action.clamped())
        breaches = 0
        for _ in range(self.ticks_per_action):
            breaches += self.engine.tick()
            if state.done:
                break
        reward = -float(breaches)
        info = {
            "action_record": record,
            "error_code": record.error_code,
            "is_success": record.is_success,
            "victory": state.victory,
            "step_index": state.step_index,
            "gold_collection_count": state.gold_collection_count,
            "friendly_fire_compensation_count": state.ff_compensation_count,
            "breaches": state.breaches,
        }
        return StepResult(observation=self.observe(), reward=reward,
                          done=state.done, info=info)


class StepPenaltyWrapper:
    """Adds a constant negative step penalty to every reward."""

    def __init__(self, env, penalty: float = 5e-4):
        self.env = env
        self.penalty = penalty

    def reset(self, seed: int):
        return self.env.reset(seed)

    def step(self, action) -> StepResult:
        result = self.env.step(action)
        return StepResult(observation=result.observation,
                          reward=result.reward - self.penalty,
                          done=result.done, info=result.info)

    def __getattr__(self, name):
        return getattr(self.env, name)


class DownsampleWrapper:
    """Mean-pools pixel observations 512x512 -> 128x128."""

    def __init__(self, env, factor: int = 4):
        self.env = env
        self.factor = factor

    def _shrink(self, obs):
        if isinstance(obs, dict):
            return {k: (downsample(v, self.factor) if k == "pixels" else v)
                    for k, v in obs.items()}
        return downsample(obs, self.factor)

    def reset(self, seed: int):
        return self._shrink(self.env.reset(seed))

    def step(self, action) -> StepResult:
        result = self.env.step(action)
        return StepResult(observation=self._shrink(result.observation),
                          reward=result.reward, done=result.done, info=result.info)

    def __getattr__(self, name):
        return getattr(self.env, name)


NOOP_ACTION = Action(0.0, 0.0, 6)


class HistoryWrapper:
    """Observation becomes the last k (observation, action) pairs, newest
    last. At reset the buffer is padded with k copies of the initial
    observation paired with noop actions."""

    def __init__(self, env, k: int = 3):
        self.env = env
        self.k = k
        self._buffer: deque = deque(maxlen=k)

    def reset(self, seed: int):
        obs = self.env.reset(seed)
        self._buffer.clear()
        for _ in range(self.k):
            self._buffer.append((obs, NOOP_ACTION))
        return tuple(self._buffer)

    def step(self, action) -> StepResult:
        if not isinstance(action, Action):
            action = Action(float(action[0]), float(action[1]), int(action[2]))
        result = self.env.step(action)
        last_obs, _ = self._buffer[-1]
        self._buffer[-1] = (last_obs, action)
        self._buffer.append((result.observation, NOOP_ACTION))
        return StepResult(observation=tuple(self._buffer), reward=result.reward,
                          done=result.done, info=result.info)

    def __getattr__(self, name):
        return getattr(self.env, name)


class DiscretizeActionWrapper:
    """Accepts flat indices from the 10x10x12 grid action space."""

    action_space_size = DISCRETE_ACTION_SPACE

    def __init__(self, env):
        self.env = env

    def reset(self, seed: int):
        return self.env.reset(seed)

    def step(self, flat_index: int) -> StepResult:
        return self.env.step(discretize(int(flat_index)))

    def __getattr__(self, name):
        return getattr(self.env, name)
