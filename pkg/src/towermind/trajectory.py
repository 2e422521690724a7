"""Trajectory files: line-delimited records shared by agent runs, human-play
sessions, and the replay verifier.

Header line, then one record per applied action:
  {"t": <tick at which the action applied>, "action": [x, y, c],
   "error_code": int, "reward": float, "done": bool, "obs_digest": md5hex}
A record's reward spans the ticks between its action and the next record's
action (or episode end), so replaying (seed, level, actions) reproduces the
reward stream, observation digests, and final score exactly. Agent sessions
emit records every 16 ticks; human sessions at arbitrary ticks, starting
with a synthetic noop record at t=0 so every tick is covered by some span.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable

from .obs.text import document_to_json, render_text

SCHEMA_VERSION = 1

_REPLAY_TICK_LIMIT = 2_000_000


def observation_digest(engine) -> str:
    doc = render_text(engine)
    return hashlib.md5(document_to_json(doc).encode("utf-8")).hexdigest()


@dataclass
class TrajectoryWriter:
    level_id: str
    seed: int
    cadence: int | str  # ticks per action, or "human"
    stream: IO[str]
    initial_digest: str = ""
    _header_written: bool = field(default=False, repr=False)

    def write_header(self) -> None:
        self.stream.write(json.dumps({
            "schema_version": SCHEMA_VERSION,
            "kind": "trajectory",
            "level": self.level_id,
            "seed": self.seed,
            "cadence": self.cadence,
            "initial_digest": self.initial_digest,
        }) + "\n")
        self._header_written = True

    def write_step(self, t: int, action, error_code: int, reward: float,
                   done: bool, obs_digest: str = "") -> None:
        if not self._header_written:
            self.write_header()
        self.stream.write(json.dumps({
            "t": t,
            "action": [action.x, action.y, action.c],
            "error_code": error_code,
            "reward": reward,
            "done": done,
            "obs_digest": obs_digest,
        }) + "\n")


@dataclass(frozen=True)
class Trajectory:
    level_id: str
    seed: int
    cadence: int | str
    initial_digest: str
    records: tuple[dict, ...]

    @property
    def score(self) -> float:
        return sum(r["reward"] for r in self.records)


def load_trajectory(source: str | Path | Iterable[str]) -> Trajectory:
    if isinstance(source, (str, Path)):
        lines = Path(source).read_text(encoding="utf-8").splitlines()
    else:
        lines = list(source)
    if not lines:
        raise ValueError("empty trajectory file")
    header = json.loads(lines[0])
    if header.get("kind") != "trajectory":
        raise ValueError("not a trajectory file")
    if header.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported trajectory schema {header.get('schema_version')}")
    records = tuple(json.loads(line) for line in lines[1:] if line.strip())
    return Trajectory(level_id=header["level"], seed=header["seed"],
                      cadence=header["cadence"], initial_digest=header["initial_digest"],
                      records=records)


@dataclass(frozen=True)
class ReplayResult:
    score: float
    base_health: int
    victory: bool
    final_tick: int
    digests_match: bool
    rewards_match: bool


def replay(trajectory: Trajectory, config_dir=None) -> ReplayResult:
    """Re-run a recorded trajectory tick-exactly and verify it against the
    recorded rewards, error codes, and observation digests."""
    from .catalog import load_catalog
    from .level import load_level
    from .sim.actions import Action, execute
    from .sim.engine import Engine

    level = load_level(trajectory.level_id, config_dir)
    catalog = load_catalog(config_dir)
    engine = Engine(level, catalog, seed=trajectory.seed)
    state = engine.state

    digests_ok = True
    rewards_ok = True
    if trajectory.initial_digest:
        digests_ok = observation_digest(engine) == trajectory.initial_digest

    window = trajectory.cadence if isinstance(trajectory.cadence, int) else None
    records = trajectory.records
    for idx, record in enumerate(records):
        target_tick = int(record["t"])
        while state.step_index < target_tick and not state.done:
            engine.tick()
        if state.done:
            rewards_ok = False
            break
        x, y, c = record["action"]
        result = execute(engine, Action(float(x), float(y), int(c)).clamped())
        if result.error_code != record["error_code"]:
            rewards_ok = False
        if idx + 1 < len(records):
            end_tick = int(records[idx + 1]["t"])
        elif window is not None:
            end_tick = target_tick + window
        elif record["done"]:
            end_tick = _REPLAY_TICK_LIMIT  # final span runs to episode end
        else:
            end_tick = target_tick  # session closed here; no further ticks
        reward = 0.0
        while state.step_index < end_tick and not state.done:
            reward -= engine.tick()
        if abs(reward - float(record["reward"])) > 1e-9:
            rewards_ok = False
        if bool(record["done"]) != state.done:
            rewards_ok = False
        digest = record.get("obs_digest", "")
        if digest and observation_digest(engine) != digest:
            digests_ok = False

    score = -float(level.initial_base_health - state.base_health)
    return ReplayResult(score=score, base_health=state.base_health,
                        victory=state.victory, final_tick=state.step_index,
                        digests_match=digests_ok, rewards_match=rewards_ok)
