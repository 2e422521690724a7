"""Pluggable agents and model-output parsing.

The harness is transport-agnostic: an agent consumes whatever observation
modality it was constructed for (or assembled prompt text) and returns
something action-like. External model processes attach through env-server
instead; no vendor client lives here.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any

from ..constants import ACTION_COUNT, MAP_HALF
from ..rng import Xoshiro256
from ..sim.actions import Action

# Agent PRNG streams are decorrelated from the environment stream, which is
# seeded with the plain episode seed.
_AGENT_SEED_SALT = 0x5DEECE66D


@dataclass
class AgentContext:
    observation: Any
    step_index: int
    prompt: str | None = None


class Agent:
    """Base agent: act(context) -> Action-like. Text output is allowed; the
    runner parses it and treats garbage as a parse failure."""

    wants_prompt = False

    def reset(self, seed: int, level_id: str) -> None:
        pass

    def act(self, context: AgentContext):
        raise NotImplementedError


class RandomAgent(Agent):
    """Uniform over the hybrid action space."""

    def __init__(self, seed: int = 0):
        self._base_seed = seed
        self._rng = Xoshiro256(seed ^ _AGENT_SEED_SALT)

    def reset(self, seed: int, level_id: str) -> None:
        self._rng = Xoshiro256((self._base_seed + seed) ^ _AGENT_SEED_SALT)

    def act(self, context: AgentContext) -> Action:
        rng = self._rng
        return Action(x=rng.uniform(-MAP_HALF, MAP_HALF),
                      y=rng.uniform(-MAP_HALF, MAP_HALF),
                      c=rng.randint(0, ACTION_COUNT - 1))


class NoopAgent(Agent):
    def act(self, context: AgentContext) -> Action:
        return Action(0.0, 0.0, 6)


class ScriptedAgent(Agent):
    """Plays a fixed action list, then noops."""

    def __init__(self, actions):
        self._actions = [a if isinstance(a, Action) else Action(*a) for a in actions]
        self._cursor = 0

    def reset(self, seed: int, level_id: str) -> None:
        self._cursor = 0

    def act(self, context: AgentContext) -> Action:
        if self._cursor < len(self._actions):
            action = self._actions[self._cursor]
            self._cursor += 1
            return action
        return Action(0.0, 0.0, 6)


_JSON_BLOCK = re.compile(r"\{[^{}]*\}")


def parse_action_text(text: str) -> Action | None:
    """Extract the first well-formed {X, Y, Action} record from model output.
    Returns None for unparseable output (reported as a parse failure,
    distinct from in-game error codes)."""
    if not isinstance(text, str):
        return None
    for match in _JSON_BLOCK.finditer(text):
        block = match.group(0)
        try:
            doc = json.loads(block)
        except json.JSONDecodeError:
            try:
                doc = json.loads(block.replace("'", '"'))
            except json.JSONDecodeError:
                continue
        if not isinstance(doc, dict):
            continue
        keys = {k.lower(): k for k in doc}
        if not {"x", "y", "action"} <= set(keys):
            continue
        try:
            x = float(doc[keys["x"]])
            y = float(doc[keys["y"]])
            c = int(doc[keys["action"]])
        except (TypeError, ValueError):
            continue
        if 0 <= c < ACTION_COUNT:
            return Action(x=x, y=y, c=c)
    return None


def coerce_action(raw) -> Action | None:
    """Best-effort conversion of agent output into an Action."""
    if isinstance(raw, Action):
        return raw
    if isinstance(raw, str):
        return parse_action_text(raw)
    if isinstance(raw, dict):
        return parse_action_text(json.dumps(raw))
    try:
        x, y, c = raw
        return Action(float(x), float(y), int(c))
    except (TypeError, ValueError):
        return None
