"""Gym-style environment over the towermind protocol.

The binding adds no game semantics: observations and rewards are the
server's replies after numeric decoding. Supported client-side wrappers
mirror the published preprocessing: "discretize" (10x10x12 flat actions),
"downsample" (128x128 pixels), "step_penalty" (-5e-4 per step).
"""
from __future__ import annotations

from typing import Any, Iterable

import numpy as np

from . import spaces
from .protocol import ProtocolClient, ProtocolClientError, decode_pixels

ENV_ID_PREFIX = "towermind/"
STEP_PENALTY = 5e-4
WRAPPER_NAMES = ("discretize", "downsample", "step_penalty")


def _level_ref(level: str) -> str:
    return level[len(ENV_ID_PREFIX):] if level.startswith(ENV_ID_PREFIX) else level


def _decode_flat_action(flat: int) -> tuple[float, float, int]:
    if not 0 <= int(flat) < 1200:
        raise ValueError(f"flat action index out of range: {flat}")
    cell, c = divmod(int(flat), 12)
    i, j = divmod(cell, 10)
    return (6 * i + 3 - 30) / 10, (6 * j + 3 - 30) / 10, c


def _downsample(frame: np.ndarray, factor: int = 4) -> np.ndarray:
    h, w, ch = frame.shape
    pooled = frame.reshape(h // factor, factor, w // factor, factor, ch).mean(axis=(1, 3))
    return np.round(pooled).astype(np.uint8)


class TowerMindEnv:
    """reset/step/close handle bound to one server session."""

    def __init__(self, level: str, seed: int = 0, modality: str = "structured",
                 wrappers: Iterable[str] = (), client: ProtocolClient | None = None):
        wrappers = tuple(wrappers)
        for name in wrappers:
            if name not in WRAPPER_NAMES:
                raise ValueError(f"unknown wrapper {name!r}")
        self.level = _level_ref(level)
        self.modality = modality
        self.wrappers = wrappers
        self._seed = int(seed)
        self._owns_client = client is None
        self._client = client or ProtocolClient()
        reply = self._client.request("create", payload={
            "level": self.level, "seed": self._seed, "modality": modality,
            "structured_encoding": "f32_base64"})
        self._session = reply["session"]
        self._last_obs = self._decode_obs(reply["payload"]["observation"])
        self._done = False
        self._closed = False

        if modality == "structured":
            self.observation_space = spaces.STRUCTURED_OBS
        elif modality == "pixels":
            self.observation_space = (spaces.PIXEL_OBS_DOWNSAMPLED
                                      if "downsample" in wrappers else spaces.PIXEL_OBS)
        else:
            self.observation_space = spaces.TEXT_OBS
        self.action_space = (spaces.DISCRETE_ACTIONS if "discretize" in wrappers
                             else spaces.HYBRID_ACTIONS)

    # -- gym surface -------------------------------------------------------

    def reset(self, seed: int | None = None):
        self._ensure_open()
        payload = {} if seed is None else {"seed": int(seed)}
        reply = self._client.request("reset", session=self._session, payload=payload)
        self._done = False
        self._last_obs = self._decode_obs(reply["payload"]["observation"])
        return self._last_obs

    def step(self, action) -> tuple[Any, float, bool, dict]:
        self._ensure_open()
        if self._done:
            raise RuntimeError("episode finished; call reset()")
        if "discretize" in self.wrappers:
            x, y, c = _decode_flat_action(action)
        else:
            x, y, c = action
        reply = self._client.request("step", session=self._session, payload={
            "action": {"x": float(x), "y": float(y), "action": int(c)}})
        payload = reply["payload"]
        obs = self._decode_obs(payload["observation"])
        reward = float(payload["reward"])
        if "step_penalty" in self.wrappers:
            reward -= STEP_PENALTY
        self._done = bool(payload["done"])
        self._last_obs = obs
        return obs, reward, self._done, payload["info"]

    def render(self):
        self._ensure_open()
        reply = self._client.request("render", session=self._session, payload={})
        return decode_pixels(reply["payload"])

    def close(self) -> None:
        if self._closed:
            return
        self._closed = True
        try:
            self._client.request("close", session=self._session)
        except ProtocolClientError:
            pass
        if self._owns_client:
            self._client.close()

    # -- helpers ----------------------------------------------------------

    def _ensure_open(self) -> None:
        if self._closed:
            raise RuntimeError("environment closed")

    def _decode_obs(self, raw):
        if self.modality == "structured":
            if isinstance(raw, dict) and raw.get("format") == "f32_base64":
                import base64

                return np.frombuffer(base64.b64decode(raw["data"]),
                                     dtype="<f4").copy()
            return np.asarray(raw, dtype=np.float32)
        if self.modality == "pixels":
            frame = decode_pixels(raw)
            if "downsample" in self.wrappers:
                frame = _downsample(frame)
            return frame
        return raw

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def make(level: str, seed: int = 0, modality: str = "structured",
         wrappers: Iterable[str] = ()) -> TowerMindEnv:
    """Create an environment handle; spawns a server subprocess."""
    return TowerMindEnv(level, seed=seed, modality=modality, wrappers=wrappers)
