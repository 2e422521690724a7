"""Batched environments presented as a synchronous batch reset/step API.

Each sub-environment owns its own server subprocess; batch calls fan out on
a thread pool (workers block on pipe I/O while the engines run in parallel
processes), and results return in index order.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Sequence

from .env import TowerMindEnv


class VectorEnv:
    def __init__(self, level: str, n: int, seeds: Sequence[int],
                 modality: str = "structured", wrappers: Iterable[str] = ()):
        if n < 1:
            raise ValueError("n must be >= 1")
        if len(seeds) != n:
            raise ValueError(f"need {n} seeds, got {len(seeds)}")
        wrappers = tuple(wrappers)
        self._pool = ThreadPoolExecutor(max_workers=n)
        makers = [
            self._pool.submit(TowerMindEnv, level, seed=seed, modality=modality,
                              wrappers=wrappers)
            for seed in seeds
        ]
        self.envs = [future.result() for future in makers]

    @property
    def n(self) -> int:
        return len(self.envs)

    def reset(self, seeds: Sequence[int] | None = None) -> list:
        if seeds is None:
            futures = [self._pool.submit(env.reset) for env in self.envs]
        else:
            if len(seeds) != self.n:
                raise ValueError(f"need {self.n} seeds, got {len(seeds)}")
            futures = [self._pool.submit(env.reset, seed)
                       for env, seed in zip(self.envs, seeds)]
        return [future.result() for future in futures]

    def step(self, actions: Sequence) -> tuple[list, list, list, list]:
        if len(actions) != self.n:
            raise ValueError(f"need {self.n} actions, got {len(actions)}")
        futures = [self._pool.submit(env.step, action)
                   for env, action in zip(self.envs, actions)]
        results = [future.result() for future in futures]
        obs, rewards, dones, infos = zip(*results)
        return list(obs), list(rewards), list(dones), list(infos)

    def close(self) -> None:
        for env in self.envs:
            env.close()
        self._pool.shutdown(wait=False)

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def vector_make(level: str, n: int, seeds: Sequence[int],
                modality: str = "structured", wrappers: Iterable[str] = ()) -> VectorEnv:
    return VectorEnv(level, n, seeds, modality=modality, wrappers=wrappers)
