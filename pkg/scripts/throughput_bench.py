"""Measure headless tick throughput per benchmark level.

Runs one undefended episode per level with no observation rendering, then a
defended Lv1 episode (towers built) for a busier worst case.
"""
from __future__ import annotations

import time

import towermind as tm
from towermind.sim.actions import Action, execute


def episode_rate(level_id: str, seed: int = 1, build: bool = False) -> tuple[int, float]:
    env = tm.Env(level_id)
    env.reset(seed)
    engine = env.engine
    if build:
        for tp in engine.level.tower_points[:3]:
            execute(engine, Action(tp.x, tp.y, 0))
    state = engine.state
    start = time.perf_counter()
    ticks = 0
    while not state.done:
        engine.tick()
        ticks += 1
    return ticks, ticks / (time.perf_counter() - start)


def main() -> None:
    total_ticks = 0
    total_time = 0.0
    for level_id in tm.BENCHMARK_LEVEL_IDS:
        ticks, rate = episode_rate(level_id)
        total_ticks += ticks
        total_time += ticks / rate
        print(f"{level_id}: {ticks:6d} ticks  {rate:10,.0f} ticks/s")
    ticks, rate = episode_rate("Lv1", build=True)
    print(f"Lv1 (3 towers built): {ticks:6d} ticks  {rate:10,.0f} ticks/s")
    print(f"aggregate: {total_ticks / total_time:,.0f} ticks/s "
          f"(floor 10,000; target 50,000)")


if __name__ == "__main__":
    main()
