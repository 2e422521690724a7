"""Dump a PNG frame of each benchmark level a few seconds into an episode."""
from __future__ import annotations

import argparse
from pathlib import Path

from PIL import Image

import towermind as tm
from towermind.obs import render_pixels
from towermind.sim.actions import Action


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="frames")
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--steps", type=int, default=40, help="noop action steps")
    args = parser.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for level_id in tm.BENCHMARK_LEVEL_IDS:
        env = tm.Env(level_id)
        env.reset(args.seed)
        for _ in range(args.steps):
            if env.state.done:
                break
            env.step(Action(0.0, 0.0, 6))
        frame = render_pixels(env.engine)
        path = out / f"{level_id.lower()}.png"
        Image.fromarray(frame, mode="RGB").save(path)
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
