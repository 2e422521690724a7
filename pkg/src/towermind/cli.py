"""Command line interface.

Subcommands: run (agent vs level over seeds), serve (protocol service),
difficulty, validate-level, replay, render-frame, record-human, baseline,
report.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .catalog import CONFIG_DIR_ENV_VAR, default_config_dir, load_catalog
from .level import (
    BENCHMARK_LEVEL_IDS,
    LevelValidationError,
    difficulty,
    load_level,
)


def _add_config_dir(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config-dir", default=None,
                        help=f"config directory (default: bundled, or ${CONFIG_DIR_ENV_VAR})")


def _config_dir(args) -> Path | None:
    if args.config_dir:
        return Path(args.config_dir)
    env = os.environ.get(CONFIG_DIR_ENV_VAR)
    return Path(env) if env else None


def _cmd_run(args) -> int:
    from .eval import NoopAgent, RandomAgent
    from .eval.runner import format_report_table, run_agent, save_reports

    agents = {"random": lambda: RandomAgent(args.agent_seed),
              "noop": lambda: NoopAgent()}
    if args.agent not in agents:
        print(f"unknown agent {args.agent!r}; choose from {sorted(agents)}",
              file=sys.stderr)
        return 2
    seeds = list(range(args.seed, args.seed + args.episodes))
    record_dir = None
    if args.record:
        record_dir = Path(args.record)
        record_dir.mkdir(parents=True, exist_ok=True)
    levels = args.level.split(",") if args.level else list(BENCHMARK_LEVEL_IDS)
    reports = []
    for level_id in levels:
        reports.append(run_agent(agents[args.agent](), level_id, seeds,
                                 modality=args.modality,
                                 config_dir=_config_dir(args),
                                 record_dir=record_dir))
    print(format_report_table(reports))
    if args.out:
        save_reports(reports, args.out)
        print(f"report written to {args.out}")
    return 0


def _cmd_serve(args) -> int:
    from . import server

    config_dir = _config_dir(args)
    if args.stdio:
        return server.serve_stdio(config_dir)
    if args.http is not None:

        def ready(port):
            print(f"towermind http bridge on 127.0.0.1:{port}", flush=True)

        return server.serve_http(args.http, config_dir=config_dir, ready_callback=ready)

    def ready(port):
        print(f"towermind protocol server on 127.0.0.1:{port}", flush=True)

    return server.serve_tcp(args.port, config_dir=config_dir, ready_callback=ready)


def _cmd_difficulty(args) -> int:
    catalog = load_catalog(_config_dir(args))
    level = load_level(args.level, _config_dir(args))
    comps = difficulty(level, catalog)
    print(f"{level.level_id}: D = {comps.total:.2f}")
    print(f"  road      d_r  = {comps.d_r:.4f}")
    print(f"  tower     d_t  = {comps.d_t:.4f}")
    print(f"  enemy     d_e  = {comps.d_e:.4f}")
    print(f"  resource  d_re = {comps.d_re:.4f}")
    return 0


def _cmd_validate_level(args) -> int:
    try:
        level = load_level(args.path, _config_dir(args))
    except LevelValidationError as exc:
        print(f"INVALID: {exc}", file=sys.stderr)
        return 1
    print(f"OK: {level.level_id} ({len(level.roads)} roads, "
          f"{len(level.tower_points)} tower points, {level.total_waves} waves, "
          f"{level.total_enemies} enemies)")
    return 0


def _cmd_replay(args) -> int:
    from .trajectory import load_trajectory, replay

    trajectory = load_trajectory(args.path)
    result = replay(trajectory, config_dir=_config_dir(args))
    print(f"level {trajectory.level_id} seed {trajectory.seed} "
          f"cadence {trajectory.cadence}")
    print(f"score {result.score:.1f}  base_health {result.base_health}  "
          f"victory {result.victory}  final_tick {result.final_tick}")
    print(f"rewards_match {result.rewards_match}  digests_match {result.digests_match}")
    return 0 if (result.rewards_match and result.digests_match) else 1


def _cmd_render_frame(args) -> int:
    from PIL import Image

    from .env import Env
    from .obs import render_pixels
    from .obs.pixels import downsample
    from .sim.actions import Action

    env = Env(args.level, config_dir=_config_dir(args))
    env.reset(args.seed)
    for _ in range(args.steps):
        if env.state.done:
            break
        env.step(Action(0.0, 0.0, 6))
    frame = render_pixels(env.engine)
    if args.downsample:
        frame = downsample(frame)
    Image.fromarray(frame, mode="RGB").save(args.out)
    print(f"wrote {args.out} ({frame.shape[1]}x{frame.shape[0]})")
    return 0


def _cmd_record_human(args) -> int:
    config_dir = _config_dir(args) or default_config_dir()
    path = Path(config_dir) / "env_config.json"
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        doc = {"schema_version": 1, "debug_mode": False, "human_recording": False}
    doc["human_recording"] = args.state == "on"
    path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    print(f"human trajectory recording: {args.state} ({path})")
    return 0


def _cmd_baseline(args) -> int:
    from .eval.metrics import HUMAN_BASELINES

    print(f"{'Level':<6} {'Human score':>12} {'Human rate':>11} "
          f"{'Min score':>10} {'Min rate':>9}")
    for level_id in BENCHMARK_LEVEL_IDS:
        print(f"{level_id:<6} {HUMAN_BASELINES.human_score[level_id]:>12.2f} "
              f"{HUMAN_BASELINES.human_rate[level_id]:>11.2f} "
              f"{HUMAN_BASELINES.min_score:>10.1f} {HUMAN_BASELINES.min_rate:>9.1f}")
    return 0


def _cmd_report(args) -> int:
    doc = json.loads(Path(args.path).read_text(encoding="utf-8"))
    if doc.get("kind") != "eval_report":
        print("not an eval report file", file=sys.stderr)
        return 1
    print(f"{'Level':<6} {'Score':>14} {'Rate':>14} {'NormScore':>10} {'NormRate':>9}")
    for entry in doc["levels"]:
        print(f"{entry['level']:<6} "
              f"{entry['score_mean']:>7.2f} ±{entry['score_se']:>4.2f} "
              f"{entry['valid_action_rate_mean']:>7.3f} ±{entry['valid_action_rate_se']:>4.3f} "
              f"{entry['normalized_score']:>10.2f} "
              f"{entry['normalized_valid_action_rate']:>9.2f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="towermind",
                                     description="headless tower-defense environment")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="evaluate a built-in agent")
    p.add_argument("--level", default=None,
                   help="level id or comma list (default: all benchmark levels)")
    p.add_argument("--agent", default="random", help="random | noop")
    p.add_argument("--agent-seed", type=int, default=0)
    p.add_argument("--seed", type=int, default=0, help="first episode seed")
    p.add_argument("--episodes", type=int, default=5, help="episodes per level")
    p.add_argument("--modality", default="text",
                   choices=["text", "structured", "pixels"])
    p.add_argument("--record", default=None, help="directory for trajectory files")
    p.add_argument("--out", default=None, help="write JSON report here")
    _add_config_dir(p)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("serve", help="run the protocol service")
    p.add_argument("--port", type=int, default=7464)
    p.add_argument("--stdio", action="store_true", help="serve over stdin/stdout")
    p.add_argument("--http", type=int, default=None, metavar="PORT",
                   help="serve the HTTP bridge instead (for the browser client)")
    _add_config_dir(p)
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("difficulty", help="print a level's difficulty components")
    p.add_argument("level")
    _add_config_dir(p)
    p.set_defaults(func=_cmd_difficulty)

    p = sub.add_parser("validate-level", help="validate a level file")
    p.add_argument("path")
    _add_config_dir(p)
    p.set_defaults(func=_cmd_validate_level)

    p = sub.add_parser("replay", help="re-run and verify a recorded trajectory")
    p.add_argument("path")
    _add_config_dir(p)
    p.set_defaults(func=_cmd_replay)

    p = sub.add_parser("render-frame", help="dump a PNG frame")
    p.add_argument("--level", default="Lv1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=0, help="noop action steps to advance")
    p.add_argument("--out", default="frame.png")
    p.add_argument("--downsample", action="store_true", help="emit 128x128")
    _add_config_dir(p)
    p.set_defaults(func=_cmd_render_frame)

    p = sub.add_parser("record-human", help="toggle human trajectory recording")
    p.add_argument("state", choices=["on", "off"])
    _add_config_dir(p)
    p.set_defaults(func=_cmd_record_human)

    p = sub.add_parser("baseline", help="show the human baseline table")
    p.add_argument("action", nargs="?", default="show", choices=["show"])
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("report", help="pretty-print a JSON eval report")
    p.add_argument("path")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
