"""Reproduce the random-agent baseline row: normalized score and valid-action
rate over many seeds per benchmark level."""
from __future__ import annotations

import argparse

import towermind as tm
from towermind.eval import RandomAgent, run_agent
from towermind.eval.runner import format_report_table, save_reports


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=20, help="episodes per level")
    parser.add_argument("--out", default=None, help="optional JSON report path")
    args = parser.parse_args()

    reports = []
    for level_id in tm.BENCHMARK_LEVEL_IDS:
        report = run_agent(RandomAgent(0), level_id, seeds=range(args.seeds),
                           modality="structured")
        reports.append(report)
    print(format_report_table(reports))
    if args.out:
        save_reports(reports, args.out)
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
