#!/usr/bin/env python3
"""Run every theorem experiment and print one status line per id.

Exit code: 0 when everything passed, 1 on any counterexample, 2 when some
run was inconclusive (budget). rystsov sweeps to degree 12, the rest to
degree 10, matching the release gate.
"""
import argparse
import sys

from synchrolab.experiments import Budget, THEOREMS, verify_theorem
from synchrolab.reports import report_emit


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-degree", type=int, default=10)
    parser.add_argument("--rystsov-degree", type=int, default=12)
    parser.add_argument("--budget-seconds", type=float, default=1800.0)
    parser.add_argument("--full", action="store_true", help="print full reports")
    args = parser.parse_args()

    worst = 0
    for theorem_id in sorted(THEOREMS):
        degree = args.rystsov_degree if theorem_id == "rystsov" else args.max_degree
        report = verify_theorem(
            theorem_id, max_degree=degree, budget=Budget(seconds=args.budget_seconds)
        )
        print(
            f"{theorem_id:<22} {report.status:<12} degree<={degree:<3}"
            f" instances={report.instances_tested:<10}"
            f" witnesses={len(report.witnesses):<3}"
            f" counterexamples={len(report.counterexamples)}"
            f" ({report.wall_time:.1f}s)"
        )
        if args.full:
            print(report_emit(report, "table", include_timings=True))
        worst = max(worst, {"pass": 0, "fail": 1, "inconclusive": 2}[report.status])
    return worst


if __name__ == "__main__":
    sys.exit(main())
