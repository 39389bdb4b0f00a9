#!/usr/bin/env python3
"""Run every property suite with timings and print a pass/fail table.

Usage: python3 scripts/run_acceptance.py [--seed N] [--suite NAME]
"""

import argparse
import sys
import time

from efdkit import selftest


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=selftest.DEFAULT_SEED)
    parser.add_argument("--suite", default=None, help="run a single suite")
    args = parser.parse_args()

    names = [args.suite] if args.suite else list(selftest.SUITES)
    failures = 0
    print(f"{'suite':<20} {'result':<6} {'checks':>6} {'time':>8}")
    print("-" * 44)
    for name in names:
        t0 = time.time()
        report = selftest.run_suite(name, seed=args.seed)
        elapsed = time.time() - t0
        status = "PASS" if report.passed else "FAIL"
        print(f"{name:<20} {status:<6} {len(report.checks):>6} {elapsed:>7.1f}s")
        if not report.passed:
            failures += 1
            for check in report.checks:
                if not check["ok"]:
                    print(f"    failed: {check['check']}")
            print(f"    counterexample: {report.counterexample!r}")
    print("-" * 44)
    print("all suites passed" if failures == 0 else f"{failures} suite(s) failed")
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
