#!/usr/bin/env python3
"""Run the full pipeline on the builtin degree-(4,4) scenario and print the
report.  Equivalent to ``kirwan report --scenario enriques44 --mod-t 11``
plus all consistency checks, but convenient to edit for experiments.

Usage:
    python3 scripts/run_enriques.py [--format table|json|csv] [--mod-t K]
"""

import argparse
import sys

from kirwan.report import CHECKS, emit_report, run_pipeline
from kirwan.scenario import enriques_scenario


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--format", choices=("table", "json", "csv"),
                        default="table")
    parser.add_argument("--mod-t", type=int, default=11, metavar="K")
    args = parser.parse_args()

    result = run_pipeline(enriques_scenario())
    print(emit_report(result, args.format, mod_t=args.mod_t), end="")

    failed = False
    if args.format == "table":
        print()
        for name, fn in CHECKS.items():
            ok, description = fn(result)
            print(f"check {name}: {'ok' if ok else 'FAILED'} ({description})")
            failed = failed or not ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
