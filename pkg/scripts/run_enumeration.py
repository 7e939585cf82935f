#!/usr/bin/env python3
"""Run the bounded exhaustive enumeration and report the certification summary.

Example:

    python3 scripts/run_enumeration.py --max-components 3 --entry-bound 6 \
        --square-min -8 --out-csv survivors.csv --out-json summary.json
"""
from __future__ import annotations

import argparse
import sys
import time

from fixdiv.report import SURVIVOR_CSV_HEADER, canonical_json, survivor_csv_row
from fixdiv.search import BudgetExceededError, SearchBounds, verify_classification


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-components", type=int, default=3)
    parser.add_argument("--entry-bound", type=int, default=6)
    parser.add_argument("--square-min", type=int, default=-8)
    parser.add_argument("--max-multiplicity", type=int, default=2)
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--general", action="store_true",
                        help="drop the even-lattice parity restriction (hypothetical mode)")
    parser.add_argument("--budget", type=int, default=20_000_000)
    parser.add_argument("--out-csv", default=None)
    parser.add_argument("--out-json", default=None)
    args = parser.parse_args(argv)

    bounds = SearchBounds(
        max_components=args.max_components,
        entry_bound=args.entry_bound,
        square_min=args.square_min,
        max_multiplicity=args.max_multiplicity,
        n=args.n,
        parity_mode="general" if args.general else "even",
        budget=args.budget,
    )
    start = time.perf_counter()
    try:
        report, survivors = verify_classification(bounds)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - start

    print(f"candidates examined: {report.stats.candidates}")
    print(f"survivors:           {report.survivor_count} "
          f"({report.prime_count} prime-fixed, {report.chain_count} chains)")
    print(f"counterexamples:     {len(report.counterexamples)}")
    print(f"rule set:            {report.rule_set}"
          + (" [hypothetical parity mode]" if report.hypothetical else ""))
    print(f"elapsed:             {elapsed:.1f}s")
    for rule, count in sorted(report.stats.rejected.items(), key=lambda kv: -kv[1]):
        high = report.stats.multiplicity_rejected.get(rule, 0)
        print(f"  rejected by {rule}: {count} (multiplicity >= 2: {high})")

    if args.out_csv:
        with open(args.out_csv, "w") as fh:
            fh.write(SURVIVOR_CSV_HEADER + "\n")
            for rec in survivors:
                row = survivor_csv_row(
                    rec.configuration.gram, rec.configuration.multiplicities, rec.classification
                )
                fh.write(row + "\n")
        print(f"wrote {args.out_csv}")
    if args.out_json:
        doc = {
            "bounds": {
                "max_components": bounds.max_components,
                "entry_bound": bounds.entry_bound,
                "square_min": bounds.square_min,
                "max_multiplicity": bounds.max_multiplicity,
                "n": bounds.n,
                "parity_mode": bounds.parity_mode,
            },
            "survivor_count": report.survivor_count,
            "chain_count": report.chain_count,
            "prime_count": report.prime_count,
            "counterexamples": report.counterexamples,
            "elapsed_seconds": round(elapsed, 1),
        }
        with open(args.out_json, "w") as fh:
            fh.write(canonical_json(doc))
        print(f"wrote {args.out_json}")

    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
