"""Recompute every golden table and list the rows that disagree.

    python3 scripts/reproduce_tables.py [--n-max 200] [--jobs 1]
"""
import argparse

from tqf.verify import check_golden_tables


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=200, help="range of n for the form identities")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    runs = [("table2", args.n_max), ("table3", min(args.n_max, 100)), ("appendixA", 0),
            ("appendixB", 10 ** 9)]
    for selector, n_max in runs:
        report = check_golden_tables(selector, n_max, jobs=args.jobs)
        print(report.to_text(), f"({report.runtime:.2f}s)")


if __name__ == "__main__":
    main()
