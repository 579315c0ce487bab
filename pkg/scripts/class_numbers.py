"""Compare |C(4N)| from the closed formula with an explicit enumeration.

    python3 scripts/class_numbers.py --max-n 60
"""
import argparse
import time

from tqf.arith import is_squarefree
from tqf.genera import enumerate_classes
from tqf.hurwitz import class_number_4N


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=60)
    args = ap.parse_args()
    print(f"{'4N':>5} {'formula':>8} {'enumerated':>10} {'genera':>6} {'secs':>6}")
    bad = 0
    for N in range(1, args.max_n + 1, 2):
        if not is_squarefree(N):
            continue
        t0 = time.perf_counter()
        inv = enumerate_classes(N)
        dt = time.perf_counter() - t0
        formula = class_number_4N(N)
        bad += formula != len(inv.classes)
        flag = "" if formula == len(inv.classes) else "  MISMATCH"
        print(f"{4 * N:>5} {formula:>8} {len(inv.classes):>10} {len(inv.partition):>6} {dt:>6.2f}{flag}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
