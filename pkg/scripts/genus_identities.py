"""Check the weighted genus sums against modified Hurwitz class numbers, level by level.

    python3 scripts/genus_identities.py --levels 12,60,140 --n-max 200
"""
import argparse

from tqf.genera import get_inventory, hurwitz_side, weighted_series
from tqf.verify import check_genus_identities

DEFAULT_LEVELS = "4,12,20,28,52,60,84,140,156"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--levels", default=DEFAULT_LEVELS)
    ap.add_argument("--n-max", type=int, default=100)
    ap.add_argument("--show", action="store_true", help="print the first coefficients per genus")
    args = ap.parse_args()
    failed = False
    for level in map(int, args.levels.split(",")):
        report = check_genus_identities(level // 4, args.n_max)
        failed |= not report.passed
        print(report.to_text(), f"({report.runtime:.2f}s)")
        if args.show:
            inv = get_inventory(level // 4)
            for g in sorted(inv.genera()):
                scale, N1, N2, arg = hurwitz_side(g)
                head = " ".join(str(x) for x in weighted_series(inv, g, 6))
                print(f"  {g}: {scale} * H^({N1},{N2})({arg}n) ; {head} ...")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
