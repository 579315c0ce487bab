"""Even Clifford orders of random primitive forms: roundtrip and order-side identities.

    python3 scripts/clifford_orders.py --count 200 --max-d 1000 --seed 1
"""
import argparse
import random

from tqf.clifford import dual_form, even_clifford, order_aut_card, ramified_primes
from tqf.forms import TernaryForm, aut_count, is_equivalent
from tqf.local import anisotropic_primes


def random_form(rng, max_d):
    while True:
        a, b, c = (rng.randint(1, 12) for _ in range(3))
        f = TernaryForm(a, b, c, rng.randint(-b, b), rng.randint(-a, a), rng.randint(-a, a))
        if f.is_positive_definite and f.is_primitive and f.discriminant <= max_d:
            return f


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--max-d", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    bad = 0
    for _ in range(args.count):
        f = random_form(rng, args.max_d)
        O = even_clifford(f)
        checks = {
            "roundtrip": is_equivalent(dual_form(O), f) is not None,
            "discrd": O.discriminant == f.discriminant,
            "ramified": ramified_primes(O) == set(anisotropic_primes(f)),
            "aut": 2 * order_aut_card(O) == aut_count(f),
        }
        if not all(checks.values()):
            bad += 1
            print(f, {k: v for k, v in checks.items() if not v})
    print(f"{args.count - bad}/{args.count} forms pass")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
