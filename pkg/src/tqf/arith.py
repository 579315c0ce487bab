"""Small exact number-theory helpers shared across the package."""

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt


@lru_cache(maxsize=None)
def factorize(n):
    """Prime factorization of a positive integer as a tuple of (p, e), by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    p = 5
    step = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n):
    return [p for p, _ in factorize(abs(n))] if n else []


def is_prime(n):
    return n >= 2 and factorize(n) == ((n, 1),)


def is_squarefree(n):
    return n >= 1 and all(e == 1 for _, e in factorize(n))


def omega(n):
    """Number of distinct prime factors."""
    return len(factorize(n))


def divisors(n):
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def mobius(n):
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def valuation(x, p):
    """p-adic valuation of a nonzero integer or Fraction."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def kronecker(a, n):
    """Kronecker symbol (a/n) for arbitrary integers."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n) for odd positive n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def floor_sqrt_fraction(x):
    """Largest integer k >= 0 with k*k <= x, for a nonnegative Fraction."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative")
    return isqrt(x.numerator // x.denominator)


def integer_range_for_square(center, radius_sq):
    """Integers v with (v + center)^2 <= radius_sq, exactly (center, radius_sq Fractions)."""
    if radius_sq < 0:
        return range(0)
    r = floor_sqrt_fraction(radius_sq) + 1
    c = Fraction(center)
    lo = -(c.numerator // c.denominator) - r - 1
    hi = lo + 2 * r + 3
    vals = [v for v in range(lo, hi + 1) if (v + c) ** 2 <= radius_sq]
    if not vals:
        return range(0)
    return range(vals[0], vals[-1] + 1)


def gcd_list(values):
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def lcm(a, b):
    return a // gcd(a, b) * b


def fraction_str(x):
    return str(Fraction(x))
