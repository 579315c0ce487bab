"""Hurwitz class numbers, their (N1, N2)-modified versions, type numbers and |C(4N)|."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .arith import divisors, factorize, is_squarefree, kronecker, mobius, omega, prime_divisors


_H_MEMO = {}


def _count_reduced(D):
    total = Fraction(0)
    b = D % 2
    while 3 * b * b <= D:
        ac = (b * b + D) // 4
        a = max(b, 1)
        while a * a <= ac:
            if ac % a == 0:
                c = ac // a
                if b == 0:
                    total += Fraction(1, 2) if a == c else 1
                elif a == b == c:
                    total += Fraction(1, 3)
                elif b == a or a == c:
                    total += 1
                else:
                    total += 2  # (a, b, c) and (a, -b, c)
            a += 1
        b += 2
    return total


def hurwitz_H(D):
    """Weighted count of reduced positive binary forms of discriminant -D; H(0) = -1/12."""
    if D < 0:
        raise ValueError("D must be nonnegative")
    v = _H_MEMO.get(D)
    if v is None:
        if D == 0:
            v = Fraction(-1, 12)
        elif D % 4 in (1, 2):
            v = Fraction(0)
        else:
            v = _count_reduced(D)
        v = _H_MEMO.setdefault(D, v)
    return v


def hurwitz_table(D_max):
    """H(D) for all 0 <= D <= D_max in one sweep over reduced forms; primes the memo."""
    table = [Fraction(0)] * (D_max + 1)
    table[0] = Fraction(-1, 12)
    a = 1
    while 3 * a * a <= D_max:
        for b in range(-a + 1, a + 1):
            for c in range(a, (D_max + b * b) // (4 * a) + 1):
                D = 4 * a * c - b * b
                if D > D_max or (a == c and b < 0):
                    continue
                if b == 0 and a == c:
                    table[D] += Fraction(1, 2)
                elif a == b == c:
                    table[D] += Fraction(1, 3)
                else:
                    table[D] += 1
        a += 1
    for D, v in enumerate(table):
        _H_MEMO.setdefault(D, v)
    return table


def _check_pair(N1, N2):
    if N1 < 1 or N2 < 1 or not is_squarefree(N1) or not is_squarefree(N2):
        raise ValueError(f"N1={N1}, N2={N2} must be squarefree positive integers")
    if gcd(N1, N2) != 1:
        raise ValueError(f"N1={N1}, N2={N2} must be coprime")


def conductor_part(N1, N2, D):
    """Largest f built from primes of N1*N2 with f^2 | D and D/f^2 = 0, 3 mod 4."""
    f = 1
    for p in prime_divisors(N1 * N2):
        e = 0
        rest = D
        while rest % (p * p) == 0 and (p != 2 or (rest // 4) % 4 in (0, 3)):
            rest //= p * p
            e += 1
        f *= p ** e
    return f


@lru_cache(maxsize=None)
def modified_H(N1, N2, D):
    _check_pair(N1, N2)
    if D < 0:
        raise ValueError("D must be nonnegative")
    if D == 0:
        v = Fraction(-1, 12)
        for p in prime_divisors(N1):
            v *= 1 - p
        for p in prime_divisors(N2):
            v *= 1 + p
        return v
    if D % 4 in (1, 2):
        return Fraction(0)
    f = conductor_part(N1, N2, D)
    D0 = D // (f * f)
    value = hurwitz_H(D0)
    if value == 0:
        return value
    for p in prime_divisors(N1):
        value *= 1 - kronecker(-D0, p)
    for p in prime_divisors(N2):
        fp = p ** _val(f, p)
        k = kronecker(-D0, p)
        value *= Fraction(2 * p * fp - p - 1 - k * (2 * fp - p - 1), p - 1)
    return value


def _val(n, p):
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


@dataclass(frozen=True)
class ModifiedHurwitzKey:
    N1: int
    N2: int
    D: int

    def __post_init__(self):
        _check_pair(self.N1, self.N2)

    def value(self):
        return modified_H(self.N1, self.N2, self.D)


def type_number(N, F):
    """T_{N,F} via the double sum over n | NF and r with n | r, r^2 <= 4n."""
    _check_pair(N, F)
    if omega(N) % 2 == 0:
        raise ValueError(f"N={N} must have an odd number of prime factors")
    NF = N * F
    total = Fraction(0)
    for n in divisors(NF):
        rmax = isqrt(4 * n)
        for r in range(-(rmax // n) * n, rmax + 1, n):
            total += modified_H(N, F, 4 * n - r * r)
    T = total / 2 ** (omega(NF) + 1)
    if T.denominator != 1 or T <= 0:
        raise ArithmeticError(f"type number T_{{{N},{F}}} = {T} is not a positive integer")
    return int(T)


def _check_level(N):
    if N < 1 or N % 2 == 0 or not is_squarefree(N):
        raise ValueError(f"N={N} must be an odd squarefree positive integer")


def class_number_4N(N):
    """|C(4N)| from the closed formula with Kronecker symbols and 3H(4d) + H(8d)."""
    _check_level(N)
    s = omega(N)
    v = (Fraction(N, 6) + Fraction(5, 4) - Fraction(kronecker(-4, N), 4)
         - Fraction(kronecker(-3, N), 6) + Fraction(1 - kronecker(N, 3) ** 2, 2))
    v += Fraction(1, 4) * sum(3 * hurwitz_H(4 * d) + hurwitz_H(8 * d) for d in divisors(N) if d != 1)
    v *= 2 ** s
    if v.denominator != 1:
        raise ArithmeticError(f"class number formula gave non-integer {v}")
    return int(v)


def class_number_from_types(N):
    """2^s (2 sum T_{No,N/No} + sum T_{No,2N/No} + sum T_{2Ne,N/Ne})."""
    _check_level(N)
    s = omega(N)
    total = 0
    for d in divisors(N):
        if omega(d) % 2:
            total += 2 * type_number(d, N // d) + type_number(d, 2 * N // d)
        else:
            total += type_number(2 * d, N // d)
    return 2 ** s * total
