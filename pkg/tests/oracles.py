"""Brute-force references, independent of the package's algorithms."""

from fractions import Fraction
from itertools import product
from math import isqrt


def naive_represent_count(coeffs, n):
    """Count (x, y, z) with f = n over a box from the bound |x_i|^2 <= 2n (M^-1)_ii."""
    a, b, c, r, s, t = coeffs
    M = [[2 * a, t, s], [t, 2 * b, r], [s, r, 2 * c]]
    det = (M[0][0] * (M[1][1] * M[2][2] - M[1][2] ** 2) - M[0][1] * (M[0][1] * M[2][2] - M[1][2] * M[0][2])
           + M[0][2] * (M[0][1] * M[1][2] - M[1][1] * M[0][2]))
    cof = [M[1][1] * M[2][2] - M[1][2] ** 2, M[0][0] * M[2][2] - M[0][2] ** 2, M[0][0] * M[1][1] - M[0][1] ** 2]
    box = [isqrt(2 * n * cof[i] // det) + 1 for i in range(3)]
    count = 0
    for x, y, z in product(*(range(-B, B + 1) for B in box)):
        if a * x * x + b * y * y + c * z * z + r * y * z + s * x * z + t * x * y == n:
            count += 1
    return count


def naive_hurwitz(D):
    """Weighted count of all (a, b, c) reduced binary forms, written without shortcuts."""
    if D == 0:
        return Fraction(-1, 12)
    if D % 4 in (1, 2):
        return Fraction(0)
    total = Fraction(0)
    for a in range(1, D + 1):
        for b in range(-a, a + 1):
            if (b * b + D) % (4 * a):
                continue
            c = (b * b + D) // (4 * a)
            if c < a or (b < 0 and (-b == a or a == c)):
                continue
            w = Fraction(1)
            if a == b == c:
                w = Fraction(1, 3)
            elif b == 0 and a == c:
                w = Fraction(1, 2)
            total += w
    return total


def sigma(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


def class_number_relation_rhs(n):
    """sum_r H(4n - r^2) = 2 sigma(n) - sum_{d|n} min(d, n/d)."""
    return 2 * sigma(n) - sum(min(d, n // d) for d in range(1, n + 1) if n % d == 0)


def hilbert_by_solvability(u, v, p):
    """(u,v)_p = 1 iff u x^2 + v y^2 = z^2 has a primitive solution mod p^k, k = v_p(4uv) + 3.

    Exhaustive over residues; sums of residue sets are done with bitmask rotations.
    """
    uv = 4 * u * v
    e = 0
    while uv % p == 0:
        uv //= p
        e += 1
    m = p ** (e + 3)
    full = (1 << m) - 1

    def mask(values):
        out = 0
        for x in set(values):
            out |= 1 << x
        return out

    def residues(coef, units_only):
        return {coef * x * x % m for x in range(m) if not units_only or x % p}

    def meets(A, B, S):
        for b in B:
            shifted = ((A << b) | (A >> (m - b))) & full if b else A
            if shifted & S:
                return True
        return False

    S_all, S_unit = mask(residues(1, False)), mask(residues(1, True))
    A_all, A_unit = mask(residues(u, False)), mask(residues(u, True))
    B_all, B_unit = residues(v, False), residues(v, True)
    primitive = meets(A_unit, B_all, S_all) or meets(A_all, B_unit, S_all) or meets(A_all, B_all, S_unit)
    return 1 if primitive else -1


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def brute_automorphisms(coeffs):
    """Column images searched among all vectors of norm a, b, c in the exact ellipsoid box."""
    a, b, c, r, s, t = coeffs
    G = ((2 * a, t, s), (t, 2 * b, r), (s, r, 2 * c))

    def q(v):
        return sum(v[i] * G[i][j] * v[j] for i in range(3) for j in range(3)) // 2

    def B(v, w):
        return sum(v[i] * G[i][j] * w[j] for i in range(3) for j in range(3))

    n = max(a, b, c)
    det = (G[0][0] * (G[1][1] * G[2][2] - G[1][2] ** 2) - G[0][1] * (G[0][1] * G[2][2] - G[1][2] * G[0][2])
           + G[0][2] * (G[0][1] * G[1][2] - G[1][1] * G[0][2]))
    cof = [G[1][1] * G[2][2] - G[1][2] ** 2, G[0][0] * G[2][2] - G[0][2] ** 2, G[0][0] * G[1][1] - G[0][1] ** 2]
    box = [isqrt(2 * n * cof[i] // det) + 1 for i in range(3)]
    vecs = [v for v in product(*(range(-k, k + 1) for k in box)) if q(v) <= n]
    cols = [[v for v in vecs if q(v) == G[i][i] // 2] for i in range(3)]
    out = []
    for v0 in cols[0]:
        for v1 in cols[1]:
            if B(v0, v1) != G[0][1]:
                continue
            for v2 in cols[2]:
                if B(v0, v2) == G[0][2] and B(v1, v2) == G[1][2]:
                    U = tuple(tuple(col[i] for col in (v0, v1, v2)) for i in range(3))
                    d = (U[0][0] * (U[1][1] * U[2][2] - U[1][2] * U[2][1])
                         - U[0][1] * (U[1][0] * U[2][2] - U[1][2] * U[2][0])
                         + U[0][2] * (U[1][0] * U[2][1] - U[1][1] * U[2][0]))
                    if abs(d) == 1:
                        out.append(U)
    return out
