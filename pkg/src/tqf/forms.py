"""Integral ternary quadratic forms: invariants, representation numbers, reduction, isometries.

A form (a, b, c, r, s, t) is a x^2 + b y^2 + c z^2 + r yz + s xz + t xy.  Its Gram
matrix M has diagonal (2a, 2b, 2c), so f(v) = v^T M v / 2.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd, isqrt

from . import intmat
from .arith import gcd_list, lcm


class DegenerateFormError(ValueError):
    """Raised for singular (d = 0) forms."""


class NotPositiveDefiniteError(ValueError):
    """Raised for forms that are not positive definite."""


@dataclass(frozen=True, order=True)
class TernaryForm:
    a: int
    b: int
    c: int
    r: int
    s: int
    t: int

    @classmethod
    def parse(cls, text):
        parts = [p.strip() for p in str(text).split(",")]
        if len(parts) != 6:
            raise ValueError(f"expected six comma-separated integers, got {text!r}")
        return cls(*(int(p) for p in parts))

    @classmethod
    def from_gram(cls, M):
        if any(M[i][i] % 2 for i in range(3)) or any(M[i][j] != M[j][i] for i in range(3) for j in range(3)):
            raise ValueError("Gram matrix must be symmetric with even diagonal")
        return cls(M[0][0] // 2, M[1][1] // 2, M[2][2] // 2, M[1][2], M[0][2], M[0][1])

    def __str__(self):
        return ",".join(str(x) for x in self.coefficients)

    @property
    def coefficients(self):
        return (self.a, self.b, self.c, self.r, self.s, self.t)

    def gram(self):
        return ((2 * self.a, self.t, self.s), (self.t, 2 * self.b, self.r), (self.s, self.r, 2 * self.c))

    def __call__(self, x, y, z):
        return (self.a * x * x + self.b * y * y + self.c * z * z
                + self.r * y * z + self.s * x * z + self.t * x * y)

    def bilinear(self, v, w):
        """v^T M w, so bilinear(v, v) = 2 f(v)."""
        M = self.gram()
        return sum(v[i] * M[i][j] * w[j] for i in range(3) for j in range(3))

    def transform(self, U):
        """The form x -> f(U x), i.e. Gram matrix U^T M U."""
        return TernaryForm.from_gram(intmat.congruent(self.gram(), U))

    def scale(self, k):
        return TernaryForm(*(k * x for x in self.coefficients))

    @property
    def discriminant(self):
        a, b, c, r, s, t = self.coefficients
        return 4 * a * b * c + r * s * t - a * r * r - b * s * s - c * t * t

    @property
    def content(self):
        return gcd_list(self.coefficients)

    @property
    def is_primitive(self):
        return self.content == 1

    @property
    def is_positive_definite(self):
        a, b, t = self.a, self.b, self.t
        return a > 0 and 4 * a * b - t * t > 0 and self.discriminant > 0


def gram_matrix(f):
    return f.gram()


def cofactors(f):
    """(M11, M22, M33, M23, M13, M12) as used for the divisor."""
    a, b, c, r, s, t = f.coefficients
    return (4 * b * c - r * r, 4 * a * c - s * s, 4 * a * b - t * t,
            s * t - 2 * a * r, r * t - 2 * b * s, r * s - 2 * c * t)


def divisor(f):
    m11, m22, m33, m23, m13, m12 = cofactors(f)
    return gcd_list((m11, m22, m33, 2 * m23, 2 * m13, 2 * m12))


def level_from_inverse(f):
    """Smallest N with N * M^{-1} integral with even diagonal."""
    d = f.discriminant
    if d == 0:
        raise DegenerateFormError("singular form")
    adj = intmat.adjugate3(f.gram())
    N = 1
    for i in range(3):
        for j in range(3):
            mod = 4 * abs(d) if i == j else 2 * abs(d)
            N = lcm(N, mod // gcd(mod, adj[i][j]))
    return N


def check_positive_definite(f):
    if f.discriminant == 0:
        raise DegenerateFormError(f"form {f} is singular")
    if not f.is_positive_definite:
        raise NotPositiveDefiniteError(f"form {f} is not positive definite")


@dataclass(frozen=True)
class FormInvariants:
    discriminant: int
    divisor: int
    level: int
    primitive: bool
    aut_count: int


def invariants(f):
    check_positive_definite(f)
    d = f.discriminant
    m = divisor(f)
    level = 4 * d // m
    assert 4 * d % m == 0 and level == level_from_inverse(f), f"level mismatch for {f}"
    return FormInvariants(d, m, level, f.is_primitive, len(automorphisms(f)))


# ---------------------------------------------------------------------------
# lattice point enumeration

def _z_bound(f, n):
    # z^2 * d <= n * (4ab - t^2)
    return isqrt(n * (4 * f.a * f.b - f.t * f.t) // f.discriminant)


def _y_range(f, z, n):
    """y values for which some real x gives f(x, y, z) <= n."""
    a, b, c, r, s, t = f.coefficients
    # discriminant in x: (t y + s z)^2 - 4a(b y^2 + r y z + c z^2 - n) = -A y^2 + B y + C
    A = 4 * a * b - t * t
    B = 2 * t * s * z - 4 * a * r * z
    C = s * s * z * z - 4 * a * c * z * z + 4 * a * n
    disc = B * B + 4 * A * C
    if disc < 0:
        return range(0)
    root = isqrt(disc)
    lo = (B - root - 1) // (2 * A)
    hi = (B + root + 1) // (2 * A) + 1
    ys = [y for y in range(lo, hi + 1) if -A * y * y + B * y + C >= 0]
    return range(ys[0], ys[-1] + 1) if ys else range(0)


def vectors_of_norm(f, n):
    """All integer vectors v with f(v) = n."""
    if n == 0:
        return [(0, 0, 0)]
    a, b, c, r, s, t = f.coefficients
    out = []
    zb = _z_bound(f, n)
    for z in range(-zb, zb + 1):
        for y in _y_range(f, z, n):
            lin = t * y + s * z
            const = b * y * y + r * y * z + c * z * z - n
            disc = lin * lin - 4 * a * const
            if disc < 0:
                continue
            q = isqrt(disc)
            if q * q != disc:
                continue
            for root in {q, -q}:
                num = -lin + root
                if num % (2 * a) == 0:
                    out.append((num // (2 * a), y, z))
    return out


def represent_count(f, n):
    """Number of integer triples X with f(X) = n."""
    if n < 0:
        return 0
    check_positive_definite(f)
    return len(vectors_of_norm(f, n))


def theta_series(f, n_max):
    """[R_f(0), ..., R_f(n_max)] by enumerating every vector of norm <= n_max."""
    check_positive_definite(f)
    a, b, c, r, s, t = f.coefficients
    counts = [0] * (n_max + 1)
    zb = _z_bound(f, n_max)
    for z in range(-zb, zb + 1):
        for y in _y_range(f, z, n_max):
            lin = t * y + s * z
            const = b * y * y + r * y * z + c * z * z
            disc = lin * lin - 4 * a * (const - n_max)
            if disc < 0:
                continue
            q = isqrt(disc)
            lo = (-lin - q) // (2 * a) - 1
            hi = (-lin + q) // (2 * a) + 1
            for x in range(lo, hi + 1):
                v = a * x * x + lin * x + const
                if v <= n_max:
                    counts[v] += 1
    return counts


# ---------------------------------------------------------------------------
# reduction

def _swap(U, M, i, j):
    P = [list(row) for row in intmat.identity()]
    P[i][i] = P[j][j] = 0
    P[i][j] = P[j][i] = 1
    P = tuple(tuple(r) for r in P)
    return intmat.mul(U, P), intmat.congruent(M, P)


def _add(U, M, j, i, q):
    """Basis vector j += q * basis vector i."""
    E = [list(row) for row in intmat.identity()]
    E[i][j] = q
    E = tuple(tuple(r) for r in E)
    return intmat.mul(U, E), intmat.congruent(M, E)


def minkowski_reduce(f):
    """A Minkowski-reduced form g equivalent to f and U with g = f∘U.

    Iterates pairwise size reduction and the finite list of three-term
    conditions; each step strictly lowers the trace, so it terminates.
    """
    check_positive_definite(f)
    U = intmat.identity()
    M = f.gram()
    while True:
        for i in range(3):
            for j in range(2 - i):
                if M[j][j] > M[j + 1][j + 1]:
                    U, M = _swap(U, M, j, j + 1)
        changed = False
        for i, j in ((0, 1), (0, 2), (1, 2)):
            q = (2 * M[i][j] + M[i][i]) // (2 * M[i][i])
            if q and q * q * M[i][i] - 2 * q * M[i][j] < 0:
                U, M = _add(U, M, j, i, -q)
                changed = True
                break
        if changed:
            continue
        for e1, e2 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            v = (e1, e2, 1)
            if sum(v[i] * M[i][k] * v[k] for i in range(3) for k in range(3)) < M[2][2]:
                U, M = _add(U, M, 2, 0, e1)
                U, M = _add(U, M, 2, 1, e2)
                changed = True
                break
        if not changed:
            return TernaryForm.from_gram(M), U


def _is_sign_normalized(g):
    return (g.r >= 0 and g.s >= 0 and g.t >= 0) or (g.r <= 0 and g.s <= 0 and g.t <= 0)


def _det_cols(u, v, w):
    return (u[0] * (v[1] * w[2] - v[2] * w[1]) - v[0] * (u[1] * w[2] - u[2] * w[1])
            + w[0] * (u[1] * v[2] - u[2] * v[1]))


@lru_cache(maxsize=200_000)
def canonical(f):
    """(canonical form, U) with canonical = f∘U.

    Candidates are all bases attaining the successive minima (these are
    exactly the Minkowski-reduced bases); among the sign-normalized ones the
    lexicographically smallest coefficient tuple wins.
    """
    g, U = minkowski_reduce(f)
    M = g.gram()
    vecs = [vectors_of_norm(g, n) for n in (g.a, g.b, g.c)]

    def B(v, w):
        return sum(v[i] * M[i][k] * w[k] for i in range(3) for k in range(3))

    best = None
    best_V = None
    for v1 in vecs[0]:
        for v2 in vecs[1]:
            t = B(v1, v2)
            if abs(t) > g.a:
                continue
            for v3 in vecs[2]:
                if abs(_det_cols(v1, v2, v3)) != 1:
                    continue
                s = B(v1, v3)
                r = B(v2, v3)
                key = (g.a, g.b, g.c, r, s, t)
                if not ((r >= 0 and s >= 0 and t >= 0) or (r <= 0 and s <= 0 and t <= 0)):
                    continue
                if best is None or key < best:
                    best = key
                    best_V = intmat.from_columns((v1, v2, v3))
    return TernaryForm(*best), intmat.mul(U, best_V)


def reduce(f):
    return canonical(f)[0]


def transform_to_canonical(f):
    return canonical(f)[1]


@lru_cache(maxsize=100_000)
def _automorphisms_of_canonical(g):
    M = g.gram()
    vecs = [vectors_of_norm(g, n) for n in (g.a, g.b, g.c)]

    def B(v, w):
        return sum(v[i] * M[i][k] * w[k] for i in range(3) for k in range(3))

    auts = []
    for v1 in vecs[0]:
        for v2 in vecs[1]:
            if B(v1, v2) != M[0][1]:
                continue
            for v3 in vecs[2]:
                if B(v1, v3) == M[0][2] and B(v2, v3) == M[1][2]:
                    auts.append(intmat.from_columns((v1, v2, v3)))
    return tuple(auts)


def automorphisms(f):
    """All U in GL3(Z) with U^T M_f U = M_f."""
    g, U = canonical(f)
    Uinv = intmat.inverse_unimodular(U)
    return [intmat.mul(intmat.mul(U, A), Uinv) for A in _automorphisms_of_canonical(g)]


def aut_count(f):
    return len(_automorphisms_of_canonical(reduce(f)))


def is_equivalent(f, g):
    """A witness U with U^T M_g U = M_f if f ~ g, else None."""
    if f.discriminant != g.discriminant:
        return None
    cf, Pf = canonical(f)
    cg, Pg = canonical(g)
    if cf != cg:
        return None
    return intmat.mul(Pg, intmat.inverse_unimodular(Pf))


def random_unimodular(rng, steps=6, bound=3):
    """Product of random elementary matrices (for tests and experiments)."""
    U = intmat.identity()
    for _ in range(steps):
        i, j = rng.sample(range(3), 2)
        E = [list(row) for row in intmat.identity()]
        E[i][j] = rng.randint(-bound, bound)
        U = intmat.mul(U, tuple(tuple(r) for r in E))
        if rng.random() < 0.3:
            k, l = rng.sample(range(3), 2)
            P = [list(row) for row in intmat.identity()]
            P[k][k] = P[l][l] = 0
            P[k][l] = P[l][k] = 1
            U = intmat.mul(U, tuple(tuple(r) for r in P))
    return U
