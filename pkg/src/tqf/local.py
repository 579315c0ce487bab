"""Local invariants: rational diagonalization, Hilbert symbols, Hasse invariants, genus labels."""

import re
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .arith import is_prime, is_squarefree, kronecker, prime_divisors, valuation
from .forms import DegenerateFormError, TernaryForm, check_positive_definite, divisor


@dataclass(frozen=True)
class DiagonalForm:
    a: Fraction
    b: Fraction
    c: Fraction

    def __iter__(self):
        return iter((self.a, self.b, self.c))


def _half_gram(coeffs):
    a, b, c, r, s, t = (Fraction(x) for x in coeffs)
    return [[a, t / 2, s / 2], [t / 2, b, r / 2], [s / 2, r / 2, c]]


def diagonalize_matrix(A):
    """Diagonal entries and P with P^T A P diagonal, for a symmetric rational matrix."""
    n = len(A)
    A = [[Fraction(x) for x in row] for row in A]
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def congruence(E):
        nonlocal A, P
        Et = [list(r) for r in zip(*E)]
        A = _mm(_mm(Et, A), E)
        P = _mm(P, E)

    for k in range(n):
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                E = [[Fraction(int(i == l)) for l in range(n)] for i in range(n)]
                E[k][k] = E[j][j] = Fraction(0)
                E[k][j] = E[j][k] = Fraction(1)
                congruence(E)
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    raise DegenerateFormError("form is degenerate")
                E = [[Fraction(int(i == l)) for l in range(n)] for i in range(n)]
                E[j][k] = Fraction(1)
                congruence(E)
        E = [[Fraction(int(i == l)) for l in range(n)] for i in range(n)]
        for j in range(k + 1, n):
            E[k][j] = -A[k][j] / A[k][k]
        congruence(E)
    return [A[i][i] for i in range(n)], P


def _mm(X, Y):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*Y)] for row in X]


def diagonalize(f, order=(0, 1, 2)):
    """Rational (a, b, c) with f equivalent over Q to a x^2 + b y^2 + c z^2."""
    coeffs = f.coefficients if isinstance(f, TernaryForm) else tuple(f)
    A = _half_gram(coeffs)
    A = [[A[i][j] for j in order] for i in order]
    diag, _ = diagonalize_matrix(A)
    if any(x == 0 for x in diag):
        raise DegenerateFormError("form is degenerate")
    return DiagonalForm(*diag)


def _squarefree_int(x):
    """Integer in the same square class as the nonzero rational x."""
    x = Fraction(x)
    return x.numerator * x.denominator


def hilbert_symbol(u, v, p):
    """(u, v)_p for nonzero rationals u, v and a prime p."""
    if u == 0 or v == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    u, v = _squarefree_int(u), _squarefree_int(v)
    alpha, beta = valuation(u, p), valuation(v, p)
    u1, v1 = u // p**alpha, v // p**beta
    if p == 2:
        def eps(x):
            return ((x - 1) // 2) % 2

        def omg(x):
            return ((x * x - 1) // 8) % 2

        e = eps(u1) * eps(v1) + alpha * omg(v1) + beta * omg(u1)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * (p - 1) // 2) % 2 else 1
    return sign * kronecker(u1, p) ** beta * kronecker(v1, p) ** alpha


def hasse_of_diagonal(diag, p):
    a, b, c = diag
    h = hilbert_symbol
    return (h(a, -1, p) * h(b, -1, p) * h(c, -1, p)
            * h(a, b, p) * h(b, c, p) * h(c, a, p))


def hasse_invariant(f, p):
    """S_p computed from a rational diagonalization."""
    return hasse_of_diagonal(diagonalize(f), p)


def modified_hasse(f, p):
    """S*_p = (-1)^{[p=2]} S_p; the form is anisotropic at p iff this is -1."""
    return -hasse_invariant(f, p) if p == 2 else hasse_invariant(f, p)


def is_anisotropic(f, p):
    return modified_hasse(f, p) == -1


def anisotropic_primes(f):
    check_positive_definite(f)
    diag = diagonalize(f)
    primes = sorted(set([2] + prime_divisors(f.discriminant)))
    out = set()
    for p in primes:
        s = hasse_of_diagonal(diag, p)
        if (-s if p == 2 else s) == -1:
            out.add(p)
    return frozenset(out)


class GenusLevelError(ValueError):
    """Raised when a label is requested outside the level-4N (N odd squarefree) family."""


@dataclass(frozen=True, order=True)
class GenusLabel:
    level: int
    discriminant: int
    anisotropic_primes: tuple

    def __post_init__(self):
        object.__setattr__(self, "anisotropic_primes", tuple(sorted(self.anisotropic_primes)))

    @property
    def t(self):
        return prod(self.anisotropic_primes)

    def __str__(self):
        return f"G_{{{self.level},{self.discriminant},{self.t}}}"

    @classmethod
    def parse(cls, text):
        m = re.fullmatch(r"\s*G_\{?(\d+),(\d+),(\d+)\}?\s*", text)
        if not m:
            raise ValueError(f"cannot parse genus label {text!r}")
        level, d, t = (int(x) for x in m.groups())
        return cls(level, d, tuple(prime_divisors(t)))

    @property
    def N(self):
        return self.level // 4

    @property
    def family(self):
        """One of 'N2', '4N2', '16N2' by the power of 2 in the discriminant."""
        v = valuation(self.discriminant, 2) if self.discriminant else 0
        return {0: "N2", 2: "4N2", 4: "16N2"}[v]

    @property
    def N_r(self):
        scale = {"N2": 1, "4N2": 4, "16N2": 16}[self.family]
        return scale * self.N ** 2 // self.discriminant


def is_level_4N(level):
    return level % 4 == 0 and (level // 4) % 2 == 1 and is_squarefree(level // 4)


def genus_label(f, strict=True):
    """(level, discriminant, anisotropic primes).

    With strict=False other levels are accepted; such labels are bookkeeping
    only and carry no claim of being a complete genus invariant.
    """
    check_positive_definite(f)
    if not f.is_primitive:
        raise ValueError(f"form {f} is not primitive")
    d = f.discriminant
    level = 4 * d // divisor(f)
    if strict and not is_level_4N(level):
        raise GenusLevelError(f"level {level} of {f} is not 4N with N odd squarefree")
    return GenusLabel(level, d, tuple(anisotropic_primes(f)))


def expected_labels(N):
    """All 2^{2s+1} labels of level 4N listed by the classification."""
    from .arith import divisors, omega
    labels = []
    for Nr in divisors(N):
        for sub in divisors(N):
            odd = omega(sub) % 2 == 1
            if odd:
                labels.append(GenusLabel(4 * N, N * N // Nr, tuple(prime_divisors(sub))))
                labels.append(GenusLabel(4 * N, 4 * N * N // Nr, tuple(prime_divisors(sub))))
                labels.append(GenusLabel(4 * N, 16 * N * N // Nr, tuple(prime_divisors(sub))))
            else:
                labels.append(GenusLabel(4 * N, 4 * N * N // Nr, tuple([2] + prime_divisors(sub))))
    return sorted(labels)
