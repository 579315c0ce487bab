"""Quaternion orders from ternary forms (even Clifford algebra) and back, with trace-zero forms."""

import json
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import intmat
from .arith import integer_range_for_square, prime_divisors
from .forms import DegenerateFormError, TernaryForm, aut_count
from .local import diagonalize_matrix, hilbert_symbol


class OrderError(ValueError):
    """Raised when a structure fails the order invariants."""


@dataclass(frozen=True)
class QuaternionOrder:
    """Rank-4 algebra on the basis (1, e1, e2, e3) with integer structure constants.

    table[p][q] is the coordinate vector of e_p * e_q.
    """
    table: tuple
    traces: tuple

    def mul(self, x, y):
        out = [0, 0, 0, 0]
        for p in range(4):
            if not x[p]:
                continue
            for q in range(4):
                if not y[q]:
                    continue
                c = x[p] * y[q]
                row = self.table[p][q]
                for k in range(4):
                    out[k] += c * row[k]
        return tuple(out)

    def trace(self, x):
        return sum(a * b for a, b in zip(x, self.traces))

    def conj(self, x):
        tr = self.trace(x)
        return (tr - x[0], -x[1], -x[2], -x[3])

    def norm(self, x):
        prod = self.mul(x, self.conj(x))
        if any(prod[1:]):
            raise OrderError("x * conj(x) is not central")
        return prod[0]

    def pairing(self, x, y):
        """tr(x conj(y)); the polar form of the norm."""
        return self.trace(self.mul(x, self.conj(y)))

    def norm_gram(self):
        E = [tuple(int(i == j) for j in range(4)) for i in range(4)]
        return tuple(tuple(self.pairing(E[p], E[q]) for q in range(4)) for p in range(4))

    @property
    def discriminant(self):
        """Reduced discriminant: sqrt of det(tr(e_p conj(e_q)))."""
        D = intmat.det(self.norm_gram())
        root = isqrt(abs(D))
        if root * root != abs(D):
            raise OrderError(f"det of the trace pairing {D} is not a square")
        return root

    def is_associative(self):
        E = [tuple(int(i == j) for j in range(4)) for i in range(4)]
        return all(self.mul(self.mul(E[p], E[q]), E[r]) == self.mul(E[p], self.mul(E[q], E[r]))
                   for p in range(4) for q in range(4) for r in range(4))

    def to_json(self):
        return json.dumps({"basis": ["1", "e1", "e2", "e3"],
                           "table": [[list(v) for v in row] for row in self.table],
                           "trace": list(self.traces)}, separators=(",", ":"))

    @classmethod
    def from_json(cls, text):
        obj = json.loads(text)
        return cls(tuple(tuple(tuple(v) for v in row) for row in obj["table"]), tuple(obj["trace"]))


def even_clifford(f):
    """C_0(f) on the basis (1, i, j, k)."""
    if f.discriminant == 0:
        raise DegenerateFormError(f"form {f} is singular")
    a, b, c, r, s, t = f.coefficients
    one = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    i_row = ((0, 1, 0, 0), (-b * c, r, 0, 0), (c * t, 0, 0, -c), (-r * t, t, b, r))
    j_row = ((0, 0, 1, 0), (-r * s, s, r, c), (-a * c, 0, s, 0), (a * r, -a, 0, 0))
    k_row = ((0, 0, 0, 1), (b * s, 0, -b, 0), (-s * t, a, t, s), (-a * b, 0, 0, t))
    # rows: e_p * (1, i, j, k); i*j = c*conj(k), j*k = a*conj(i), k*i = b*conj(j)
    # and the reversed products follow by conjugating those
    order = QuaternionOrder((one, i_row, j_row, k_row), (2, r, s, t))
    return order


def dual_basis(O):
    """f_0..f_3 with tr(e_p f_q) = delta_pq, as rational coordinate vectors."""
    E = [tuple(int(i == j) for j in range(4)) for i in range(4)]
    T = [[O.trace(O.mul(E[p], E[q])) for q in range(4)] for p in range(4)]
    Tinv = intmat.inverse_fraction(T)
    return [tuple(Tinv[q][k] for k in range(4)) for q in range(4)]


def dual_basis_closed_form(f):
    """d * f_0, ..., d * f_3 for C_0(f) written out in the coefficients of f."""
    a, b, c, r, s, t = f.coefficients
    d = f.discriminant
    return [(d - 2 * (a * b * c + r * s * t), a * r + s * t, b * s + r * t, c * t + r * s),
            (a * r + s * t, -2 * a, -t, -s),
            (b * s + r * t, -t, -2 * b, -r),
            (c * t + r * s, -s, -r, -2 * c)]


def check_order(O):
    if O.traces[0] != 2 or O.table[0] != tuple(tuple(int(i == j) for j in range(4)) for i in range(4)):
        raise OrderError("first basis element must be the identity")
    if not O.is_associative():
        raise OrderError("multiplication table is not associative")


def dual_form(O):
    """discrd(O) * n(x f1 + y f2 + z f3)."""
    check_order(O)
    D = O.discriminant
    fs = dual_basis(O)[1:]
    G = [[D * O.pairing(u, v) for v in fs] for u in fs]
    if any(x.denominator != 1 for row in G for x in row):
        raise OrderError("dual form is not integral")
    return TernaryForm.from_gram(tuple(tuple(int(x) for x in row) for row in G))


@dataclass(frozen=True)
class NormalizedBasis:
    alphas: tuple  # three coordinate vectors with traces (0, 0, 1)
    change: tuple  # 4x4 unimodular matrix, columns (1, alpha1, alpha2, alpha3)


def normalize_basis(O):
    check_order(O)
    E = [tuple(int(i == j) for j in range(4)) for i in range(4)]
    alphas = []
    for p in (1, 2, 3):
        k = O.traces[p] // 2
        alphas.append(tuple(x - k * y for x, y in zip(E[p], E[0])))
    tr = [O.trace(a) for a in alphas]
    ones = [i for i in range(3) if tr[i] == 1]
    zeros = [i for i in range(3) if tr[i] == 0]

    def sub(x, y):
        return tuple(u - v for u, v in zip(x, y))

    if len(ones) == 3:
        a1, a2, a3 = alphas
        new = (sub(a1, a3), sub(a2, a3), a3)
    elif len(ones) == 2:
        i0, (i1, i2) = zeros[0], ones
        new = (alphas[i0], sub(alphas[i1], alphas[i2]), alphas[i2])
    elif len(ones) == 1:
        new = tuple(alphas[i] for i in zeros) + (alphas[ones[0]],)
    else:
        raise OrderError("all basis traces are even: the lattice is not an order")
    change = intmat.from_columns((E[0],) + new)
    if abs(intmat.det(change)) != 1:
        raise ArithmeticError("basis change is not unimodular")
    assert [O.trace(a) for a in new] == [0, 0, 1]
    return NormalizedBasis(new, change)


def _form_on(O, vectors):
    G = tuple(tuple(O.pairing(u, v) for v in vectors) for u in vectors)
    return TernaryForm.from_gram(G)


def trace_zero_form_O0(O):
    """n(x alpha1 + y alpha2 + z (2 alpha3 - 1))."""
    a1, a2, a3 = normalize_basis(O).alphas
    b3 = tuple(2 * x for x in a3)
    b3 = (b3[0] - 1,) + b3[1:]
    return _form_on(O, (a1, a2, b3))


def trace_zero_form_S0(O):
    """n(2x alpha1 + 2y alpha2 + z (2 alpha3 - 1)), the form on S = Z + 2 O."""
    a1, a2, a3 = normalize_basis(O).alphas
    b3 = tuple(2 * x for x in a3)
    b3 = (b3[0] - 1,) + b3[1:]
    return _form_on(O, (tuple(2 * x for x in a1), tuple(2 * x for x in a2), b3))


def _ldl(gram):
    """q_i, mu_ij with v^T (G/2) v = sum_i q_i (v_i + sum_{j>i} mu_ij v_j)^2."""
    k = len(gram)
    A = [[Fraction(gram[i][j], 2) for j in range(k)] for i in range(k)]
    q = [Fraction(0)] * k
    mu = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        q[i] = A[i][i]
        if q[i] <= 0:
            raise OrderError("norm form is not positive definite")
        for j in range(i + 1, k):
            mu[i][j] = A[i][j] / q[i]
        for j in range(i + 1, k):
            for l in range(i + 1, k):
                A[j][l] -= mu[i][j] * mu[i][l] * q[i]
    return q, mu


def short_vectors(gram, bound):
    """All integer vectors v with v^T G v / 2 <= bound (G positive definite, any dimension)."""
    q, mu = _ldl(gram)
    k = len(gram)
    v = [0] * k
    out = []

    def rec(i, remaining):
        center = sum((mu[i][j] * v[j] for j in range(i + 1, k)), Fraction(0))
        for x in integer_range_for_square(center, remaining / q[i]):
            v[i] = x
            rest = remaining - q[i] * (x + center) ** 2
            if rest < 0:
                continue
            if i == 0:
                out.append(tuple(v))
            else:
                rec(i - 1, rest)
        v[i] = 0

    rec(k - 1, Fraction(bound))
    return out


def rho_table(O, n_max):
    """{(n, r): #{x in O : n(x) = n, tr(x) = r}} for n <= n_max."""
    counts = {}
    G = O.norm_gram()
    for x in short_vectors(G, n_max):
        key = (O.norm(x), O.trace(x))
        counts[key] = counts.get(key, 0) + 1
    return counts


def rho_count(O, n, r):
    """Number of x in O with tr(x) = r and n(x) = n."""
    if n < 0:
        return 0
    return rho_table(O, n).get((n, r), 0)


def order_aut_card(O):
    """card(Aut(O)), taken as |Aut(f_O)| / 2."""
    return aut_count(dual_form(O)) // 2


def ramified_primes(O):
    """Primes p where the algebra O (x) Q_p is a division algebra, via a Hilbert symbol."""
    check_order(O)
    # trace-zero vectors 2 e_p - tr(e_p)
    pure = []
    for p in (1, 2, 3):
        v = [0, 0, 0, 0]
        v[p] = 2
        v[0] = -O.traces[p]
        pure.append(tuple(v))
    G = [[Fraction(O.pairing(u, w)) for w in pure] for u in pure]
    diag, _ = diagonalize_matrix([[x / 2 for x in row] for row in G])
    # the norm on pure quaternions of (alpha, beta) is <-alpha, -beta, alpha beta>
    alpha, beta = -diag[0], -diag[1]
    primes = sorted(set([2] + prime_divisors(O.discriminant)))
    return frozenset(p for p in primes if hilbert_symbol(alpha, beta, p) == -1)


def ring_automorphisms(O, max_discriminant=30):
    """Ring automorphisms of O by direct search (spot checks on small orders only).

    An automorphism fixes 1 and preserves trace and norm, so each basis vector
    e_p maps to an element of the same trace and norm; candidates come from the
    norm-form enumeration and are kept when the whole table is preserved.
    """
    if O.discriminant > max_discriminant:
        raise ValueError(f"direct search limited to discrd <= {max_discriminant}")
    E = [tuple(int(i == j) for j in range(4)) for i in range(4)]
    bound = max(O.norm(E[p]) for p in (1, 2, 3))
    pool = short_vectors(O.norm_gram(), bound)
    cands = [[x for x in pool if O.norm(x) == O.norm(E[p]) and O.trace(x) == O.traces[p]]
             for p in (1, 2, 3)]
    found = []
    for x1 in cands[0]:
        for x2 in cands[1]:
            for x3 in cands[2]:
                images = (E[0], x1, x2, x3)
                if abs(intmat.det(intmat.from_columns(images))) != 1:
                    continue
                if all(O.mul(images[p], images[q]) == _image(images, O.table[p][q])
                       for p in range(1, 4) for q in range(1, 4)):
                    found.append(intmat.from_columns(images))
    return found


def _image(images, coords):
    return tuple(sum(c * v[k] for c, v in zip(coords, images)) for k in range(4))
