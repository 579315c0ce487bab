"""Lehman's correspondences phi_p, phi_2 and Watson's transformation lambda_m."""

from dataclasses import dataclass
from itertools import product

from . import intmat
from .arith import is_squarefree, valuation
from .forms import TernaryForm, check_positive_definite, divisor, reduce


class TransformError(ValueError):
    """Raised when a map is applied outside its domain."""


def kernel_mod_p(M, p):
    """Basis (list of 3-tuples) of {v in F_p^3 : M v = 0 mod p}."""
    A = [[x % p for x in row] for row in M]
    n = len(A)
    pivots = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if A[r][col]), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = pow(A[row][col], -1, p)
        A[row] = [(x * inv) % p for x in A[row]]
        for r in range(n):
            if r != row and A[r][col]:
                m = A[r][col]
                A[r] = [(x - m * y) % p for x, y in zip(A[r], A[row])]
        pivots.append(col)
        row += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-A[i][fc]) % p
        basis.append(tuple(v))
    return basis


def adapted_unimodular(W, p):
    """Unimodular U whose first len(W) columns span the same F_p-space as the vectors W."""
    k = len(W)
    rows = [[W[j][i] for j in range(k)] for i in range(3)]  # 3 x k
    E = [list(r) for r in intmat.identity()]
    for j in range(k):
        piv = next(i for i in range(j, 3) if rows[i][j] % p)
        rows[j], rows[piv] = rows[piv], rows[j]
        E[j], E[piv] = E[piv], E[j]
        inv = pow(rows[j][j], -1, p)
        for i in range(3):
            if i != j and rows[i][j] % p:
                m = (rows[i][j] * inv) % p
                rows[i] = [x - m * y for x, y in zip(rows[i], rows[j])]
                E[i] = [x - m * y for x, y in zip(E[i], E[j])]
    return intmat.inverse_unimodular(tuple(tuple(r) for r in E))


def _elementary(i, j, q=1, swap=False):
    E = [list(r) for r in intmat.identity()]
    if swap:
        E[i][i] = E[j][j] = 0
        E[i][j] = E[j][i] = 1
    else:
        E[j][i] = q  # column i += q * column j
    return tuple(tuple(r) for r in E)


@dataclass(frozen=True)
class LehmanNormalForm:
    form: TernaryForm
    p: int
    g: int
    h: int
    U: tuple  # form = original∘U

    @property
    def letters(self):
        """The reduced letters (a', b', c', r', s', t') of the normal form."""
        f, p, g, h = self.form, self.p, self.g, self.h
        return (f.a // p**g, f.b // p**(h - g), f.c, f.r // p**(h - g), f.s // p**g, f.t // p**g)


def _level(f):
    return 4 * f.discriminant // divisor(f)


def has_lehman_pattern(f, p, g, h):
    pg, phg = p**g, p**(h - g)
    return (f.a % pg == 0 and (f.a // pg) % p != 0 and f.c % p != 0
            and f.b % phg == 0 and f.r % phg == 0 and f.s % pg == 0 and f.t % pg == 0)


def lehman_normal_form(f, p):
    """An equivalent form (p^g a, p^(h-g) b, c, p^(h-g) r, p^g s, p^g t) with p not dividing ac."""
    check_positive_definite(f)
    if p == 2:
        raise TransformError("odd primes only")
    level = _level(f)
    if level % p:
        raise TransformError(f"{p} does not divide the level {level} of {f}")
    g, h = valuation(level, p), valuation(f.discriminant, p)
    if has_lehman_pattern(f, p, g, h):
        return LehmanNormalForm(f, p, g, h, intmat.identity())
    if g != 1:
        raise TransformError(f"only p exactly dividing the level is supported (p^{g} divides {level})")
    W = kernel_mod_p(f.gram(), p)
    U = adapted_unimodular(W, p)
    f1 = f.transform(U)
    if len(W) == 1 and f1.c % p == 0:
        step = _elementary(1, 2, swap=True) if f1.b % p else _elementary(2, 1, 1)
        U = intmat.mul(U, step)
        f1 = f.transform(U)
    if len(W) == 2 and f1.a % (p * p) == 0:
        step = _elementary(0, 1, swap=True) if f1.b % (p * p) else _elementary(0, 1, 1)
        U = intmat.mul(U, step)
        f1 = f.transform(U)
    if not has_lehman_pattern(f1, p, g, h):
        raise ArithmeticError(f"normal form construction failed for {f} at p={p}")
    return LehmanNormalForm(f1, p, g, h, U)


def phi_p(f, p):
    """Lehman's map: discriminant p^h d' goes to p^(3g-h) d', level and |Aut| kept."""
    lnf = lehman_normal_form(f, p)
    a, b, c, r, s, t = lnf.letters
    g, h = lnf.g, lnf.h
    k = p ** (2 * g - h)
    q = p**g
    return reduce(TernaryForm(a, k * b, q * c, q * r, q * s, k * t))


def phi_2(f):
    """The map C(4N, N^2/N_r) -> C(4N, 16 N^2/N_r): restriction to {v : M v = 0 mod 2}."""
    check_positive_definite(f)
    level, d = _level(f), f.discriminant
    N = level // 4
    if level % 4 or N % 2 == 0 or not is_squarefree(N) or d % 2 == 0 or (N * N) % d or not is_squarefree(N * N // d) or N % (N * N // d):
        raise TransformError(f"{f} is not in C(4N, N^2/N_r)")
    W = kernel_mod_p(f.gram(), 2)
    if len(W) != 1:
        raise ArithmeticError("unexpected kernel mod 2")
    f1 = f.transform(adapted_unimodular(W, 2))
    assert f1.a % 2 == 1 and f1.s % 2 == 0 and f1.t % 2 == 0
    return reduce(TernaryForm(f1.a, 4 * f1.b, 4 * f1.c, 4 * f1.r, 2 * f1.s, 2 * f1.t))


def watson_lattice(f, m):
    """Basis matrix (columns) of Lambda_m(f) = {x : M x = 0, f(x) = 0 mod m}."""
    check_positive_definite(f)
    if m < 1:
        raise TransformError("m must be positive")
    if m > 200:
        raise TransformError("m too large for residue enumeration")
    M = f.gram()
    gens = [tuple(m * int(i == j) for j in range(3)) for i in range(3)]
    for x in product(range(m), repeat=3):
        if f(*x) % m == 0 and all(sum(M[i][j] * x[j] for j in range(3)) % m == 0 for i in range(3)):
            gens.append(x)
    basis = intmat.lattice_basis(gens)
    return intmat.from_columns(basis)


def watson(f, m):
    """g(y) = f(B y)/m for a basis B of Lambda_m(f)."""
    B = watson_lattice(f, m)
    g = f.transform(B)
    if any(x % m for x in g.coefficients):
        raise TransformError(f"lambda_{m} of {f} is not integral")
    return TernaryForm(*(x // m for x in g.coefficients))
