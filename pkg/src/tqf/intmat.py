"""Exact small-matrix helpers: matrices are tuples of row tuples."""

from fractions import Fraction


def identity(n=3):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A):
    return tuple(zip(*A))


def mul(A, B):
    Bt = transpose(B)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in Bt) for row in A)


def congruent(M, U):
    """U^T M U."""
    return mul(mul(transpose(U), M), U)


def from_columns(cols):
    return transpose(tuple(tuple(c) for c in cols))


def columns(A):
    return transpose(A)


def det(A):
    n = len(A)
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    if n == 3:
        return (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
                - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
                + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]))
    # Laplace along the first row; only used for 4x4
    total = 0
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1:] for row in A[1:])
        total += (-1) ** j * A[0][j] * det(minor)
    return total


def adjugate3(A):
    c = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cols = [k for k in range(3) if k != j]
            minor = (A[rows[0]][cols[0]] * A[rows[1]][cols[1]]
                     - A[rows[0]][cols[1]] * A[rows[1]][cols[0]])
            c[j][i] = (-1) ** (i + j) * minor
    return tuple(tuple(r) for r in c)


def inverse_unimodular(U):
    d = det(U)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(d * x for x in row) for row in adjugate3(U))


def inverse_fraction(A):
    """Inverse over the rationals by Gauss-Jordan."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return tuple(tuple(row[n:]) for row in M)


def lattice_basis(vectors, dim=3):
    """Row-echelon (Hermite-style) basis of the integer lattice spanned by `vectors`.

    Returns a list of basis vectors; full rank is not required.
    """
    rows = [list(v) for v in vectors if any(v)]
    basis = []
    for col in range(dim):
        pivots = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(pivots) > 1:
            pivots.sort(key=lambda r: abs(r[col]))
            p = pivots[0]
            nxt = [p]
            for r in pivots[1:]:
                q = r[col] // p[col]
                r2 = [x - q * y for x, y in zip(r, p)]
                if r2[col] != 0:
                    nxt.append(r2)
                elif any(r2):
                    rest.append(r2)
            pivots = nxt
        if pivots:
            p = pivots[0]
            if p[col] < 0:
                p = [-x for x in p]
            basis.append(p)
        rows = rest
    return [tuple(b) for b in basis]


def complete_to_unimodular(v):
    """A 3x3 unimodular matrix whose first column is the primitive vector v."""
    from math import gcd
    x, y, z = v
    if gcd(gcd(x, y), z) != 1:
        raise ValueError("vector is not primitive")
    # Reduce v to e1 by unimodular row operations, recording them.
    ops = identity(3)
    w = [x, y, z]
    T = [list(r) for r in ops]
    def addrow(i, j, k):  # row_i += k * row_j
        w[i] += k * w[j]
        for c in range(3):
            T[i][c] += k * T[j][c]
    def swap(i, j):
        w[i], w[j] = w[j], w[i]
        T[i], T[j] = T[j], T[i]
    while sum(1 for a in w if a != 0) > 1 or w[0] == 0:
        nz = [i for i in range(3) if w[i] != 0]
        if len(nz) == 1:
            swap(0, nz[0])
            break
        nz.sort(key=lambda i: abs(w[i]))
        i0 = nz[0]
        for i in nz[1:]:
            addrow(i, i0, -(w[i] // w[i0]))
    if w[0] < 0:
        for c in range(3):
            T[0][c] = -T[0][c]
        w[0] = -w[0]
    # T v = e1, so v = T^{-1} e1 is the first column of T^{-1}
    return inverse_unimodular(tuple(tuple(r) for r in T))
