"""Small exact linear algebra over a NumberField.

Matrices are lists (or tuples) of rows of NumberFieldElement.  Sizes
here are tiny (graded pieces of desk-scale quotient rings), so the
algorithms favour exactness and determinism over asymptotics.
"""

from __future__ import annotations

from .errors import DimensionMismatch


def identity(field, n):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    if len(a[0]) != k:
        raise DimensionMismatch("matrix product shape mismatch")
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a, v):
    if a and len(a[0]) != len(v):
        raise DimensionMismatch("matrix-vector shape mismatch")
    out = []
    for row in a:
        acc = row[0] * v[0]
        for t in range(1, len(v)):
            acc = acc + row[t] * v[t]
        out.append(acc)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def dot(u, v):
    if len(u) != len(v):
        raise DimensionMismatch("dot product length mismatch")
    acc = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        acc = acc + a * b
    return acc


def bareiss_det(matrix, field):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if n == 0:
        return field.one
    m = [list(row) for row in matrix]
    sign_flip = False
    prev = field.one
    for k in range(n - 1):
        if not m[k][k]:
            pivot_row = next((i for i in range(k + 1, n) if m[i][k]), None)
            if pivot_row is None:
                return field.zero
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign_flip = not sign_flip
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev
            m[i][k] = field.zero
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign_flip else det


def _eliminate(matrix, field):
    """Row echelon form by exact Gaussian elimination.

    Returns (rows, pivot_cols); rows are reduced so each pivot is 1 and
    is the only nonzero entry in its column.
    """
    rows = [list(r) for r in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(matrix, field):
    if not matrix:
        return 0
    return len(_eliminate(matrix, field)[1])


def kernel_basis(matrix, field, ncols=None):
    """Basis of the right kernel, deterministic (free columns in order)."""
    if not matrix:
        return [
            [field.one if i == j else field.zero for i in range(ncols)]
            for j in range(ncols)
        ] if ncols else []
    ncols = len(matrix[0])
    rows, pivots = _eliminate(matrix, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [field.zero] * ncols
        vec[fc] = field.one
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        basis.append(vec)
    return basis


def solve(matrix, rhs_cols, field):
    """Solve matrix * X = rhs for each column in rhs_cols.

    Every system must be consistent; raises ValueError otherwise.
    Returns the list of solution vectors (minimal-support solution when
    the matrix has a nontrivial kernel).
    """
    if not matrix:
        raise DimensionMismatch("empty system")
    ncols = len(matrix[0])
    aug = [list(row) + [col[i] for col in rhs_cols] for i, row in enumerate(matrix)]
    rows, pivots = _eliminate(aug, field)
    pivots_in_matrix = [p for p in pivots if p < ncols]
    if len(pivots_in_matrix) != len(pivots):
        raise ValueError("inconsistent linear system")
    sols = []
    for j in range(len(rhs_cols)):
        vec = [field.zero] * ncols
        for r, pc in enumerate(pivots_in_matrix):
            vec[pc] = rows[r][ncols + j]
        sols.append(vec)
    return sols


def inverse(matrix, field):
    n = len(matrix)
    cols = [[field.one if i == j else field.zero for i in range(n)] for j in range(n)]
    sols = solve(matrix, cols, field)
    return transpose(sols)
