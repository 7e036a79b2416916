"""Exact dense linear algebra over the per-component scalar field.

Matrices are lists of lists of RationalFn (one pi-component at a time).
Sizes at desk scale are small, so plain fraction-arithmetic Gaussian
elimination with first-nonzero pivoting is fine and keeps pivot choices
deterministic.
"""

from .scalars import LaurentPoly, RationalFn

RF_ZERO = RationalFn(LaurentPoly())
RF_ONE = RationalFn(LaurentPoly.const(1))


def identity(n):
    return [[RF_ONE if i == j else RF_ZERO for j in range(n)]
            for i in range(n)]


def zeros(nrows, ncols):
    return [[RF_ZERO] * ncols for _ in range(nrows)]


def matmul(a, b):
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = RF_ZERO
            for t in range(k):
                if a[i][t] and b[t][j]:
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def matvec(a, x):
    out = []
    for row in a:
        acc = RF_ZERO
        for c, v in zip(row, x):
            if c and v:
                acc = acc + c * v
        out.append(acc)
    return out


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _eliminate(mat, ncols):
    """In-place forward elimination; returns list of (row, col) pivots."""
    pivots = []
    r = 0
    for c in range(ncols):
        pick = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                pick = i
                break
        if pick is None:
            continue
        mat[r], mat[pick] = mat[pick], mat[r]
        inv_lead = RF_ONE / mat[r][c]
        mat[r] = [x * inv_lead for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append((r, c))
        r += 1
    return pivots


def rank(a):
    if not a:
        return 0
    work = [list(r) for r in a]
    return len(_eliminate(work, len(a[0])))


def solve(a, rhs_cols):
    """Solve a square system A X = B exactly; raises on a singular A.

    rhs_cols is a matrix whose columns are the right-hand sides; the
    result has the same shape.
    """
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("solve needs a square matrix")
    m = len(rhs_cols[0]) if rhs_cols else 0
    work = [list(ra) + list(rb) for ra, rb in zip(a, rhs_cols)]
    pivots = _eliminate(work, n)
    if len(pivots) != n:
        raise ArithmeticError("singular linear system")
    return [row[n:n + m] for row in work]


def rref(a, ncols):
    """Reduced row echelon form of a: (nonzero rows, pivot columns)."""
    work = [list(r) for r in a]
    pivots = _eliminate(work, ncols)
    return [work[r] for r, _ in pivots], [c for _, c in pivots]


def kernel(a, ncols):
    """Basis of the right null space of a (rows may outnumber columns)."""
    work = [list(r) for r in a]
    pivots = _eliminate(work, ncols)
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        vec = [RF_ZERO] * ncols
        vec[free] = RF_ONE
        for r, c in pivots:
            vec[c] = -work[r][free]
        basis.append(vec)
    return basis
