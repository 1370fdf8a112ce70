"""Small dense exact linear algebra over Q and Q(i).

Matrices are lists of rows.  These helpers serve the constant matrices of
the group actions and the real-linear systems of the fixed-point and
twisted-algebra computations; they are not meant for large sizes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, NonInvertibleError
from .scalars import GaussianRational, as_gaussian

__all__ = [
    "gmatrix",
    "identity",
    "matmul",
    "conj",
    "transpose",
    "scalar_multiple",
    "is_scalar",
    "determinant",
    "inverse",
    "rref",
    "nullspace",
    "rank",
    "a_j",
    "J2",
]


def gmatrix(rows) -> list[list[GaussianRational]]:
    out = [[as_gaussian(v) for v in row] for row in rows]
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionError("ragged matrix rows")
    return out


def identity(n: int) -> list[list[GaussianRational]]:
    return [[GaussianRational(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if a and len(a[0]) != len(b):
        raise DimensionError("shapes do not fit for a product")
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        out_row = []
        for j in range(cols):
            s = GaussianRational(0)
            for t, v in enumerate(row):
                if v:
                    w = b[t][j]
                    if w:
                        s = s + v * w
            out_row.append(s)
        out.append(out_row)
    return out


def conj(a):
    return [[v.conjugate() for v in row] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def scalar_multiple(a, c):
    c = as_gaussian(c)
    return [[v * c for v in row] for row in a]


def is_scalar(a):
    """``lambda`` when ``a == lambda * 1``, else ``None``."""
    n = len(a)
    if any(len(r) != n for r in a):
        return None
    lam = a[0][0] if n else GaussianRational(1)
    for i in range(n):
        for j in range(n):
            if a[i][j] != (lam if i == j else 0):
                return None
    return lam


def _eliminate(rows, ncols, zero, one):
    """In-place reduced row echelon form; returns the pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != zero), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = one / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != zero:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def determinant(a) -> GaussianRational:
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionError("determinant of a non-square matrix")
    m = [list(r) for r in gmatrix(a)]
    det = GaussianRational(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return GaussianRational(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det = det * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [v - f * w for v, w in zip(m[i], m[c])]
    return det


def inverse(a):
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionError("inverse of a non-square matrix")
    zero, one = GaussianRational(0), GaussianRational(1)
    aug = [list(r) + [one if i == j else zero for j in range(n)]
           for i, r in enumerate(gmatrix(a))]
    pivots = _eliminate(aug, n, zero, one)
    if len(pivots) < n:
        raise NonInvertibleError("singular matrix", determinant=zero)
    return [row[n:] for row in aug]


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q; returns ``(rows, pivots)``."""
    m = [[Fraction(v) for v in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = _eliminate(m, ncols, Fraction(0), Fraction(1))
    return m[:len(pivots)], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{v in Q^ncols : rows * v = 0}``."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(red, pivots):
            v[p] = -r[f]
        basis.append(v)
    return basis


J2 = gmatrix([[0, 1], [-1, 0]])


def a_j(n: int):
    """``diag(J, ..., J)`` for even ``n``."""
    if n % 2:
        raise DimensionError("a_J needs an even size")
    out = [[GaussianRational(0)] * n for _ in range(n)]
    for b in range(0, n, 2):
        out[b][b + 1] = GaussianRational(1)
        out[b + 1][b] = GaussianRational(-1)
    return out
