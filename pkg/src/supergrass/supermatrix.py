"""Matrices over super-functions with an optional block parity signature.

The parity of entry ``(i, j)`` is ``row_parity[i] ^ col_parity[j]`` when a
signature is present.  Inversion splits a matrix into its body (odd-free
part) and soul and sums the finite Neumann series
``sum_p (-B^-1 N)^p B^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DimensionError, NonInvertibleError, ParityError, SuperGrassError
from .superalgebra import SuperFunction, SuperPolynomial, VariableTable

__all__ = [
    "SuperMatrix",
    "BodySoulSplit",
    "mat_mul",
    "super_inverse",
    "extract_rows",
    "body_soul_split",
    "body_determinants",
]


def _coerce_entry(table, value) -> SuperFunction:
    if isinstance(value, SuperFunction):
        return value
    if isinstance(value, SuperPolynomial):
        return SuperFunction(value)
    return SuperFunction.constant(table, value)


class SuperMatrix:
    """Immutable rectangular grid of :class:`SuperFunction` entries."""

    __slots__ = ("table", "rows", "cols", "entries", "row_parity", "col_parity")

    def __init__(self, table: VariableTable, entries: Sequence[Sequence], row_parity=None,
                 col_parity=None, check: bool = True):
        grid = tuple(tuple(_coerce_entry(table, v) for v in row) for row in entries)
        self.table = table
        self.rows = len(grid)
        self.cols = len(grid[0]) if grid else 0
        if any(len(r) != self.cols for r in grid):
            raise DimensionError("ragged matrix rows")
        self.entries = grid
        if (row_parity is None) != (col_parity is None):
            raise SuperGrassError("give both row and column parities or neither")
        self.row_parity = None if row_parity is None else tuple(row_parity)
        self.col_parity = None if col_parity is None else tuple(col_parity)
        if self.row_parity is not None:
            if len(self.row_parity) != self.rows or len(self.col_parity) != self.cols:
                raise DimensionError("parity signature does not match the shape")
            if check:
                self.check_parity()

    # -- construction -----------------------------------------------------

    @classmethod
    def identity(cls, table, n: int, parity=None) -> "SuperMatrix":
        one = SuperFunction.one(table)
        zero = SuperFunction.zero(table)
        grid = [[one if i == j else zero for j in range(n)] for i in range(n)]
        return cls(table, grid, parity, parity, check=False)

    @classmethod
    def zeros(cls, table, rows: int, cols: int, row_parity=None, col_parity=None):
        zero = SuperFunction.zero(table)
        return cls(table, [[zero] * cols for _ in range(rows)], row_parity, col_parity, check=False)

    @classmethod
    def diag_blocks(cls, table, blocks: Sequence[Sequence[Sequence]]) -> "SuperMatrix":
        """Block-diagonal matrix from square blocks of scalars or entries."""
        n = sum(len(b) for b in blocks)
        zero = SuperFunction.zero(table)
        grid = [[zero] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i, row in enumerate(b):
                for j, v in enumerate(row):
                    grid[off + i][off + j] = _coerce_entry(table, v)
            off += len(b)
        return cls(table, grid)

    # -- inspection -------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def signed(self) -> bool:
        return self.row_parity is not None

    def __getitem__(self, ij) -> SuperFunction:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[SuperFunction, ...]:
        return self.entries[i]

    def entry_parity(self, i: int, j: int):
        if self.row_parity is None:
            return None
        return self.row_parity[i] ^ self.col_parity[j]

    def check_parity(self):
        for i in range(self.rows):
            for j in range(self.cols):
                f = self.entries[i][j]
                if f.is_zero:
                    continue
                want = self.row_parity[i] ^ self.col_parity[j]
                if f.parity() != want:
                    raise ParityError(f"entry ({i}, {j}) = {f} should have parity {want}")

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_identity(self) -> bool:
        if not self.is_square():
            return False
        for i in range(self.rows):
            for j in range(self.cols):
                f = self.entries[i][j]
                if i == j:
                    if not (f == 1):
                        return False
                elif not f.is_zero:
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        if self.shape != other.shape or self.table != other.table:
            return False
        return all(a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb))

    __hash__ = None

    # -- elementwise ------------------------------------------------------

    def map(self, fn: Callable[[SuperFunction], SuperFunction], table=None,
            keep_signature: bool = True) -> "SuperMatrix":
        grid = [[fn(v) for v in row] for row in self.entries]
        rp, cp = (self.row_parity, self.col_parity) if keep_signature else (None, None)
        return SuperMatrix(table or self.table, grid, rp, cp, check=False)

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        grid = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        return SuperMatrix(self.table, grid, *_common_signature(self, other), check=False)

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {self.shape} and {other.shape}")
        grid = [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        return SuperMatrix(self.table, grid, *_common_signature(self, other), check=False)

    def __neg__(self):
        return self.map(lambda f: -f)

    def scale(self, c) -> "SuperMatrix":
        return self.map(lambda f: f.scale(c))

    def __matmul__(self, other):
        return mat_mul(self, other)

    def transpose(self) -> "SuperMatrix":
        """Plain entrywise transpose (no super-transpose signs)."""
        grid = [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return SuperMatrix(self.table, grid, self.col_parity, self.row_parity, check=False)

    def conjugate(self) -> "SuperMatrix":
        return self.map(lambda f: f.conjugate())

    def substitute(self, assignment) -> "SuperMatrix":
        return self.map(lambda f: f.substitute(assignment))

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> "SuperMatrix":
        grid = [[self.entries[i][j] for j in cols] for i in rows]
        rp = None if self.row_parity is None else [self.row_parity[i] for i in rows]
        cp = None if self.col_parity is None else [self.col_parity[j] for j in cols]
        return SuperMatrix(self.table, grid, rp, cp, check=False)

    def body(self) -> "SuperMatrix":
        return self.map(lambda f: f.body())

    def soul(self) -> "SuperMatrix":
        return self.map(lambda f: f.soul())

    def odd_support(self) -> int:
        m = 0
        for row in self.entries:
            for f in row:
                m |= f.num.odd_support()
        return m

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "row_parity": None if self.row_parity is None else list(self.row_parity),
            "col_parity": None if self.col_parity is None else list(self.col_parity),
            "entries": [[f.to_json() for f in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, table, data) -> "SuperMatrix":
        grid = [[SuperFunction.from_json(table, f) for f in row] for row in data["entries"]]
        if len(grid) != data["rows"] or any(len(r) != data["cols"] for r in grid):
            raise DimensionError("serialized matrix shape does not match its entries")
        return cls(table, grid, data.get("row_parity"), data.get("col_parity"))

    def __repr__(self):
        body = "; ".join(", ".join(str(f) for f in row) for row in self.entries)
        return f"SuperMatrix[{body}]"


def _common_signature(a: SuperMatrix, b: SuperMatrix):
    if a.row_parity == b.row_parity and a.col_parity == b.col_parity:
        return a.row_parity, a.col_parity
    return None, None


@dataclass(frozen=True)
class BodySoulSplit:
    body: SuperMatrix
    soul: SuperMatrix


def body_soul_split(m: SuperMatrix) -> BodySoulSplit:
    return BodySoulSplit(m.body(), m.soul())


def _dot(table, left: Sequence[SuperFunction], right: Sequence[SuperFunction]) -> SuperFunction:
    acc = None
    for a, b in zip(left, right):
        if a.is_zero or b.is_zero:
            continue
        p = a * b
        acc = p if acc is None else acc + p
    return SuperFunction.zero(table) if acc is None else acc


def mat_mul(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    """Row-by-column product, entries multiplied in the written order."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    if a.table != b.table:
        from .errors import IncompatibleRingsError
        raise IncompatibleRingsError("matrices over different variable tables")
    cols = [tuple(b.entries[i][j] for i in range(b.rows)) for j in range(b.cols)]
    grid = [[_dot(a.table, row, col) for col in cols] for row in a.entries]
    if a.signed and b.signed and a.col_parity == b.row_parity:
        return SuperMatrix(a.table, grid, a.row_parity, b.col_parity, check=False)
    return SuperMatrix(a.table, grid, check=False)


def extract_rows(z: SuperMatrix, row_indices: Sequence[int]) -> SuperMatrix:
    """Rows of ``z`` at the given zero-based, strictly increasing positions."""
    idx = list(row_indices)
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise SuperGrassError("row indices must be strictly increasing")
    if idx and (idx[0] < 0 or idx[-1] >= z.rows):
        raise DimensionError(f"row index out of range for a {z.rows}-row matrix")
    return z.block(idx, range(z.cols))


# ---------------------------------------------------------------------------
# Inversion


def _components(body: SuperMatrix) -> list[tuple[list[int], list[int]]]:
    """Connected row/column blocks of the nonzero pattern of a square matrix."""
    n = body.rows
    parent = list(range(2 * n))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for i in range(n):
        for j in range(n):
            if not body.entries[i][j].is_zero:
                ri, rj = find(i), find(n + j)
                if ri != rj:
                    parent[ri] = rj
    groups: dict[int, tuple[list, list]] = {}
    for u in range(2 * n):
        g = groups.setdefault(find(u), ([], []))
        if u < n:
            g[0].append(u)
        else:
            g[1].append(u - n)
    return list(groups.values())


def _determinant(table, m: list[list[SuperFunction]]) -> SuperFunction:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        a = m
        return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))
    # fraction-field elimination, tracking the row-swap sign
    rows = [list(r) for r in m]
    det = SuperFunction.one(table)
    for c in range(n):
        piv = next((r for r in range(c, n) if not rows[r][c].is_zero), None)
        if piv is None:
            return SuperFunction.zero(table)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        p = rows[c][c]
        det = det * p
        inv = p.inverse()
        for r in range(c + 1, n):
            if rows[r][c].is_zero:
                continue
            f = rows[r][c] * inv
            rows[r] = [rows[r][j] - f * rows[c][j] for j in range(n)]
    return det.reduced()


def _minor(m, i, j):
    return [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]


def _invert_body_block(table, m: list[list[SuperFunction]]) -> list[list[SuperFunction]]:
    n = len(m)
    det = _determinant(table, m)
    if det.is_zero:
        raise NonInvertibleError("body of the matrix is singular", determinant=det)
    det_inv = det.inverse()
    if n == 1:
        return [[det_inv]]
    if n <= 4:
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                cof = _determinant(table, _minor(m, i, j))
                if (i + j) & 1:
                    cof = -cof
                out[j][i] = (cof * det_inv).reduced()
        return out
    # Gauss-Jordan over the fraction field for larger blocks
    aug = [list(m[i]) + [SuperFunction.one(table) if i == j else SuperFunction.zero(table)
                         for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if not aug[r][c].is_zero)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = aug[c][c].inverse()
        aug[c] = [(v * inv).reduced() for v in aug[c]]
        for r in range(n):
            if r != c and not aug[r][c].is_zero:
                f = aug[r][c]
                aug[r] = [(aug[r][j] - f * aug[c][j]).reduced() for j in range(2 * n)]
    return [row[n:] for row in aug]


def body_inverse(body: SuperMatrix) -> SuperMatrix:
    """Inverse of an odd-free square matrix, block by connected block."""
    if not body.is_square():
        raise DimensionError("only square matrices can be inverted")
    n = body.rows
    table = body.table
    zero = SuperFunction.zero(table)
    out = [[zero] * n for _ in range(n)]
    for rows, cols in _components(body):
        if len(rows) != len(cols):
            det = SuperFunction.zero(table)
            raise NonInvertibleError("body of the matrix is singular", determinant=det)
        block = [[body.entries[i][j] for j in cols] for i in rows]
        inv = _invert_body_block(table, block)
        # (B^-1)[cols][rows] = inverse of the block
        for a, j in enumerate(cols):
            for b, i in enumerate(rows):
                out[j][i] = inv[a][b]
    sig = (body.col_parity, body.row_parity) if body.signed else (None, None)
    return SuperMatrix(table, out, *sig, check=False)


def body_determinants(m: SuperMatrix) -> list[SuperFunction]:
    """Determinants of the connected blocks of the body of a square matrix."""
    body = m.body()
    out = []
    for rows, cols in _components(body):
        if len(rows) != len(cols):
            out.append(SuperFunction.zero(m.table))
            continue
        out.append(_determinant(m.table, [[body.entries[i][j] for j in cols] for i in rows]))
    return out


def super_inverse(c: SuperMatrix) -> SuperMatrix:
    """Exact two-sided inverse of a square matrix with invertible body.

    Raises ``NonInvertibleError`` (carrying the body determinant) when the
    body is singular.
    """
    if not c.is_square():
        raise DimensionError("only square matrices can be inverted")
    split = body_soul_split(c)
    b_inv = body_inverse(split.body)
    soul = split.soul
    q = bin(soul.odd_support()).count("1")
    if q == 0:
        return b_inv
    k = -mat_mul(b_inv, soul)
    total = b_inv
    term = b_inv
    # (B + N)^-1 = sum_{p <= q} (-B^-1 N)^p B^-1, since N^(q+1) = 0
    for _ in range(q):
        term = mat_mul(k, term)
        if all(f.is_zero for row in term.entries for f in row):
            break
        total = total + term
    sig = (c.col_parity, c.row_parity) if c.signed else (None, None)
    return SuperMatrix(c.table, [[f.reduced() for f in row] for row in total.entries],
                       *sig, check=False)
