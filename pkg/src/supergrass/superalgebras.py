"""The strange superalgebra q_n(C) and the graded algebra attached to PiGr_{2,1}.

Elements of ``q_n`` are pairs ``(A, B)`` standing for ``[[A, B], [B, A]]``;
``B = 0`` is even and ``A = 0`` is odd.  The second algebra is given by an
explicit structure table on a named basis.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .errors import SuperGrassError
from .linalg import gmatrix, identity, matmul
from .scalars import GaussianRational, as_gaussian

__all__ = [
    "QElement",
    "StrangeSuperalgebra",
    "build_qn",
    "StructureTable",
    "build_v21",
    "super_jacobi",
]


def _zeros(n):
    return [[GaussianRational(0)] * n for _ in range(n)]


def _add(a, b, sign=1):
    if sign == 1:
        return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _scale(a, c):
    return [[x * c for x in r] for r in a]


@dataclass(frozen=True)
class QElement:
    a: tuple
    b: tuple

    @classmethod
    def make(cls, a, b):
        return cls(tuple(map(tuple, gmatrix(a))), tuple(map(tuple, gmatrix(b))))

    @property
    def n(self) -> int:
        return len(self.a)

    def parity(self):
        """0 for even, 1 for odd, ``None`` for mixed; zero counts as even."""
        a_zero = all(not v for r in self.a for v in r)
        b_zero = all(not v for r in self.b for v in r)
        if b_zero:
            return 0
        if a_zero:
            return 1
        return None

    def is_zero(self) -> bool:
        return all(not v for r in self.a + self.b for v in r)

    def __add__(self, other):
        return QElement.make(_add(self.a, other.a), _add(self.b, other.b))

    def __sub__(self, other):
        return QElement.make(_add(self.a, other.a, -1), _add(self.b, other.b, -1))

    def scale(self, c):
        c = as_gaussian(c)
        return QElement.make(_scale(self.a, c), _scale(self.b, c))

    def __mul__(self, other):
        """Matrix product inside ``q_n``: ``(A, B)(C, D) = (AC + BD, AD + BC)``."""
        a, b, c, d = self.a, self.b, other.a, other.b
        return QElement.make(_add(matmul(a, c), matmul(b, d)), _add(matmul(a, d), matmul(b, c)))

    def matrix(self):
        """The ``2n x 2n`` matrix ``[[A, B], [B, A]]``."""
        top = [list(ra) + list(rb) for ra, rb in zip(self.a, self.b)]
        bottom = [list(rb) + list(ra) for ra, rb in zip(self.a, self.b)]
        return top + bottom


def _bracket(x: QElement, y: QElement) -> QElement:
    px, py = x.parity(), y.parity()
    if px is None or py is None:
        raise SuperGrassError("the superbracket is taken of homogeneous elements")
    if px and py:
        return x * y + y * x
    return x * y - y * x


@dataclass
class StrangeSuperalgebra:
    """``q_n(C)`` with its centre ``<E_2n>``."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise SuperGrassError("q_n is built for n >= 2")

    def bracket(self, x: QElement, y: QElement) -> QElement:
        return _bracket(x, y)

    def identity(self) -> QElement:
        return QElement.make(identity(self.n), _zeros(self.n))

    def basis(self) -> list[QElement]:
        n = self.n
        out = []
        for parity in (0, 1):
            for i, j in product(range(n), repeat=2):
                e = _zeros(n)
                e[i][j] = GaussianRational(1)
                out.append(QElement.make(e, _zeros(n)) if parity == 0
                           else QElement.make(_zeros(n), e))
        return out

    @property
    def dims(self) -> tuple[int, int]:
        return (self.n * self.n, self.n * self.n)

    @property
    def dimension(self) -> int:
        return 2 * self.n * self.n

    @property
    def quotient_dimension(self) -> int:
        """Dimension of ``q_n / <E_2n>``."""
        return self.dimension - 1

    def is_member(self, m) -> bool:
        """``m`` (a ``2n x 2n`` matrix) has the block form ``[[A, B], [B, A]]``."""
        n = self.n
        return all(m[i][j] == m[i + n][j + n] and m[i][j + n] == m[i + n][j]
                   for i in range(n) for j in range(n))

    def random_homogeneous(self, rng: random.Random, parity: int | None = None, bound: int = 3):
        n = self.n
        if parity is None:
            parity = rng.randrange(2)

        def entry():
            return GaussianRational(rng.randint(-bound, bound), rng.randint(-bound, bound))

        m = [[entry() for _ in range(n)] for _ in range(n)]
        return QElement.make(m, _zeros(n)) if parity == 0 else QElement.make(_zeros(n), m)


def build_qn(n: int) -> StrangeSuperalgebra:
    return StrangeSuperalgebra(n)


def super_jacobi(x: QElement, y: QElement, z: QElement) -> QElement:
    """``[x,[y,z]] - [[x,y],z] - (-1)^{xy} [y,[x,z]]``; zero when Jacobi holds."""
    out = _bracket(x, _bracket(y, z)) - _bracket(_bracket(x, y), z)
    r2 = _bracket(y, _bracket(x, z))
    return out + r2 if (x.parity() and y.parity()) else out - r2


# ---------------------------------------------------------------------------
# Structure tables


@dataclass
class StructureTable:
    """A Lie superalgebra on a named basis with homogeneous parity and Z-degree.

    ``table[(a, b)]`` is ``{c: coefficient}`` for ``[e_a, e_b]``; missing
    pairs bracket to zero.  Only pairs with ``a <= b`` in basis order need be
    listed; the rest follow from super-antisymmetry.
    """

    basis: list[str]
    parity: dict[str, int]
    degree: dict[str, int]
    table: dict = field(default_factory=dict)

    def __post_init__(self):
        pos = {b: i for i, b in enumerate(self.basis)}
        full = {}
        for (a, b), out in self.table.items():
            out = {k: as_gaussian(v) for k, v in out.items() if v}
            full[(a, b)] = out
            if a != b:
                sign = 1 if (self.parity[a] and self.parity[b]) else -1
                full[(b, a)] = {k: v * sign for k, v in out.items()}
            elif not (self.parity[a]) and out:
                raise SuperGrassError(f"[{a},{a}] must vanish for an even element")
            if pos[a] > pos[b] and (b, a) in self.table:
                raise SuperGrassError(f"bracket of {a}, {b} given twice")
        self.table = full

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def graded_piece(self, p: int) -> list[str]:
        return [b for b in self.basis if self.degree[b] == p]

    def bracket(self, x: dict, y: dict) -> dict:
        """Bracket of vectors given as ``{basis name: coefficient}``."""
        out: dict = {}
        for a, ca in x.items():
            if not ca:
                continue
            for b, cb in y.items():
                if not cb:
                    continue
                for c, k in self.table.get((a, b), {}).items():
                    out[c] = out.get(c, GaussianRational(0)) + ca * cb * k
        return {c: v for c, v in out.items() if v}

    def vector_parity(self, x: dict):
        ps = {self.parity[a] for a, c in x.items() if c}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def jacobi_defect(self, a: str, b: str, c: str) -> dict:
        x, y, z = {a: GaussianRational(1)}, {b: GaussianRational(1)}, {c: GaussianRational(1)}
        lhs = self.bracket(x, self.bracket(y, z))
        r1 = self.bracket(self.bracket(x, y), z)
        r2 = self.bracket(y, self.bracket(x, z))
        sign = -1 if (self.parity[a] and self.parity[b]) else 1
        out = dict(lhs)
        for k, v in r1.items():
            out[k] = out.get(k, GaussianRational(0)) - v
        for k, v in r2.items():
            out[k] = out.get(k, GaussianRational(0)) - sign * v
        return {k: v for k, v in out.items() if v}

    def check_jacobi(self):
        """First basis triple violating super Jacobi, or ``None``."""
        for a, b, c in product(self.basis, repeat=3):
            if self.jacobi_defect(a, b, c):
                return (a, b, c)
        return None

    def check_grading(self):
        """First pair whose bracket leaves the expected degree and parity, or ``None``."""
        for (a, b), out in self.table.items():
            for c in out:
                if self.degree[c] != self.degree[a] + self.degree[b]:
                    return (a, b, c)
                if self.parity[c] != (self.parity[a] ^ self.parity[b]):
                    return (a, b, c)
        return None


_SL2 = ("h", "e", "f")
# [h, e] = 2e, [h, f] = -2f, [e, f] = h
_SL2_BRACKET = {("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1}}


def build_v21() -> StructureTable:
    """``g = g_-1 + g_0 + g_1`` with ``g_-1 = V`` (adjoint sl_2, odd), ``g_0 = sl_2``,
    ``g_1 = <d>`` (odd), plus the grading operator ``z``.

    ``[g_0, g_1] = 0`` and ``[d, v] = v`` viewed in ``g_0``.
    """
    v = {s: f"v_{s}" for s in _SL2}
    basis = [v[s] for s in _SL2] + list(_SL2) + ["d", "z"]
    parity = {**{v[s]: 1 for s in _SL2}, **{s: 0 for s in _SL2}, "d": 1, "z": 0}
    degree = {**{v[s]: -1 for s in _SL2}, **{s: 0 for s in _SL2}, "d": 1, "z": 0}
    table: dict = {}
    for (a, b), out in _SL2_BRACKET.items():
        table[(a, b)] = dict(out)
        # adjoint action of g_0 on V = g_-1
        table[(a, v[b])] = {v[c]: k for c, k in out.items()}
        table[(b, v[a])] = {v[c]: -k for c, k in out.items()}
    for s in _SL2:
        table[(v[s], "d")] = {s: 1}
        table[("z", v[s])] = {v[s]: -1}
    table[("z", "d")] = {"d": 1}
    # put every key in basis order; super-antisymmetry supplies the rest
    pos = {b: i for i, b in enumerate(basis)}
    ordered = {}
    for (a, b), out in table.items():
        if pos[a] > pos[b]:
            sign = 1 if (parity[a] and parity[b]) else -1
            ordered[(b, a)] = {k: sign * c for k, c in out.items()}
        else:
            ordered[(a, b)] = out
    return StructureTable(basis, parity, degree, ordered)
