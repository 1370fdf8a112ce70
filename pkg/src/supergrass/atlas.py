"""Chart atlases of super-Grassmannians and their transition morphisms.

A chart of ``Gr_{m|n,k|l}`` is the ``(m+n) x (k+l)`` matrix ``Z_I`` whose
rows at the positions of ``I`` carry an identity matrix (identity rows are
placed in increasing order of ``I``).  The transition from chart ``I`` to
chart ``J`` reads the coordinates of ``J`` off ``Z_I C^-1``, where ``C`` is
the square block of ``Z_I`` on the rows of ``J``.

All charts of an atlas share one :class:`VariableTable`; coordinates are
named canonically by block, chart label, row and column, so pullbacks
between any pair of charts can be composed without renaming.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Mapping

from .errors import (
    ChartMismatchError,
    DimensionError,
    NonInvertibleError,
    OverlapEmptyError,
    ParityError,
    SuperGrassError,
)
from .results import CheckReport, mismatch
from .superalgebra import (
    Assignment,
    Restriction,
    SuperFunction,
    SuperPolynomial,
    VariableTable,
    pair_equals,
    substitute,
    substitute_pair,
)
from .supermatrix import SuperMatrix, body_determinants, extract_rows, mat_mul, super_inverse

__all__ = [
    "ChartIndex",
    "Chart",
    "SuperMorphism",
    "Atlas",
    "build_atlas",
    "pi_atlas",
    "plain_atlas",
    "transition",
    "compose",
    "cocycle_check",
    "gr_morphism",
    "retract_check",
    "inverse_check",
    "atlas_cocycle_suite",
    "identity_morphism",
    "matrix_action",
    "block_matrix",
    "ALPHA",
]

ALPHA = "alpha"
PLAIN, PI = "plain", "pi"


@dataclass(frozen=True, order=True)
class ChartIndex:
    """Index sets of a chart, 1-based.  The pi flavor uses ``even == odd``."""

    flavor: str
    even: tuple[int, ...]
    odd: tuple[int, ...]

    def __post_init__(self):
        if self.flavor not in (PLAIN, PI):
            raise SuperGrassError(f"unknown flavor {self.flavor!r}")
        for s in (self.even, self.odd):
            if list(s) != sorted(set(s)):
                raise SuperGrassError("index sets must be strictly increasing")
        if self.flavor == PI and self.even != self.odd:
            raise SuperGrassError("a pi chart has a single index set")

    @classmethod
    def pi(cls, subset: Iterable[int]) -> "ChartIndex":
        s = tuple(sorted(subset))
        return cls(PI, s, s)

    @classmethod
    def plain(cls, even: Iterable[int], odd: Iterable[int] = ()) -> "ChartIndex":
        return cls(PLAIN, tuple(sorted(even)), tuple(sorted(odd)))

    @property
    def label(self) -> str:
        ev = "-".join(map(str, self.even))
        if self.flavor == PI:
            return ev
        return ev + "|" + "-".join(map(str, self.odd))

    def to_json(self):
        if self.flavor == PI:
            return list(self.even)
        return [list(self.even), list(self.odd)]

    @classmethod
    def from_json(cls, flavor: str, data) -> "ChartIndex":
        if flavor == PI:
            return cls.pi(data)
        return cls.plain(data[0], data[1])

    def __str__(self):
        return "{" + self.label.replace("-", ",") + "}"


def coordinate_name(kind: str, index: ChartIndex, row: int, col: int) -> str:
    """Canonical symbol of a chart coordinate; ``row`` and ``col`` are 1-based within the block."""
    return f"{kind}_{index.label}_{row}_{col}"


@dataclass
class Chart:
    """One coordinate chart: the matrix ``Z_I`` and its coordinate symbols."""

    index: ChartIndex
    z_matrix: SuperMatrix
    even_coords: tuple[str, ...]
    odd_coords: tuple[str, ...]
    positions: dict[str, tuple[int, int]]
    # (block, row, col) of each coordinate, row/col 1-based in the full matrix / block columns
    blocks: dict[str, tuple[str, int, int]]

    @property
    def coordinates(self) -> tuple[str, ...]:
        return self.even_coords + self.odd_coords

    @property
    def table(self) -> VariableTable:
        return self.z_matrix.table

    @property
    def dimension(self) -> tuple[int, int]:
        return (len(self.even_coords), len(self.odd_coords))

    def coordinate(self, name: str) -> SuperFunction:
        return SuperFunction.var(self.table, name)

    def partner(self, name: str) -> str:
        """Even coordinate paired with an odd one in a pi chart (same row and column)."""
        kind, row, col = self.blocks[name]
        if self.index.flavor != PI:
            raise SuperGrassError("coordinate pairing is defined for pi charts only")
        other = "x" if kind == "xi" else "xi"
        return coordinate_name(other, self.index, row, col)


def _chart_layout(flavor, m, n, k, l, index: ChartIndex):
    """Yield ``(row, col, kind, parity, block_row, block_col)`` for every coordinate entry."""
    top_free = [r for r in range(1, m + 1) if r not in index.even]
    bottom_free = [r for r in range(1, n + 1) if r not in index.odd]
    for r in top_free:
        for c in range(1, k + 1):
            yield (r - 1, c - 1, "x", 0, r, c)
        for c in range(1, l + 1):
            yield (r - 1, k + c - 1, "xi", 1, r, c)
    for r in bottom_free:
        for c in range(1, k + 1):
            kind = "xi" if flavor == PI else "eta"
            yield (m + r - 1, c - 1, kind, 1, r, c)
        for c in range(1, l + 1):
            kind = "x" if flavor == PI else "y"
            yield (m + r - 1, k + c - 1, kind, 0, r, c)


def chart_indices(flavor: str, m: int, n: int, k: int, l: int) -> list[ChartIndex]:
    if flavor == PI:
        return [ChartIndex.pi(s) for s in combinations(range(1, n + 1), k)]
    return [ChartIndex.plain(a, b)
            for a in combinations(range(1, m + 1), k)
            for b in combinations(range(1, n + 1), l)]


def _build_table(flavor, m, n, k, l, indices) -> VariableTable:
    even: list[str] = []
    odd: list[str] = []
    seen = set()
    for index in indices:
        for _, _, kind, parity, r, c in _chart_layout(flavor, m, n, k, l, index):
            name = coordinate_name(kind, index, r, c)
            if name in seen:
                continue
            seen.add(name)
            (even if parity == 0 else odd).append(name)
    even.append(ALPHA)
    return VariableTable(tuple(even), tuple(odd), parameters=frozenset({ALPHA}))


def _build_chart(flavor, m, n, k, l, index: ChartIndex, table: VariableTable) -> Chart:
    one = SuperFunction.one(table)
    grid = [[SuperFunction.zero(table)] * (k + l) for _ in range(m + n)]
    for t, r in enumerate(index.even):
        grid[r - 1][t] = one
    for t, r in enumerate(index.odd):
        grid[m + r - 1][k + t] = one
    even, odd = [], []
    positions: dict[str, tuple[int, int]] = {}
    blocks: dict[str, tuple[str, int, int]] = {}
    for row, col, kind, parity, r, c in _chart_layout(flavor, m, n, k, l, index):
        name = coordinate_name(kind, index, r, c)
        grid[row][col] = SuperFunction.var(table, name)
        if name not in positions:
            positions[name] = (row, col)
            blocks[name] = (kind, r, c)
            (even if parity == 0 else odd).append(name)
    z = SuperMatrix(table, grid, [0] * m + [1] * n, [0] * k + [1] * l)
    return Chart(index, z, tuple(even), tuple(odd), positions, blocks)


# ---------------------------------------------------------------------------
# Morphisms


@dataclass
class SuperMorphism:
    """Pullback of every target coordinate, expressed in source coordinates.

    When ``antiholomorphic`` is set the pullback is antilinear: coefficients
    of a target function are conjugated before the substitution.
    ``pullback`` lists the target coordinates in chart order.
    """

    source: ChartIndex
    target: ChartIndex
    pullback: dict[str, SuperFunction]
    antiholomorphic: bool = False

    @property
    def table(self) -> VariableTable:
        return next(iter(self.pullback.values())).table

    def __post_init__(self):
        for name, f in self.pullback.items():
            parity, _ = f.table.lookup(name)
            if not f.is_zero and f.parity() != parity:
                raise ParityError(f"pullback of {name} has the wrong parity: {f}")

    def assignment(self) -> Assignment:
        """Substitution realizing this pullback, extended to conjugate partners."""
        cached = self.__dict__.get("_assignment")
        if cached is not None:
            return cached
        out = dict(self.pullback)
        if self.pullback and self.table.doubled:
            table = self.table
            for name, f in self.pullback.items():
                out[table.partner_name(name)] = f.conjugate()
        a = Assignment(self.table, out)
        self.__dict__["_assignment"] = a
        return a

    def apply(self, f: SuperFunction, assignment=None) -> SuperFunction:
        """Pull back a function of the target coordinates."""
        if self.antiholomorphic:
            f = f.conjugate_coefficients()
        return substitute(f, self.assignment() if assignment is None else assignment)

    def apply_pair(self, f: SuperFunction):
        """Like :meth:`apply` but returns an uninverted ``(num, den)`` pair."""
        if self.antiholomorphic:
            f = f.conjugate_coefficients()
        return substitute_pair(f, self.assignment())

    def equals(self, other: "SuperMorphism") -> bool:
        return self.first_difference(other) is None

    def first_difference(self, other: "SuperMorphism"):
        """``None`` when equal, else ``(coordinate, mine, theirs)`` for the first mismatch."""
        if (self.source, self.target) != (other.source, other.target):
            raise ChartMismatchError("morphisms between different charts")
        if self.antiholomorphic != other.antiholomorphic:
            name = next(iter(self.pullback))
            return (name, self.pullback[name], other.pullback[name])
        if self.pullback.keys() != other.pullback.keys():
            raise ChartMismatchError("morphisms with different coordinate sets")
        for name, f in self.pullback.items():
            g = other.pullback[name]
            if not (f == g):
                return (name, f, g)
        return None

    def __eq__(self, other):
        if not isinstance(other, SuperMorphism):
            return NotImplemented
        try:
            return self.equals(other)
        except ChartMismatchError:
            return False

    __hash__ = None

    def map(self, fn) -> "SuperMorphism":
        return SuperMorphism(self.source, self.target,
                             {k: fn(v) for k, v in self.pullback.items()}, self.antiholomorphic)

    def rebind(self, table: VariableTable) -> "SuperMorphism":
        return self.map(lambda f: f.rebind(table))

    def substitute_values(self, assignment) -> "SuperMorphism":
        return self.map(lambda f: substitute(f, assignment))

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "antiholomorphic": self.antiholomorphic,
            "pullback": [[name, f.to_json()] for name, f in self.pullback.items()],
        }

    @classmethod
    def from_json(cls, flavor: str, table: VariableTable, data) -> "SuperMorphism":
        pull = {}
        for name, f in data["pullback"]:
            table.lookup(name)
            pull[name] = SuperFunction.from_json(table, f)
        return cls(ChartIndex.from_json(flavor, data["source"]),
                   ChartIndex.from_json(flavor, data["target"]),
                   pull, bool(data["antiholomorphic"]))

    def __repr__(self):
        arrow = "~>" if self.antiholomorphic else "->"
        body = ", ".join(f"{k} = {v}" for k, v in self.pullback.items())
        return f"SuperMorphism({self.source} {arrow} {self.target}: {body})"


def identity_morphism(chart: Chart) -> SuperMorphism:
    return SuperMorphism(chart.index, chart.index,
                         {name: chart.coordinate(name) for name in chart.coordinates})


def compose(f: SuperMorphism, g: SuperMorphism) -> SuperMorphism:
    """``f o g``: first ``g``, then ``f``; pullback ``g* o f*``."""
    if g.target != f.source:
        raise ChartMismatchError(f"cannot compose: {g.target} is not {f.source}")
    assignment = g.assignment()
    pull = {name: g.apply(h, assignment) for name, h in f.pullback.items()}
    return SuperMorphism(g.source, f.target, pull, f.antiholomorphic != g.antiholomorphic)


def gr_morphism(f: SuperMorphism) -> SuperMorphism:
    """Keep the odd-degree-0 part of even pullbacks and the degree-1 part of odd ones."""
    if f.antiholomorphic:
        raise SuperGrassError("gr is taken of holomorphic morphisms only")
    pull = {}
    for name, h in f.pullback.items():
        parity, _ = h.table.lookup(name)
        pull[name] = h.component(parity).reduced()
    return SuperMorphism(f.source, f.target, pull)


# ---------------------------------------------------------------------------
# Atlases


@dataclass
class Atlas:
    """All charts of one super-Grassmannian, with a lazily filled transition cache."""

    flavor: str
    m: int
    n: int
    k: int
    l: int
    table: VariableTable
    charts: dict[ChartIndex, Chart]
    graded: bool = False
    _transitions: dict = field(default_factory=dict, repr=False)

    @property
    def indices(self) -> list[ChartIndex]:
        return list(self.charts)

    @property
    def name(self) -> str:
        pre = "gr " if self.graded else ""
        if self.flavor == PI:
            return f"{pre}PiGr({self.n},{self.k})"
        return f"{pre}Gr({self.m}|{self.n},{self.k}|{self.l})"

    def chart(self, index) -> Chart:
        index = self._index(index)
        try:
            return self.charts[index]
        except KeyError:
            raise SuperGrassError(f"no chart {index} in {self.name}") from None

    def _index(self, index) -> ChartIndex:
        if isinstance(index, ChartIndex):
            return index
        if self.flavor == PI:
            return ChartIndex.pi(index)
        return ChartIndex.plain(*index)

    def transition(self, source, target) -> SuperMorphism:
        i, j = self._index(source), self._index(target)
        key = (i, j)
        t = self._transitions.get(key)
        if t is None:
            if self.graded:
                t = gr_morphism(_raw_transition(self, i, j))
            else:
                t = _raw_transition(self, i, j)
            self._transitions[key] = t
        return t

    def pairs(self):
        return [(i, j) for i in self.charts for j in self.charts if i != j]

    def triples(self):
        idx = list(self.charts)
        return [(i, j, k) for i in idx for j in idx for k in idx
                if len({i, j, k}) == 3]

    def all_transitions(self) -> dict:
        for i, j in self.pairs():
            self.transition(i, j)
        return dict(self._transitions)

    def with_transition(self, source, target, morphism: SuperMorphism) -> "Atlas":
        """Copy of the atlas with one cached transition replaced (used for fault injection)."""
        out = Atlas(self.flavor, self.m, self.n, self.k, self.l, self.table, self.charts,
                    self.graded, dict(self._transitions))
        out._transitions[(self._index(source), self._index(target))] = morphism
        return out

    def gr(self) -> "Atlas":
        """The atlas of the retract: every transition replaced by its gr part."""
        out = Atlas(self.flavor, self.m, self.n, self.k, self.l, self.table, self.charts, True)
        for key, t in self._transitions.items():
            out._transitions[key] = gr_morphism(t)
        return out

    def doubled(self) -> "Atlas":
        """Same atlas over a table with a conjugate partner for every symbol."""
        table = self.table.with_doubling()
        charts = {i: Chart(c.index, c.z_matrix.map(lambda f: f.rebind(table), table),
                           c.even_coords, c.odd_coords, c.positions, c.blocks)
                  for i, c in self.charts.items()}
        out = Atlas(self.flavor, self.m, self.n, self.k, self.l, table, charts, self.graded)
        for key, t in self._transitions.items():
            out._transitions[key] = t.rebind(table)
        return out

    def identity(self, index) -> SuperMorphism:
        return identity_morphism(self.chart(index))

    def restriction(self, *indices):
        """Sub-table restriction to the coordinates of the given charts (cached).

        ``None`` for doubled tables, whose conjugate partners must stay visible.
        """
        if self.table.doubled:
            return None
        key = frozenset(self._index(i) for i in indices)
        cache = self.__dict__.setdefault("_restrictions", {})
        r = cache.get(key)
        if r is None:
            even = [c for i in key for c in self.chart(i).even_coords]
            odd = [c for i in key for c in self.chart(i).odd_coords]
            r = Restriction(self.table, even, odd)
            cache[key] = r
        return r

    def restricted(self, r, morphism: SuperMorphism) -> SuperMorphism:
        m = morphism.map(r)
        if morphism.pullback:
            m.__dict__["_restricted_from"] = morphism
        return m


def build_atlas(flavor: str, m: int, n: int, k: int, l: int) -> Atlas:
    """Atlas of ``Gr_{m|n,k|l}`` (plain) or ``PiGr_{n,k}`` (pi, with ``m = n`` and ``l = k``)."""
    if flavor == PI:
        if m != n or l != k:
            raise DimensionError("a pi atlas has m = n and l = k")
        if not 0 < k < n:
            raise DimensionError(f"PiGr needs 0 < k < n, got n={n}, k={k}")
    elif flavor == PLAIN:
        if not (0 < k <= m and 0 <= l <= n):
            raise DimensionError(f"Gr needs 0 < k <= m and 0 <= l <= n, got {m}|{n},{k}|{l}")
    else:
        raise SuperGrassError(f"unknown flavor {flavor!r}")
    indices = chart_indices(flavor, m, n, k, l)
    table = _build_table(flavor, m, n, k, l, indices)
    charts = {i: _build_chart(flavor, m, n, k, l, i, table) for i in indices}
    expected = comb(n, k) if flavor == PI else comb(m, k) * comb(n, l)
    assert len(charts) == expected
    return Atlas(flavor, m, n, k, l, table, charts)


def pi_atlas(n: int, k: int) -> Atlas:
    return build_atlas(PI, n, n, k, k)


def plain_atlas(m: int, n: int, k: int, l: int = 0) -> Atlas:
    return build_atlas(PLAIN, m, n, k, l)


def renormalization_rows(atlas: Atlas, target: ChartIndex) -> list[int]:
    """Zero-based rows of ``Z_I`` forming ``C_IJ`` for the target chart ``J``."""
    return [r - 1 for r in target.even] + [atlas.m + r - 1 for r in target.odd]


def _raw_transition(atlas: Atlas, i: ChartIndex, j: ChartIndex) -> SuperMorphism:
    src = atlas.chart(i)
    dst = atlas.chart(j)
    if i == j:
        return identity_morphism(src)
    c = extract_rows(src.z_matrix, renormalization_rows(atlas, j))
    try:
        c_inv = super_inverse(c)
    except NonInvertibleError as exc:
        raise OverlapEmptyError(f"charts {i} and {j} do not overlap",
                                determinant=exc.determinant) from exc
    zj = mat_mul(src.z_matrix, c_inv)
    factors = [d.num for d in body_determinants(c) if d.is_polynomial()]
    return read_chart(atlas, dst, zj, source=i, factors=factors)


def read_chart(atlas: Atlas, dst: Chart, zj: SuperMatrix, source: ChartIndex,
               antiholomorphic: bool = False, factors=()) -> SuperMorphism:
    """Pullback of ``dst``'s coordinates from a matrix already normalized into ``dst``.

    The identity rows, and for pi charts the repeated lower blocks, are
    asserted rather than assumed.
    """
    ident = dst.z_matrix
    for (row, col) in _fixed_positions(atlas, dst):
        if not (zj[row, col] == ident[row, col]):
            raise SuperGrassError(f"renormalized matrix is not in chart {dst.index} at ({row}, {col})")
    pull = {}
    for name in dst.coordinates:
        row, col = dst.positions[name]
        pull[name] = zj[row, col].cancel(factors).reduced()
    if atlas.flavor == PI:
        n, k = atlas.n, atlas.k
        for name in dst.coordinates:
            row, col = dst.positions[name]
            other = (row + n, (col + k) % (2 * k)) if row < n else None
            if other is not None and not (zj[other] == pull[name]):
                raise SuperGrassError(f"pi symmetry violated for {name}")
    return SuperMorphism(source, dst.index, pull, antiholomorphic)


def block_matrix(atlas: Atlas, g) -> SuperMatrix:
    """``diag(g, g)`` for a pi atlas (``g`` of size ``n``), or ``g`` itself of size ``m + n``."""
    size = atlas.m + atlas.n
    rows = [list(r) for r in g]
    if atlas.flavor == PI and len(rows) == atlas.n:
        zero = 0
        n = atlas.n
        rows = ([r + [zero] * n for r in rows] + [[zero] * n + r for r in rows])
    if len(rows) != size or any(len(r) != size for r in rows):
        raise DimensionError(f"expected a {size}x{size} matrix")
    parity = [0] * atlas.m + [1] * atlas.n
    return SuperMatrix(atlas.table, rows, parity, parity)


def _target_order(atlas: Atlas, m: SuperMatrix, source: ChartIndex):
    """Charts to renormalize into: constant renormalization first, then ``source``, then the rest."""
    constant, rest = [], []
    for j in atlas.charts:
        c = extract_rows(m, renormalization_rows(atlas, j))
        if all(f.is_constant() for row in c.entries for f in row):
            constant.append(j)
        elif j != source:
            rest.append(j)
    if source not in constant:
        rest.insert(0, source)
    return constant + rest


def matrix_action(atlas: Atlas, g, source, antiholomorphic: bool = False,
                  target=None) -> SuperMorphism:
    """Pullback of ``Z -> G Z`` (``G = diag(g, g)`` for pi atlases), renormalized into a chart.

    With ``antiholomorphic`` the chart matrix is conjugated first, so the
    pullback lands in the conjugate coordinates (the atlas must be doubled).
    The target chart is the first one with an invertible renormalization
    block, preferring a constant block, unless ``target`` is given.
    """
    i = atlas._index(source)
    src = atlas.chart(i)
    z = src.z_matrix.conjugate() if antiholomorphic else src.z_matrix
    m = mat_mul(block_matrix(atlas, g), z)
    order = [atlas._index(target)] if target is not None else _target_order(atlas, m, i)
    last = None
    for j in order:
        c = extract_rows(m, renormalization_rows(atlas, j))
        try:
            c_inv = super_inverse(c)
        except NonInvertibleError as exc:
            last = exc
            continue
        zj = mat_mul(m, c_inv)
        factors = [d.num for d in body_determinants(c) if d.is_polynomial()]
        return read_chart(atlas, atlas.chart(j), zj, source=i,
                          antiholomorphic=antiholomorphic, factors=factors)
    raise OverlapEmptyError(f"the image of chart {i} meets none of the tried charts",
                            determinant=getattr(last, "determinant", None))


def _fixed_positions(atlas: Atlas, chart: Chart):
    z = chart.z_matrix
    for r in range(z.rows):
        for c in range(z.cols):
            if z[r, c].is_constant():
                yield (r, c)


def transition(atlas: Atlas, source, target) -> SuperMorphism:
    """Pullback of the target chart's coordinates in the source chart's coordinates."""
    return atlas.transition(source, target)


# ---------------------------------------------------------------------------
# Checks


def _composite_difference(atlas: "Atlas", direct: SuperMorphism, f: SuperMorphism,
                          g: SuperMorphism):
    """First coordinate where ``direct != f o g``, compared by cross-multiplication.

    The work is done over a sub-table holding only the coordinates of the
    two charts involved, which keeps packed exponents short.
    """
    if g.target != f.source or direct.source != g.source or direct.target != f.target:
        raise ChartMismatchError("charts of the composite do not match")
    restrict = atlas.restriction(g.source, g.target, f.target)
    if restrict is not None:
        direct, f, g = (atlas.restricted(restrict, m) for m in (direct, f, g))
    for name, h in f.pullback.items():
        num, den = g.apply_pair(h)
        if not pair_equals(direct.pullback[name], num, den):
            a, b = direct.pullback[name], SuperFunction.over(num, den)
            if restrict is not None:
                a, b = restrict.lift(a), restrict.lift(b)
            return name, a, b
    return None


def cocycle_check(atlas: Atlas, i, j, k) -> CheckReport:
    """``T(k -> i) == T(j -> i) o T(k -> j)`` as exact identities."""
    i, j, k = atlas._index(i), atlas._index(j), atlas._index(k)
    direct = atlas.transition(k, i)
    diff = _composite_difference(atlas, direct, atlas.transition(j, i), atlas.transition(k, j))
    name = f"cocycle {i} {j} {k}"
    if diff is None:
        return CheckReport(name, True, checked=len(direct.pullback))
    coord, a, b = diff
    return CheckReport(name, False, checked=len(direct.pullback),
                       witness=mismatch(coord, a, b, triple=[str(i), str(j), str(k)]))


def inverse_check(atlas: Atlas, i, j) -> CheckReport:
    """``T(j -> i) o T(i -> j)`` is the identity of chart ``i``."""
    i, j = atlas._index(i), atlas._index(j)
    ident = atlas.identity(i)
    diff = _composite_difference(atlas, ident, atlas.transition(j, i), atlas.transition(i, j))
    name = f"inverse {i} {j}"
    if diff is None:
        return CheckReport(name, True, checked=len(ident.pullback))
    coord, a, b = diff
    return CheckReport(name, False, checked=len(ident.pullback),
                       witness=mismatch(coord, a, b, pair=[str(i), str(j)]))


def atlas_cocycle_suite(atlas: Atlas) -> CheckReport:
    checked = 0
    for i, j in atlas.pairs():
        r = inverse_check(atlas, i, j)
        checked += r.checked
        if not r:
            return CheckReport(f"cocycle {atlas.name}", False, checked, r.witness)
    for i, j, k in atlas.triples():
        r = cocycle_check(atlas, i, j, k)
        checked += r.checked
        if not r:
            return CheckReport(f"cocycle {atlas.name}", False, checked, r.witness)
    return CheckReport(f"cocycle {atlas.name}", True, checked,
                       details={"charts": len(atlas.charts), "pairs": len(atlas.pairs()),
                                "triples": len(atlas.triples())})


def retract_check(atlas: Atlas) -> CheckReport:
    """Degree-1 part of odd pullbacks equals the Jacobian of the degree-0 even pullbacks."""
    if atlas.flavor != PI:
        raise SuperGrassError("the retract identification is stated for pi atlases")
    name = f"retract {atlas.name}"
    checked = 0
    for i, j in atlas.pairs():
        t = atlas.transition(i, j)
        src = atlas.chart(i)
        dst = atlas.chart(j)
        for eta in dst.odd_coords:
            y = dst.partner(eta)
            base = t.pullback[y].component(0)
            expected = SuperFunction.zero(atlas.table)
            for xi in src.odd_coords:
                x = src.partner(xi)
                d = base.derivative(x)
                if not d.is_zero:
                    expected = expected + d * src.coordinate(xi)
            actual = t.pullback[eta].component(1)
            checked += 1
            if not (actual == expected):
                return CheckReport(name, False, checked,
                                   mismatch(eta, expected, actual, pair=[str(i), str(j)]))
    return CheckReport(name, True, checked)
