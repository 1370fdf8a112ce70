"""Real structures on PiGr_{n,k}: the four representatives, their fixed loci,
and the existence criterion through ``sigma^2``.

A real structure is stored as an antiholomorphic chart map per chart,
living on the doubled atlas (every coordinate has a conjugate partner).
The map induced by ``Z -> G conj(Z)`` with ``G = diag(g, g)`` covers the
standard conjugation (``g = 1``) and its twist by ``c = pi(a_J)``; the
twist by the standard automorphism negates every odd pullback.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .atlas import (
    PI,
    Atlas,
    Chart,
    ChartIndex,
    SuperMorphism,
    compose,
    coordinate_name,
    identity_morphism,
    matrix_action,
)
from .errors import NonInvertibleError, NotAnInvolutionError, SuperGrassError
from .linalg import a_j, conj, gmatrix, identity, is_scalar, matmul, rref
from .results import CheckReport, mismatch
from .scalars import GaussianRational
from .superalgebra import SuperFunction

__all__ = [
    "RealStructure",
    "standard_mu",
    "compose_real",
    "structure_by_name",
    "STRUCTURE_NAMES",
    "FixedRelationSet",
    "fixed_relations",
    "match_quaternionic",
    "real_points_exist",
    "QuaternionicChartModel",
    "transition_closure_check",
    "structures_equal",
]

STRUCTURE_NAMES = ("mu", "psi-mu", "c-mu", "c-psi-mu")


def _negate_odd(m: SuperMorphism) -> SuperMorphism:
    table = m.table
    pull = {name: (-f if table.lookup(name)[0] else f) for name, f in m.pullback.items()}
    return SuperMorphism(m.source, m.target, pull, m.antiholomorphic)


def _projective_square(g):
    """``lambda`` with ``g * conj(g) = lambda * 1`` and ``lambda`` real, else raise."""
    prod = matmul(g, conj(g))
    lam = is_scalar(prod)
    if lam is None or not lam or not lam.is_real():
        raise NotAnInvolutionError(
            "g * conj(g) is not a nonzero real multiple of the identity", product=prod)
    return lam


@dataclass
class RealStructure:
    """An antiholomorphic involution ``Z -> G conj(Z)`` (optionally composed with
    the standard automorphism), realized chart by chart on a doubled atlas."""

    atlas: Atlas
    base_cocycle: list
    sign_twist: bool
    name: str = ""
    realizations: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.atlas.flavor != PI:
            raise SuperGrassError("real structures are built on pi atlases")
        if not self.atlas.table.doubled:
            self.atlas = self.atlas.doubled()
        self.base_cocycle = gmatrix(self.base_cocycle)
        self.square = _projective_square(self.base_cocycle)

    @property
    def is_standard_cocycle(self) -> bool:
        return is_scalar(self.base_cocycle) is not None

    def realization(self, index, target=None) -> SuperMorphism:
        """The chart map on ``index``; ``target`` forces the image chart."""
        index = self.atlas._index(index)
        key = (index, target)
        m = self.realizations.get(key)
        if m is None:
            m = matrix_action(self.atlas, self.base_cocycle, index, antiholomorphic=True,
                              target=target)
            if self.sign_twist:
                m = _negate_odd(m)
            self.realizations[key] = m
        return m

    def base_map(self, index) -> ChartIndex:
        return self.realization(index).target

    def invariant_charts(self) -> list[ChartIndex]:
        return [i for i in self.atlas.indices if self.base_map(i) == i]

    def square_on(self, index) -> SuperMorphism:
        """``mu o mu`` on one chart, brought back to the starting chart."""
        first = self.realization(index)
        second = self.realization(first.target)
        out = compose(second, first)
        if out.target != out.source:
            out = compose(self.atlas.transition(out.target, out.source), out)
        return out

    def check_involution(self) -> CheckReport:
        name = f"involution {self.name or 'mu'} on {self.atlas.name}"
        checked = 0
        for i in self.atlas.indices:
            sq = self.square_on(i)
            ident = self.atlas.identity(i)
            checked += 1
            diff = sq.first_difference(ident)
            if diff is not None:
                coord, a, b = diff
                return CheckReport(name, False, checked, mismatch(coord, b, a, chart=str(i)))
        return CheckReport(name, True, checked)

    def check_compatibility(self, pairs=None) -> CheckReport:
        """``T(s(i) -> s(j)) o mu_i == mu_j o T(i -> j)`` on every overlap."""
        atlas = self.atlas
        name = f"compatibility {self.name or 'mu'} on {atlas.name}"
        checked = 0
        for i, j in (atlas.pairs() if pairs is None else pairs):
            mi, mj = self.realization(i), self.realization(j)
            si, sj = mi.target, mj.target
            lhs = mi if si == sj else compose(atlas.transition(si, sj), mi)
            rhs = compose(mj, atlas.transition(i, j))
            checked += 1
            diff = lhs.first_difference(rhs)
            if diff is not None:
                coord, a, b = diff
                return CheckReport(name, False, checked,
                                   mismatch(coord, b, a, pair=[str(i), str(j)]))
        return CheckReport(name, True, checked)

    def then(self, g=None, sign_twist: bool = False) -> "RealStructure":
        """``(g, psi^e) o self`` with the chart maps obtained by composing morphisms.

        :func:`compose_real` gives the same structure from the product matrix;
        this path exists so that the two can be compared.
        """
        n = self.atlas.n
        g = identity(n) if g is None else gmatrix(g)
        product = matmul(g, self.base_cocycle)
        _projective_square(product)
        out = RealStructure(self.atlas, product, self.sign_twist != sign_twist,
                            name=f"composite({self.name})")
        for i in self.atlas.indices:
            first = self.realization(i)
            step = matrix_action(self.atlas, g, first.target)
            if sign_twist:
                step = _negate_odd(step)
            out.realizations[(i, None)] = compose(step, first)
        return out


def structures_equal(a: RealStructure, b: RealStructure) -> bool:
    """Chart-by-chart equality, bridging differing image charts by a transition."""
    if a.atlas.name != b.atlas.name:
        return False
    for i in a.atlas.indices:
        ma, mb = a.realization(i), b.realization(i)
        if ma.target != mb.target:
            try:
                ma = compose(a.atlas.transition(ma.target, mb.target), ma)
            except NonInvertibleError:
                return False
        if not ma.equals(mb):
            return False
    return True


def standard_mu(atlas: Atlas) -> RealStructure:
    """The structure induced by complex conjugation of ``C^{n|n}``."""
    return RealStructure(atlas, identity(atlas.n), False, name="mu")


def compose_real(g, sign_twist: bool, mu: RealStructure) -> RealStructure:
    """``(g, psi^sign_twist) o mu``; ``g = None`` is the identity.

    Raises :class:`NotAnInvolutionError` when the product matrix fails the
    cocycle condition ``G conj(G) = lambda * 1`` with ``lambda`` real.
    """
    n = mu.atlas.n
    g = identity(n) if g is None else gmatrix(g)
    product = matmul(g, mu.base_cocycle)
    twist = mu.sign_twist != bool(sign_twist)
    label = {(True, False): "mu", (True, True): "psi-mu",
             (False, False): "c-mu", (False, True): "c-psi-mu"}
    scalar = is_scalar(product) is not None
    return RealStructure(mu.atlas, product, twist, name=label[(scalar, twist)])


def structure_by_name(atlas: Atlas, name: str) -> RealStructure:
    """One of the four representatives: ``mu``, ``psi-mu``, ``c-mu``, ``c-psi-mu``."""
    if name not in STRUCTURE_NAMES:
        raise SuperGrassError(f"unknown structure {name!r}; expected one of {STRUCTURE_NAMES}")
    mu = standard_mu(atlas)
    twist = "psi" in name
    g = a_j(atlas.n) if name.startswith("c") else None
    if g is None and not twist:
        return mu
    return compose_real(g, twist, mu)


# ---------------------------------------------------------------------------
# Fixed points


@dataclass
class FixedRelationSet:
    """Real-linear equations cutting out the fixed points of a structure in one chart.

    Unknowns are the real and imaginary parts of every coordinate, in the
    order ``re(c_1), im(c_1), re(c_2), ...``; each row of ``relations`` is
    ``[coefficients..., constant]`` for ``sum coeff * unknown = constant``.
    ``conj_map`` is the chart map itself, ``c = F(conj coordinates)``.
    """

    chart: ChartIndex
    structure: str
    status: str
    unknowns: list[str] = field(default_factory=list)
    relations: list[list[Fraction]] = field(default_factory=list)
    dimension: int | None = None
    conj_map: dict = field(default_factory=dict, repr=False)
    diagnostic: str | None = None
    chart_data: Chart | None = field(default=None, repr=False)

    @property
    def consistent(self) -> bool:
        return self.status == "consistent"

    def to_json(self) -> dict:
        return {
            "structure": self.structure,
            "chart": str(self.chart),
            "unknowns": self.unknowns,
            "relations": [[str(v) for v in row] for row in self.relations],
            "verdict": self.status,
            "dimension": self.dimension,
            "diagnostic": self.diagnostic,
        }


def _affine_coefficients(f: SuperFunction, chart: Chart, table):
    """``(constant, {coordinate: coefficient of its conjugate})`` or ``None`` if not affine."""
    if not f.is_polynomial():
        return None
    scale = f.den.constant_value().inverse()
    const = GaussianRational(0)
    coeffs: dict[str, GaussianRational] = {}
    conj_names = {table.partner_name(c): c for c in chart.coordinates}
    for c, degs, odd_vars in f.num.items():
        c = c * scale
        total = sum(degs) + len(odd_vars)
        if total == 0:
            const = const + c
            continue
        if total != 1:
            return None
        name = table.even[degs.index(1)] if sum(degs) else table.odd[odd_vars[0]]
        if name not in conj_names:
            return None
        coeffs[conj_names[name]] = c
    return const, coeffs


def _norm_equation_empty(f: SuperFunction, coord: str, table) -> bool:
    """``coord = f(conj)`` with body ``coord * p(conj coord) = q`` forcing ``|coord|^2 < 0``.

    Recognizes the one-variable pattern ``y = lam / conj(y)`` with ``lam``
    real and negative.
    """
    body = f.body()
    num, den = body.num, body.den
    bar = table.partner_name(coord)
    if not num.is_constant():
        return False
    den_terms = den.items()
    if len(den_terms) != 1:
        return False
    c, degs, odd_vars = den_terms[0]
    if odd_vars or sum(degs) != 1 or degs[table.lookup(bar)[1]] != 1:
        return False
    lam = num.constant_value() / c
    return lam.is_real() and lam.re < 0


def fixed_relations(mu: RealStructure, chart, force: bool = False) -> FixedRelationSet:
    """Fixed-point relations of ``mu`` on one chart.

    The chart must be mapped to itself by ``mu``; otherwise the status is
    ``not-applicable``.  With ``force`` the image is renormalized into the
    chart anyway, which may produce non-affine equations; the pattern
    ``|y|^2 = negative`` is then reported as ``empty`` and anything else as
    ``non-affine`` with a pointer to :func:`real_points_exist`.
    """
    atlas = mu.atlas
    index = atlas._index(chart)
    ch = atlas.chart(index)
    table = atlas.table
    label = mu.name or "mu"
    try:
        m = mu.realization(index, target=index if force else None)
    except NonInvertibleError:
        return FixedRelationSet(index, label, "empty", chart_data=ch,
                                diagnostic="the image of the chart misses the chart")
    if m.target != index:
        return FixedRelationSet(index, label, "not-applicable", chart_data=ch,
                                diagnostic=f"chart is mapped to {m.target}")
    coords = list(ch.coordinates)
    unknowns = [f"{part}({c})" for c in coords for part in ("re", "im")]
    pos = {c: t for t, c in enumerate(coords)}
    width = 2 * len(coords)
    affine = {c: _affine_coefficients(m.pullback[c], ch, table) for c in coords}
    if any(a is None for a in affine.values()):
        for c in coords:
            if affine[c] is None and _norm_equation_empty(m.pullback[c], c, table):
                return FixedRelationSet(index, label, "empty", unknowns, [], None,
                                        dict(m.pullback), chart_data=ch,
                                        diagnostic=f"{c} * conj({c}) would be negative")
        return FixedRelationSet(index, label, "non-affine", unknowns, [], None,
                                dict(m.pullback), chart_data=ch,
                                diagnostic="fixed equations are not affine on this chart; "
                                           "use real_points_exist for existence")
    rows = []
    for c in coords:
        const, coeffs = affine[c]
        # c = const + sum k_v conj(v), split into real and imaginary parts
        re_row = [Fraction(0)] * (width + 1)
        im_row = [Fraction(0)] * (width + 1)
        t = pos[c]
        re_row[2 * t] += 1
        im_row[2 * t + 1] += 1
        for v, k in coeffs.items():
            s = pos[v]
            p, q = k.re, k.im
            re_row[2 * s] -= p
            re_row[2 * s + 1] -= q
            im_row[2 * s] -= q
            im_row[2 * s + 1] += p
        re_row[width] = const.re
        im_row[width] = const.im
        rows += [re_row, im_row]
    red, pivots = rref(rows, width + 1)
    if width in pivots:
        status, dim = "empty", None
    else:
        status, dim = "consistent", width - len(pivots)
    return FixedRelationSet(index, label, status, unknowns, [list(r) for r in red], dim,
                            dict(m.pullback), chart_data=ch)


# ---------------------------------------------------------------------------
# Chart models


@dataclass(frozen=True)
class QuaternionicChartModel:
    """Chart of ``PiGr_{n',k'}(H)`` written in complex ``2 x 2`` blocks.

    Every even block is ``[[a, b], [-conj(b), conj(a)]]``; odd blocks follow
    the same pattern, or the pattern with both signs flipped in the ``prime``
    model.
    """

    prime: bool = False

    @staticmethod
    def local(row: int, col: int) -> tuple[int, int]:
        return (row - 1) % 2, (col - 1) % 2

    def partner(self, kind: str, row: int, col: int) -> tuple[int, int, int]:
        """``(row', col', sign)`` with ``entry(row, col) = sign * conj(entry(row', col'))``."""
        a, b = self.local(row, col)
        sign = 1 if a == b else -1
        if kind != "x" and self.prime:
            sign = -sign
        return row + (1 - 2 * a), col + (1 - 2 * b), sign

    def block(self, a, b, odd: bool = False):
        """The ``2 x 2`` block with first row ``(a, b)``."""
        s = -1 if (odd and self.prime) else 1
        return [[a, b], [-b.conjugate() * s, a.conjugate() * s]]

    def contains(self, m) -> bool:
        """A complex ``2 x 2`` matrix has the block shape of this model (even pattern)."""
        return m[1][0] == -m[0][1].conjugate() and m[1][1] == m[0][0].conjugate()


def _expect(fr: FixedRelationSet, table, rule) -> bool:
    ch = fr.chart_data
    for name in ch.coordinates:
        kind, row, col = ch.blocks[name]
        target = rule(kind, row, col)
        if target is None:
            return False
        r2, c2, sign = target
        other = coordinate_name(kind, ch.index, r2, c2)
        if other not in ch.positions:
            return False
        expected = SuperFunction.var(table, table.partner_name(other)).scale(sign)
        if not (fr.conj_map[name] == expected):
            return False
    return True


def match_quaternionic(fr: FixedRelationSet) -> str:
    """Name the chart model the fixed relations describe."""
    if fr.status == "empty":
        return "empty"
    if fr.status != "consistent" or fr.chart_data is None:
        return "unknown"
    table = fr.conj_map[next(iter(fr.conj_map))].table
    if _expect(fr, table, lambda kind, r, c: (r, c, 1)):
        return "Pi-R"
    if _expect(fr, table, lambda kind, r, c: (r, c, 1 if kind == "x" else -1)):
        return "Pi-R-prime"
    for model, label in ((QuaternionicChartModel(False), "Pi-H"),
                         (QuaternionicChartModel(True), "Pi-H-prime")):
        if _expect(fr, table, model.partner):
            return label
    return "unknown"


# ---------------------------------------------------------------------------
# Existence


def real_points_exist(sigma_matrix, k: int) -> str:
    """Existence of ``k``-planes fixed by ``v -> A conj(v)``.

    ``A conj(A) = lambda * 1`` with ``lambda`` real is required; the sign of
    ``lambda`` is the sign of ``sigma^2``.
    """
    a = gmatrix(sigma_matrix)
    prod = matmul(a, conj(a))
    lam = is_scalar(prod)
    if lam is None or not lam or not lam.is_real():
        raise NotAnInvolutionError("A conj(A) is not a real multiple of the identity",
                                   product=prod)
    if lam.re > 0:
        return "nonempty-real"
    return "nonempty-quaternionic" if k % 2 == 0 else "empty"


def transition_closure_check(mu: RealStructure) -> CheckReport:
    """Whether the fixed-point conditions are carried into each other by transitions.

    For invariant charts ``i, j`` this is ``T(i -> j) o mu_i == mu_j o T(i -> j)``;
    for the pure-imaginary structure it certifies that transitions keep
    even coordinates real and odd ones imaginary.
    """
    inv = set(mu.invariant_charts())
    pairs = [(i, j) for i, j in mu.atlas.pairs() if i in inv and j in inv]
    rep = mu.check_compatibility(pairs)
    rep.name = f"transition closure {mu.name or 'mu'} on {mu.atlas.name}"
    rep.details["pairs"] = len(pairs)
    return rep
