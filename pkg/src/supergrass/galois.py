"""First Galois cohomology for Gamma = Gal(C/R).

Finite Gamma-groups are enumerated outright.  ``PGL_n`` with entrywise
conjugation is handled through the sign of ``lambda`` in
``c * conj(c) = lambda * 1``, which is the image of a class under the
connecting map to ``H^2(Gamma, C^*) = {+1, -1}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Hashable, Sequence

from .errors import CocycleError, DimensionError
from .linalg import (a_j, conj, determinant, gmatrix, identity, inverse, is_scalar, matmul,
                     nullspace, rank)
from .scalars import GaussianRational, I

__all__ = [
    "FiniteGammaGroup",
    "ProductGammaGroup",
    "PGLGammaGroup",
    "sign_group",
    "trivial_group",
    "cyclic_group",
    "z1_check",
    "star",
    "h1_finite",
    "delta_sign",
    "ClassificationReport",
    "classify_real_structures",
    "TwistedAlgebra",
    "twisted_algebra_solve",
    "QUATERNION_UNITS",
]


@dataclass
class FiniteGammaGroup:
    """A finite group with an involutive automorphism ``sigma``."""

    elements: list
    mul: Callable
    sigma: Callable
    one: Hashable
    name: str = "A"

    def __post_init__(self):
        elems = set(self.elements)
        if self.one not in elems:
            raise CocycleError("identity missing from the carrier")
        for a in self.elements:
            s = self.sigma(a)
            if s not in elems or self.sigma(s) != a:
                raise CocycleError(f"sigma is not an involution at {a!r}")
        self._inv = {}
        for a in self.elements:
            for b in self.elements:
                if self.mul(a, b) == self.one:
                    self._inv[a] = b
                    break
            else:
                raise CocycleError(f"{a!r} has no inverse")

    @classmethod
    def from_table(cls, elements: Sequence, table: dict, sigma: dict, one, name="A"):
        return cls(list(elements), lambda a, b: table[(a, b)], lambda a: sigma[a], one, name)

    @property
    def finite(self) -> bool:
        return True

    def contains(self, c) -> bool:
        return c in self._inv

    def inverse(self, a):
        return self._inv[a]

    def equal(self, a, b) -> bool:
        return a == b


def sign_group(sigma_trivial: bool = True) -> FiniteGammaGroup:
    """``{+1, -1}`` under multiplication; a real group, so ``sigma`` is the identity."""
    if not sigma_trivial:
        raise CocycleError("{+1, -1} has no nontrivial automorphism")
    return FiniteGammaGroup([1, -1], lambda a, b: a * b, lambda a: a, 1, "{+1,-1}")


def trivial_group() -> FiniteGammaGroup:
    return FiniteGammaGroup([0], lambda a, b: 0, lambda a: a, 0, "1")


def cyclic_group(n: int, inverting: bool = False) -> FiniteGammaGroup:
    """``Z/n`` with ``sigma`` the identity or ``a -> -a``."""
    sig = (lambda a: (-a) % n) if inverting else (lambda a: a)
    return FiniteGammaGroup(list(range(n)), lambda a, b: (a + b) % n, sig, 0, f"Z/{n}")


@dataclass
class PGLGammaGroup:
    """``PGL_n(C)`` with entrywise conjugation; elements are ``GL_n`` lifts over ``Q(i)``."""

    n: int
    name: str = ""

    def __post_init__(self):
        self.name = self.name or f"PGL_{self.n}"

    @property
    def finite(self) -> bool:
        return False

    @property
    def one(self):
        return identity(self.n)

    def contains(self, c) -> bool:
        try:
            c = gmatrix(c)
        except Exception:
            return False
        if len(c) != self.n or any(len(r) != self.n for r in c):
            return False
        return bool(determinant(c))

    def mul(self, a, b):
        return matmul(a, b)

    def sigma(self, a):
        return conj(gmatrix(a))

    def inverse(self, a):
        return inverse(a)

    def equal(self, a, b) -> bool:
        """Equality in ``PGL_n``: ``a = t * b`` for a nonzero scalar ``t``."""
        return is_scalar(matmul(gmatrix(a), inverse(b))) is not None

    def random_element(self, rng: random.Random, bound: int = 3):
        while True:
            m = [[GaussianRational(rng.randint(-bound, bound), rng.randint(-bound, bound))
                  for _ in range(self.n)] for _ in range(self.n)]
            if determinant(m):
                return m


@dataclass
class ProductGammaGroup:
    """Direct product of Gamma-groups, acting componentwise."""

    factors: list
    name: str = ""

    def __post_init__(self):
        self.name = self.name or " x ".join(f.name for f in self.factors)

    @property
    def finite(self) -> bool:
        return all(f.finite for f in self.factors)

    @property
    def elements(self):
        return list(product(*(f.elements for f in self.factors)))

    @property
    def one(self):
        return tuple(f.one for f in self.factors)

    def contains(self, c) -> bool:
        return (isinstance(c, tuple) and len(c) == len(self.factors)
                and all(f.contains(x) for f, x in zip(self.factors, c)))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def sigma(self, a):
        return tuple(f.sigma(x) for f, x in zip(self.factors, a))

    def inverse(self, a):
        return tuple(f.inverse(x) for f, x in zip(self.factors, a))

    def equal(self, a, b) -> bool:
        return all(f.equal(x, y) for f, x, y in zip(self.factors, a, b))


def z1_check(group, c) -> bool:
    """``c * sigma(c) == 1`` in ``group``."""
    if not group.contains(c):
        raise CocycleError(f"{c!r} is not an element of {group.name}")
    return group.equal(group.mul(c, group.sigma(c)), group.one)


def star(group, a, c):
    """``a * c * sigma(a)^-1``."""
    return group.mul(group.mul(a, c), group.inverse(group.sigma(a)))


def h1_finite(group) -> list:
    """One representative per ``star``-orbit of cocycles; the neutral class comes first."""
    if not group.finite:
        raise CocycleError("H^1 is enumerated for finite carriers only")
    z1 = [c for c in group.elements if z1_check(group, c)]
    reps, seen = [], set()
    for c in [group.one] + [c for c in z1 if c != group.one]:
        if c in seen:
            continue
        reps.append(c)
        seen.update(star(group, a, c) for a in group.elements)
    return reps


def delta_sign(c) -> int:
    """Sign of ``lambda`` in ``c * conj(c) = lambda * 1`` for a lift ``c`` of a PGL cocycle."""
    c = gmatrix(c)
    if not PGLGammaGroup(len(c)).contains(c):
        raise CocycleError("a PGL cocycle needs an invertible square lift")
    lam = is_scalar(matmul(c, conj(c)))
    if lam is None:
        raise CocycleError("c * conj(c) is not scalar, so c is not a cocycle")
    if not lam.is_real():
        # cannot happen for a genuine cocycle: conj(c) c = lam and c conj(c) = conj(lam)
        raise CocycleError("c * conj(c) is a non-real scalar")
    return 1 if lam.re > 0 else -1


# ---------------------------------------------------------------------------
# Classification


@dataclass
class ClassificationReport:
    n: int
    k: int
    group_shape: str
    classes: list = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.classes)

    @property
    def labels(self) -> list[str]:
        return [c["label"] for c in self.classes]

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "group shape": self.group_shape,
                "count": self.count, "classes": self.classes}


def _pgl_classes(n: int) -> list[tuple[str, object, int]]:
    """Candidate cocycles ``1`` and ``c = a_J`` (even ``n``), one per Delta sign.

    A PGL class is determined by its Delta sign, so distinct signs are
    distinct classes and no class is missed once both signs occur.  For odd
    ``n`` only ``+1`` occurs: ``lambda^n = |det c|^2 > 0``.
    """
    out = [("1", identity(n), delta_sign(identity(n)))]
    if n % 2 == 0:
        c = a_j(n)
        if not z1_check(PGLGammaGroup(n), c):
            raise CocycleError("a_J failed the cocycle condition")
        out.append(("c", c, delta_sign(c)))
    signs = [s for _, _, s in out]
    assert len(set(signs)) == len(signs)
    return out


def _psi_group() -> FiniteGammaGroup:
    # {id, psi}: psi is defined over R, so Gamma acts trivially
    return FiniteGammaGroup.from_table(
        ["1", "psi"],
        {("1", "1"): "1", ("1", "psi"): "psi", ("psi", "1"): "psi", ("psi", "psi"): "1"},
        {"1": "1", "psi": "psi"}, "1", "{id,psi}")


def classify_real_structures(n: int, k: int) -> ClassificationReport:
    """Equivalence classes of real structures on ``PiGr_{n,k}`` as pairs ``(PGL part, second part)``."""
    if not 0 < k < n:
        raise DimensionError(f"need 0 < k < n, got n={n}, k={k}")
    pgl = _pgl_classes(n)
    if (n, k) == (2, 1):
        shape = "PGL_2 x C^*"
        # H^1(C^*, z -> conj z) is trivial (Hilbert 90)
        second = [("1", "1")]
    else:
        shape = f"PGL_{n} x {{id,psi}}"
        second = [(rep, rep) for rep in h1_finite(_psi_group())]
    report = ClassificationReport(n, k, shape)
    for (g_label, _, sign), (s_label, comp) in product(pgl, second):
        report.classes.append({
            "label": f"({g_label},{'psi' if s_label == 'psi' else '1'})",
            "delta_sign": sign,
            "components": {"pgl": g_label, "second": comp},
        })
    return report


# ---------------------------------------------------------------------------
# The twisted algebra


QUATERNION_UNITS = {
    "1": gmatrix([[1, 0], [0, 1]]),
    "i": gmatrix([[0, 1], [-1, 0]]),
    "j": gmatrix([[0, I], [I, 0]]),
    "k": gmatrix([[I, 0], [0, -I]]),
}


def _real_system(n: int, a):
    """Rows of the real-linear system ``a * conj(Y) - Y * a = 0`` in ``re/im`` of ``Y``."""
    size = n * n
    width = 2 * size
    rows = []
    for r in range(n):
        for c in range(n):
            re = [0] * width
            im = [0] * width
            # (a conj(Y))[r][c] = sum_t a[r][t] conj(Y[t][c])
            for t in range(n):
                k = a[r][t]
                if k:
                    v = t * n + c
                    p, q = k.re, k.im
                    # (p + iq)(u - iw) = pu + qw + i(qu - pw)
                    re[2 * v] += p
                    re[2 * v + 1] += q
                    im[2 * v] += q
                    im[2 * v + 1] -= p
            # (Y a)[r][c] = sum_t Y[r][t] a[t][c]
            for t in range(n):
                k = a[t][c]
                if k:
                    v = r * n + t
                    p, q = k.re, k.im
                    # (u + iw)(p + iq) = pu - qw + i(qu + pw)
                    re[2 * v] -= p
                    re[2 * v + 1] += q
                    im[2 * v] -= q
                    im[2 * v + 1] -= p
            rows += [re, im]
    return rows, width


def _to_matrix(vec, n):
    return [[GaussianRational(vec[2 * (r * n + c)], vec[2 * (r * n + c) + 1])
             for c in range(n)] for r in range(n)]


def _to_vector(m):
    out = []
    for row in m:
        for v in row:
            out += [v.re, v.im]
    return out


@dataclass
class TwistedAlgebra:
    n_prime: int
    dimension: int
    basis: list
    units_fixed: bool
    units_span: bool
    hamilton: dict

    @property
    def expected_dimension(self) -> int:
        return 4 * self.n_prime * self.n_prime

    def to_json(self) -> dict:
        return {
            "n_prime": self.n_prime,
            "dimension": self.dimension,
            "units_fixed": self.units_fixed,
            "units_span": self.units_span,
            "hamilton": {f"{a}{b}": f"{'-' if s < 0 else ''}{c}"
                         for (a, b), (c, s) in sorted(self.hamilton.items())},
        }


def _identify_unit(m):
    for name, u in QUATERNION_UNITS.items():
        if m == u:
            return name, 1
        if m == [[-v for v in row] for row in u]:
            return name, -1
    return None


def twisted_algebra_solve(n_prime: int) -> TwistedAlgebra:
    """Real solutions of ``J conj(Y) = Y J`` in size ``n = 2 n'`` with ``J = a_J``.

    For ``n' = 1`` the solutions are spanned by the quaternion units, and
    their products are read off as the Hamilton table.
    """
    if n_prime < 1:
        raise DimensionError("n' must be positive")
    n = 2 * n_prime
    a = a_j(n)
    rows, width = _real_system(n, a)
    sols = nullspace(rows, width)
    basis = [_to_matrix(v, n) for v in sols]

    def fixed(m):
        return matmul(a, conj(m)) == matmul(m, a)

    def blocks(u):
        # u placed in every diagonal 2x2 block
        out = [[GaussianRational(0)] * n for _ in range(n)]
        for b in range(0, n, 2):
            for r in range(2):
                for c in range(2):
                    out[b + r][b + c] = u[r][c]
        return out

    units = {name: blocks(u) for name, u in QUATERNION_UNITS.items()}
    units_fixed = all(fixed(u) for u in units.values())
    span_rank = rank([_to_vector(b) for b in basis] + [_to_vector(u) for u in units.values()])
    # for n' = 1 the units must span the whole solution space
    units_span = span_rank == len(basis) if n_prime == 1 else units_fixed
    hamilton = {}
    for (x, u), (y, v) in product(QUATERNION_UNITS.items(), repeat=2):
        hamilton[(x, y)] = _identify_unit(matmul(u, v))
    return TwistedAlgebra(n_prime, len(basis), basis, units_fixed, units_span, hamilton)
