"""Exact arithmetic in the coordinate ring of a complex superdomain.

Elements are fractions ``num / den`` where ``num`` is a polynomial in even
variables and anticommuting odd generators over Q(i), and ``den`` contains
even variables only.  Inverses of elements with a nilpotent part are formed
as a body inverse times a finite Neumann series, so denominators never
acquire odd generators.

Terms are stored as ``{(exps, mask): (re, im)}``: ``exps`` packs the even
exponents into 16-bit fields of one integer (the top bit of each field is a
guard bit used for divisibility tests), ``mask`` is the set of odd
generators, and the odd factors of a term are always kept in increasing
index order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from ._backend import kernels
from .errors import (
    ConjugationError,
    IncompatibleRingsError,
    NonInvertibleError,
    ParityError,
    SuperGrassError,
)
from .scalars import GaussianRational, as_gaussian

__all__ = [
    "VariableTable",
    "SuperPolynomial",
    "SuperFunction",
    "XiDegreeDecomposition",
    "poly_mul",
    "substitute",
    "substitute_pair",
    "pair_equals",
    "Assignment",
    "Restriction",
    "conjugate",
    "xi_decompose",
    "FIELD_BITS",
]

FIELD_BITS = 16
_FIELD_MASK = (1 << FIELD_BITS) - 1
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1

_ONE = (1, 0)
_mul_terms = kernels.mul_terms
_add_terms = kernels.add_terms
_scale_terms = kernels.scale_terms
_shift_terms = kernels.shift_terms
_merge_negates = kernels.merge_negates


def pack_exponents(exps: Iterable[int]) -> int:
    packed = 0
    for i, e in enumerate(exps):
        if e < 0 or e > MAX_EXPONENT:
            raise SuperGrassError(f"exponent {e} outside [0, {MAX_EXPONENT}]")
        if e:
            packed |= e << (FIELD_BITS * i)
    return packed


def unpack_exponents(packed: int, n: int) -> tuple[int, ...]:
    return tuple((packed >> (FIELD_BITS * i)) & _FIELD_MASK for i in range(n))


def exponent_of(packed: int, i: int) -> int:
    return (packed >> (FIELD_BITS * i)) & _FIELD_MASK


def mask_indices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _demote(q):
    if type(q) is Fraction and q.denominator == 1:
        return q.numerator
    return q


def _pair_div(a, b):
    ar, ai = a
    br, bi = b
    if bi == 0:
        return (_demote(Fraction(ar) / br), _demote(Fraction(ai) / br))
    n = Fraction(br * br + bi * bi)
    return (_demote((ar * br + ai * bi) / n), _demote((ai * br - ar * bi) / n))


def _pair(c) -> tuple:
    if isinstance(c, tuple):
        return c
    return as_gaussian(c).pair()


# ---------------------------------------------------------------------------
# Variable tables


@dataclass(frozen=True, eq=False)
class VariableTable:
    """Ordered even and odd symbols of one coordinate ring.

    ``even_partner[i]`` / ``odd_partner[j]`` give the index of the complex
    conjugate partner when the table is doubled, else ``None``.
    ``parameters`` names even symbols that are adjoined constants (the
    generic homothety parameter) rather than coordinates.
    """

    even: tuple[str, ...]
    odd: tuple[str, ...]
    even_partner: tuple[int, ...] | None = None
    odd_partner: tuple[int, ...] | None = None
    parameters: frozenset[str] = frozenset()
    conjugates: frozenset[str] = frozenset()
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        names = list(self.even) + list(self.odd)
        if len(set(names)) != len(names):
            raise SuperGrassError("variable names must be unique")
        if (self.even_partner is None) != (self.odd_partner is None):
            raise SuperGrassError("partners must be given for both parities or neither")
        for partner, n in ((self.even_partner, len(self.even)), (self.odd_partner, len(self.odd))):
            if partner is not None:
                if len(partner) != n or sorted(partner) != list(range(n)):
                    raise SuperGrassError("partner map must be a permutation")
                if any(partner[partner[i]] != i for i in range(n)):
                    raise SuperGrassError("partner map must be an involution")
        idx = self._index
        for i, name in enumerate(self.even):
            idx[name] = (0, i)
        for j, name in enumerate(self.odd):
            idx[name] = (1, j)
        object.__setattr__(self, "_key", (self.even, self.odd, self.even_partner,
                                         self.odd_partner, self.parameters, self.conjugates))
        object.__setattr__(self, "_hash", hash(self._key))
        object.__setattr__(self, "guard", sum(1 << (FIELD_BITS * i + FIELD_BITS - 1)
                                               for i in range(len(self.even))))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, VariableTable):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __hash__(self):
        return self._hash

    @property
    def n_even(self) -> int:
        return len(self.even)

    @property
    def n_odd(self) -> int:
        return len(self.odd)

    @property
    def doubled(self) -> bool:
        return self.even_partner is not None

    def lookup(self, name: str) -> tuple[int, int]:
        """Return ``(parity, index)`` of a symbol."""
        try:
            return self._index[name]
        except KeyError:
            raise SuperGrassError(f"unknown variable {name!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def is_conjugate_partner(self, name: str) -> bool:
        return name in self.conjugates

    def partner_name(self, name: str) -> str:
        if not self.doubled:
            raise ConjugationError("variable table has no conjugate partners")
        parity, i = self.lookup(name)
        if parity == 0:
            return self.even[self.even_partner[i]]
        return self.odd[self.odd_partner[i]]

    def with_doubling(self, suffix: str = "~") -> "VariableTable":
        """Append a conjugate partner for every symbol (idempotent on doubled tables)."""
        if self.doubled:
            return self
        ne, no = len(self.even), len(self.odd)
        even = self.even + tuple(name + suffix for name in self.even)
        odd = self.odd + tuple(name + suffix for name in self.odd)
        ep = tuple(list(range(ne, 2 * ne)) + list(range(ne)))
        op = tuple(list(range(no, 2 * no)) + list(range(no)))
        conj = frozenset(name + suffix for name in self.even + self.odd)
        params = self.parameters | frozenset(p + suffix for p in self.parameters)
        return VariableTable(even, odd, ep, op, params, conj)

    def to_json(self) -> dict:
        return {
            "even": list(self.even),
            "odd": list(self.odd),
            "even_partner": None if self.even_partner is None else list(self.even_partner),
            "odd_partner": None if self.odd_partner is None else list(self.odd_partner),
            "parameters": sorted(self.parameters),
            "conjugates": sorted(self.conjugates),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "VariableTable":
        ep = data.get("even_partner")
        op = data.get("odd_partner")
        return cls(
            tuple(data["even"]),
            tuple(data["odd"]),
            None if ep is None else tuple(ep),
            None if op is None else tuple(op),
            frozenset(data.get("parameters", ())),
            frozenset(data.get("conjugates", ())),
        )


def extends(big: VariableTable, small: VariableTable) -> bool:
    """True when ``small``'s symbols are a leading segment of ``big``'s, parity by parity."""
    return (big.even[:len(small.even)] == small.even
            and big.odd[:len(small.odd)] == small.odd)


def _check_tables(a, b):
    if a is not b and a != b:
        raise IncompatibleRingsError("operands belong to different variable tables")


# ---------------------------------------------------------------------------
# Polynomials


class SuperPolynomial:
    """Finite sum of coefficient * even monomial * ordered odd monomial."""

    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table: VariableTable, terms: dict | None = None):
        self.table = table
        self.terms = {} if terms is None else terms
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, table):
        return cls(table, {})

    @classmethod
    def one(cls, table):
        return cls(table, {(0, 0): _ONE})

    @classmethod
    def constant(cls, table, c):
        c = _pair(c)
        if c[0] == 0 and c[1] == 0:
            return cls(table, {})
        return cls(table, {(0, 0): c})

    @classmethod
    def var(cls, table, name: str):
        parity, i = table.lookup(name)
        if parity == 0:
            return cls(table, {(1 << (FIELD_BITS * i), 0): _ONE})
        return cls(table, {(0, 1 << i): _ONE})

    @classmethod
    def from_terms(cls, table, items) -> "SuperPolynomial":
        """Build from ``(coeff, even_exponents, odd_indices)`` triples.

        ``even_exponents`` is a dense list or a ``{name: exponent}`` mapping;
        ``odd_indices`` (indices or names) are read as an ordered product and
        re-sorted with the corresponding sign.
        """
        acc: dict = {}
        for coeff, even, odd in items:
            if isinstance(even, Mapping):
                dense = [0] * table.n_even
                for name, e in even.items():
                    parity, i = table.lookup(name)
                    if parity != 0:
                        raise ParityError(f"{name} is odd")
                    dense[i] += e
                even = dense
            if len(even) != table.n_even:
                raise SuperGrassError("even exponent vector has the wrong length")
            exps = pack_exponents(even)
            idx = []
            for o in odd:
                if isinstance(o, str):
                    parity, o = table.lookup(o)
                    if parity != 1:
                        raise ParityError("even symbol in odd index list")
                if not 0 <= o < table.n_odd:
                    raise SuperGrassError(f"odd index {o} out of range")
                idx.append(o)
            if len(set(idx)) != len(idx):
                continue
            sign = _permutation_sign(idx)
            mask = 0
            for o in idx:
                mask |= 1 << o
            c = _pair(coeff)
            if sign < 0:
                c = (-c[0], -c[1])
            acc = _add_terms(acc, {(exps, mask): c}) if c != (0, 0) else acc
        return cls(table, acc)

    # -- inspection -------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0, 0) in self.terms)

    def constant_value(self) -> GaussianRational:
        return GaussianRational.from_pair(self.terms.get((0, 0), (0, 0)))

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get((0, 0)) == _ONE

    def is_even_only(self) -> bool:
        """No term contains an odd generator."""
        return all(mask == 0 for _, mask in self.terms)

    def odd_degrees(self) -> set[int]:
        return {mask.bit_count() for _, mask in self.terms}

    def parity(self):
        """0 or 1 for homogeneous parity, ``None`` for mixed; zero counts as even."""
        par = {d & 1 for d in self.odd_degrees()}
        if len(par) > 1:
            return None
        return par.pop() if par else 0

    def component(self, p: int) -> "SuperPolynomial":
        return SuperPolynomial(self.table, {k: v for k, v in self.terms.items()
                                            if k[1].bit_count() == p})

    def body(self) -> "SuperPolynomial":
        return SuperPolynomial(self.table, {k: v for k, v in self.terms.items() if k[1] == 0})

    def soul(self) -> "SuperPolynomial":
        return SuperPolynomial(self.table, {k: v for k, v in self.terms.items() if k[1] != 0})

    def odd_support(self) -> int:
        m = 0
        for _, mask in self.terms:
            m |= mask
        return m

    def __len__(self):
        return len(self.terms)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, SuperPolynomial):
            _check_tables(self.table, other.table)
            return other
        if isinstance(other, SuperFunction):
            return NotImplemented
        try:
            return SuperPolynomial.constant(self.table, other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return SuperPolynomial(self.table, _add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return SuperPolynomial(self.table, _add_terms(self.terms, other.terms, True))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return SuperPolynomial(self.table, {k: (-r, -i) for k, (r, i) in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SuperPolynomial):
            _check_tables(self.table, other.table)
            return SuperPolynomial(self.table, _mul_terms(self.terms, other.terms))
        if isinstance(other, SuperFunction):
            return NotImplemented
        try:
            c = _pair(other)
        except TypeError:
            return NotImplemented
        return SuperPolynomial(self.table, _scale_terms(self.terms, c))

    def __rmul__(self, other):
        # scalars are even, so left and right scalar multiplication agree
        if isinstance(other, (SuperPolynomial, SuperFunction)):
            return NotImplemented
        return self.__mul__(other)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = SuperPolynomial.one(self.table)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        return SuperFunction(self) / other

    def __rtruediv__(self, other):
        return other / SuperFunction(self)

    def scale(self, c) -> "SuperPolynomial":
        return SuperPolynomial(self.table, _scale_terms(self.terms, _pair(c)))

    def times_monomial(self, exps: int, mask: int, c=_ONE) -> "SuperPolynomial":
        return SuperPolynomial(self.table, _shift_terms(self.terms, exps, mask, _pair(c)))

    def __eq__(self, other):
        if isinstance(other, SuperPolynomial):
            return self.table == other.table and self.terms == other.terms
        if isinstance(other, SuperFunction):
            return NotImplemented
        try:
            return self.terms == SuperPolynomial.constant(self.table, other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- calculus, reduction ---------------------------------------------

    def derivative(self, name: str) -> "SuperPolynomial":
        """Partial derivative in an even variable."""
        parity, i = self.table.lookup(name)
        if parity != 0:
            raise ParityError("only even derivatives are supported")
        shift = FIELD_BITS * i
        unit = 1 << shift
        out = {}
        for (exps, mask), (re, im) in self.terms.items():
            e = (exps >> shift) & _FIELD_MASK
            if e:
                out[(exps - unit, mask)] = (re * e, im * e)
        return SuperPolynomial(self.table, out)

    def reduce_exponent(self, name: str, r: int) -> "SuperPolynomial":
        """Impose ``name**r == 1`` by reducing the exponent of ``name`` mod ``r``."""
        parity, i = self.table.lookup(name)
        if parity != 0 or r < 1:
            raise SuperGrassError("exponent reduction needs an even variable and r >= 1")
        shift = FIELD_BITS * i
        acc: dict = {}
        for (exps, mask), c in self.terms.items():
            e = (exps >> shift) & _FIELD_MASK
            if e >= r:
                exps = exps - ((e - e % r) << shift)
            acc = _add_terms(acc, {(exps, mask): c})
        return SuperPolynomial(self.table, acc)

    def divexact(self, other: "SuperPolynomial"):
        """Exact quotient for odd-free polynomials, or ``None`` if ``other`` does not divide."""
        _check_tables(self.table, other.table)
        if not other.terms:
            raise NonInvertibleError("division by the zero polynomial")
        if not self.terms:
            return SuperPolynomial(self.table, {})
        if not other.is_even_only():
            return None
        if not self.is_even_only():
            # the divisor is even, so each odd monomial divides separately
            groups: dict = {}
            for (e, m), c in self.terms.items():
                groups.setdefault(m, {})[(e, 0)] = c
            out: dict = {}
            for m, terms in groups.items():
                q = SuperPolynomial(self.table, terms).divexact(other)
                if q is None:
                    return None
                for (e, _), c in q.terms.items():
                    out[(e, m)] = c
            return SuperPolynomial(self.table, out)
        if other.is_constant():
            c = other.terms[(0, 0)]
            inv = _pair_div(_ONE, c)
            return SuperPolynomial(self.table, _scale_terms(self.terms, inv))
        if len(self.terms) < len(other.terms):
            return None
        guard = self.table.guard
        lead_key = max(other.terms)
        lead_exps = lead_key[0]
        lead_c = other.terms[lead_key]
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            key = max(rem)
            exps = key[0]
            diff = (exps | guard) - lead_exps
            if diff & guard != guard:
                return None
            mon = diff ^ guard
            c = _pair_div(rem[key], lead_c)
            quot[(mon, 0)] = c
            rem = _add_terms(rem, _shift_terms(other.terms, mon, 0, c), True)
            if len(quot) > 4 * len(self.terms) + 8:
                return None
        return SuperPolynomial(self.table, quot)

    def monomial_content(self) -> int:
        """Packed exponents of the largest even monomial dividing every term."""
        if not self.terms:
            return 0
        n = self.table.n_even
        mins = None
        for exps, _ in self.terms:
            if mins is None:
                mins = list(unpack_exponents(exps, n))
            else:
                for i in range(n):
                    if mins[i]:
                        e = (exps >> (FIELD_BITS * i)) & _FIELD_MASK
                        if e < mins[i]:
                            mins[i] = e
            if not any(mins):
                return 0
        return pack_exponents(mins)

    def divide_monomial(self, exps: int) -> "SuperPolynomial":
        return SuperPolynomial(self.table, {(e - exps, m): c for (e, m), c in self.terms.items()})

    def leading_coefficient(self) -> tuple:
        return self.terms[max(self.terms)]

    def rebind(self, table: VariableTable) -> "SuperPolynomial":
        """The same element over a table that extends this one (same leading symbols)."""
        if table is self.table:
            return self
        if not extends(table, self.table):
            raise IncompatibleRingsError("target table does not extend the source table")
        return SuperPolynomial(table, self.terms)

    # -- conjugation ------------------------------------------------------

    def conjugate_coefficients(self) -> "SuperPolynomial":
        return SuperPolynomial(self.table, {k: (r, -i) for k, (r, i) in self.terms.items()})

    def conjugate(self) -> "SuperPolynomial":
        table = self.table
        if not table.doubled:
            raise ConjugationError("conjugation needs a doubled variable table")
        ne = table.n_even
        ep, op = table.even_partner, table.odd_partner
        exps_cache: dict = {}
        mask_cache: dict = {}
        out = {}
        for (exps, mask), (re, im) in self.terms.items():
            new_exps = exps_cache.get(exps)
            if new_exps is None:
                new_exps = 0
                for i, e in enumerate(unpack_exponents(exps, ne)):
                    if e:
                        new_exps |= e << (FIELD_BITS * ep[i])
                exps_cache[exps] = new_exps
            mc = mask_cache.get(mask)
            if mc is None:
                mapped = [op[j] for j in mask_indices(mask)]
                new_mask = 0
                for j in mapped:
                    new_mask |= 1 << j
                mc = (new_mask, _permutation_sign(mapped))
                mask_cache[mask] = mc
            new_mask, sign = mc
            if sign > 0:
                out[(new_exps, new_mask)] = (re, -im)
            else:
                out[(new_exps, new_mask)] = (-re, im)
        return SuperPolynomial(table, out)

    # -- presentation -----------------------------------------------------

    def sorted_terms(self):
        """Terms in canonical order: graded lex on even exponents, then lex on odd sets."""
        n = self.table.n_even

        def key(item):
            (exps, mask), _ = item
            dense = unpack_exponents(exps, n)
            return (-sum(dense), tuple(-e for e in dense), mask.bit_count(), mask_indices(mask))

        return sorted(self.terms.items(), key=key)

    def items(self):
        """``(GaussianRational, dense even exponents, odd indices)`` in canonical order."""
        n = self.table.n_even
        return [(GaussianRational.from_pair(c), unpack_exponents(e, n), tuple(mask_indices(m)))
                for (e, m), c in self.sorted_terms()]

    def to_json(self) -> list:
        out = []
        for coeff, even, odd in self.items():
            out.append({"coeff": coeff.to_strings(), "even": list(even), "odd": list(odd)})
        return out

    @classmethod
    def from_json(cls, table, data) -> "SuperPolynomial":
        terms = {}
        for entry in data:
            c = GaussianRational.parse(entry["coeff"]).pair()
            odd = list(entry["odd"])
            if odd != sorted(set(odd)):
                raise SuperGrassError("odd index lists must be strictly increasing")
            if any(not 0 <= o < table.n_odd for o in odd):
                raise SuperGrassError("odd index out of range")
            mask = 0
            for o in odd:
                mask |= 1 << o
            key = (pack_exponents(entry["even"]) if len(entry["even"]) == table.n_even
                   else _bad_length(), mask)
            if key in terms:
                raise SuperGrassError("duplicate term in serialized polynomial")
            if c != (0, 0):
                terms[key] = c
        return cls(table, terms)

    def __repr__(self):
        return f"SuperPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        table = self.table
        parts = []
        for coeff, even, odd in self.items():
            factors = []
            for i, e in enumerate(even):
                if e == 1:
                    factors.append(table.even[i])
                elif e:
                    factors.append(f"{table.even[i]}^{e}")
            factors.extend(table.odd[j] for j in odd)
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append("*".join(factors))
            elif coeff == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{coeff}*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")


def _bad_length():
    raise SuperGrassError("even exponent vector has the wrong length")


def _permutation_sign(seq) -> int:
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return -1 if inv & 1 else 1


def poly_mul(a: SuperPolynomial, b: SuperPolynomial) -> SuperPolynomial:
    """Supercommutative product; raises on mismatched tables."""
    _check_tables(a.table, b.table)
    return SuperPolynomial(a.table, _mul_terms(a.terms, b.terms))


# ---------------------------------------------------------------------------
# Fractions


class SuperFunction:
    """``num / den`` with an odd-free, nonzero denominator.

    Fractions are not reduced; equality is decided by cross-multiplication.
    A constant denominator is always folded into the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: SuperPolynomial, den: SuperPolynomial | None = None):
        if den is None:
            den = SuperPolynomial.one(num.table)
        else:
            _check_tables(num.table, den.table)
            if not den.terms:
                raise NonInvertibleError("zero denominator", determinant=den)
            if not den.is_even_only():
                raise SuperGrassError("denominators must be free of odd generators")
            if den.is_constant() and not den.is_one():
                inv = _pair_div(_ONE, den.terms[(0, 0)])
                num = SuperPolynomial(num.table, _scale_terms(num.terms, inv))
                den = SuperPolynomial.one(num.table)
        self.num = num
        self.den = den

    # -- construction -----------------------------------------------------

    @classmethod
    def constant(cls, table, c) -> "SuperFunction":
        return cls(SuperPolynomial.constant(table, c))

    @classmethod
    def var(cls, table, name: str) -> "SuperFunction":
        return cls(SuperPolynomial.var(table, name))

    @classmethod
    def zero(cls, table) -> "SuperFunction":
        return cls(SuperPolynomial.zero(table))

    @classmethod
    def one(cls, table) -> "SuperFunction":
        return cls(SuperPolynomial.one(table))

    @classmethod
    def over(cls, num: SuperPolynomial, den: SuperPolynomial) -> "SuperFunction":
        """``num / den`` where ``den`` may contain odd generators (Neumann inverse)."""
        return _divide_super(num, den)

    @property
    def table(self) -> VariableTable:
        return self.num.table

    # -- inspection -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise SuperGrassError("not a constant")
        return self.num.constant_value()

    def parity(self):
        return self.num.parity()

    def is_even(self) -> bool:
        return self.num.parity() == 0

    def is_odd(self) -> bool:
        return self.num.parity() == 1 or not self.num.terms

    def odd_degrees(self) -> set[int]:
        return self.num.odd_degrees()

    def component(self, p: int) -> "SuperFunction":
        return SuperFunction(self.num.component(p), self.den)

    def body(self) -> "SuperFunction":
        return SuperFunction(self.num.body(), self.den)

    def soul(self) -> "SuperFunction":
        return SuperFunction(self.num.soul(), self.den)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, SuperFunction):
            _check_tables(self.table, other.table)
            return other
        if isinstance(other, SuperPolynomial):
            _check_tables(self.table, other.table)
            return SuperFunction(other)
        try:
            return SuperFunction.constant(self.table, other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _add_fractions(self, other, False)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _add_fractions(self, other, True)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _add_fractions(other, self, True)

    def __neg__(self):
        return SuperFunction(-self.num, self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        num = self.num * other.num
        if self.den.is_one():
            return SuperFunction(num, other.den)
        if other.den.is_one():
            return SuperFunction(num, self.den)
        return SuperFunction(num, self.den * other.den)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other.__mul__(self)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return SuperFunction(self.num ** e, self.den ** e)

    def inverse(self) -> "SuperFunction":
        inv = _divide_super(self.den, self.num)
        return inv

    def scale(self, c) -> "SuperFunction":
        return SuperFunction(self.num.scale(c), self.den)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def equals(self, other) -> bool:
        return self == other

    # -- transformations --------------------------------------------------

    def reduced(self) -> "SuperFunction":
        """Cancel the common even monomial content and make ``den`` monic-leading."""
        num, den = self.num, self.den
        if den.is_one():
            return self
        if num.terms:
            g = _monomial_gcd(num.monomial_content(), den.monomial_content(), self.table.n_even)
            if g:
                num = num.divide_monomial(g)
                den = den.divide_monomial(g)
        q = num.divexact(den)
        if q is not None:
            return SuperFunction(q)
        lc = den.leading_coefficient()
        if lc != _ONE:
            inv = _pair_div(_ONE, lc)
            num = num.scale(inv)
            den = den.scale(inv)
        return SuperFunction(num, den)

    def cancel(self, factors: Iterable[SuperPolynomial]) -> "SuperFunction":
        """Divide out each given even factor as often as it divides both parts."""
        num, den = self.num, self.den
        for g in factors:
            if g.is_constant():
                continue
            while not den.is_one():
                qd = den.divexact(g)
                if qd is None:
                    break
                qn = num.divexact(g)
                if qn is None:
                    break
                num, den = qn, qd
        if num is self.num:
            return self
        return SuperFunction(num, den)

    def derivative(self, name: str) -> "SuperFunction":
        dn = self.num.derivative(name)
        if self.den.is_one():
            return SuperFunction(dn)
        dd = self.den.derivative(name)
        if dd.is_zero:
            return SuperFunction(dn, self.den)
        return SuperFunction(dn * self.den - self.num * dd, self.den * self.den)

    def conjugate(self) -> "SuperFunction":
        return SuperFunction(self.num.conjugate(), self.den.conjugate())

    def conjugate_coefficients(self) -> "SuperFunction":
        return SuperFunction(self.num.conjugate_coefficients(), self.den.conjugate_coefficients())

    def rebind(self, table: VariableTable) -> "SuperFunction":
        if table is self.table:
            return self
        return SuperFunction(self.num.rebind(table), self.den.rebind(table))

    def substitute(self, assignment) -> "SuperFunction":
        return substitute(self, assignment)

    def reduce_exponent(self, name: str, r: int) -> "SuperFunction":
        return SuperFunction(self.num.reduce_exponent(name, r), self.den.reduce_exponent(name, r))

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, table, data) -> "SuperFunction":
        num = SuperPolynomial.from_json(table, data["num"])
        den = SuperPolynomial.from_json(table, data["den"])
        f = cls.__new__(cls)
        if not den.terms or not den.is_even_only():
            raise SuperGrassError("serialized denominator must be nonzero and odd-free")
        f.num = num
        f.den = den
        return f

    def __repr__(self):
        return f"SuperFunction({self})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


def _monomial_gcd(a: int, b: int, n: int) -> int:
    if not a or not b:
        return 0
    out = 0
    for i in range(n):
        ea = exponent_of(a, i)
        if ea:
            e = min(ea, exponent_of(b, i))
            if e:
                out |= e << (FIELD_BITS * i)
    return out


def _add_fractions(f: SuperFunction, g: SuperFunction, negate: bool) -> SuperFunction:
    a, b, c, d = f.num, f.den, g.num, g.den
    if negate:
        c = -c
    if b == d:
        return SuperFunction(a + c, b)
    if b.is_one():
        return SuperFunction(a * d + c, d)
    if d.is_one():
        return SuperFunction(a + c * b, b)
    q = d.divexact(b)
    if q is not None:
        return SuperFunction(a * q + c, d)
    q = b.divexact(d)
    if q is not None:
        return SuperFunction(a + c * q, b)
    return SuperFunction(a * d + c * b, b * d)


def _divide_super(num: SuperPolynomial, den: SuperPolynomial) -> SuperFunction:
    """``num / den`` for a ``den`` whose odd-free part is nonzero."""
    body = den.body()
    if not body.terms:
        raise NonInvertibleError("denominator has zero body", determinant=body)
    soul = den.soul()
    if not soul.terms:
        return SuperFunction(num, body)
    # 1/(b + s) = sum_p (-s)^p b^(q-p) / b^(q+1), with s^(q+1) = 0
    powers = [SuperPolynomial.one(den.table)]
    neg_soul = -soul
    while True:
        nxt = powers[-1] * neg_soul
        if not nxt.terms:
            break
        powers.append(nxt)
    q = len(powers) - 1
    total = SuperPolynomial.zero(den.table)
    body_pow = SuperPolynomial.one(den.table)
    for p in range(q, -1, -1):
        total = total + powers[p] * body_pow
        if p:
            body_pow = body_pow * body
    return SuperFunction(num * total, body_pow * body)


# ---------------------------------------------------------------------------
# Substitution


def _as_function(table, value) -> SuperFunction:
    if isinstance(value, SuperFunction):
        _check_tables(table, value.table)
        return value
    if isinstance(value, SuperPolynomial):
        _check_tables(table, value.table)
        return SuperFunction(value)
    return SuperFunction.constant(table, value)


def _resolve_assignment(table, assignment):
    even: dict[int, SuperFunction] = {}
    odd: dict[int, SuperFunction] = {}
    for name, value in assignment.items():
        parity, i = table.lookup(name)
        value = _as_function(table, value)
        p = value.parity()
        if value.num.terms and p != parity:
            kind = "even" if parity == 0 else "odd"
            raise ParityError(f"{kind} variable {name} assigned a value of the wrong parity: {value}")
        if parity == 0:
            even[i] = value
        else:
            odd[i] = value
    return even, odd


def _total_degree(p: SuperPolynomial) -> int:
    n = p.table.n_even
    return max(sum(unpack_exponents(e, n)) for e, _ in p.terms)


def _common_root(a: SuperPolynomial, b: SuperPolynomial):
    """``r**gcd(s, t)`` when ``a = r**s`` and ``b = r**t``, found by exact division; else ``None``."""
    da, db = _total_degree(a), _total_degree(b)
    while True:
        if da == db:
            return a if a == b else None
        if da > db:
            a, b, da, db = b, a, db, da
        q = b.divexact(a)
        if q is None:
            return None
        b, db = q, db - da


def _power_of(p: SuperPolynomial, base: SuperPolynomial):
    """``e`` with ``p == base**e``, or ``None``."""
    e = 0
    while not p.is_one():
        q = p.divexact(base)
        if q is None:
            return None
        p, e = q, e + 1
    return e


class Assignment:
    """A parity-checked substitution, reusable across many functions.

    Denominators of the assigned values are grouped as powers of common
    bases, so the cleared denominator of a substitution result stays small.
    Powers of the assigned values are cached across calls.
    """

    __slots__ = ("table", "even", "odd", "bases", "even_den", "odd_den",
                 "_pow", "_den_pow", "even_clear", "odd_assigned")

    def __init__(self, table: VariableTable, mapping: Mapping[str, object]):
        self.table = table
        self.even, self.odd = _resolve_assignment(table, mapping)
        dens = []
        for v in list(self.even.values()) + list(self.odd.values()):
            if not v.den.is_one() and all(v.den != d for d in dens):
                dens.append(v.den)
        bases: list[SuperPolynomial] = []
        for d in dens:
            for bi, b in enumerate(bases):
                r = _common_root(b, d)
                if r is not None:
                    bases[bi] = r
                    break
            else:
                bases.append(d)
        self.bases = bases

        def locate(v):
            if v.den.is_one():
                return None
            for bi, b in enumerate(bases):
                e = _power_of(v.den, b)
                if e is not None:
                    return (bi, e)
            raise AssertionError("denominator lost during grouping")

        self.even_den = {i: locate(v) for i, v in self.even.items()}
        self.odd_den = {j: locate(v) for j, v in self.odd.items()}
        self.even_clear = 0
        for i in self.even:
            self.even_clear |= _FIELD_MASK << (FIELD_BITS * i)
        self.odd_assigned = 0
        for j in self.odd:
            self.odd_assigned |= 1 << j
        self._pow: dict = {}
        self._den_pow: dict = {}

    def __bool__(self):
        return bool(self.even or self.odd)

    def even_power(self, i: int, e: int) -> dict:
        key = (i, e)
        p = self._pow.get(key)
        if p is None:
            base = self.even[i].num.terms
            p = base if e == 1 else _mul_terms(self.even_power(i, e - 1), base)
            self._pow[key] = p
        return p

    def even_product(self, powers: tuple) -> dict:
        """Product of cached powers of even values, memoized by prefix."""
        if not powers:
            return {(0, 0): _ONE}
        key = ("prod",) + powers
        p = self._pow.get(key)
        if p is None:
            i, e = powers[-1]
            head = self.even_product(powers[:-1])
            p = _mul_terms(head, self.even_power(i, e))
            self._pow[key] = p
        return p

    def den_power(self, g: int, e: int) -> dict:
        if e == 0:
            return {(0, 0): _ONE}
        key = (g, e)
        p = self._den_pow.get(key)
        if p is None:
            base = self.bases[g].terms
            p = base if e == 1 else _mul_terms(self.den_power(g, e - 1), base)
            self._den_pow[key] = p
        return p


def _substitute_poly(poly: SuperPolynomial, a: Assignment):
    """Evaluate ``poly`` at the assignment; returns ``(N, D)`` with ``D`` odd-free."""
    table = poly.table
    if not poly.terms:
        return SuperPolynomial.zero(table), SuperPolynomial.one(table)
    even_clear = a.even_clear
    odd_assigned = a.odd_assigned
    even_den = a.even_den
    odd_den = a.odd_den
    odd = a.odd
    n_groups = len(a.bases)
    shifts = [(i, FIELD_BITS * i) for i in a.even]

    plan = []
    maxdeg = [0] * n_groups
    for (exps, mask), c in poly.terms.items():
        need = [0] * n_groups
        powers = []
        if exps & even_clear:
            for i, shift in shifts:
                e = (exps >> shift) & _FIELD_MASK
                if e:
                    powers.append((i, e))
                    loc = even_den[i]
                    if loc is not None:
                        need[loc[0]] += e * loc[1]
        if mask & odd_assigned:
            for j in mask_indices(mask & odd_assigned):
                loc = odd_den[j]
                if loc is not None:
                    need[loc[0]] += loc[1]
        for g in range(n_groups):
            if need[g] > maxdeg[g]:
                maxdeg[g] = need[g]
        plan.append((exps & ~even_clear, mask, c, powers, need))

    # even factors commute with everything, so group terms by their even
    # substitution and denominator padding and sum the odd parts first
    grouped: dict = {}
    for free_exps, mask, c, powers, need in plan:
        pad = tuple(maxdeg[g] - need[g] for g in range(n_groups))
        grouped.setdefault((tuple(powers), pad), []).append((free_exps, mask, c))

    odd_cache: dict = {}
    buckets: dict = {}
    for (powers, pad), items in grouped.items():
        inner: dict = {}
        for free_exps, mask, c in items:
            key = mask & odd_assigned
            prod = odd_cache.get(mask)
            if prod is None:
                prod = {(0, 0): _ONE}
                m = mask
                while m and prod:
                    low = m & -m
                    if low & key:
                        prod = _mul_terms(prod, odd[low.bit_length() - 1].num.terms)
                    else:
                        prod = _shift_terms(prod, 0, low, _ONE)
                    m ^= low
                odd_cache[mask] = prod
            if prod:
                inner = _add_terms(inner, _shift_terms(prod, free_exps, 0, c))
        if not inner:
            continue
        factor = a.even_product(powers)
        part = _mul_terms(factor, inner) if len(factor) < len(inner) else _mul_terms(inner, factor)
        buckets[pad] = _add_terms(buckets.get(pad, {}), part)

    # multiply by the denominator padding once per distinct padding
    acc: dict = {}
    for pad, part in buckets.items():
        for g, e in enumerate(pad):
            if e and part:
                part = _mul_terms(part, a.den_power(g, e))
        acc = _add_terms(acc, part)

    den: dict = {(0, 0): _ONE}
    for g in range(n_groups):
        if maxdeg[g]:
            den = _mul_terms(den, a.den_power(g, maxdeg[g]))
    return SuperPolynomial(table, acc), SuperPolynomial(table, den)


def _prepare(table, assignment) -> Assignment:
    if isinstance(assignment, Assignment):
        _check_tables(table, assignment.table)
        return assignment
    return Assignment(table, assignment)


def substitute_pair(f, assignment) -> tuple[SuperPolynomial, SuperPolynomial]:
    """Substitution result as ``(N, D)`` with ``f -> N / D``.

    ``D`` may contain odd generators; its body is checked to be nonzero.
    Comparing ``N / D`` against ``a / b`` by ``N * b == a * D`` avoids the
    Neumann expansion of ``1 / D``.
    """
    if isinstance(f, SuperPolynomial):
        f = SuperFunction(f)
    a = _prepare(f.table, assignment)
    if not a:
        return f.num, f.den
    n, d1 = _substitute_poly(f.num, a)
    if f.den.is_one():
        return n, d1
    m, d2 = _substitute_poly(f.den, a)
    if not m.body().terms:
        raise NonInvertibleError("denominator has zero body after substitution",
                                 determinant=m.body())
    if d1 == d2:
        return n, m
    return n * d2, d1 * m


def substitute(f, assignment) -> SuperFunction:
    """Pull back ``f`` along a parity-preserving assignment of its variables.

    Variables absent from ``assignment`` are left unchanged.  Raises
    ``ParityError`` on parity violations and ``NonInvertibleError`` when a
    substituted denominator loses its body.
    """
    if isinstance(f, SuperPolynomial):
        f = SuperFunction(f)
    a = _prepare(f.table, assignment)
    if not a:
        return f
    n, d = substitute_pair(f, a)
    return _divide_super(n, d)


def pair_equals(f: SuperFunction, num: SuperPolynomial, den: SuperPolynomial) -> bool:
    """``f == num / den`` for an even ``den`` with invertible body (odd terms allowed)."""
    return f.num * den == num * f.den


def conjugate(f) -> SuperFunction:
    """Complex conjugation: conjugates coefficients and swaps conjugate partners."""
    if isinstance(f, SuperPolynomial):
        return SuperFunction(f.conjugate())
    return f.conjugate()


class Restriction:
    """Re-encode elements over a sub-table holding only the listed symbols.

    Packed exponents grow with the position of the highest variable, so
    working over a compact sub-table makes the term kernels cheaper.  The
    map is a ring isomorphism onto its image; :meth:`lift` inverts it.
    """

    def __init__(self, table: VariableTable, even: Iterable[str], odd: Iterable[str]):
        # keep the ambient order so odd monomials need no re-sorting
        even = tuple(sorted(set(even), key=lambda n: table.lookup(n)[1]))
        odd = tuple(sorted(set(odd), key=lambda n: table.lookup(n)[1]))
        self.table = table
        self.sub = VariableTable(even, odd)
        self._even = [(table.lookup(n)[1], i) for i, n in enumerate(even)]
        self._odd = [(table.lookup(n)[1], j) for j, n in enumerate(odd)]
        self._even_allowed = 0
        for big, _ in self._even:
            self._even_allowed |= _FIELD_MASK << (FIELD_BITS * big)
        self._odd_allowed = 0
        for big, _ in self._odd:
            self._odd_allowed |= 1 << big
        self._cache: dict = {}

    def _remap(self, terms, even_pairs, odd_pairs, even_allowed, odd_allowed):
        out = {}
        for (exps, mask), c in terms.items():
            if exps & ~even_allowed or mask & ~odd_allowed:
                raise IncompatibleRingsError("element uses symbols outside the restriction")
            e2 = 0
            for a, b in even_pairs:
                v = (exps >> (FIELD_BITS * a)) & _FIELD_MASK
                if v:
                    e2 |= v << (FIELD_BITS * b)
            m2 = 0
            for a, b in odd_pairs:
                if mask >> a & 1:
                    m2 |= 1 << b
            out[(e2, m2)] = c
        return out

    def poly(self, p: SuperPolynomial) -> SuperPolynomial:
        _check_tables(p.table, self.table)
        return SuperPolynomial(self.sub, self._remap(p.terms, self._even, self._odd,
                                                     self._even_allowed, self._odd_allowed))

    def __call__(self, f: SuperFunction) -> SuperFunction:
        key = id(f)
        hit = self._cache.get(key)
        if hit is not None and hit[0] is f:
            return hit[1]
        out = SuperFunction(self.poly(f.num), self.poly(f.den))
        self._cache[key] = (f, out)
        return out

    def lift(self, f: SuperFunction) -> SuperFunction:
        inv_e = [(b, a) for a, b in self._even]
        inv_o = [(b, a) for a, b in self._odd]
        allowed_e = sum(_FIELD_MASK << (FIELD_BITS * b) for _, b in self._even)
        allowed_o = sum(1 << b for _, b in self._odd)
        num = SuperPolynomial(self.table, self._remap(f.num.terms, inv_e, inv_o, allowed_e, allowed_o))
        den = SuperPolynomial(self.table, self._remap(f.den.terms, inv_e, inv_o, allowed_e, allowed_o))
        return SuperFunction(num, den)


# ---------------------------------------------------------------------------
# Degree decomposition


@dataclass(frozen=True)
class XiDegreeDecomposition:
    """Components of a superfunction by number of odd generators."""

    components: tuple[tuple[int, SuperFunction], ...]

    def degrees(self) -> list[int]:
        return [p for p, _ in self.components]

    def get(self, p: int) -> SuperFunction | None:
        for q, comp in self.components:
            if q == p:
                return comp
        return None

    def total(self, table) -> SuperFunction:
        acc = SuperFunction.zero(table)
        for _, comp in self.components:
            acc = acc + comp
        return acc

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)


def xi_decompose(f) -> XiDegreeDecomposition:
    if isinstance(f, SuperPolynomial):
        f = SuperFunction(f)
    by_degree: dict[int, dict] = {}
    for key, c in f.num.terms.items():
        by_degree.setdefault(key[1].bit_count(), {})[key] = c
    comps = tuple((p, SuperFunction(SuperPolynomial(f.table, terms), f.den).reduced())
                  for p, terms in sorted(by_degree.items()))
    return XiDegreeDecomposition(comps)
