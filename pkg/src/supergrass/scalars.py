"""Exact Gaussian rationals, the coefficient field Q(i)."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["GaussianRational", "as_gaussian", "I"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class GaussianRational:
    """An element ``re + i*im`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def from_pair(cls, pair) -> "GaussianRational":
        return cls(pair[0], pair[1])

    @classmethod
    def parse(cls, pair) -> "GaussianRational":
        """Inverse of :meth:`to_strings`."""
        re, im = pair
        return cls(Fraction(re), Fraction(im))

    def pair(self) -> tuple:
        """Compact ``(re, im)`` pair with integral parts demoted to ``int``."""
        return (_demote(self.re), _demote(self.im))

    def to_strings(self) -> list[str]:
        return [f"{self.re.numerator}/{self.re.denominator}",
                f"{self.im.numerator}/{self.im.denominator}"]

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = as_gaussian(other, strict=False)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = as_gaussian(other, strict=False)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_gaussian(other, strict=False)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = as_gaussian(other, strict=False)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = as_gaussian(other, strict=False)
        if other is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_gaussian(other, strict=False)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_gaussian(other, strict=False)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = GaussianRational(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __repr__(self):
        if self.im == 0:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


def _demote(x: Fraction):
    return x.numerator if x.denominator == 1 else x


def as_gaussian(x, strict: bool = True):
    """Coerce ints, Fractions, (re, im) pairs and Python complex with integral parts."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction, Rational)) and not isinstance(x, bool):
        return GaussianRational(x)
    if isinstance(x, bool):
        return GaussianRational(int(x))
    if isinstance(x, complex):
        if x.real.is_integer() and x.imag.is_integer():
            return GaussianRational(int(x.real), int(x.imag))
        if strict:
            raise TypeError("refusing inexact complex coefficient")
        return None
    if isinstance(x, tuple) and len(x) == 2:
        return GaussianRational(x[0], x[1])
    if strict:
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")
    return None


I = GaussianRational(0, 1)
