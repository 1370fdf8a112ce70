from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from supergrass.scalars import GaussianRational, I, as_gaussian

from strategies import gaussians, nonzero_gaussians


def to_sympy(g):
    return sympy.Rational(g.re.numerator, g.re.denominator) + sympy.I * sympy.Rational(
        g.im.numerator, g.im.denominator)


def from_sympy(z):
    re, im = sympy.re(z), sympy.im(z)
    return GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


@given(gaussians, gaussians)
def test_ring_ops_match_sympy(a, b):
    za, zb = to_sympy(a), to_sympy(b)
    assert a + b == from_sympy(sympy.expand(za + zb))
    assert a - b == from_sympy(sympy.expand(za - zb))
    assert a * b == from_sympy(sympy.expand(za * zb))


@given(gaussians, nonzero_gaussians)
def test_division_matches_sympy(a, b):
    assert a / b == from_sympy(sympy.expand(sympy.radsimp(to_sympy(a) / to_sympy(b))))
    assert b * b.inverse() == GaussianRational(1)


@given(gaussians)
def test_conjugate_and_norm(a):
    assert a.conjugate().conjugate() == a
    assert a * a.conjugate() == GaussianRational(a.norm())
    assert GaussianRational.parse(a.to_strings()) == a


def test_i_squared():
    assert I * I == GaussianRational(-1)
    assert (1 + I) ** 2 == 2 * I


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(0).inverse()


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        as_gaussian(0.5)
