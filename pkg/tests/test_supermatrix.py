import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from supergrass.errors import NonInvertibleError, ParityError
from supergrass.scalars import GaussianRational
from supergrass.superalgebra import SuperFunction, SuperPolynomial
from supergrass.supermatrix import SuperMatrix, body_soul_split, extract_rows, mat_mul, super_inverse

from strategies import TABLE, polys

PAR = (0, 0, 1)


@st.composite
def even_supermatrices(draw, size=3, parity=PAR):
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            p = draw(polys(max_terms=3, max_exp=1)).component(parity[i] ^ parity[j])
            if i == j:
                p = p + SuperPolynomial.constant(TABLE, draw(st.sampled_from([2, 3, -5])))
            row.append(SuperFunction(p))
        rows.append(row)
    return SuperMatrix(TABLE, rows, parity, parity)


@given(even_supermatrices())
def test_super_inverse_is_two_sided(m):
    try:
        inv = super_inverse(m)
    except NonInvertibleError:
        assume(False)
    one = SuperMatrix.identity(TABLE, 3, PAR)
    assert mat_mul(m, inv) == one
    assert mat_mul(inv, m) == one


@given(even_supermatrices())
def test_body_soul_split_reassembles(m):
    split = body_soul_split(m)
    assert split.body + split.soul == m
    assert split.body.odd_support() == 0


def to_sympy(f, x, y):
    def poly(p):
        out = 0
        for c, e, o in p.items():
            assert not o
            out += (sympy.Rational(c.re) + sympy.I * sympy.Rational(c.im)) * x ** e[0] * y ** e[1]
        return out
    return poly(f.num) / poly(f.den)


def test_even_inverse_matches_sympy():
    x, y = sympy.symbols("x y")
    X, Y = SuperFunction.var(TABLE, "x"), SuperFunction.var(TABLE, "y")
    one = SuperFunction.one(TABLE)
    m = SuperMatrix(TABLE, [[X + 1, Y], [one.scale(2), X * Y + 3]])
    inv = super_inverse(m)
    expected = sympy.Matrix([[x + 1, y], [2, x * y + 3]]).inv()
    for i in range(2):
        for j in range(2):
            assert sympy.simplify(to_sympy(inv.entries[i][j], x, y) - expected[i, j]) == 0


def test_parity_signature_is_enforced():
    a = SuperFunction.var(TABLE, "a")
    one = SuperFunction.one(TABLE)
    with pytest.raises(ParityError):
        SuperMatrix(TABLE, [[a, one], [one, one]], (0, 0), (0, 0))


def test_singular_body_reports_determinant():
    a = SuperFunction.var(TABLE, "a")
    b = SuperFunction.var(TABLE, "b")
    one = SuperFunction.one(TABLE)
    m = SuperMatrix(TABLE, [[one, one + a * b], [one, one]])
    with pytest.raises(NonInvertibleError) as err:
        super_inverse(m)
    assert err.value.determinant is not None


def test_extract_rows():
    one, zero = SuperFunction.one(TABLE), SuperFunction.zero(TABLE)
    x = SuperFunction.var(TABLE, "x")
    m = SuperMatrix(TABLE, [[one, zero], [x, one], [zero, x]])
    assert extract_rows(m, [1, 2]) == SuperMatrix(TABLE, [[x, one], [zero, x]])
