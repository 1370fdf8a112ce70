import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supergrass.errors import SuperGrassError
from supergrass.linalg import matmul
from supergrass.scalars import GaussianRational
from supergrass.superalgebras import QElement, build_qn, build_v21, super_jacobi


def full_bracket(mx, px, my, py):
    """Supercommutator of plain 2n x 2n matrices."""
    xy, yx = matmul(mx, my), matmul(my, mx)
    sign = 1 if px and py else -1
    return [[a + sign * b for a, b in zip(r1, r2)] for r1, r2 in zip(xy, yx)]


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3, 4]), st.integers(0, 1), st.integers(0, 1))
def test_bracket_matches_full_matrices(seed, n, px, py):
    rng = random.Random(seed)
    q = build_qn(n)
    x, y = q.random_homogeneous(rng, px), q.random_homogeneous(rng, py)
    expected = full_bracket(x.matrix(), px, y.matrix(), py)
    b = q.bracket(x, y)
    assert b.matrix() == expected
    assert q.is_member(expected)
    assert b.parity() in (None, px ^ py) or b.is_zero()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_jacobi_and_centre(n):
    rng = random.Random(n)
    q = build_qn(n)
    e = q.identity()
    assert q.dims == (n * n, n * n)
    assert q.quotient_dimension == 2 * n * n - 1
    for _ in range(100):
        x, y, z = (q.random_homogeneous(rng) for _ in range(3))
        assert super_jacobi(x, y, z).is_zero()
        assert q.bracket(e, x).is_zero()


def test_non_member_is_rejected():
    q = build_qn(2)
    one, zero = GaussianRational(1), GaussianRational(0)
    m = [[one, zero, zero, zero], [zero, zero, zero, zero],
         [zero, zero, zero, zero], [zero, zero, zero, zero]]
    assert not q.is_member(m)


def test_inhomogeneous_bracket_raises():
    q = build_qn(2)
    rng = random.Random(0)
    x = q.random_homogeneous(rng, 0)
    y = q.random_homogeneous(rng, 1)
    mixed = x + y
    with pytest.raises(SuperGrassError):
        q.bracket(mixed, x)


def test_v21_structure():
    v = build_v21()
    assert v.dimension == 8
    assert v.check_jacobi() is None
    assert v.check_grading() is None
    # g_0 = sl_2 commutes with g_1 = <d>
    for a in ("h", "e", "f"):
        assert v.bracket({a: 1}, {"d": 1}) == {}
    # d maps V identically onto sl_2 and z is the grading operator
    for s in ("h", "e", "f"):
        assert v.bracket({f"v_{s}": 1}, {"d": 1}) == {s: GaussianRational(1)}
    for b in v.basis:
        deg = v.degree[b]
        assert v.bracket({"z": 1}, {b: 1}) == ({b: GaussianRational(deg)} if deg else {})


def test_v21_jacobi_exhaustive_by_hand():
    v = build_v21()
    p = v.parity

    def add(*vs):
        out = {}
        for w in vs:
            for k, c in w.items():
                out[k] = out.get(k, GaussianRational(0)) + c
        return {k: c for k, c in out.items() if c}

    def scale(w, s):
        return {k: c * s for k, c in w.items()}

    for a in v.basis:
        for b in v.basis:
            for c in v.basis:
                # [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
                lhs = v.bracket({a: 1}, v.bracket({b: 1}, {c: 1}))
                sign = -1 if p[a] and p[b] else 1
                rhs = add(v.bracket(v.bracket({a: 1}, {b: 1}), {c: 1}),
                          scale(v.bracket({b: 1}, v.bracket({a: 1}, {c: 1})), sign))
                assert add(lhs, scale(rhs, -1)) == {}, (a, b, c)
