import itertools

import pytest

from supergrass.atlas import (
    PI, ChartIndex, atlas_cocycle_suite, cocycle_check, compose, gr_morphism, identity_morphism,
    inverse_check, matrix_action, pi_atlas, plain_atlas, retract_check)
from supergrass.errors import SuperGrassError
from supergrass.linalg import identity
from supergrass.superalgebra import SuperFunction


def k1_oracle(atlas, s, t):
    """Hand renormalization of the PiGr_{n,1} column [[A, B], [B, A]] at row t.

    The 1|1 block [[a, b], [b, a]] has inverse [[1/a, -b/a^2], [-b/a^2, 1/a]]
    because b^2 = 0.
    """
    tab = atlas.chart(ChartIndex.pi([s])).table
    one, zero = SuperFunction.one(tab), SuperFunction.zero(tab)

    def A(r):
        return one if r == s else SuperFunction.var(tab, f"x_{s}_{r}_1")

    def B(r):
        return zero if r == s else SuperFunction.var(tab, f"xi_{s}_{r}_1")

    a, b = A(t), B(t)
    out = {}
    for r in range(1, atlas.n + 1):
        if r == t:
            continue
        out[f"x_{t}_{r}_1"] = A(r) / a - B(r) * b / (a * a)
        out[f"xi_{t}_{r}_1"] = -(A(r) * b) / (a * a) + B(r) / a
    return out


@pytest.mark.parametrize("n", [2, 3, 4])
def test_k1_transitions_match_hand_formula(n):
    atlas = pi_atlas(n, 1)
    for s, t in itertools.permutations(range(1, n + 1), 2):
        pull = atlas.transition(ChartIndex.pi([s]), ChartIndex.pi([t])).pullback
        expected = k1_oracle(atlas, s, t)
        assert set(pull) == set(expected)
        for name, f in expected.items():
            assert pull[name] == f, name


def test_smallest_cocycle_report():
    rep = atlas_cocycle_suite(pi_atlas(2, 1))
    assert rep.passed
    assert rep.details["charts"] == 2 and rep.details["pairs"] == 2


@pytest.mark.parametrize("nk", [(2, 1), (3, 1), (3, 2), (4, 1)])
def test_cocycle_and_retract(nk):
    atlas = pi_atlas(*nk)
    assert atlas_cocycle_suite(atlas).passed
    assert retract_check(atlas).passed
    assert atlas_cocycle_suite(atlas.gr()).passed


def test_plain_atlas_cocycle():
    atlas = plain_atlas(2, 2, 1, 1)
    assert len(atlas.indices) == 4
    assert atlas_cocycle_suite(atlas).passed


def test_chart_counts():
    assert len(pi_atlas(4, 2).indices) == 6
    assert len(pi_atlas(5, 2).pairs()) == 90


def test_tampered_transition_is_caught():
    atlas = pi_atlas(3, 1)
    i, j, k = atlas.indices
    bad = atlas.transition(i, j)
    name = next(iter(bad.pullback))
    pull = dict(bad.pullback)
    pull[name] = pull[name] + SuperFunction.one(pull[name].table)
    tampered = atlas.with_transition(i, j, type(bad)(bad.source, bad.target, pull))
    rep = cocycle_check(tampered, j, i, k)  # uses T(i -> j)
    assert not rep.passed and rep.witness is not None
    assert not inverse_check(tampered, i, j).passed


def test_composition_with_identity():
    atlas = pi_atlas(3, 1)
    i, j = atlas.indices[:2]
    t = atlas.transition(i, j)
    assert compose(t, identity_morphism(atlas.chart(i))) == t
    assert compose(identity_morphism(atlas.chart(j)), t) == t


def test_gr_drops_higher_odd_terms():
    atlas = pi_atlas(3, 1)
    i, j = atlas.indices[:2]
    g = gr_morphism(atlas.transition(i, j))
    # gr x_2_3_1 = x_1_3_1 / x_1_2_1: the xi*xi correction is gone
    tab = atlas.chart(i).table
    x12, x13 = SuperFunction.var(tab, "x_1_2_1"), SuperFunction.var(tab, "x_1_3_1")
    assert g.pullback["x_2_3_1"].rebind(tab) == x13 / x12


def test_identity_matrix_acts_trivially():
    atlas = pi_atlas(3, 1)
    for idx in atlas.indices:
        m = matrix_action(atlas, identity(3), idx)
        assert m.target == idx
        assert m == identity_morphism(atlas.chart(idx))


def test_bad_sizes():
    with pytest.raises(SuperGrassError):
        pi_atlas(3, 3)
    with pytest.raises(SuperGrassError):
        ChartIndex(PI, (1, 2), (1, 3))
