import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supergrass.atlas import pi_atlas
from supergrass.errors import MalformedLiftError
from supergrass.lifts import (
    GENERIC, LiftCandidate, check_lift_compatibility, conjugate_lift, is_r_homogeneous,
    normalize_lift, order_of, pgl_action, pgl_group_law_check, phi_compatibility_check,
    phi_involution_check, psi_st_commutes, random_coordinate_change, standard_lift, superdomain)
from supergrass.linalg import gmatrix, identity
from supergrass.scalars import I, GaussianRational
from supergrass.superalgebra import SuperFunction, xi_decompose


def degree_oracle(atlas, alpha_order):
    """Transitions commute with xi -> alpha xi iff every xi-degree d in an even
    pullback has alpha^d = 1 and in an odd pullback alpha^(d-1) = 1."""
    for t in atlas.all_transitions().values():
        for name, f in t.pullback.items():
            parity = 1 if name.startswith("xi") else 0
            for d in xi_decompose(f).degrees():
                shift = d - parity
                if alpha_order is None and shift != 0:
                    return False
                if alpha_order is not None and shift % alpha_order:
                    return False
    return True


@pytest.mark.parametrize("nk", [(2, 1), (3, 1), (4, 1), (4, 2)])
def test_lift_compatibility_matches_degree_oracle(nk):
    atlas = pi_atlas(*nk)
    for alpha, order in ((-1, 2), (GENERIC, None), (I, 4)):
        assert check_lift_compatibility(atlas, alpha).passed == degree_oracle(atlas, order)


@pytest.mark.parametrize("nk", [(3, 1), (4, 2)])
def test_generic_failure_has_degree_two_witness(nk):
    rep = check_lift_compatibility(pi_atlas(*nk), GENERIC)
    assert not rep.passed
    assert rep.witness["degree"] == 2
    assert rep.witness["component"]["num"]


def test_split_case_is_compatible():
    assert check_lift_compatibility(pi_atlas(2, 1), GENERIC).passed


def test_order_of():
    assert order_of(-1) == 2
    assert order_of(I) == 4
    assert order_of(1) == 1
    assert order_of(GaussianRational(2)) is None
    assert order_of(GENERIC) is None


def test_hand_conjugate_normalizes():
    dom = superdomain(1, 2)
    t = dom.table
    x, a, b = (SuperFunction.var(t, v) for v in dom.coordinates)
    std = standard_lift(dom, GENERIC)
    cand = conjugate_lift(std, {"x_1": x + a * b, "xi_1": a, "xi_2": b})
    assert not cand.is_standard()
    res, change = normalize_lift(dom, cand)
    assert res.is_standard()
    assert conjugate_lift(cand, change.pullback).same_as(res)


def test_malformed_lift():
    dom = superdomain(1, 1)
    t = dom.table
    x, a = (SuperFunction.var(t, v) for v in dom.coordinates)
    with pytest.raises(MalformedLiftError):
        LiftCandidate(dom, GENERIC, {"x_1": x + a, "xi_1": a}).validate()
    with pytest.raises(MalformedLiftError):
        LiftCandidate(dom, GENERIC, {"x_1": x}).validate()


@settings(max_examples=8)
@given(st.integers(0, 10 ** 6))
def test_random_conjugates_normalize(seed):
    rng = random.Random(seed)
    dom = superdomain(2, 3)
    std = standard_lift(dom, GENERIC)
    cand = conjugate_lift(std, random_coordinate_change(dom, rng))
    cand.validate()
    res, _ = normalize_lift(dom, cand)
    assert res.is_standard()


@settings(max_examples=8)
@given(st.integers(0, 10 ** 6))
def test_order_four_normal_form_is_homogeneous(seed):
    rng = random.Random(seed)
    dom = superdomain(2, 4)
    std = standard_lift(dom, I)
    cand = conjugate_lift(std, random_coordinate_change(dom, rng))
    res, _ = normalize_lift(dom, cand)
    assert is_r_homogeneous(res)
    # independent reading of homogeneity: xi-degrees of x images are 0 mod 4,
    # of xi images 1 mod 4
    for name, f in res.images.items():
        shift = 1 if name.startswith("xi") else 0
        assert all((d - shift) % 4 == 0 for d in xi_decompose(f).degrees())


def test_phi_on_gr_atlases():
    for nk in ((2, 1), (4, 2)):
        gr = pi_atlas(*nk).gr()
        assert phi_involution_check(gr).passed
        assert phi_compatibility_check(gr).passed


def test_psi_st():
    assert psi_st_commutes(pi_atlas(3, 1)).passed


def test_pgl_group_law_small():
    atlas = pi_atlas(3, 1)
    g1 = gmatrix([[1, 2, 0], [0, 1, 0], [1, 0, 1]])
    g2 = gmatrix([[0, 1, 0], [1, 0, 0], [0, 0, 2]])
    assert pgl_group_law_check(atlas, g1, g2).passed
    assert pgl_action(g1, atlas).check_inverse(atlas).passed


def test_pgl_dense_on_split_case():
    atlas = pi_atlas(2, 1)
    g1 = [[GaussianRational(1, 1), GaussianRational(2)], [GaussianRational(-1), GaussianRational(0, 3)]]
    g2 = [[GaussianRational(2), GaussianRational(1, -1)], [GaussianRational(1), GaussianRational(1)]]
    assert pgl_group_law_check(atlas, g1, g2).passed
    assert psi_st_commutes(atlas, pgl_action(g1, atlas)).passed


def test_scalars_act_trivially():
    from supergrass.lifts import automorphism_equal
    atlas = pi_atlas(3, 1)
    three = [[GaussianRational(3 if i == j else 0) for j in range(3)] for i in range(3)]
    assert automorphism_equal(pgl_action(three, atlas), pgl_action(identity(3), atlas), atlas).passed
