import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supergrass.errors import CocycleError
from supergrass.galois import (
    QUATERNION_UNITS, FiniteGammaGroup, PGLGammaGroup, classify_real_structures, cyclic_group,
    delta_sign, h1_finite, sign_group, star, trivial_group, twisted_algebra_solve, z1_check)
from supergrass.linalg import a_j, conj, gmatrix, identity, matmul
from supergrass.scalars import GaussianRational


def s3(sigma_by=None):
    """Permutations of 3 letters; sigma is conjugation by ``sigma_by`` (or trivial)."""
    els = list(itertools.permutations(range(3)))

    def mul(p, q):
        return tuple(p[q[i]] for i in range(3))

    def inv(p):
        out = [0] * 3
        for i, v in enumerate(p):
            out[v] = i
        return tuple(out)

    table = {(p, q): mul(p, q) for p in els for q in els}
    if sigma_by is None:
        sigma = {p: p for p in els}
    else:
        sigma = {p: mul(mul(sigma_by, p), inv(sigma_by)) for p in els}
    return FiniteGammaGroup.from_table(els, table, sigma, (0, 1, 2), "S3"), mul, inv, sigma


def brute_h1(els, mul, inv, sigma, one):
    """H^1(Z/2, A) by definition: c sigma(c) = 1, c ~ a c sigma(a)^-1."""
    z1 = [c for c in els if mul(c, sigma[c]) == one]
    classes = []
    for c in z1:
        orbit = {mul(mul(a, c), inv(sigma[a])) for a in els}
        if not any(orbit & cl for cl in classes):
            classes.append(orbit)
    return len(classes)


@pytest.mark.parametrize("sigma_by", [None, (1, 0, 2)])
def test_h1_nonabelian_matches_brute_force(sigma_by):
    group, mul, inv, sigma = s3(sigma_by)
    assert len(h1_finite(group)) == brute_h1(group.elements, mul, inv, sigma, (0, 1, 2))


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("inverting", [False, True])
def test_cyclic_h1(n, inverting):
    # both actions give |H^1| = gcd(2, n): 2-torsion, or A / 2A
    assert len(h1_finite(cyclic_group(n, inverting))) == (2 if n % 2 == 0 else 1)


def test_sign_group_and_trivial_group():
    assert len(h1_finite(sign_group())) == 2
    assert h1_finite(sign_group())[0] == 1
    assert len(h1_finite(trivial_group())) == 1


def test_pgl_cocycles():
    pgl = PGLGammaGroup(4)
    assert z1_check(pgl, a_j(4))
    assert delta_sign(a_j(4)) == -1
    assert delta_sign(identity(4)) == 1
    not_cocycle = [[GaussianRational(1, 1), GaussianRational(0)],
                   [GaussianRational(0), GaussianRational(1)]]
    assert not z1_check(PGLGammaGroup(2), not_cocycle)
    with pytest.raises(CocycleError):
        delta_sign(not_cocycle)
    # diag(i, 1) satisfies c conj(c) = 1, so it is a cocycle
    assert z1_check(PGLGammaGroup(2), [[GaussianRational(0, 1), GaussianRational(0)],
                                        [GaussianRational(0), GaussianRational(1)]])


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 4]))
def test_delta_sign_is_orbit_invariant(seed, n):
    rng = random.Random(seed)
    pgl = PGLGammaGroup(n)
    a = pgl.random_element(rng)
    for c in (identity(n), a_j(n)):
        d = star(pgl, a, c)
        assert z1_check(pgl, d)
        assert delta_sign(d) == delta_sign(c)


@pytest.mark.parametrize("nk,count", [((3, 1), 2), ((2, 1), 2), ((4, 2), 4), ((4, 1), 4), ((5, 2), 2)])
def test_classification_counts(nk, count):
    rep = classify_real_structures(*nk)
    assert rep.count == count
    assert len(set(rep.labels)) == count


def test_classification_labels():
    assert classify_real_structures(4, 2).labels == ["(1,1)", "(1,psi)", "(c,1)", "(c,psi)"]


def test_quaternion_algebra():
    alg = twisted_algebra_solve(1)
    assert alg.dimension == 4
    assert alg.units_fixed and alg.units_span
    assert alg.hamilton[("i", "j")] == ("k", 1)
    assert alg.hamilton[("j", "i")] == ("k", -1)
    for u in "ijk":
        assert alg.hamilton[(u, u)] == ("1", -1)
    # every solution has the shape [[a, b], [-conj b, conj a]]
    for y in alg.basis:
        y = gmatrix(y)
        assert y[1][0] == -y[0][1].conjugate() and y[1][1] == y[0][0].conjugate()


def test_hamilton_table_from_matrices():
    # oracle: multiply the 2x2 unit matrices directly
    names = ["1", "i", "j", "k"]
    mats = {u: gmatrix(QUATERNION_UNITS[u]) for u in names}
    for a in names:
        for b in names:
            prod = matmul(mats[a], mats[b])
            hits = [(c, s) for c in names for s in (1, -1)
                    if prod == [[x * s for x in r] for r in mats[c]]]
            assert len(hits) == 1
            assert twisted_algebra_solve(1).hamilton[(a, b)] == hits[0]


def test_matrix_quaternions_dimension():
    alg = twisted_algebra_solve(2)
    assert alg.dimension == 16
    aj = a_j(4)
    for y in alg.basis:
        assert matmul(aj, conj(gmatrix(y))) == matmul(gmatrix(y), aj)
