import pytest

from supergrass.atlas import ChartIndex, pi_atlas
from supergrass.errors import DimensionError, NotAnInvolutionError
from supergrass.linalg import a_j, gmatrix, identity
from supergrass.real_structures import (
    STRUCTURE_NAMES, compose_real, fixed_relations, match_quaternionic, real_points_exist,
    standard_mu, structure_by_name, structures_equal, transition_closure_check)
from supergrass.scalars import GaussianRational
from supergrass.superalgebra import SuperFunction

J = [[0, 1], [-1, 0]]
J_INV = [[0, -1], [1, 0]]


def conjugation_oracle(twisted_c, psi, odd):
    """Entries of the fixed-point map on the 2x2 coordinate block of the chart
    whose identity rows form one J-pair: X -> J conj(X) J^-1 for c, X -> conj(X)
    otherwise; psi flips the sign of odd coordinates. Returns
    ``{(i, j): {(a, b): coefficient}}`` with 0-based local positions."""
    out = {}
    for i in range(2):
        for j in range(2):
            if not twisted_c:
                terms = {(i, j): 1}
            else:
                terms = {}
                for a in range(2):
                    for b in range(2):
                        c = J[i][a] * J_INV[b][j]
                        if c:
                            terms[(a, b)] = terms.get((a, b), 0) + c
            if psi and odd:
                terms = {k: -v for k, v in terms.items()}
            out[(i, j)] = terms
    return out


@pytest.fixture(scope="module")
def pigr42():
    return pi_atlas(4, 2)


@pytest.mark.parametrize("name", STRUCTURE_NAMES)
def test_involutions_on_pigr42(pigr42, name):
    mu = structure_by_name(pigr42, name)
    assert mu.check_involution().passed
    assert mu.check_compatibility().passed


@pytest.mark.parametrize("name", STRUCTURE_NAMES)
@pytest.mark.parametrize("rows", [(1, 2), (3, 4)])
def test_relations_match_oracle(pigr42, name, rows):
    mu = structure_by_name(pigr42, name)
    chart = ChartIndex.pi(rows)
    fr = fixed_relations(mu, chart)
    assert fr.status == "consistent"
    assert fr.dimension == 8
    free = [r for r in range(1, 5) if r not in rows]
    tab = fr.conj_map[next(iter(fr.conj_map))].table
    tag = "-".join(map(str, rows))
    for kind in ("x", "xi"):
        oracle = conjugation_oracle(name.startswith("c"), "psi" in name, kind == "xi")
        for (i, j), terms in oracle.items():
            lhs = f"{kind}_{tag}_{free[i]}_{j + 1}"
            expected = SuperFunction.zero(tab)
            for (a, b), c in terms.items():
                bar = tab.partner_name(f"{kind}_{tag}_{free[a]}_{b + 1}")
                expected = expected + SuperFunction.var(tab, bar).scale(c)
            assert fr.conj_map[lhs] == expected, (name, lhs)


def test_named_relations(pigr42):
    # c-mu: x_11 = conj x_22, x_12 = -conj x_21 in local block positions
    fr = fixed_relations(structure_by_name(pigr42, "c-mu"), ChartIndex.pi((1, 2)))
    tab = fr.conj_map["x_1-2_3_1"].table

    def bar(name, sign=1):
        return SuperFunction.var(tab, tab.partner_name(name)).scale(sign)

    assert fr.conj_map["x_1-2_3_1"] == bar("x_1-2_4_2")
    assert fr.conj_map["x_1-2_3_2"] == bar("x_1-2_4_1", -1)
    fr = fixed_relations(structure_by_name(pigr42, "c-psi-mu"), ChartIndex.pi((1, 2)))
    assert fr.conj_map["xi_1-2_3_1"] == bar("xi_1-2_4_2", -1)
    assert fr.conj_map["xi_1-2_4_1"] == bar("xi_1-2_3_2")


@pytest.mark.parametrize("name,label", [("mu", "Pi-R"), ("psi-mu", "Pi-R-prime"),
                                        ("c-mu", "Pi-H"), ("c-psi-mu", "Pi-H-prime")])
def test_model_labels(pigr42, name, label):
    mu = structure_by_name(pigr42, name)
    labels = {match_quaternionic(fixed_relations(mu, c)) for c in mu.invariant_charts()}
    assert labels == {label}


@pytest.mark.parametrize("n", [2, 4])
def test_quaternionic_structures_empty_for_odd_k(n):
    assert real_points_exist(a_j(n), 1) == "empty"
    mu = structure_by_name(pi_atlas(n, 1), "c-mu")
    assert mu.check_involution().passed
    assert mu.invariant_charts() == []
    fr = fixed_relations(mu, ChartIndex.pi([1]), force=True)
    assert fr.status == "empty"


def test_real_points_criterion():
    assert real_points_exist(identity(4), 2) == "nonempty-real"
    assert real_points_exist(a_j(4), 2) == "nonempty-quaternionic"
    with pytest.raises(NotAnInvolutionError):
        real_points_exist(gmatrix([[1, 1], [0, 1]]), 1)


def test_non_cocycle_is_rejected():
    mu = standard_mu(pi_atlas(2, 1))
    # g conj(g) = diag(2, 1) is not scalar
    bad = [[GaussianRational(1, 1), GaussianRational(0)], [GaussianRational(0), GaussianRational(1)]]
    with pytest.raises(NotAnInvolutionError) as err:
        compose_real(bad, False, mu)
    assert err.value.product is not None


def test_odd_n_has_no_c_structures():
    with pytest.raises(DimensionError):
        structure_by_name(pi_atlas(3, 1), "c-mu")
    for name in ("mu", "psi-mu"):
        assert structure_by_name(pi_atlas(3, 1), name).check_involution().passed


def test_composition_laws(pigr42):
    mu = standard_mu(pigr42)
    psi_mu = mu.then(sign_twist=True)
    assert structures_equal(psi_mu, structure_by_name(pigr42, "psi-mu"))
    assert structures_equal(psi_mu.then(sign_twist=True), mu)
    c_psi = compose_real(a_j(4), False, structure_by_name(pigr42, "psi-mu"))
    assert structures_equal(c_psi, structure_by_name(pigr42, "c-psi-mu"))


def test_real_transitions_close(pigr42):
    assert transition_closure_check(structure_by_name(pigr42, "c-mu")).passed
