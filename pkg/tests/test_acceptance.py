"""The ten acceptance criteria, each exact, each printing one PASS/FAIL line."""

import json
import time

import pytest

from supergrass.atlas import ChartIndex, atlas_cocycle_suite, pi_atlas, retract_check
from supergrass.galois import (
    PGLGammaGroup, classify_real_structures, delta_sign, h1_finite, sign_group,
    twisted_algebra_solve, z1_check)
from supergrass.lifts import GENERIC, check_lift_compatibility, phi_compatibility_check, phi_involution_check
from supergrass.linalg import a_j, identity
from supergrass.persistence import canonical_json, dumps, loads
from supergrass.real_structures import (
    STRUCTURE_NAMES, fixed_relations, match_quaternionic, real_points_exist, structure_by_name)
from supergrass.suites import VerificationConfig, run, run_suite
from supergrass.superalgebra import SuperFunction
from supergrass.weights import dominant_filter


@pytest.fixture
def verdict(capsys):
    def report(number, ok, note=""):
        with capsys.disabled():
            print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'}  {note}")
        assert ok, f"criterion {number} failed: {note}"
    return report


def test_criterion_01_cocycle(verdict):
    start = time.perf_counter()
    failures = []
    for nk in [(2, 1), (3, 1), (4, 1), (4, 2), (5, 2)]:
        rep = atlas_cocycle_suite(pi_atlas(*nk))
        if not rep.passed:
            failures.append((nk, rep.witness))
    elapsed = time.perf_counter() - start
    verdict(1, not failures and elapsed < 120,
            f"cocycle identities on five PiGr atlases in {elapsed:.1f}s; failures {failures}")


def test_criterion_02_retract(verdict):
    results = {nk: retract_check(pi_atlas(*nk)).passed for nk in [(2, 1), (3, 1), (4, 2)]}
    verdict(2, all(results.values()), f"retract check {results}")


def test_criterion_03_lifting(verdict):
    minus_one = {nk: check_lift_compatibility(pi_atlas(*nk), -1).passed
                 for nk in [(2, 1), (3, 1), (4, 1), (4, 2), (5, 2)]}
    split = check_lift_compatibility(pi_atlas(2, 1), GENERIC).passed
    witnesses = {}
    for nk in [(4, 2), (3, 1)]:
        rep = check_lift_compatibility(pi_atlas(*nk), GENERIC)
        w = rep.witness or {}
        witnesses[nk] = (not rep.passed and w.get("degree") == 2
                         and bool(w.get("component", {}).get("num")))
    verdict(3, all(minus_one.values()) and split and all(witnesses.values()),
            f"alpha=-1 {minus_one}; generic on (2,1) {split}; degree-2 witnesses {witnesses}")


def test_criterion_04_normalization(verdict):
    start = time.perf_counter()
    res = run_suite("normalize", VerificationConfig(n=2, k=1, samples=50, seed=0))
    elapsed = time.perf_counter() - start
    counts = {c["check"]: c["details"]["normalized"] for c in res["checks"]}
    ok = res["passed"] and all(v == 50 for v in counts.values()) and elapsed < 60
    verdict(4, ok, f"{counts} of 50 on a 3|4 superdomain in {elapsed:.1f}s")


def test_criterion_05_phi(verdict):
    out = {}
    for nk in [(2, 1), (4, 2)]:
        gr = pi_atlas(*nk).gr()
        out[nk] = (phi_involution_check(gr).passed, phi_compatibility_check(gr).passed)
    verdict(5, all(a and b for a, b in out.values()), f"(square, compatibility) {out}")


def _bar(tab, name, sign=1):
    return SuperFunction.var(tab, tab.partner_name(name)).scale(sign)


def test_criterion_06_real_structures(verdict):
    atlas = pi_atlas(4, 2)
    involutive = {name: structure_by_name(atlas, name).check_involution().passed
                  for name in STRUCTURE_NAMES}
    expected_models = {"mu": "Pi-R", "psi-mu": "Pi-R-prime", "c-mu": "Pi-H", "c-psi-mu": "Pi-H-prime"}
    models = {}
    for name in STRUCTURE_NAMES:
        mu = structure_by_name(atlas, name)
        models[name] = {match_quaternionic(fixed_relations(mu, c)) for c in mu.invariant_charts()}
    models_ok = all(models[n] == {m} for n, m in expected_models.items())

    # local block positions (1,1), (1,2), (2,1), (2,2) are rows 3, 4 of chart {1,2}
    chart = ChartIndex.pi((1, 2))
    even = fixed_relations(structure_by_name(atlas, "c-mu"), chart).conj_map
    odd = fixed_relations(structure_by_name(atlas, "c-psi-mu"), chart).conj_map
    tab = even["x_1-2_3_1"].table
    exact = {
        "x11 = conj x22": even["x_1-2_3_1"] == _bar(tab, "x_1-2_4_2"),
        "x12 = -conj x21": even["x_1-2_3_2"] == _bar(tab, "x_1-2_4_1", -1),
        "xi11 = -conj xi22": odd["xi_1-2_3_1"] == _bar(tab, "xi_1-2_4_2", -1),
        "xi21 = conj xi12": odd["xi_1-2_4_1"] == _bar(tab, "xi_1-2_3_2"),
    }

    empty = {}
    for n in (2, 4):
        sub = pi_atlas(n, 1)
        crit = real_points_exist(a_j(n), 1)
        for name in ("c-mu", "c-psi-mu"):
            mu = structure_by_name(sub, name)
            forced = fixed_relations(mu, ChartIndex.pi([1]), force=True)
            empty[(n, name)] = (crit == "empty" and mu.check_involution().passed
                                and forced.status == "empty")
    ok = all(involutive.values()) and models_ok and all(exact.values()) and all(empty.values())
    verdict(6, ok, f"involutive {involutive}; models {models}; relations {exact}; "
                   f"empty for odd k {empty}")


def test_criterion_07_galois(verdict):
    pgl = PGLGammaGroup(4)
    checks = {
        "z1(a_J)": z1_check(pgl, a_j(4)),
        "delta(a_J) = -1": delta_sign(a_j(4)) == -1,
        "delta(1) = +1": delta_sign(identity(4)) == 1,
        "|H1(+-1)| = 2": len(h1_finite(sign_group())) == 2,
        "counts 2/2/4": [classify_real_structures(*nk).count for nk in [(3, 1), (2, 1), (4, 2)]] == [2, 2, 4],
    }
    alg = twisted_algebra_solve(1)
    h = alg.hamilton
    hamilton = (all(h[(u, u)] == ("1", -1) for u in "ijk") and h[("i", "j")] == ("k", 1)
                and h[("j", "k")] == ("i", 1) and h[("k", "i")] == ("j", 1)
                and h[("j", "i")] == ("k", -1))
    checks["quaternions dim 4 + Hamilton"] = alg.dimension == 4 and alg.units_span and hamilton
    verdict(7, all(checks.values()), str(checks))


def test_criterion_08_superalgebras(verdict):
    res = run_suite("superalgebras", VerificationConfig(n=4, k=2, jacobi_triples=100, seed=0))
    names = [c["check"] for c in res["checks"]]
    covered = all(f"super Jacobi on q_{n}" in names for n in (2, 3, 4))
    verdict(8, res["passed"] and covered,
            "; ".join(f"{c['check']} {c['outcome']}" for c in res["checks"]))


def test_criterion_09_dominance(verdict):
    got = {nk: dominant_filter(*nk) for nk in [(2, 1), (3, 1), (4, 2), (5, 4)]}
    ok = all(v == [(0,) * nk[0]] for nk, v in got.items())
    verdict(9, ok, f"dominant weights {got}")


def test_criterion_10_serialization(verdict):
    atlas_ok = {}
    for nk in [(2, 1), (3, 1), (4, 2)]:
        text = dumps(pi_atlas(*nk))
        atlas_ok[nk] = dumps(loads(text)) == text
    cfg = dict(n=3, k=1, seed=42, samples=5, jacobi_triples=10)
    a, b = run(VerificationConfig(**cfg)), run(VerificationConfig(**cfg))
    a.pop("timing"), b.pop("timing")
    text = canonical_json(a)
    rerun = text == canonical_json(b)
    report_round_trip = canonical_json(json.loads(text)) == text
    verdict(10, all(atlas_ok.values()) and rerun and report_round_trip,
            f"atlas round trips {atlas_ok}; seeded rerun identical {rerun}; "
            f"report round trip {report_round_trip}")
