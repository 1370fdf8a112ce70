"""Verification suites shared by the command line and the test-suite.

Every suite returns a JSON-ready dict ``{suite, passed, checks}``.  A check
records the observed ``outcome`` of a mathematical test and the outcome the
theory ``expected``; the suite passes when each observation matches.  A
generic-parameter lift failing on a non-split Grassmannian is therefore a
passing check.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .atlas import PI, Atlas, atlas_cocycle_suite, build_atlas, pi_atlas, retract_check
from .errors import CocycleError, SuperGrassError
from .galois import (
    PGLGammaGroup,
    classify_real_structures,
    delta_sign,
    h1_finite,
    sign_group,
    star,
    twisted_algebra_solve,
    z1_check,
)
from .lifts import (
    GENERIC,
    automorphism_equal,
    check_lift_compatibility,
    conjugate_lift,
    is_r_homogeneous,
    normalize_lift,
    pgl_action,
    pgl_group_law_check,
    phi_compatibility_check,
    phi_involution_check,
    psi_st_commutes,
    random_coordinate_change,
    standard_lift,
    superdomain,
)
from .linalg import a_j, identity, scalar_multiple
from .real_structures import (
    STRUCTURE_NAMES,
    fixed_relations,
    match_quaternionic,
    real_points_exist,
    structure_by_name,
    transition_closure_check,
)
from .results import CheckReport
from .scalars import GaussianRational, I
from .superalgebras import build_qn, build_v21, super_jacobi
from .weights import dominant_filter

__all__ = ["SUITES", "VerificationConfig", "ConfigError", "run", "run_suite",
           "expected_model", "structure_names_for", "text_summary"]

SUITES = ("cocycle", "retract", "lifts", "normalize", "psi-st", "phi", "pgl",
          "real-structures", "fixed-points", "galois", "superalgebras", "dominance")


class ConfigError(SuperGrassError):
    """Invalid verification configuration (usage error)."""


@dataclass
class VerificationConfig:
    n: int = 2
    k: int = 1
    flavor: str = PI
    m: int | None = None
    l: int | None = None
    suites: list = field(default_factory=lambda: list(SUITES))
    seed: int = 0
    generic_alpha: bool = True
    max_n: int = 6
    samples: int = 50
    jacobi_triples: int = 100
    jobs: int = 1

    def validate(self):
        if self.flavor not in (PI, "plain"):
            raise ConfigError(f"unknown flavor {self.flavor!r}")
        big = max(self.n, self.m or 0)
        if big > self.max_n:
            raise ConfigError(f"size {big} exceeds the cap --max-n={self.max_n}")
        if self.flavor == PI and not 0 < self.k < self.n:
            raise ConfigError(f"need 0 < k < n, got n={self.n}, k={self.k}")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suites {unknown}; choose from {list(SUITES)}")
        if self.flavor != PI:
            pi_only = [s for s in self.suites if s != "cocycle"]
            if pi_only:
                raise ConfigError(f"suites {pi_only} need the pi flavor")
        if self.samples < 1 or self.jacobi_triples < 1:
            raise ConfigError("sample counts must be positive")
        if self.jobs < 1:
            raise ConfigError("jobs must be positive")
        return self

    def atlas(self) -> Atlas:
        if self.flavor == PI:
            return pi_atlas(self.n, self.k)
        m = self.n if self.m is None else self.m
        return build_atlas("plain", m, self.n, self.k, self.l or 0)

    def to_json(self) -> dict:
        # the worker count never changes results, so it stays out of the report
        out = asdict(self)
        del out["jobs"]
        return out


def _check(name, outcome: bool, expected: bool = True, *, witness=None, **details) -> dict:
    out = {"check": name, "outcome": "pass" if outcome else "fail",
           "expected": "pass" if expected else "fail",
           "passed": bool(outcome) == bool(expected)}
    if witness is not None:
        out["witness"] = witness
    if details:
        out["details"] = details
    return out


def _from_report(rep: CheckReport, expected: bool = True, **details) -> dict:
    merged = dict(rep.details)
    merged.update(details)
    merged["identities"] = rep.checked
    return _check(rep.name, rep.passed, expected, witness=rep.witness, **merged)


# ---------------------------------------------------------------------------


def _suite_cocycle(cfg, atlas, rng):
    rep = atlas_cocycle_suite(atlas)
    return [_from_report(rep, ordered_pairs=len(atlas.pairs()))]


def _suite_retract(cfg, atlas, rng):
    return [_from_report(retract_check(atlas))]


def _suite_lifts(cfg, atlas, rng):
    out = [_from_report(check_lift_compatibility(atlas, -1), alpha="-1")]
    if cfg.generic_alpha:
        split = (atlas.n, atlas.k) == (2, 1)
        out.append(_from_report(check_lift_compatibility(atlas, GENERIC), expected=split,
                                alpha="generic"))
    return out


def _suite_normalize(cfg, atlas, rng):
    domain = superdomain(3, 4)
    out = []
    for label, alpha, order in (("generic", GENERIC, None), ("i", I, None),
                                ("generic, order 4", GENERIC, 4)):
        std = standard_lift(domain, alpha)
        good = 0
        first_bad = None
        for t in range(cfg.samples):
            cand = conjugate_lift(std, random_coordinate_change(domain, rng))
            res, change = normalize_lift(domain, cand, order)
            if alpha == GENERIC and order is None:
                ok = res.is_standard()
            else:
                ok = is_r_homogeneous(res, order)
            ok = ok and conjugate_lift(cand, change.pullback).same_as(res)
            if ok:
                good += 1
            elif first_bad is None:
                first_bad = t
        out.append(_check(f"normalize lifts, alpha {label}", good == cfg.samples,
                          samples=cfg.samples, normalized=good, first_failure=first_bad))
    return out


def _suite_psi_st(cfg, atlas, rng):
    return [_from_report(psi_st_commutes(atlas))]


def _suite_phi(cfg, atlas, rng):
    if atlas.n != 2 * atlas.k:
        return [_check("Phi", True, skipped=f"Phi needs n = 2k, got n={atlas.n}, k={atlas.k}")]
    gr = atlas.gr()
    return [_from_report(phi_involution_check(gr)), _from_report(phi_compatibility_check(gr))]


def _random_gl(n, rng):
    return PGLGammaGroup(n).random_element(rng, bound=2)


def _random_monomial(n, rng):
    perm = list(range(n))
    rng.shuffle(perm)
    out = [[GaussianRational(0)] * n for _ in range(n)]
    for i, j in enumerate(perm):
        out[i][j] = GaussianRational(rng.choice([1, -1, 2]), rng.choice([0, 1]))
    return out


def _random_transvection(n, rng):
    i, j = rng.sample(range(n), 2)
    out = identity(n)
    out[i][j] = GaussianRational(rng.choice([1, -1, 2]), rng.choice([0, 1]))
    return out


def _suite_pgl(cfg, atlas, rng):
    # monomial matrices and transvections generate GL_n and keep the
    # renormalized pullbacks small enough for exact comparison
    n = atlas.n
    g1, g2 = _random_monomial(n, rng), _random_transvection(n, rng)
    out = [_from_report(pgl_group_law_check(atlas, g1, g2)),
           _from_report(pgl_group_law_check(atlas, g2, g1))]
    act = pgl_action(g2, atlas)
    out.append(_from_report(act.check_inverse(atlas)))
    out.append(_from_report(psi_st_commutes(atlas, act)))
    ident = pgl_action(identity(n), atlas)
    scal = pgl_action(scalar_multiple(identity(n), 3), atlas)
    out.append(_from_report(automorphism_equal(scal, ident, atlas)))
    return out


def structure_names_for(n: int) -> list[str]:
    return [s for s in STRUCTURE_NAMES if n % 2 == 0 or not s.startswith("c")]


def expected_model(name: str, k: int) -> str:
    """Chart model of the fixed points of each representative."""
    if name == "mu":
        return "Pi-R"
    if name == "psi-mu":
        return "Pi-R-prime"
    if k % 2:
        return "empty"
    return "Pi-H" if name == "c-mu" else "Pi-H-prime"


def _suite_real(cfg, atlas, rng):
    out = []
    for name in structure_names_for(atlas.n):
        mu = structure_by_name(atlas, name)
        out.append(_from_report(mu.check_involution(), structure=name))
        out.append(_from_report(mu.check_compatibility(), structure=name))
        if name == "psi-mu":
            out.append(_from_report(transition_closure_check(mu), structure=name))
    return out


def _structure_label(mu, k):
    """Model label from the invariant charts, or the forced homogeneous chart if there are none."""
    reports = [fixed_relations(mu, i) for i in mu.atlas.indices]
    applicable = [r for r in reports if r.status != "not-applicable"]
    if not applicable:
        applicable = [fixed_relations(mu, mu.atlas.indices[0], force=True)]
    labels = sorted({match_quaternionic(r) for r in applicable})
    return labels, applicable


def _suite_fixed(cfg, atlas, rng):
    out = []
    n, k = atlas.n, atlas.k
    for name in structure_names_for(n):
        mu = structure_by_name(atlas, name)
        labels, reps = _structure_label(mu, k)
        want = expected_model(name, k)
        ok = labels == [want]
        relations = [r.to_json() for r in reps[:1]]
        out.append(_check(f"fixed points of {name}", ok, structure=name, model=labels,
                          expected_model=want, charts=len(reps), relations=relations))
        a = a_j(n) if name.startswith("c") else identity(n)
        exist = real_points_exist(a, k)
        consistent = any(r.status == "consistent" for r in reps)
        out.append(_check(f"existence criterion agrees for {name}",
                          consistent == (exist != "empty"),
                          structure=name, real_points_exist=exist))
    return out


def _suite_galois(cfg, atlas, rng):
    n, k = atlas.n, atlas.k
    out = []
    pgl = PGLGammaGroup(n)
    out.append(_check("identity is a cocycle", z1_check(pgl, identity(n))))
    out.append(_check("delta(1) = +1", delta_sign(identity(n)) == 1))
    if n % 2 == 0:
        out.append(_check("a_J is a cocycle", z1_check(pgl, a_j(n))))
        out.append(_check("delta(a_J) = -1", delta_sign(a_j(n)) == -1))
        # delta is constant on the orbit a * c * conj(a)^-1
        g = _random_gl(n, rng)
        out.append(_check("delta constant on an orbit", delta_sign(star(pgl, g, a_j(n))) == -1))
    out.append(_check("H^1({+1,-1}) has two classes", len(h1_finite(sign_group())) == 2))
    rep = classify_real_structures(n, k)
    want = 2 if (n % 2 or (n, k) == (2, 1)) else 4
    out.append(_check("classification count", rep.count == want, classification=rep.to_json()))
    tw = twisted_algebra_solve(1)
    hamilton_ok = (tw.hamilton[("i", "j")] == ("k", 1) and tw.hamilton[("j", "i")] == ("k", -1)
                   and all(tw.hamilton[(u, u)] == ("1", -1) for u in "ijk"))
    out.append(_check("twisted algebra is H", tw.dimension == 4 and tw.units_span and hamilton_ok,
                      algebra=tw.to_json()))
    return out


def _suite_superalgebras(cfg, atlas, rng):
    out = []
    for size in sorted({2, 3, max(2, atlas.n)}):
        q = build_qn(size)
        e = q.identity()
        closure = central = jacobi = True
        for _ in range(cfg.jacobi_triples):
            x, y, z = (q.random_homogeneous(rng) for _ in range(3))
            b = q.bracket(x, y)
            closure &= q.is_member(b.matrix()) and b.parity() is not None
            central &= q.bracket(e, x).is_zero()
            jacobi &= super_jacobi(x, y, z).is_zero()
        out.append(_check(f"q_{size} closure", closure, dims=list(q.dims)))
        out.append(_check(f"E_{2 * size} central in q_{size}", central))
        out.append(_check(f"super Jacobi on q_{size}", jacobi, triples=cfg.jacobi_triples,
                          quotient_dimension=q.quotient_dimension))
    v = build_v21()
    bad = v.check_jacobi()
    g0g1 = all(not v.bracket({a: 1}, {"d": 1}) for a in v.graded_piece(0) if a != "z")
    out.append(_check("graded algebra of PiGr(2,1)", bad is None and g0g1 and v.dimension == 8,
                      dimension=v.dimension, jacobi_violation=bad))
    return out


def _suite_dominance(cfg, atlas, rng):
    got = dominant_filter(atlas.n, atlas.k)
    return [_check("dominant weights", got == [tuple([0] * atlas.n)],
                   weights=[list(w) for w in got])]


_RUNNERS = {
    "cocycle": _suite_cocycle,
    "retract": _suite_retract,
    "lifts": _suite_lifts,
    "normalize": _suite_normalize,
    "psi-st": _suite_psi_st,
    "phi": _suite_phi,
    "pgl": _suite_pgl,
    "real-structures": _suite_real,
    "fixed-points": _suite_fixed,
    "galois": _suite_galois,
    "superalgebras": _suite_superalgebras,
    "dominance": _suite_dominance,
}


def run_suite(name: str, cfg: VerificationConfig, atlas: Atlas | None = None) -> dict:
    atlas = atlas if atlas is not None else cfg.atlas()
    # one generator per suite, so the result of a suite does not depend on the others
    rng = random.Random(f"{cfg.seed}:{name}")
    try:
        checks = _RUNNERS[name](cfg, atlas, rng)
    except (SuperGrassError, CocycleError) as exc:
        checks = [_check(name, False, error=f"{type(exc).__name__}: {exc}")]
    return {"suite": name, "passed": all(c["passed"] for c in checks), "checks": checks}


def _timed_suite(name, cfg, atlas):
    t = time.perf_counter()
    result = run_suite(name, cfg, atlas)
    return result, round(time.perf_counter() - t, 3)


def run(cfg: VerificationConfig, atlas: Atlas | None = None) -> dict:
    """Run the configured suites; ``timing`` is the only non-deterministic field.

    With ``cfg.jobs > 1`` suites run in a process pool; results are still
    collected in the configured order.
    """
    cfg.validate()
    atlas = atlas if atlas is not None else cfg.atlas()
    if cfg.jobs > 1 and len(cfg.suites) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            futures = [pool.submit(_timed_suite, name, cfg, atlas) for name in cfg.suites]
            done = [f.result() for f in futures]
    else:
        done = [_timed_suite(name, cfg, atlas) for name in cfg.suites]
    results = [r for r, _ in done]
    timing = {name: t for name, (_, t) in zip(cfg.suites, done)}
    return {
        "target": atlas.name,
        "seed": cfg.seed,
        "config": cfg.to_json(),
        "passed": all(r["passed"] for r in results),
        "suites": results,
        "timing": timing,
    }


def text_summary(report: dict) -> str:
    lines = [f"target {report['target']}  seed {report['seed']}"]
    for suite in report["suites"]:
        t = report.get("timing", {}).get(suite["suite"])
        stamp = f"  ({t:.2f}s)" if t is not None else ""
        lines.append(f"{'PASS' if suite['passed'] else 'FAIL'}  {suite['suite']}{stamp}")
        for c in suite["checks"]:
            note = "" if c["outcome"] == c["expected"] else f"  [expected {c['expected']}]"
            if c["expected"] == "fail" and c["outcome"] == "fail":
                note = "  [expected failure]"
            lines.append(f"      {c['outcome']:4}  {c['check']}{note}")
    lines.append("all suites passed" if report["passed"] else "verification FAILED")
    return "\n".join(lines) + "\n"
