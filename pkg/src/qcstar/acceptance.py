"""End-to-end verification suite: every headline claim, one result each.

Each criterion runs independently, reports pass/fail with a one-line
detail, and records its wall time against a stated budget.  Two entries
are expected to fail in double precision and are kept failing on
purpose rather than loosened; their detail strings say why.  See the
package README for the analysis.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import graphs, ktheory, ncalgebra, representations as reps
from .coefficients import QLaurent


@dataclass(frozen=True)
class CriterionResult:
    ident: str
    title: str
    passed: bool
    detail: str
    seconds: float
    budget_seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return (f"[{mark}] criterion {self.ident}: {self.title} "
                f"({self.seconds:.2f}s/{self.budget_seconds:g}s) - {self.detail}")


@dataclass(frozen=True)
class RunConfig:
    q: float = 0.5
    dim: int = 64
    n_max: int = 40
    seed: int = 0
    element_count: int = 200
    matrix_count: int = 1000
    recovery_trials: int = 100


def _crit_1_k_groups(cfg: RunConfig):
    expected = {
        "G1": (ktheory.AbelianGroup(2), ktheory.AbelianGroup(0)),
        "G2": (ktheory.AbelianGroup(1), ktheory.AbelianGroup(0)),
        "G3": (ktheory.AbelianGroup(1, (2,)), ktheory.AbelianGroup(0)),
    }
    got = {}
    for name, want in expected.items():
        k0, k1 = ktheory.k_groups(graphs.builtin_graph(name))
        got[name] = (k0, k1)
        if (k0, k1) != want:
            return False, f"{name}: got ({k0}, {k1}), want ({want[0]}, {want[1]})"
    summary = "; ".join(f"{n}: K0={g[0]}, K1={g[1]}" for n, g in got.items())
    return True, summary


def _crit_2_morphisms(cfg: RunConfig):
    bad = []
    for name in ("F", "rp2-inclusion", "r1", "r2"):
        m = ncalgebra.builtin_morphism(name)
        report = m.verify()
        if not report.ok:
            bad.append(f"{name} residuals nonzero")
    for name in ("r1", "r2"):
        if not ncalgebra.builtin_morphism(name).is_involution():
            bad.append(f"{name} not involutive")
    if bad:
        return False, "; ".join(bad)
    return True, "F, rp2-inclusion exact; r1, r2 involutive automorphisms"


def _build_pi_pm(cfg: RunConfig, dim=None):
    d = dim or cfg.dim
    return reps.direct_sum(reps.build_rep("pi_plus", cfg.q, d),
                           reps.build_rep("pi_minus", cfg.q, d))


def _crit_3a_residuals(cfg: RunConfig):
    tol = 1e-10
    worst = {}
    for label, rep in (("rho_rp2", reps.build_rep("rho_rp2", cfg.q, cfg.dim)),
                       ("pi_plus+pi_minus", _build_pi_pm(cfg))):
        worst[label] = reps.relation_residuals(rep).max_residual()
    ok = all(v <= tol for v in worst.values())
    detail = ", ".join(f"{k}: {v:.2e}" for k, v in worst.items())
    return ok, detail + f" (tol {tol:g})"


def _crit_3b_residual_decay(cfg: RunConfig):
    ratios = []
    for builder in (lambda d: reps.build_rep("rho_rp2", cfg.q, d),
                    lambda d: _build_pi_pm(cfg, d)):
        small = reps.relation_residuals(builder(32)).max_residual()
        large = reps.relation_residuals(builder(64)).max_residual()
        ratios.append(small / large if large > 0 else float("inf"))
    ok = all(r >= 1e3 for r in ratios)
    detail = (f"decay ratios N=32 vs N=64: "
              + ", ".join(f"{r:.2f}" for r in ratios)
              + "; both sizes sit at the double-precision roundoff floor "
                "(~1e-16), truncation error q^(4(N-1)) ~ 5e-38 at N=32 is "
                "already invisible, so no measurable decay exists")
    return ok, detail


def _crit_4_spectrum(cfg: RunConfig):
    rep = reps.build_rep("rho_rp2", cfg.q, cfg.dim)
    spectrum = reps.spectrum_check(rep, "P")
    if spectrum.max_deviation != 0.0:
        return False, f"construction diagonal deviates by {spectrum.max_deviation:.2e}"
    p = ncalgebra.presentation("rp2")
    round_trip = p.normal_form(p.gen("P") * p.one())
    diag = np.diag(reps.evaluate(round_trip, rep))
    dev = float(np.max(np.abs(diag - rep.spectra["P"])))
    ok = dev <= 1e-12
    return ok, f"exact by construction; nf round-trip deviation {dev:.2e} (tol 1e-12)"


def _crit_5_independence(cfg: RunConfig):
    fam = reps.basis_monomials(3, 3)
    report = reps.independence_check(fam, q=cfg.q, n_max=cfg.n_max,
                                     trials=cfg.recovery_trials,
                                     rng=random.Random(cfg.seed))
    ok = report.full_rank and report.recovery_max_error <= 1e-8
    return ok, (f"rank {report.rank}/{report.monomial_count}, "
                f"recovery max error {report.recovery_max_error:.1e} over "
                f"{report.recovery_trials} random vectors")


def _crit_6_snf_suite(cfg: RunConfig):
    rng = random.Random(cfg.seed)
    coset_checked = 0
    for trial in range(cfg.matrix_count):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        m = ktheory.IntegerMatrix(
            rows, cols,
            tuple(rng.randint(-4, 4) for _ in range(rows * cols)))
        snf = ktheory.smith_normal_form(m)
        if snf.u.multiply(m).multiply(snf.v) != snf.s:
            return False, f"trial {trial}: U*M*V != S for {m.entries}"
        if not (snf.u.is_unimodular() and snf.v.is_unimodular()):
            return False, f"trial {trial}: transform not unimodular"
        factors = snf.invariant_factors()
        if any(b % a for a, b in zip(factors, factors[1:])):
            return False, f"trial {trial}: divisibility chain broken: {factors}"
        claimed = ktheory.cokernel(m).torsion_order()
        if claimed != ktheory.torsion_order_by_minors(m):
            return False, f"trial {trial}: torsion disagrees with minor gcd oracle"
        by_cosets = ktheory.torsion_order_by_cosets(m, claimed)
        if by_cosets is not None:
            coset_checked += 1
            if by_cosets != claimed:
                return False, (f"trial {trial}: coset enumeration gives "
                               f"{by_cosets}, SNF gives {claimed}")
    return True, (f"{cfg.matrix_count} matrices: U*M*V=S, unimodular, chain ok; "
                  f"torsion matched minor-gcd oracle on all, literal coset "
                  f"enumeration on {coset_checked}")


def _soundness_rep_for(cfg: RunConfig, pname: str):
    if pname == "sphere":
        return _build_pi_pm(cfg)
    if pname == "rp2":
        return reps.build_rep("rho_rp2", cfg.q, cfg.dim)
    if pname == "suq2_mod_b":
        return reps.direct_sum(reps.build_rep("rho_plus", cfg.q, cfg.dim),
                               reps.build_rep("rho_minus", cfg.q, cfg.dim))
    if pname == "disc":
        return reps.compose_rep(_build_pi_pm(cfg),
                                ncalgebra.builtin_morphism("disc-inclusion"))
    raise ValueError(pname)


def _crit_7_soundness(cfg: RunConfig):
    tol = 1e-9
    problems = []
    summary = []
    for pname in ("sphere", "disc", "rp2", "suq2_mod_b"):
        p = ncalgebra.presentation(pname)
        rep = _soundness_rep_for(cfg, pname)
        rng = random.Random(cfg.seed)
        worst_bridge = 0.0
        for _ in range(cfg.element_count):
            x = ncalgebra.random_element(p, rng, max_degree=6)
            nfx = p.normal_form(x)
            if not (p.normal_form(nfx) - nfx).is_zero():
                problems.append(f"{pname}: nf not idempotent")
                break
            star_round = p.normal_form(p.normal_form(x.star()).star())
            if not (star_round - nfx).is_zero():
                problems.append(f"{pname}: nf(nf(x*)*) != nf(x)")
                break
            worst_bridge = max(worst_bridge,
                               reps.element_mismatch(x, nfx, rep))
        summary.append(f"{pname} bridge {worst_bridge:.1e}")
        if worst_bridge > tol:
            problems.append(
                f"{pname}: evaluation bridge {worst_bridge:.1e} exceeds {tol:g} "
                "(normal forms are exact - confluence is machine-checked - but "
                "their basis coefficients reach q^-36 ~ 7e10 at q=1/2, so "
                "double-precision evaluation cancels catastrophically; "
                "unreachable tolerance in IEEE doubles)")
    ok = not problems
    detail = "; ".join(summary) + (
        "" if ok else " | " + " | ".join(problems))
    return ok, detail


def _crit_8_ideal_lattices(cfg: RunConfig):
    counts = {}
    lattices = {}
    for name, want in (("G1", 5), ("G2", 3), ("G3", 3)):
        hs = graphs.hereditary_saturated_sets(graphs.builtin_graph(name))
        counts[name] = len(hs)
        lattices[name] = hs
        if len(hs) != want:
            return False, f"{name}: {len(hs)} sets, want {want}"
    if not graphs.lattices_isomorphic(lattices["G2"], lattices["G3"]):
        return False, "G2 and G3 ideal lattices not isomorphic"
    return True, "G1: 5 sets; G2, G3: 3 sets each, lattices isomorphic"


def _crit_9_fixed_points(cfg: RunConfig):
    p = ncalgebra.presentation("sphere")
    r1 = ncalgebra.builtin_morphism("r1")
    r2 = ncalgebra.builtin_morphism("r2")
    rng = random.Random(cfg.seed)
    for i in range(cfg.element_count):
        x = ncalgebra.random_element(p, rng, max_degree=6)
        if ncalgebra.is_fixed(r1, x) != ncalgebra.even_generator_count(x, "K"):
            return False, f"element {i}: r1 fixedness != even K count"
        if ncalgebra.is_fixed(r2, x) != ncalgebra.even_word_length(x):
            return False, f"element {i}: r2 fixedness != even degree"
    return True, (f"{cfg.element_count} elements: r1-fixed iff even K-degree, "
                  "r2-fixed iff even total degree")


CRITERIA = (
    ("1", "K-groups of the three builtin graphs", 0.1, _crit_1_k_groups),
    ("2", "morphism and involution verification", 4.0, _crit_2_morphisms),
    ("3a", "relation residuals at N=64", 5.0, _crit_3a_residuals),
    ("3b", "residual decay from N=32 to N=64", 5.0, _crit_3b_residual_decay),
    ("4", "spectrum of the projective-space diagonal generator", 5.0,
     _crit_4_spectrum),
    ("5", "basis independence and exact coefficient recovery", 10.0,
     _crit_5_independence),
    ("6", "Smith normal form property suite with oracles", 10.0,
     _crit_6_snf_suite),
    ("7", "rewriting soundness suite", 30.0, _crit_7_soundness),
    ("8", "hereditary saturated ideal lattices", 1.0, _crit_8_ideal_lattices),
    ("9", "fixed-point characterization of the involutions", 30.0,
     _crit_9_fixed_points),
)

EXPECTED_FAILURES = ("3b", "7")


def run_all(cfg: RunConfig | None = None) -> list[CriterionResult]:
    cfg = cfg or RunConfig()
    results = []
    for ident, title, budget, fn in CRITERIA:
        start = time.perf_counter()
        try:
            passed, detail = fn(cfg)
        except Exception as err:  # a crash is a failure with the reason shown
            passed, detail = False, f"{type(err).__name__}: {err}"
        elapsed = time.perf_counter() - start
        if passed and elapsed > budget:
            passed = False
            detail += f"; exceeded time budget ({elapsed:.2f}s > {budget:g}s)"
        results.append(CriterionResult(ident, title, passed, detail,
                                       elapsed, budget))
    return results
