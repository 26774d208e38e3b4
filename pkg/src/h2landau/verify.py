"""Aggregated verification suite behind `h2landau verify`.

Each section returns named pass/fail checks plus informational findings.
Findings record genuine convention discrepancies that the implementation
resolves by measurement (they are reported, never silently patched), so they
do not fail the run; any required check failing does.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import dkp
from .operators import (
    Component,
    FieldConfig,
    LadderKind,
    apply_ladder,
    commutator_constant,
    compose_pauli_operator,
    explicit_pauli_operator,
    laplacian2,
    measured_kappa,
    standard_probes,
    DEFAULT_PROBE_GRID,
)
from .oracle import Grid, solve_nonrel, solve_relativistic_coupled, sweep_nonrel, _branch_root
from .spectra import (
    bound_state_count,
    bound_variant,
    continuum_threshold,
    decoupling_matrices,
    exponent_pair,
    hypergeo_params,
    nonrel_energy,
    unified_condition,
    unified_condition_absvalue,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    required: bool = True


@dataclass
class VerifyReport:
    checks: list[CheckResult] = field(default_factory=list)
    findings: list[str] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str, required: bool = True):
        self.checks.append(CheckResult(name, bool(passed), detail, required))

    def extend(self, other: "VerifyReport"):
        self.checks.extend(other.checks)
        self.findings.extend(other.findings)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks if c.required)


def _relerr(a, b):
    scale = max(np.max(np.abs(a)), np.max(np.abs(b)), 1.0)
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))) / scale)


def dkp_checks() -> VerifyReport:
    rep = VerifyReport()
    blocks = dkp.build_spin_blocks()
    betas = dkp.build_beta_matrices(blocks)
    tri = dkp.trilinear_defect(betas)
    rep.add("dkp.trilinear_algebra", tri < 1e-14, f"max defect {tri:.2e} over 64 triples")
    j12 = dkp.j12_defect(betas, blocks)
    rep.add("dkp.J12_equals_minus_i_S3", j12 < 1e-14, f"entrywise defect {j12:.2e}")
    b0 = betas[0]
    rep.add("dkp.beta0_block_structure", int(np.count_nonzero(b0)) == 6,
            f"{np.count_nonzero(b0)} nonzero entries (expect 6)")
    tau3_ok = np.array_equal(blocks.tau[2], np.diag([1.0, 0.0, -1.0]).astype(complex))
    rep.add("dkp.tau3_diagonal", tau3_ok, "tau3 = diag(1, 0, -1)")
    comm = blocks.tau[0] @ blocks.tau[1] - blocks.tau[1] @ blocks.tau[0]
    cdef = float(np.max(np.abs(comm - 1j * blocks.tau[2])))
    rep.add("dkp.tau_commutator", cdef < 1e-14, f"[tau1,tau2] - i tau3 defect {cdef:.2e}")
    return rep


def operator_checks() -> VerifyReport:
    rep = VerifyReport()
    r = DEFAULT_PROBE_GRID
    probes = standard_probes()

    worst = 0.0
    for channel in Component:
        for m, B in [(-2, 5.0), (0, 2.0), (1, 5.0), (3, 0.7)]:
            cfg = FieldConfig(B=B)
            comp = compose_pauli_operator(channel, m, cfg)
            expl = explicit_pauli_operator(channel, m, cfg)
            for f in probes:
                worst = max(worst, _relerr(comp(f)(r), expl(f)(r)))
    rep.add("operators.composition_equals_explicit", worst < 1e-10,
            f"max relative deviation {worst:.2e} over channels/probes")

    worst = 0.0
    for m, B in [(0, 0.0), (2, 5.0), (-3, 1.5)]:
        cfg = FieldConfig(B=B)
        for f in probes:
            t1 = apply_ladder(LadderKind.b_minus, apply_ladder(LadderKind.a, f, m, cfg), m, cfg)
            t2 = apply_ladder(LadderKind.a_plus, apply_ladder(LadderKind.b, f, m, cfg), m, cfg)
            worst = max(worst, _relerr(-t1(r) - t2(r), laplacian2(f, m, cfg)(r)))
    rep.add("operators.anticomposition_is_laplacian", worst < 1e-10,
            f"max relative deviation {worst:.2e}")

    try:
        c = commutator_constant(2, FieldConfig(B=3.0))
        rep.add("operators.commutator_r_independent", abs(c - 3.0) < 1e-10,
                f"constant {c:.12f} at B=3 (spread within 1e-10)")
    except RuntimeError as exc:
        rep.add("operators.commutator_r_independent", False, str(exc))

    kappa = measured_kappa()
    rep.add("operators.kappa_measured", abs(kappa - 1.0) < 1e-10,
            f"kappa = {kappa:.12f}")
    rep.findings.append(
        f"ladder commutator: (-b_minus a + a_plus b) = kappa*B with measured "
        f"kappa = {kappa:.10f}; the kappa = 2 convention sometimes quoted for "
        f"this constant is rejected by the coupled-system cross-check")

    worst = 0.0
    for m, B in [(2, 3.0), (-1, 4.5), (0, 1.0)]:
        op1 = compose_pauli_operator(Component.psi1, m, FieldConfig(B=B))
        op3 = compose_pauli_operator(Component.psi3, -m, FieldConfig(B=-B))
        for f in probes:
            worst = max(worst, _relerr(op1(f)(r), op3(f)(r)))
    rep.add("operators.mirror_symmetry", worst < 1e-10,
            f"psi1(m,B) vs psi3(-m,-B) deviation {worst:.2e}")
    return rep


def spectra_checks() -> VerifyReport:
    rep = VerifyReport()
    cfg = FieldConfig(B=5.0)

    spots = [
        (Component.psi2, -2, 0, 2.5),
        (Component.psi2, 1, 0, 6.5),
        (Component.psi1, -1, 0, 4.0),
        (Component.psi3, -1, 0, 0.0),
    ]
    ok = all(nonrel_energy(ch, m, n, cfg) == want for ch, m, n, want in spots)
    rep.add("spectra.spot_values", ok, "four closed-form substitution values at B=5")

    worst = 0.0
    for B in (2.0, 5.0, 10.0):
        c = FieldConfig(B=B)
        for ch in Component:
            for m in range(-12, 13):
                for n in range(bound_state_count(ch, m, c)):
                    lvl = nonrel_energy(ch, m, n, c)
                    p = hypergeo_params(ch, bound_variant(ch, m), m, c, X=2 * lvl)
                    worst = max(worst, abs(p.alpha + n))
    rep.add("spectra.quantization_alpha_is_minus_n", worst < 1e-12,
            f"max |alpha + n| = {worst:.2e} over the sweep")

    bad = []
    for B in (2.0, 5.0, 10.0):
        c = FieldConfig(B=B)
        for ch in Component:
            for m in range(-12, 13):
                if bound_state_count(ch, m, c) == 0:
                    continue
                pair = exponent_pair(ch, bound_variant(ch, m), m, c)
                if not (pair.a < 0 and pair.c >= 0 and 2 * pair.c + 1 >= 1):
                    bad.append((ch.name, m, B))
    rep.add("spectra.bound_variant_exponents", not bad,
            "a < 0, c >= 0, gamma >= 1 across the bound region"
            + (f"; violations {bad}" if bad else ""))

    worst = 0.0
    for ch in Component:
        for m in range(-12, 6):
            for n in range(bound_state_count(ch, m, cfg)):
                lvl = nonrel_energy(ch, m, n, cfg)
                root = float(np.sqrt(continuum_threshold(ch, cfg) - 2 * lvl))
                worst = max(worst, abs(unified_condition(ch, m, n, cfg) - root))
    rep.add("spectra.unified_form_reproduces_per_case", worst < 1e-12,
            f"max deviation {worst:.2e}")

    consistent = unified_condition(Component.psi2, -2, 0, cfg)
    absform = unified_condition_absvalue(Component.psi2, -2, 0, cfg)
    rep.add("spectra.absvalue_form_flagged", absform != consistent,
            f"absolute-value unified form {absform:+.2f} vs per-case {consistent:+.2f}",
            required=True)
    rep.findings.append(
        f"the absolute-value unified quantization form gives {absform:+.2f} at "
        f"(projection 0, B=5, m=-2, n=0) where the per-case condition gives "
        f"{consistent:+.2f}; it is negative throughout the bound regime, so the "
        f"sign-consistent form -(a+c) - n - 1/2 is used and reproduces every "
        f"per-case spectrum exactly")

    rng = np.random.default_rng(20250808)
    worst = 0.0
    for _ in range(100):
        eps = rng.uniform(0.2, 8.0)
        M = rng.uniform(0.2, 5.0)
        B = rng.uniform(-8.0, 8.0)
        d = decoupling_matrices(eps, FieldConfig(B=B, M=M), kappa=1.0)
        target = np.diag([d.lambda1, d.lambda2])
        worst = max(worst, float(np.max(np.abs(d.S @ d.A_mat @ d.S_inv - target))))
    rep.add("spectra.decoupling_exact", worst < 1e-12,
            f"max |S A S^-1 - diag| = {worst:.2e} over 100 draws")
    return rep


def oracle_checks(quick: bool = False, base_n: int = 1200) -> VerifyReport:
    rep = VerifyReport()
    if quick:
        rep.add("oracle.skipped", True, "oracle sweep skipped (--quick)", required=False)
        return rep

    grid = Grid(r_max=28.0, n=base_n)
    spots = [
        (Component.psi2, -2, 5.0, 5.0),
        (Component.psi2, 1, 5.0, 13.0),
        (Component.psi1, -1, 5.0, 8.0),
        (Component.psi3, -1, 5.0, 0.0),
    ]
    worst = 0.0
    for ch, m, B, want in spots:
        res = solve_nonrel(ch, m, FieldConfig(B=B), grid=grid, k=1, drift_tol=1e-6)
        worst = max(worst, abs(res.eigenvalues[0] - want) / (1 + abs(want)))
    rep.add("oracle.spot_values", worst < 1e-6,
            f"max relative deviation {worst:.2e} against closed forms")

    mism, cmax = 0, 0.0
    for B in (2.0, 5.0):
        cfg = FieldConfig(B=B)
        problems = [(ch, m) for ch in Component for m in range(-6, 6)]
        results = sweep_nonrel(problems, cfg, grid=grid, drift_tol=1e-6)
        for (ch, m), res in zip(problems, results):
            want = bound_state_count(ch, m, cfg)
            if res.count_below != want:
                mism += 1
            for n, val in enumerate(res.eigenvalues):
                lvl = nonrel_energy(ch, m, n, cfg)
                cmax = max(cmax, abs(val - 2 * lvl) / (1 + abs(2 * lvl)))
    rep.add("oracle.level_counts", mism == 0,
            f"{mism} count mismatches over the B in (2, 5) sweep")
    rep.add("oracle.closed_form_agreement", cmax < 1e-6,
            f"max relative deviation {cmax:.2e}")

    kappa = measured_kappa()
    cfg = FieldConfig(B=5.0, M=1.0)
    rel = solve_relativistic_coupled(-2, cfg, kappa=kappa,
                                     grid=Grid(r_max=28.0, n=800), drift_tol=1e-6)
    x = rel.phi2 ** 2 - 1.0
    verdicts = {}
    for hyp in (1.0, 2.0):
        shift = hyp * cfg.B
        union = np.sort(np.concatenate([
            _branch_root(+shift, 1.0, x), _branch_root(-shift, 1.0, x)]))
        union = union[union < rel.eps_cut]
        if len(union) != len(rel.coupled):
            verdicts[hyp] = np.inf
        else:
            verdicts[hyp] = float(np.max(np.abs(union - rel.coupled)))
    arbitration_ok = verdicts[1.0] < 1e-6 and verdicts[2.0] > 1e-2
    rep.add("oracle.kappa_arbitration", arbitration_ok,
            f"coupled spectrum vs kappa=1: {verdicts[1.0]:.2e}, "
            f"vs kappa=2: {verdicts[2.0]:.2e}")
    rep.findings.append(
        f"coupled-system arbitration: kappa = 1 decoupled spectrum matches the "
        f"directly solved pair to {verdicts[1.0]:.2e}; kappa = 2 misses by "
        f"{verdicts[2.0]:.2e}")
    rep.add("oracle.phi2_sqrt6", abs(rel.phi2[0] - np.sqrt(6.0)) < 1e-6,
            f"ground relativistic level {rel.phi2[0]:.9f} (expect sqrt(6))")
    return rep


SECTIONS = ("dkp", "operators", "spectra", "oracle")


def run_verification(sections=None, quick: bool = False) -> VerifyReport:
    sections = set(sections or SECTIONS)
    rep = VerifyReport()
    if "dkp" in sections:
        rep.extend(dkp_checks())
    if "operators" in sections:
        rep.extend(operator_checks())
    if "spectra" in sections:
        rep.extend(spectra_checks())
    if "oracle" in sections:
        rep.extend(oracle_checks(quick=quick))
    return rep
