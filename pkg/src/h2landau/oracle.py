"""Independent numerical verification of the closed-form spectra.

The channel equations are brought to Liouville normal form with
u = sqrt(sinh r) * psi, giving -u'' + V_eff u = X u with X in the 2*eps*M
slot and V_eff = W_channel + 1/4 - 1/(4 sinh^2 r).  A standard 3-point
stencil then yields a symmetric tridiagonal matrix whose below-threshold
eigenvalues are extracted by Sturm-sequence bisection: deterministic,
guaranteed-complete counts, no dependence on any closed-form result.

Channels whose bound-variant origin exponent c is 0 or 1/2 leave u with a
sqrt(r)- or r^(3/2)-type kink at the origin, where the plain stencil loses
its clean second-order expansion; those cases switch automatically to a
staggered finite-volume discretization of the Sturm-Liouville form
(sinh r psi')' whose zero-flux face at r = 0 is the natural boundary
condition there.

The relativistic coupled pair is treated as a genuine quadratic eigenvalue
problem: a 2x2-block tridiagonal pencil P(eps) whose real eigenvalues are
enumerated by inertia counts from a block LDL^T factorization, again by
bisection.  A dense companion linearization of the same pencil is provided
for small-grid cross checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import solve_banded

from .operators import Component, FieldConfig, channel_potential
from .spectra import continuum_threshold

_TINY = np.finfo(float).tiny


class GridTooCoarseError(ValueError):
    pass


@dataclass(frozen=True)
class Grid:
    """Uniform radial grid on [r_min, r_max] with n interior unknowns."""

    r_max: float = 30.0
    n: int = 8000
    r_min: float = 0.0

    def __post_init__(self):
        if not (self.r_max > self.r_min >= 0.0):
            raise ValueError("need r_max > r_min >= 0")
        if self.n < 16:
            raise ValueError("need at least 16 interior points")

    @property
    def length(self) -> float:
        return self.r_max - self.r_min


@dataclass(frozen=True)
class TridiagonalOperator:
    """Symmetric tridiagonal discretization plus the data needed to read
    eigenvectors back as radial profiles."""

    diag: np.ndarray
    offdiag: np.ndarray
    nodes: np.ndarray
    weight_sqrt: np.ndarray      # eigenvector v relates to psi by v = weight_sqrt * psi
    threshold: float
    scheme: str                  # "liouville" or "flux"
    step: float

    @property
    def size(self) -> int:
        return len(self.diag)


def _uses_flux_scheme(channel: Component, m: int) -> bool:
    # Bound-variant origin exponent c = |m + offset| / 2.  For c = 0 the
    # transformed u ~ sqrt(r) needs the natural (zero-flux) origin treatment;
    # for c = 1/2 the plain stencil picks up an h^2 log h origin defect that
    # defeats extrapolation, and the flux form converges cleanly, so both
    # switch schemes.
    return abs(m + channel.offset) <= 1


def _coarse_check(h: float, v_outer: np.ndarray):
    if h * h * float(np.max(np.abs(v_outer))) > 0.5:
        raise GridTooCoarseError(
            f"step {h:.3g} cannot resolve the potential scale "
            f"{np.max(np.abs(v_outer)):.3g}")


def selfadjoint_discretize(channel: Component, m: int, cfg: FieldConfig,
                           grid: Grid) -> TridiagonalOperator:
    """Discretize one channel; eigenvalues land in the 2*eps*M slot.

    Works for either sign of B (the potential formulas are sign-agnostic),
    which makes the oracle an independent check of the closed-form mirror map.
    """
    thr = continuum_threshold(channel, cfg)
    if not _uses_flux_scheme(channel, m):
        h = grid.length / (grid.n + 1)
        nodes = grid.r_min + h * np.arange(1, grid.n + 1)
        s = np.sinh(nodes)
        v_eff = (channel_potential(channel, nodes, m, cfg)
                 + 0.25 - 1.0 / (4.0 * s * s))
        _coarse_check(h, v_eff[nodes >= min(1.0, 0.5 * grid.r_max)])
        diag = 2.0 / (h * h) + v_eff
        off = np.full(grid.n - 1, -1.0 / (h * h))
        return TridiagonalOperator(diag=diag, offdiag=off, nodes=nodes,
                                   weight_sqrt=np.sqrt(s), threshold=thr,
                                   scheme="liouville", step=h)

    h = grid.length / grid.n
    nodes = grid.r_min + h * (np.arange(grid.n) + 0.5)
    faces = grid.r_min + h * np.arange(grid.n + 1)
    s_face = np.sinh(faces)
    s_node = np.sinh(nodes)
    w_pot = channel_potential(channel, nodes, m, cfg)
    _coarse_check(h, w_pot[nodes >= min(1.0, 0.5 * grid.r_max)])
    a_diag = (s_face[:-1] + s_face[1:]) / (h * h) + w_pot * s_node
    a_off = -s_face[1:-1] / (h * h)
    diag = a_diag / s_node
    off = a_off / np.sqrt(s_node[:-1] * s_node[1:])
    return TridiagonalOperator(diag=diag, offdiag=off, nodes=nodes,
                               weight_sqrt=np.sqrt(s_node), threshold=thr,
                               scheme="flux", step=h)


def _refined_grid(grid: Grid, scheme: str) -> Grid:
    # halve the step exactly for the given scheme
    if scheme == "liouville":
        return replace(grid, n=2 * grid.n + 1)
    return replace(grid, n=2 * grid.n)


# ---------------------------------------------------------------------------
# Sturm-sequence machinery
# ---------------------------------------------------------------------------


def _pivmin(off2) -> float:
    top = float(np.max(off2)) if np.size(off2) else 1.0
    return _TINY * max(1.0, top)


def sturm_count(T: TridiagonalOperator, x: float) -> int:
    """Number of eigenvalues strictly below x (LDL^T sign count)."""
    off2 = T.offdiag * T.offdiag
    return int(_sturm_counts(T.diag, off2, np.array([x]), _pivmin(off2))[0])


def _sturm_counts(diag, off2, xs, pivmin):
    d = diag[0] - xs
    d = np.where(np.abs(d) < pivmin, -pivmin, d)
    count = (d < 0).astype(np.int64)
    for i in range(1, len(diag)):
        d = diag[i] - xs - off2[i - 1] / d
        d = np.where(np.abs(d) < pivmin, -pivmin, d)
        count += d < 0
    return count


def sturm_bisection(T: TridiagonalOperator, k: int, tol: float = 1e-10) -> np.ndarray:
    """The k smallest eigenvalues, each bracketed by Sturm counts and bisected
    to interval width `tol`.  Deterministic: fixed round count, no randomness."""
    n = T.size
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    off_abs = np.abs(T.offdiag)
    pad = np.concatenate(([0.0], off_abs)) + np.concatenate((off_abs, [0.0]))
    glo = float(np.min(T.diag - pad))
    ghi = float(np.max(T.diag + pad))
    lo = np.full(k, glo)
    hi = np.full(k, ghi)
    off2 = T.offdiag * T.offdiag
    pivmin = _pivmin(off2)
    ranks = np.arange(1, k + 1)
    rounds = _bisection_rounds(ghi - glo, tol)
    for _ in range(rounds):
        mid = 0.5 * (lo + hi)
        counts = _sturm_counts(T.diag, off2, mid, pivmin)
        take_hi = counts >= ranks
        hi = np.where(take_hi, mid, hi)
        lo = np.where(take_hi, lo, mid)
    return 0.5 * (lo + hi)


def _bisection_rounds(width: float, tol: float) -> int:
    return max(1, int(math.ceil(math.log2(max(width / tol, 2.0)))) + 1)


class _Stacked:
    """Many tridiagonals stacked for one-pass vectorized Sturm counts.

    Matrices of unequal size are padded with huge decoupled diagonal entries,
    which leaves every count below the padding value unchanged.
    """

    def __init__(self, mats: list[TridiagonalOperator]):
        sizes = [t.size for t in mats]
        self.n_max = max(sizes)
        p = len(mats)
        diags = np.full((p, self.n_max), 1e30)
        off2s = np.zeros((p, max(self.n_max - 1, 1)))
        self.glo = np.empty(p)
        for i, t in enumerate(mats):
            diags[i, :t.size] = t.diag
            off2s[i, :t.size - 1] = t.offdiag * t.offdiag
            off_abs = np.abs(t.offdiag)
            pad = np.concatenate(([0.0], off_abs)) + np.concatenate((off_abs, [0.0]))
            self.glo[i] = np.min(t.diag - pad)
        self.diag_cols = np.asfortranarray(diags)
        self.off2_cols = np.asfortranarray(off2s)
        self.pivmin = _pivmin(off2s)

    def counts(self, prob: np.ndarray, xs: np.ndarray) -> np.ndarray:
        d = self.diag_cols[prob, 0] - xs
        d = np.where(np.abs(d) < self.pivmin, -self.pivmin, d)
        out = (d < 0).astype(np.int64)
        for i in range(1, self.n_max):
            d = self.diag_cols[prob, i] - xs - self.off2_cols[prob, i - 1] / d
            d = np.where(np.abs(d) < self.pivmin, -self.pivmin, d)
            out += d < 0
        return out


def _batched_eigenvalues(mats: list[TridiagonalOperator], ks: list[int],
                         his: list[float], tol: float) -> list[np.ndarray]:
    """Smallest-k eigenvalues of many tridiagonals in one vectorized bisection."""
    prob = np.concatenate([np.full(k, i, dtype=np.int64) for i, k in enumerate(ks)])
    ranks = np.concatenate([np.arange(1, k + 1) for k in ks])
    if len(prob) == 0:
        return [np.array([]) for _ in mats]
    stack = _Stacked(mats)
    lo = stack.glo[prob]
    hi = np.asarray(his, dtype=float)[prob]
    rounds = _bisection_rounds(float(np.max(hi - lo)), tol)
    for _ in range(rounds):
        mid = 0.5 * (lo + hi)
        counts = stack.counts(prob, mid)
        take_hi = counts >= ranks
        hi = np.where(take_hi, mid, hi)
        lo = np.where(take_hi, lo, mid)
    mids = 0.5 * (lo + hi)
    out = []
    start = 0
    for k in ks:
        out.append(mids[start:start + k])
        start += k
    return out


def _batched_counts(mats: list[TridiagonalOperator], xs: list[float]) -> list[int]:
    stack = _Stacked(mats)
    prob = np.arange(len(mats), dtype=np.int64)
    return [int(c) for c in stack.counts(prob, np.asarray(xs, dtype=float))]


# ---------------------------------------------------------------------------
# Nonrelativistic solves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OracleResult:
    """Below-threshold spectrum of one (channel, m) problem.

    `eigenvalues` are Richardson extrapolants of the finest step-halving pair;
    a level's `converged` flag requires the change between successive
    extrapolants to drop below the drift tolerance.  Values sit in the
    2*eps*M slot for nonrelativistic problems and are eps itself for
    relativistic ones.
    """

    eigenvalues: np.ndarray
    threshold: float
    converged: tuple[bool, ...]
    grid_used: Grid
    count_below: int
    history: tuple[tuple[int, tuple[float, ...]], ...] = ()

    @property
    def all_converged(self) -> bool:
        return all(self.converged)


def solve_nonrel(channel: Component, m: int, cfg: FieldConfig,
                 grid: Grid | None = None, k: int | None = None,
                 tol: float = 1e-10, drift_tol: float = 1e-8,
                 max_refinements: int = 2) -> OracleResult:
    """Discrete 2*eps*M values below the continuum threshold for one channel.

    Three step-halved grids are solved; the reported eigenvalues are the last
    Richardson extrapolant and a level is flagged converged when the change
    between successive extrapolants drops below `drift_tol` (relative).  The
    grid keeps halving, up to `max_refinements` extra times, while any level
    is unconverged.
    """
    return sweep_nonrel([(channel, m)], cfg, grid=grid, k=k, tol=tol,
                        drift_tol=drift_tol, max_refinements=max_refinements)[0]


def sweep_nonrel(problems: list[tuple[Component, int]], cfg: FieldConfig,
                 grid: Grid | None = None, k: int | None = None,
                 tol: float = 1e-10, drift_tol: float = 1e-8,
                 max_refinements: int = 2) -> list[OracleResult]:
    """Batched `solve_nonrel` over many (channel, m) pairs on a common grid."""
    grid = grid or Grid()
    levels: list[list[TridiagonalOperator]] = []
    mats = [selfadjoint_discretize(ch, m, cfg, grid) for ch, m in problems]
    grids = [grid] * len(problems)
    for _ in range(3):
        levels.append(mats)
        grids = [_refined_grid(g, t.scheme) for g, t in zip(grids, mats)]
        mats = [selfadjoint_discretize(ch, m, cfg, g)
                for (ch, m), g in zip(problems, grids)]
    finest = levels[-1]

    thresholds = [t.threshold for t in finest]
    counts0 = _batched_counts(levels[0], thresholds)
    counts2 = _batched_counts(finest, thresholds)
    ks = [min(a, b) for a, b in zip(counts0, counts2)]
    if k is not None:
        ks = [min(c, k) for c in ks]
    vals = [_batched_eigenvalues(lv, ks, thresholds, tol) for lv in levels]

    results = []
    for i, (ch, m) in enumerate(problems):
        lam = [v[i] for v in vals]
        history = [(lv[i].size, tuple(float(x) for x in v[i]))
                   for lv, v in zip(levels, vals)]
        extra_prev = (4.0 * lam[1] - lam[0]) / 3.0
        extrap = (4.0 * lam[2] - lam[1]) / 3.0
        drift = np.abs(extrap - extra_prev)
        grid_i = _refined_grid(_refined_grid(grid, levels[0][i].scheme),
                               levels[0][i].scheme)
        refinements = 0
        while (len(extrap) and refinements < max_refinements
               and np.any(drift > drift_tol * (1.0 + np.abs(extrap)))):
            grid_i = _refined_grid(grid_i, levels[0][i].scheme)
            t_next = selfadjoint_discretize(ch, m, cfg, grid_i)
            lam_next = sturm_bisection(t_next, ks[i], tol)
            history.append((t_next.size, tuple(lam_next)))
            extra_prev = extrap
            extrap = (4.0 * lam_next - lam[2]) / 3.0
            lam.append(lam_next)
            lam = lam[1:]
            drift = np.abs(extrap - extra_prev)
            refinements += 1
        converged = tuple(bool(d <= drift_tol * (1.0 + abs(v)))
                          for d, v in zip(drift, extrap))
        keep = extrap < thresholds[i] if len(extrap) else np.array([], bool)
        results.append(OracleResult(
            eigenvalues=np.asarray(extrap)[keep],
            threshold=thresholds[i],
            converged=tuple(np.asarray(converged)[keep]),
            grid_used=grid_i,
            count_below=counts2[i],
            history=tuple(history),
        ))
    return results


def eigenvector(T: TridiagonalOperator, eigenvalue: float,
                iterations: int = 3) -> np.ndarray:
    """Unit eigenvector by inverse iteration (deterministic start vector).

    The sign convention makes the largest-magnitude entry positive.
    """
    n = T.size
    ab = np.zeros((3, n))
    ab[0, 1:] = T.offdiag
    ab[1, :] = T.diag - eigenvalue
    ab[2, :-1] = T.offdiag
    # nudge off exact singularity; inverse iteration only needs proximity
    ab[1, :] += 1e-11 * (1.0 + abs(eigenvalue))
    v = np.ones(n) / math.sqrt(n)
    for _ in range(iterations):
        v = solve_banded((1, 1), ab, v)
        v /= np.linalg.norm(v)
    if v[int(np.argmax(np.abs(v)))] < 0:
        v = -v
    return v


def eigenvector_profile(T: TridiagonalOperator, vec: np.ndarray) -> np.ndarray:
    """Convert a discrete eigenvector back to radial-profile samples psi(nodes)."""
    return vec / T.weight_sqrt


# ---------------------------------------------------------------------------
# Relativistic coupled pair
# ---------------------------------------------------------------------------


def _branch_root(shift: float, M: float, X):
    """Positive root of eps^2 - shift*eps - (M^2 + X) = 0."""
    X = np.asarray(X, dtype=float)
    return (shift + np.sqrt(shift * shift + 4.0 * (M * M + X))) / 2.0


def _negcount_2x2(a, b, d):
    det = a * d - b * b
    tr = a + d
    return ((det < 0).astype(np.int64)
            + 2 * ((det > 0) & (tr < 0))
            + ((det == 0) & (tr < 0)))


def _coupled_negcounts(Td, To, M, coupling, eps_arr, pivmin):
    """Negative-inertia of P(eps) = (eps^2 - M^2) I - Tbar - eps*coupling*SWAP
    via block LDL^T on the 2x2-block tridiagonal form, vectorized over eps."""
    eps_arr = np.asarray(eps_arr, dtype=float)
    p0 = eps_arr * eps_arr - M * M
    q = -eps_arr * coupling
    a = p0 - Td[0]
    b = q.copy()
    d = a.copy()
    cnt = _negcount_2x2(a, b, d)
    for i in range(1, len(Td)):
        det = a * d - b * b
        det = np.where(np.abs(det) < pivmin, -pivmin, det)
        c2 = To[i - 1] * To[i - 1]
        pi = p0 - Td[i]
        a_new = pi - c2 * (d / det)
        b_new = q + c2 * (b / det)
        d_new = pi - c2 * (a / det)
        a, b, d = a_new, b_new, d_new
        cnt += _negcount_2x2(a, b, d)
    return cnt


def _coupled_positive_roots(T: TridiagonalOperator, cfg: FieldConfig,
                            coupling: float, eps_cut: float,
                            tol: float) -> np.ndarray:
    """All real eps in (0, eps_cut) solving the coupled pencil, by inertia
    bisection; complete by construction (counts bracket every root)."""
    off2 = T.offdiag * T.offdiag
    pivmin = _pivmin(off2)
    M = cfg.M

    def counts(e):
        return _coupled_negcounts(T.diag, T.offdiag, M, coupling, e, pivmin)

    n_lo = int(counts(np.array([0.0]))[0])
    n_hi = int(counts(np.array([eps_cut]))[0])
    n_roots = n_lo - n_hi
    if n_roots <= 0:
        return np.array([])
    lo = np.zeros(n_roots)
    hi = np.full(n_roots, eps_cut)
    ranks = np.arange(1, n_roots + 1)
    for _ in range(_bisection_rounds(eps_cut, tol)):
        mid = 0.5 * (lo + hi)
        got = n_lo - counts(mid)          # roots in (0, mid]
        take_hi = got >= ranks
        hi = np.where(take_hi, mid, hi)
        lo = np.where(take_hi, lo, mid)
    return 0.5 * (lo + hi)


def companion_coupled_eigenvalues(T: TridiagonalOperator, cfg: FieldConfig,
                                  coupling: float, eps_cut: float) -> np.ndarray:
    """Dense companion linearization of the same pencil (cross-check path).

    Doubles the unknown into (w, eps*w) and solves the standard eigenproblem;
    eigenvalues with tiny imaginary part are accepted as real, positive values
    below `eps_cut` are returned sorted.  Meant for small grids only.
    """
    n = T.size
    tm = (np.diag(T.diag) + np.diag(T.offdiag, 1) + np.diag(T.offdiag, -1))
    zero = np.zeros((n, n))
    cmat = np.block([[tm, zero], [zero, tm]]) + cfg.M * cfg.M * np.eye(2 * n)
    kmat = coupling * np.block([[zero, np.eye(n)], [np.eye(n), zero]])
    lin = np.block([[np.zeros((2 * n, 2 * n)), np.eye(2 * n)], [cmat, kmat]])
    w = np.linalg.eigvals(lin)
    real = w[np.abs(w.imag) < 1e-8].real
    return np.sort(real[(real > 0) & (real < eps_cut)])


@dataclass(frozen=True)
class RelativisticResult:
    """Coupled-system spectrum plus the two decoupled branch spectra.

    All energy lists hold eps itself.  `coupled` enumerates every pencil root
    below the lower branch edge `eps_cut`; `gprime`/`phi0prime` come from the
    independently solved scalar problem plus the per-branch quadratic, and
    `branch_mismatch` is the distance between the coupled list and the merged
    branch lists (the decoupling-validity measure).
    """

    phi2: np.ndarray
    coupled: np.ndarray
    gprime: np.ndarray
    phi0prime: np.ndarray
    eps_cut: float
    slot_threshold: float
    kappa: float
    converged: tuple[bool, ...]
    grid_used: Grid
    grid_base: Grid
    branch_mismatch: float


def solve_relativistic_coupled(m: int, cfg: FieldConfig, kappa: float,
                               grid: Grid | None = None, tol: float = 1e-10,
                               drift_tol: float = 1e-8) -> RelativisticResult:
    """Solve the relativistic problem three ways on one discretization.

    1. the pure projection-0 mode: scalar slot eigenvalues X, eps = sqrt(M^2+X);
    2. the decoupled branches: the same X values pushed through the shifted
       quadratics with shift +/- kappa*B/M;
    3. the coupled (g, eps*Phi0) pencil solved directly by inertia bisection.

    Richardson extrapolation runs over three step-halved grids for all
    three routes; the coupled and branch routes must agree, and their final
    mismatch is reported for the kappa arbitration.
    """
    grid = grid or Grid()
    channel = Component.psi2
    M = cfg.M
    coupling = kappa * cfg.B / M

    mats = []
    g = grid
    for _ in range(3):
        t = selfadjoint_discretize(channel, m, cfg, g)
        mats.append(t)
        g = _refined_grid(g, t.scheme)
    x_th = mats[0].threshold
    eps_cut = float(_branch_root(-abs(coupling), M, x_th))

    k_below = sturm_count(mats[-1], x_th)
    if k_below:
        x_lv = [sturm_bisection(t, k_below, tol) for t in mats]
        x_star = (4.0 * x_lv[2] - x_lv[1]) / 3.0
    else:
        x_star = np.array([])

    roots = [_coupled_positive_roots(t, cfg, coupling, eps_cut, tol) for t in mats]
    n_match = min(len(r) for r in roots)
    e_prev = (4.0 * roots[1][:n_match] - roots[0][:n_match]) / 3.0
    coupled = (4.0 * roots[2][:n_match] - roots[1][:n_match]) / 3.0
    drift = np.abs(coupled - e_prev)
    converged = tuple(bool(d <= drift_tol * (1.0 + v))
                      for d, v in zip(drift, coupled))

    gprime = _branch_root(+coupling, M, x_star) if len(x_star) else np.array([])
    phi0prime = _branch_root(-coupling, M, x_star) if len(x_star) else np.array([])
    union = np.sort(np.concatenate([
        gprime[gprime < eps_cut], phi0prime[phi0prime < eps_cut]]))
    if len(union) == len(coupled):
        mismatch = float(np.max(np.abs(union - coupled))) if len(union) else 0.0
    else:
        mismatch = math.inf

    phi2 = np.sqrt(M * M + x_star[x_star > -M * M]) if len(x_star) else np.array([])
    return RelativisticResult(
        phi2=phi2, coupled=coupled, gprime=gprime, phi0prime=phi0prime,
        eps_cut=eps_cut, slot_threshold=x_th, kappa=kappa,
        converged=converged, grid_used=g, grid_base=grid,
        branch_mismatch=mismatch)


# ---------------------------------------------------------------------------
# Convergence studies
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvergenceReport:
    grid_sizes: tuple[int, ...]
    values: tuple[tuple[float, ...], ...]
    orders: tuple[float, ...]
    extrapolated: tuple[float, ...]
    monotone: bool


def convergence_study(channel: Component, m: int, cfg: FieldConfig,
                      grids: list[Grid], k: int = 1,
                      tol: float = 1e-10) -> ConvergenceReport:
    """Observed convergence order over a step-halving grid sequence (>= 3 grids)."""
    if len(grids) < 3:
        raise ValueError("need at least 3 grids in a refinement sequence")
    mats = [selfadjoint_discretize(channel, m, cfg, g) for g in grids]
    kk = min([k] + [sturm_count(t, t.threshold) for t in mats])
    if kk == 0:
        return ConvergenceReport(tuple(t.size for t in mats), tuple(), tuple(),
                                 tuple(), True)
    vals = [sturm_bisection(t, kk, tol) for t in mats]
    diffs = [vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
    orders = []
    for j in range(kk):
        num = abs(diffs[-2][j])
        den = abs(diffs[-1][j])
        orders.append(math.log2(num / den) if den > 0 and num > 0 else math.nan)
    extrap = (4.0 * vals[-1] - vals[-2]) / 3.0
    monotone = all(
        abs(diffs[i + 1][j]) <= abs(diffs[i][j]) + 1e-12
        for i in range(len(diffs) - 1) for j in range(kk))
    return ConvergenceReport(
        grid_sizes=tuple(t.size for t in mats),
        values=tuple(tuple(v) for v in vals),
        orders=tuple(orders),
        extrapolated=tuple(extrap),
        monotone=monotone)
