"""First-order radial ladder operators on the hyperbolic plane and their compositions.

The effective magnetic quantum function is nu(r) = m + B*(cosh r - 1).  Six
first-order operators are built from it, all carrying a 1/sqrt(2) prefactor:

    a-family:  ( +d/dr + w(r) ) / sqrt(2)
    b-family:  ( -d/dr + w(r) ) / sqrt(2)

with weight w = (nu + shift*cosh r)/sinh r and shift in {-1, 0, +1}
(the minus/plain/plus members of each family).  Second-order compositions of
these produce the three channel Hamiltonians and the 2D radial Laplacian;
those identities are verified numerically on a fixed probe set rather than
by symbolic rewriting.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class FieldConfig:
    """Magnetic field strength B and particle mass M, in curvature-radius units."""

    B: float
    M: float = 1.0

    def __post_init__(self):
        if not self.M > 0:
            raise ValueError(f"mass M must be positive, got {self.M}")


class LadderKind(enum.Enum):
    """The six first-order radial operators: (family, cosh-shift in the weight)."""

    a_minus = ("a", -1)
    a_plus = ("a", +1)
    a = ("a", 0)
    b_minus = ("b", -1)
    b_plus = ("b", +1)
    b = ("b", 0)

    @property
    def derivative_sign(self) -> float:
        return 1.0 if self.value[0] == "a" else -1.0

    @property
    def cosh_shift(self) -> float:
        return float(self.value[1])


def _central_diff(fn, r, h=1e-3):
    # 4th-order central first derivative
    return (-fn(r + 2 * h) + 8 * fn(r + h) - 8 * fn(r - h) + fn(r - 2 * h)) / (12 * h)


def _central_diff2(fn, r, h=1e-3):
    # 4th-order central second derivative
    return (-fn(r + 2 * h) + 16 * fn(r + h) - 30 * fn(r)
            + 16 * fn(r - h) - fn(r - 2 * h)) / (12 * h * h)


@dataclass(frozen=True)
class RadialFunction:
    """A function of r > 0 with optional analytic first/second derivatives.

    When a derivative callable is missing it falls back to 4th-order central
    differences on `fn`; analytic probes should always supply both so that
    operator-composition checks are not limited by finite-difference error.
    """

    fn: Callable[[np.ndarray], np.ndarray]
    dfn: Callable[[np.ndarray], np.ndarray] | None = None
    d2fn: Callable[[np.ndarray], np.ndarray] | None = None
    label: str = ""

    def __call__(self, r):
        return self.fn(np.asarray(r, dtype=float))

    def deriv(self, r):
        r = np.asarray(r, dtype=float)
        if self.dfn is not None:
            return self.dfn(r)
        return _central_diff(self.fn, r)

    def deriv2(self, r):
        r = np.asarray(r, dtype=float)
        if self.d2fn is not None:
            return self.d2fn(r)
        if self.dfn is not None:
            return _central_diff(self.dfn, r)
        return _central_diff2(self.fn, r)


def constant(value: complex) -> RadialFunction:
    return RadialFunction(
        fn=lambda r: np.full_like(r, value, dtype=type(value)),
        dfn=lambda r: np.zeros_like(r, dtype=type(value)),
        d2fn=lambda r: np.zeros_like(r, dtype=type(value)),
        label=f"const {value}",
    )


ZERO = RadialFunction(
    fn=lambda r: np.zeros_like(r),
    dfn=lambda r: np.zeros_like(r),
    d2fn=lambda r: np.zeros_like(r),
    label="0",
)


def sampled_radial_function(grid: np.ndarray, values: np.ndarray) -> RadialFunction:
    """Wrap grid samples; derivatives are 4th-order central differences at the nodes.

    Off-node evaluation interpolates linearly, so this form is meant for
    tabulated output, not for the tight operator-identity checks.
    """
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values)
    if grid.ndim != 1 or np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly increasing 1-D samples")
    if not np.all(np.isfinite(values)):
        raise ValueError("sample values must be finite")

    def _fd(v):
        h = grid[1] - grid[0]
        d = np.gradient(v, grid, edge_order=2)
        if len(grid) >= 5 and np.allclose(np.diff(grid), h):
            d[2:-2] = (-v[4:] + 8 * v[3:-1] - 8 * v[1:-3] + v[:-4]) / (12 * h)
        return d

    dvals = _fd(values)
    d2vals = _fd(dvals)

    def interp(table):
        if np.iscomplexobj(table):
            return lambda r: (np.interp(r, grid, table.real)
                              + 1j * np.interp(r, grid, table.imag))
        return lambda r: np.interp(r, grid, table)

    return RadialFunction(fn=interp(values), dfn=interp(dvals), d2fn=interp(d2vals),
                          label="sampled")


def _require_positive(r: np.ndarray) -> np.ndarray:
    if np.any(r <= 0):
        raise ValueError("radial operators are singular at r = 0; need r > 0")
    return r


def nu(r, m: int, cfg: FieldConfig):
    """Effective magnetic quantum function m + B*(cosh r - 1)."""
    r = np.asarray(r, dtype=float)
    return m + cfg.B * (np.cosh(r) - 1.0)


def ladder_weight(kind: LadderKind, r, m: int, cfg: FieldConfig):
    r = np.asarray(r, dtype=float)
    return (nu(r, m, cfg) + kind.cosh_shift * np.cosh(r)) / np.sinh(r)


def apply_ladder(kind: LadderKind, f: RadialFunction, m: int,
                 cfg: FieldConfig) -> RadialFunction:
    """Apply one first-order operator: (sign * f' + w * f) / sqrt(2).

    The result carries an analytic first derivative whenever `f` has an
    analytic second derivative (the weight derivative is closed-form:
    w' = B + shift - cosh(r) * w / sinh(r)).
    """
    sign = kind.derivative_sign
    shift = kind.cosh_shift

    def val(r):
        r = _require_positive(np.asarray(r, dtype=float))
        w = ladder_weight(kind, r, m, cfg)
        return (sign * f.deriv(r) + w * f(r)) / SQRT2

    def dval(r):
        r = _require_positive(np.asarray(r, dtype=float))
        w = ladder_weight(kind, r, m, cfg)
        wprime = cfg.B + shift - np.cosh(r) * w / np.sinh(r)
        return (sign * f.deriv2(r) + wprime * f(r) + w * f.deriv(r)) / SQRT2

    return RadialFunction(fn=val, dfn=dval, label=f"{kind.name}[{f.label}]")


def laplacian2(f: RadialFunction, m: int, cfg: FieldConfig) -> RadialFunction:
    """2D radial Laplacian: f'' + coth(r) f' - (nu/sinh r)^2 f."""

    def val(r):
        r = _require_positive(np.asarray(r, dtype=float))
        s = np.sinh(r)
        w = nu(r, m, cfg) / s
        return f.deriv2(r) + (np.cosh(r) / s) * f.deriv(r) - w * w * f(r)

    return RadialFunction(fn=val, label=f"lap2[{f.label}]")


class Component(enum.Enum):
    """Spin-projection channel of the nonrelativistic (Pauli-like) system."""

    psi1 = +1
    psi2 = 0
    psi3 = -1

    @property
    def spin_projection(self) -> int:
        return self.value

    @property
    def offset(self) -> int:
        """Channel offset entering both the exponents and the B-shift of the
        quantization discriminant: -1, 0, +1 for projections +1, 0, -1."""
        return -self.value

    @property
    def mirrored(self) -> "Component":
        return Component(-self.value)


def channel_potential(channel: Component, r, m: int, cfg: FieldConfig):
    """The potential W(r) of the explicit second-order channel equation
    psi'' + coth(r) psi' - W psi + 2*eps*M psi = 0."""
    r = np.asarray(r, dtype=float)
    s = np.sinh(r)
    c = np.cosh(r)
    v = nu(r, m, cfg)
    s2 = s * s
    if channel is Component.psi2:
        return v * v / s2
    if channel is Component.psi1:
        return cfg.B + (1.0 - 2.0 * v * c) / s2 + v * v / s2
    return -cfg.B + (1.0 + 2.0 * v * c) / s2 + v * v / s2


def explicit_pauli_operator(channel: Component, m: int, cfg: FieldConfig
                            ) -> Callable[[RadialFunction], RadialFunction]:
    """Explicit differential form of the channel operator (no energy term)."""

    def op(f: RadialFunction) -> RadialFunction:
        def val(r):
            r = _require_positive(np.asarray(r, dtype=float))
            W = channel_potential(channel, r, m, cfg)
            return f.deriv2(r) + (np.cosh(r) / np.sinh(r)) * f.deriv(r) - W * f(r)

        return RadialFunction(fn=val, label=f"L_{channel.name}[{f.label}]")

    return op


def _lin_comb(parts: Sequence[tuple[complex, RadialFunction]], label="") -> RadialFunction:
    def val(r):
        return sum(coef * rf(r) for coef, rf in parts)

    def dval(r):
        return sum(coef * rf.deriv(r) for coef, rf in parts)

    return RadialFunction(fn=val, dfn=dval, label=label)


def compose_pauli_operator(channel: Component, m: int, cfg: FieldConfig
                           ) -> Callable[[RadialFunction], RadialFunction]:
    """Channel operator built purely from ladder compositions:

        psi1: -2 a b_minus      psi2: -(b_minus a + a_plus b)      psi3: -2 b a_plus

    (rightmost operator acts first).  Must agree pointwise with
    `explicit_pauli_operator`; the test suite enforces 1e-10 agreement.
    """
    K = LadderKind

    def op(f: RadialFunction) -> RadialFunction:
        if channel is Component.psi1:
            inner = apply_ladder(K.b_minus, f, m, cfg)
            outer = apply_ladder(K.a, inner, m, cfg)
            return _lin_comb([(-2.0, outer)], label=f"-2 a b-[{f.label}]")
        if channel is Component.psi3:
            inner = apply_ladder(K.a_plus, f, m, cfg)
            outer = apply_ladder(K.b, inner, m, cfg)
            return _lin_comb([(-2.0, outer)], label=f"-2 b a+[{f.label}]")
        t1 = apply_ladder(K.b_minus, apply_ladder(K.a, f, m, cfg), m, cfg)
        t2 = apply_ladder(K.a_plus, apply_ladder(K.b, f, m, cfg), m, cfg)
        return _lin_comb([(-1.0, t1), (-1.0, t2)], label=f"-(b-a + a+b)[{f.label}]")

    return op


def standard_probes() -> list[RadialFunction]:
    """Fixed probe set for operator identities on r in [0.2, 5]."""
    return [
        constant(1.0),
        RadialFunction(np.sinh, np.cosh, np.sinh, label="sinh r"),
        RadialFunction(np.cosh, np.sinh, np.cosh, label="cosh r"),
        RadialFunction(
            lambda r: np.exp(-r * r),
            lambda r: -2.0 * r * np.exp(-r * r),
            lambda r: (4.0 * r * r - 2.0) * np.exp(-r * r),
            label="exp(-r^2)",
        ),
        RadialFunction(
            lambda r: r * np.exp(-r),
            lambda r: (1.0 - r) * np.exp(-r),
            lambda r: (r - 2.0) * np.exp(-r),
            label="r exp(-r)",
        ),
    ]


DEFAULT_PROBE_GRID = np.linspace(0.2, 5.0, 49)


def commutator_constant(m: int, cfg: FieldConfig,
                        probes: Sequence[RadialFunction] | None = None,
                        r: np.ndarray | None = None,
                        tol: float = 1e-10) -> float:
    """The constant kappa*B with (-b_minus a + a_plus b) f = kappa*B*f.

    Applies the composition difference to every probe and checks that the
    ratio to the probe is independent of r and of the probe; raises if the
    spread exceeds `tol` (which would mean the operator implementation is
    broken, since the difference must be a pure multiplication).
    """
    if probes is None:
        probes = standard_probes()
    if r is None:
        r = DEFAULT_PROBE_GRID
    K = LadderKind
    ratios = []
    for f in probes:
        t1 = apply_ladder(K.b_minus, apply_ladder(K.a, f, m, cfg), m, cfg)
        t2 = apply_ladder(K.a_plus, apply_ladder(K.b, f, m, cfg), m, cfg)
        g = -t1(r) + t2(r)
        fv = f(r)
        mask = np.abs(fv) > 1e-13 * np.max(np.abs(fv))
        ratios.append(np.real(g[mask] / fv[mask]))
    allr = np.concatenate(ratios)
    scale = 1.0 + np.max(np.abs(allr))
    if np.max(allr) - np.min(allr) > tol * scale:
        raise RuntimeError(
            "ladder commutator is not a pure constant: spread "
            f"{np.max(allr) - np.min(allr):.3e} across probes/radii"
        )
    return float(np.mean(allr))


def measured_kappa(cfg: FieldConfig | None = None) -> float:
    """kappa such that (-b_minus a + a_plus b) = kappa*B, measured numerically.

    Uses a reference nonzero field when the supplied configuration has B = 0.
    """
    if cfg is None or cfg.B == 0:
        cfg = FieldConfig(B=2.0, M=cfg.M if cfg is not None else 1.0)
    return commutator_constant(1, cfg) / cfg.B
