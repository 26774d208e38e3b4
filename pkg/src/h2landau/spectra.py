"""Closed-form quantization of the three spin channels.

In the variable y = (1 - cosh r)/2 <= 0 each channel equation becomes
hypergeometric after the substitution psi = y^c (1-y)^a f.  Bound states
require the series to terminate (alpha = -n) together with a < 0, c >= 0,
which selects one exponent variant per side of m and yields finitely many
Landau levels per angular number.

Energies are quoted as the product eps*M throughout the nonrelativistic
functions (the combination the radial equations actually contain); the
relativistic branch functions return eps itself.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .operators import Component, FieldConfig

__all__ = [
    "AllowedM",
    "Component",
    "DecouplingMatrices",
    "EnergyKind",
    "ExponentPair",
    "ExponentVariant",
    "HypergeometricParams",
    "SpectrumEntry",
    "allowed_m_interval",
    "bound_state_count",
    "bound_variant",
    "continuum_threshold",
    "decoupling_matrices",
    "exponent_pair",
    "hypergeo_params",
    "nonrel_energy",
    "nonrel_spectrum",
    "relativistic_energy",
    "relativistic_spectrum",
    "unified_condition",
    "unified_condition_absvalue",
]


class ExponentVariant(enum.Enum):
    """Sign pattern (sign of a, sign of c) of the four exponent choices."""

    v1 = (-1, -1)
    v2 = (+1, -1)
    v3 = (+1, +1)
    v4 = (-1, +1)

    @property
    def sign_a(self) -> int:
        return self.value[0]

    @property
    def sign_c(self) -> int:
        return self.value[1]


@dataclass(frozen=True)
class ExponentPair:
    """Exponents of the substitution psi = y^c (1-y)^a: a at infinity, c at the origin."""

    a: float
    c: float


@dataclass(frozen=True)
class HypergeometricParams:
    """Gauss parameters of the reduced equation plus the discriminant under the root.

    `sqrt_arg` < 0 marks the oscillatory (scattering) regime; alpha and beta
    are then NaN and `oscillatory` is set instead of raising.
    """

    alpha: float
    beta: float
    gamma: float
    sqrt_arg: float

    @property
    def oscillatory(self) -> bool:
        return self.sqrt_arg < 0


class EnergyKind(str, enum.Enum):
    nonrel = "nonrel"
    rel_phi2 = "rel_phi2"
    rel_gprime = "rel_gprime"
    rel_phi0prime = "rel_phi0prime"


@dataclass(frozen=True)
class SpectrumEntry:
    """One bound level: channel, exponent variant, quantum numbers, energy value.

    `value` is eps*M for kind `nonrel` and eps for the relativistic kinds.
    """

    channel: Component
    variant: ExponentVariant
    m: int
    n: int
    value: float
    kind: EnergyKind = EnergyKind.nonrel
    source: str = "closed_form"


def exponent_pair(channel: Component, variant: ExponentVariant, m: int,
                  cfg: FieldConfig) -> ExponentPair:
    """a = +/-(2B - m + d)/2 and c = +/-(m + d)/2 with the channel offset d."""
    d = channel.offset
    a = variant.sign_a * (2.0 * cfg.B - m + d) / 2.0
    c = variant.sign_c * (m + d) / 2.0
    return ExponentPair(a=a, c=c)


def bound_variant(channel: Component, m: int) -> ExponentVariant:
    """Variant admissible for bound states (a < 0 and c >= 0) at B > 0.

    Negative m takes v1 and positive m takes v4.  At m = 0 the sign of the
    origin exponent decides: the channel with offset +1 needs v4 there (v1
    would give c = -1/2, a non-normalizable origin behaviour); the other two
    channels keep v1, where the exponents coincide with or dominate v4.
    """
    if m < 0:
        return ExponentVariant.v1
    if m > 0:
        return ExponentVariant.v4
    return ExponentVariant.v1 if channel.offset <= 0 else ExponentVariant.v4


def hypergeo_params(channel: Component, variant: ExponentVariant, m: int,
                    cfg: FieldConfig, X: float) -> HypergeometricParams:
    """Gauss parameters with X occupying the 2*eps*M slot of the channel equation.

    sqrt_arg = B^2 + d*B - X + 1/4 with the channel offset d; alpha/beta are
    a + c + 1/2 +/- sqrt(sqrt_arg) and gamma = 2c + 1.
    """
    pair = exponent_pair(channel, variant, m, cfg)
    arg = cfg.B * cfg.B + channel.offset * cfg.B - X + 0.25
    if arg >= 0:
        root = math.sqrt(arg)
        alpha = pair.a + pair.c + 0.5 + root
        beta = pair.a + pair.c + 0.5 - root
    else:
        alpha = beta = math.nan
    return HypergeometricParams(alpha=alpha, beta=beta,
                                gamma=2.0 * pair.c + 1.0, sqrt_arg=arg)


def _mirrored(channel: Component, m: int, cfg: FieldConfig):
    """Map a B < 0 problem onto its B > 0 normal form (m -> -m, channel flipped)."""
    return channel.mirrored, -m, replace(cfg, B=-cfg.B)


def unified_condition(channel: Component, m: int, n: int, cfg: FieldConfig) -> float:
    """Value of sqrt(B^2 + d*B - 2 eps M + 1/4) implied by series termination:
    -(a + c) - n - 1/2 with the bound variant's exponents.

    Positive iff (m, n) is a bound pair; equals the per-case square roots
    (B - 1/2 - n style) exactly.  Handles B < 0 through the mirror map.
    """
    if cfg.B < 0:
        channel, m, cfg = _mirrored(channel, m, cfg)
    pair = exponent_pair(channel, bound_variant(channel, m), m, cfg)
    return -(pair.a + pair.c) - n - 0.5


def unified_condition_absvalue(channel: Component, m: int, n: int,
                               cfg: FieldConfig) -> float:
    """The absolute-value variant -n - 1/2 - (|2B - m + d| + |m + d|)/2.

    Kept only for the verification report: in the bound regime it is always
    negative, so it cannot equal the (positive) per-case square roots.  The
    sign-consistent form in `unified_condition` is the one actually used.
    """
    if cfg.B < 0:
        channel, m, cfg = _mirrored(channel, m, cfg)
    d = channel.offset
    return -n - 0.5 - (abs(2.0 * cfg.B - m + d) + abs(m + d)) / 2.0


def nonrel_energy(channel: Component, m: int, n: int, cfg: FieldConfig) -> float | None:
    """Closed-form eps*M of level (m, n), or None when the pair is not bound.

    B < 0 is handled by the mirror map (m, B, channel) -> (-m, -B, mirrored).
    """
    if n < 0:
        raise ValueError("radial quantum number n must be >= 0")
    if cfg.B == 0:
        return None
    if cfg.B < 0:
        mch, mm, mcfg = _mirrored(channel, m, cfg)
        return nonrel_energy(mch, mm, n, mcfg)

    if unified_condition(channel, m, n, cfg) <= 0:
        return None

    B = cfg.B
    variant = bound_variant(channel, m)
    if channel is Component.psi2:
        if variant is ExponentVariant.v1:
            return B / 2.0 + n * (B - 0.5 - n / 2.0)
        q = m + n
        return B / 2.0 + q * (B - 0.5 - q / 2.0)
    if channel is Component.psi1:
        if variant is ExponentVariant.v1:
            return B - 1.0 + n * (B - 1.5 - n / 2.0)
        q = m + n
        return q * (B - 0.5 - q / 2.0)
    if variant is ExponentVariant.v1:
        return n * (B + 0.5 - n / 2.0)
    q = m + n
    return B + q * (B - 0.5 - q / 2.0)


def continuum_threshold(channel: Component, cfg: FieldConfig) -> float:
    """Continuum edge in the 2*eps*M slot: B^2 + d*B + 1/4 (mirror-invariant)."""
    return cfg.B * cfg.B + channel.offset * cfg.B + 0.25


@dataclass(frozen=True)
class AllowedM:
    """Half-line of angular numbers admitting bound states: lower < m < upper."""

    lower: float | None
    upper: float | None

    def __contains__(self, m) -> bool:
        if self.lower is not None and not m > self.lower:
            return False
        if self.upper is not None and not m < self.upper:
            return False
        return True

    def integers(self, m_min: int, m_max: int) -> list[int]:
        return [m for m in range(m_min, m_max + 1) if m in self]

    @property
    def empty(self) -> bool:
        return (self.lower is not None and self.upper is not None
                and self.upper <= self.lower)


def allowed_m_interval(cfg: FieldConfig) -> AllowedM:
    """m < B for B > 0, m > B for B < 0, empty at B = 0."""
    if cfg.B > 0:
        return AllowedM(lower=None, upper=cfg.B)
    if cfg.B < 0:
        return AllowedM(lower=cfg.B, upper=None)
    return AllowedM(lower=0.0, upper=0.0)


def bound_state_count(channel: Component, m: int, cfg: FieldConfig) -> int:
    """Number of n >= 0 with -(a + c) - n - 1/2 > 0 for the bound variant.

    The strict -1/2 offset is what square integrability against sinh(r) dr
    requires: the profile decays like exp((a + c + n) r) so the normalization
    integrand carries exponent 2(a + c + n) + 1, which must be negative.
    """
    if cfg.B == 0:
        return 0
    t = unified_condition(channel, m, 0, cfg)
    return max(0, math.ceil(t - 1e-12))


@dataclass(frozen=True)
class DecouplingMatrices:
    """2x2 similarity data diagonalizing the coupled relativistic pair."""

    A_mat: np.ndarray
    S: np.ndarray
    S_inv: np.ndarray
    lambda1: float
    lambda2: float


def decoupling_matrices(eps: float, cfg: FieldConfig, kappa: float) -> DecouplingMatrices:
    """Coupling matrix of the (g, eps*Phi0) pair and the transformation that
    diagonalizes it, with eigenvalues +/- kappa*eps*B/M.

    The coupling strength is kappa*B where kappa comes from the measured
    ladder commutator; nothing here hardcodes a particular kappa.
    """
    if eps == 0:
        raise ValueError("eps = 0 makes the decoupling transformation singular")
    B, M = cfg.B, cfg.M
    gamma = eps * eps / (M * M)
    coupling = kappa * B
    A_mat = np.array([[0.0, 1j * coupling],
                      [-1j * coupling * gamma, 0.0]], dtype=complex)
    S = np.array([[eps, 1j * M], [eps, -1j * M]], dtype=complex)
    S_inv = np.array([[-1j * M, -1j * M], [-eps, eps]], dtype=complex) / (-2j * eps * M)
    lam = kappa * eps * B / M
    return DecouplingMatrices(A_mat=A_mat, S=S, S_inv=S_inv,
                              lambda1=lam, lambda2=-lam)


#: Sign of the energy shift term in the quadratic eps^2 - s*kappa*(B/M)*eps - (M^2+X) = 0.
#: The g-prime branch carries the -kappa*eps*B/M shift inside its radial operator,
#: hence s = +1 in the quadratic; the Phi0-prime branch is the opposite; the pure
#: Phi2 mode is unshifted.
_BRANCH_SIGN = {
    EnergyKind.rel_phi2: 0.0,
    EnergyKind.rel_gprime: +1.0,
    EnergyKind.rel_phi0prime: -1.0,
}


def relativistic_energy(kind: EnergyKind, m: int, n: int, cfg: FieldConfig,
                        kappa: float) -> float | None:
    """Positive-branch relativistic level eps, or None when (m, n) is unbound.

    The quantization value X_n = B^2 + 1/4 - rhs^2 of the projection-0 channel
    fills the 2*eps*M slot; the three kinds differ only by the sign of the
    kappa*eps*B/M term in eps^2 - s*kappa*(B/M)*eps - (M^2 + X_n) = 0.
    """
    if kind is EnergyKind.nonrel:
        raise ValueError("use nonrel_energy for the nonrelativistic spectrum")
    if cfg.B == 0 and bound_state_count(Component.psi2, m, cfg) == 0:
        return None
    rhs = unified_condition(Component.psi2, m, n, cfg)
    if rhs <= 0:
        return None
    X = cfg.B * cfg.B + 0.25 - rhs * rhs
    M = cfg.M
    if M * M + X <= 0:
        return None
    shift = _BRANCH_SIGN[kind] * kappa * cfg.B / M
    return (shift + math.sqrt(shift * shift + 4.0 * (M * M + X))) / 2.0


def nonrel_spectrum(cfg: FieldConfig, channels=None, m_values=None,
                    n_max: int | None = None) -> list[SpectrumEntry]:
    """All bound nonrelativistic levels over the requested (channel, m) grid."""
    if channels is None:
        channels = list(Component)
    if m_values is None:
        raise ValueError("m_values is required")
    entries = []
    for channel in channels:
        for m in m_values:
            count = bound_state_count(channel, m, cfg)
            if n_max is not None:
                count = min(count, n_max + 1)
            for n in range(count):
                value = nonrel_energy(channel, m, n, cfg)
                if value is None:
                    continue
                variant = bound_variant(*(
                    (channel.mirrored, -m) if cfg.B < 0 else (channel, m)))
                entries.append(SpectrumEntry(channel=channel, variant=variant,
                                             m=m, n=n, value=value))
    return entries


def relativistic_spectrum(cfg: FieldConfig, m_values, kappa: float,
                          n_max: int | None = None) -> list[SpectrumEntry]:
    """Bound relativistic levels of all three branch kinds (value is eps)."""
    entries = []
    kinds = (EnergyKind.rel_phi2, EnergyKind.rel_gprime, EnergyKind.rel_phi0prime)
    for m in m_values:
        count = bound_state_count(Component.psi2, m, cfg)
        if n_max is not None:
            count = min(count, n_max + 1)
        for n in range(count):
            for kind in kinds:
                value = relativistic_energy(kind, m, n, cfg, kappa)
                if value is None:
                    continue
                variant = bound_variant(*(
                    (Component.psi2, -m) if cfg.B < 0 else (Component.psi2, m)))
                entries.append(SpectrumEntry(channel=Component.psi2, variant=variant,
                                             m=m, n=n, value=value, kind=kind))
    return entries
