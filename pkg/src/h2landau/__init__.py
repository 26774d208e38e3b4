"""Bound-state spectra and wavefunctions of a spin-1 particle in a uniform
magnetic field on the hyperbolic plane.

Closed-form Landau levels come from terminating hypergeometric series
(`spectra`, `wavefunctions`), built on first-order ladder operators
(`operators`) and the 10-dimensional vector-field matrix algebra (`dkp`).
Every closed-form result is cross-checked by an independent finite-difference
eigensolver (`oracle`); `verify` bundles the checks and `cli` exposes
everything as commands.
"""

from .dkp import BetaMatrices, SpinBlocks, build_beta_matrices, build_spin_blocks
from .operators import (
    Component,
    FieldConfig,
    LadderKind,
    RadialFunction,
    apply_ladder,
    commutator_constant,
    compose_pauli_operator,
    laplacian2,
    measured_kappa,
    nu,
)
from .oracle import (
    Grid,
    OracleResult,
    RelativisticResult,
    convergence_study,
    selfadjoint_discretize,
    solve_nonrel,
    solve_relativistic_coupled,
    sturm_bisection,
    sweep_nonrel,
)
from .spectra import (
    AllowedM,
    DecouplingMatrices,
    EnergyKind,
    ExponentPair,
    ExponentVariant,
    HypergeometricParams,
    SpectrumEntry,
    allowed_m_interval,
    bound_state_count,
    continuum_threshold,
    decoupling_matrices,
    exponent_pair,
    hypergeo_params,
    nonrel_energy,
    nonrel_spectrum,
    relativistic_energy,
    relativistic_spectrum,
    unified_condition,
)
from .wavefunctions import (
    BoundWavefunction,
    Phi2ModeFields,
    normalize,
    ode_residual,
    phi2_mode_fields,
    radial_wavefunction,
    terminating_2F1,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
