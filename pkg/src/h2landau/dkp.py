"""10-dimensional Duffin-Kemmer matrices for a vector (spin-1) field, cyclic basis.

The 10 components split as (1-3-3-3): a scalar block followed by three
3-vector blocks (the vector potential, electric and magnetic parts of the
field multiplet).  In the cyclic basis the rotation generator
J12 = beta1 beta2 - beta2 beta1 is diagonal, which is what makes radial
separation of variables possible downstream.

Everything here is constant complex data; matrices are dense 10x10 arrays
(sizes are tiny, sparsity machinery would only obscure the block layout).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

SQRT2 = np.sqrt(2.0)

#: Minkowski metric diag(+,-,-,-) used by the trilinear consistency check.
MINKOWSKI_DIAG = np.array([1.0, -1.0, -1.0, -1.0])


@dataclass(frozen=True)
class SpinBlocks:
    """The six constant building blocks: row 3-vectors e_i and 3x3 blocks tau_i."""

    e: tuple[np.ndarray, np.ndarray, np.ndarray]
    tau: tuple[np.ndarray, np.ndarray, np.ndarray]


@dataclass(frozen=True)
class BetaMatrices:
    """The four 10x10 matrices, indexed by tetrad label 0..3."""

    beta: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]

    def __getitem__(self, a: int) -> np.ndarray:
        return self.beta[a]


def build_spin_blocks() -> SpinBlocks:
    """Return the cyclic-basis blocks; tau3 is diagonal with entries (1, 0, -1)."""
    e1 = np.array([-1j, 0.0, 1j], dtype=complex) / SQRT2
    e2 = np.array([1.0, 0.0, 1.0], dtype=complex) / SQRT2
    e3 = np.array([0.0, 1j, 0.0], dtype=complex)
    tau1 = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) / SQRT2
    tau2 = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=complex) / SQRT2
    tau3 = np.diag([1.0, 0.0, -1.0]).astype(complex)
    return SpinBlocks(e=(e1, e2, e3), tau=(tau1, tau2, tau3))


def build_beta_matrices(blocks: SpinBlocks | None = None) -> BetaMatrices:
    """Assemble beta^0..beta^3 from the (1-3-3-3) block pattern.

    beta^0 couples the vector and electric blocks through +/- i identities;
    each spatial beta^i couples scalar<->electric through e_i and
    vector<->magnetic through tau_i, with conjugate-transposed blocks
    carrying the minus signs.
    """
    if blocks is None:
        blocks = build_spin_blocks()
    eye3 = np.eye(3, dtype=complex)

    beta0 = np.zeros((10, 10), dtype=complex)
    beta0[1:4, 4:7] = 1j * eye3
    beta0[4:7, 1:4] = -1j * eye3

    betas = [beta0]
    for e_i, tau_i in zip(blocks.e, blocks.tau):
        b = np.zeros((10, 10), dtype=complex)
        b[0, 4:7] = e_i
        b[1:4, 7:10] = tau_i
        b[4:7, 0] = -np.conj(e_i)          # -e_i^+ (conjugate transpose column)
        b[7:10, 1:4] = -tau_i
        betas.append(b)
    return BetaMatrices(beta=tuple(betas))


def generator_J12(b: BetaMatrices) -> np.ndarray:
    """Rotation generator J12 = beta1 beta2 - beta2 beta1 (10x10)."""
    return b[1] @ b[2] - b[2] @ b[1]


def s3_matrix(blocks: SpinBlocks | None = None) -> np.ndarray:
    """Block-diagonal spin projection S3 = diag(0, tau3, tau3, tau3)."""
    if blocks is None:
        blocks = build_spin_blocks()
    s3 = np.zeros((10, 10), dtype=complex)
    for lo in (1, 4, 7):
        s3[lo:lo + 3, lo:lo + 3] = blocks.tau[2]
    return s3


def trilinear_defect(b: BetaMatrices, metric: np.ndarray = MINKOWSKI_DIAG) -> float:
    """Max deviation of b^a b^b b^c + b^c b^b b^a - (g^ab b^c + g^cb b^a) over all triples.

    Brute force over the 64 index triples; a structural sanity check on the
    assembled matrices, not a statement proved anywhere else in the package.
    """
    g = np.diag(metric)
    worst = 0.0
    for a, bb, c in product(range(4), repeat=3):
        lhs = b[a] @ b[bb] @ b[c] + b[c] @ b[bb] @ b[a]
        rhs = g[a, bb] * b[c] + g[c, bb] * b[a]
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def j12_defect(b: BetaMatrices, blocks: SpinBlocks | None = None) -> float:
    """Entry-wise deviation of J12 from the explicit -i*S3 form."""
    return float(np.max(np.abs(generator_J12(b) + 1j * s3_matrix(blocks))))
