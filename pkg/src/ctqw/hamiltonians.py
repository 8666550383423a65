"""Transition rates and Hamiltonian matrices for walks on lines and rings.

Hop rates come from central finite-difference approximations of the second
derivative: the rate for a hop of s grid nodes is the stencil coefficient of
psi(i+s) divided by -2, which realizes H = -(1/2) d^2/dx^2 on the grid
(grid spacing fixed at 1). Coefficients are kept as exact rationals until an
operator is materialized, so symmetry and zero-sum checks are exact.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping

import numpy as np
from numpy.typing import NDArray

from .errors import (
    EmbeddingMismatchError,
    InvalidSizeError,
    NodeOutOfRangeError,
    NonHermitianError,
    SizeTooSmallError,
    UnknownOrderError,
)

__all__ = [
    "Boundary",
    "RateConvention",
    "StencilCoefficients",
    "TransitionRates",
    "DenseOperator",
    "EmbeddingSpec",
    "SUPPORTED_ORDERS",
    "laplacian_stencil",
    "stencil_to_rates",
    "dilate_rates",
    "line_hamiltonian",
    "rates_to_dense",
    "embed_block_hamiltonian",
]


class Boundary(str, Enum):
    PERIODIC = "periodic"
    TRUNCATED = "truncated"


class RateConvention(str, Enum):
    """Sign convention for the nearest-neighbor line matrix.

    QUANTUM: diagonal -2*gamma, off-diagonal +gamma (the walk generator as
    used in the unitary evolution exp(-iHt)).
    CONSERVATIVE: the entrywise negative; rows sum to zero on a ring, which
    is what the classical master equation exp(-Ht) requires.
    """

    QUANTUM = "quantum"
    CONSERVATIVE = "conservative"


SUPPORTED_ORDERS = (1, 10)

# Central second-difference coefficients, coefficient of psi(i+s) keyed by s.
# Order 10 is stored over the common denominator 25200.
_STENCILS = {
    1: {-1: Fraction(1), 0: Fraction(-2), 1: Fraction(1)},
    10: {
        s: Fraction(c, 25200)
        for s, c in {
            -5: 8, -4: -125, -3: 1000, -2: -6000, -1: 42000,
            0: -73766,
            1: 42000, 2: -6000, 3: 1000, 4: -125, 5: 8,
        }.items()
    },
}


@dataclass(frozen=True)
class StencilCoefficients:
    """Symmetric derivative stencil: coefficient of psi(i+s) for s in [-d, d]."""

    order: int
    half_width: int
    coefficients: Mapping[int, Fraction]

    def as_float(self, s: int) -> float:
        return float(self.coefficients[s])


@dataclass(frozen=True)
class TransitionRates:
    """Banded symmetric hop rates: rate gamma_s for a hop of s nodes.

    Values may be exact Fractions (when derived from a stencil) or floats;
    consumers convert to float when building operators or kernels.
    """

    rates: Mapping[int, object]

    @property
    def half_width(self) -> int:
        return max(abs(s) for s in self.rates)

    def as_float(self, s: int) -> float:
        return float(self.rates.get(s, 0))

    def items(self):
        return self.rates.items()


@dataclass(frozen=True)
class DenseOperator:
    """Real-symmetric rate matrix together with its boundary treatment."""

    matrix: NDArray[np.float64]
    boundary: Boundary

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidSizeError(f"operator must be square, got shape {m.shape}")
        object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def asymmetry(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.T)))


@dataclass(frozen=True)
class EmbeddingSpec:
    """Geometry mapping walk nodes onto a fine grid of elements.

    node_count nodes sit at element positions j*lam on a ring of
    node_count*lam elements; each node owns a segment m elements wide.
    lam <= m: equality is the tiling (fully discrete) case, smaller lam
    makes neighboring segments overlap, approaching a continuum.
    """

    node_count: int
    lam: int
    m: int

    def __post_init__(self):
        if self.node_count < 1:
            raise ValueError(f"node_count must be >= 1, got {self.node_count}")
        if self.lam < 1:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if self.lam > self.m:
            raise ValueError(f"lambda must not exceed m (got lambda={self.lam}, m={self.m})")
        if self.m > self.node_count * self.lam:
            raise ValueError("segment width m exceeds the total grid length")

    @property
    def total_elements(self) -> int:
        return self.node_count * self.lam

    @property
    def node_centers(self) -> NDArray[np.int_]:
        return np.arange(self.node_count) * self.lam

    @property
    def node_indices(self) -> NDArray[np.int_]:
        """Signed node labels, -(N-1)//2 ... N - 1 - (N-1)//2 (e.g. -79..80 for N=160)."""
        return np.arange(self.node_count) - (self.node_count - 1) // 2

    def element_of_node(self, node_index: int) -> int:
        """Grid element at the center of the given signed node."""
        j = node_index + (self.node_count - 1) // 2
        if not 0 <= j < self.node_count:
            raise NodeOutOfRangeError(
                f"node {node_index} outside range "
                f"[{self.node_indices[0]}, {self.node_indices[-1]}]"
            )
        return j * self.lam


def laplacian_stencil(order: int) -> StencilCoefficients:
    """Central finite-difference stencil for the second derivative (h = 1).

    Supported orders: 1 (three-point {1, -2, 1}) and 10 (eleven-point,
    coefficients over the denominator 25200). Coefficients sum to zero
    exactly and are symmetric in s.
    """
    if order not in _STENCILS:
        raise UnknownOrderError(f"order must be one of {SUPPORTED_ORDERS}, got {order}")
    coeffs = dict(_STENCILS[order])
    d = max(abs(s) for s in coeffs)
    return StencilCoefficients(order=order, half_width=d, coefficients=coeffs)


def stencil_to_rates(stencil: StencilCoefficients) -> TransitionRates:
    """Hop rates from a stencil: gamma_s = coefficient(s) / (-2), exactly."""
    return TransitionRates(
        rates={s: c / Fraction(-2) for s, c in stencil.coefficients.items()}
    )


def dilate_rates(rates: TransitionRates, lam: int) -> TransitionRates:
    """Stretch hops by a factor lam: gamma'_{lam*s} = gamma_s, zero between."""
    if lam < 1:
        raise ValueError(f"lambda must be >= 1, got {lam}")
    _require_symmetric(rates)
    return TransitionRates(rates={lam * s: g for s, g in rates.items()})


def _require_symmetric(rates: TransitionRates):
    for s, g in rates.items():
        if float(g) != float(rates.rates.get(-s, 0)):
            raise NonHermitianError(f"rates are asymmetric at s = +-{abs(s)}")


def line_hamiltonian(
    n: int,
    gamma: float,
    convention: RateConvention = RateConvention.QUANTUM,
    boundary: Boundary = Boundary.PERIODIC,
) -> DenseOperator:
    """Nearest-neighbor line matrix with uniform rate gamma.

    QUANTUM places -2*gamma on the diagonal and +gamma on the first
    off-diagonals; CONSERVATIVE is the entrywise negative. Under PERIODIC
    the wrap contributions accumulate additively (so n = 2 gets 2*gamma
    between the two sites); under TRUNCATED the matrix is plainly
    tridiagonal.
    """
    if n < 2:
        raise InvalidSizeError(f"need at least 2 nodes, got {n}")
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    h = np.zeros((n, n))
    if boundary is Boundary.PERIODIC:
        for i in range(n):
            h[i, i] += -2.0 * gamma
            h[i, (i + 1) % n] += gamma
            h[i, (i - 1) % n] += gamma
    else:
        for i in range(n):
            h[i, i] = -2.0 * gamma
            if i + 1 < n:
                h[i, i + 1] = gamma
                h[i + 1, i] = gamma
    if convention is RateConvention.CONSERVATIVE:
        h = -h
    return DenseOperator(matrix=h, boundary=boundary)


def rates_to_dense(
    rates: TransitionRates, n: int, boundary: Boundary = Boundary.PERIODIC
) -> DenseOperator:
    """Materialize banded hop rates as an n x n matrix.

    Under PERIODIC, entry (i, (i+s) mod n) is gamma_s, which makes the
    matrix circulant; n must exceed 2*half_width so no hop wraps onto
    itself. Under TRUNCATED, hops falling outside [0, n) are dropped.
    """
    _require_symmetric(rates)
    d = rates.half_width
    if boundary is Boundary.PERIODIC and n <= 2 * d:
        raise SizeTooSmallError(f"periodic placement needs n > {2 * d}, got n = {n}")
    h = np.zeros((n, n))
    for s, g in rates.items():
        val = float(g)
        for i in range(n):
            j = i + s
            if boundary is Boundary.PERIODIC:
                h[i, j % n] += val
            elif 0 <= j < n:
                h[i, j] += val
    return DenseOperator(matrix=h, boundary=boundary)


def embed_block_hamiltonian(h: DenseOperator, spec: EmbeddingSpec) -> DenseOperator:
    """Lift a node-level matrix onto the fine grid of an embedding.

    Every nonzero node entry h[i, j] contributes an m x m identity block
    scaled by h[i, j], centered at the node elements (kappa_i, kappa_j):
    entries (kappa_i + r, kappa_j + r) for r in [-floor(m/2), ceil(m/2) - 1],
    indices wrapped modulo the total grid length. When lam < m, neighboring
    blocks overlap and their contributions accumulate additively.
    """
    if h.n != spec.node_count:
        raise EmbeddingMismatchError(
            f"operator has {h.n} nodes but embedding expects {spec.node_count}"
        )
    n = spec.total_elements
    centers = spec.node_centers
    out = np.zeros((n, n))
    offsets = range(-(spec.m // 2), (spec.m + 1) // 2)
    rows, cols = np.nonzero(h.matrix)
    for i, j in zip(rows, cols):
        val = h.matrix[i, j]
        for r in offsets:
            out[(centers[i] + r) % n, (centers[j] + r) % n] += val
    return DenseOperator(matrix=out, boundary=Boundary.PERIODIC)
