"""Node-segment embedding of a walk on a fine grid.

A walker with finite position uncertainty occupies a Gaussian packet of
amplitudes inside its node's segment. Node-level amplitudes are recovered
by summing the grid amplitudes across each node's segment window; the
window sum is coherent (amplitudes, then squared), so interference inside
overlapping windows is retained. Node probabilities are renormalized after
extraction because overlapping windows (lam < m) double-count elements.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import DimensionMismatchError, ZeroNormError
from .hamiltonians import EmbeddingSpec, TransitionRates
from .propagators import build_kernel, evolve_fourier
from .states import gaussian_state

__all__ = [
    "GaussianPacketSpec",
    "NodeDistribution",
    "gaussian_init",
    "node_window_matrix",
    "extract_nodes",
    "extract_nodes_2d",
    "lambda_sweep",
]


@dataclass(frozen=True)
class GaussianPacketSpec:
    """Initial walker packet: signed center node, width in grid elements,
    and an overall complex normalization phase."""

    center_node: int = 0
    width: float = 2.0
    phase: complex = 1.0 + 0.0j

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError(f"width must be positive, got {self.width}")


@dataclass(frozen=True)
class NodeDistribution:
    """Per-node complex amplitudes and the normalized probabilities |a|^2."""

    node_indices: NDArray[np.int_]
    amplitudes: NDArray[np.complex128]
    probabilities: NDArray[np.float64]

    @classmethod
    def from_amplitudes(cls, node_indices, amplitudes) -> "NodeDistribution":
        amps = np.asarray(amplitudes, dtype=complex)
        p = np.abs(amps) ** 2
        total = p.sum()
        if total == 0.0:
            raise ZeroNormError("all node amplitudes are zero")
        return cls(
            node_indices=np.asarray(node_indices, dtype=int),
            amplitudes=amps,
            probabilities=p / total,
        )

    @classmethod
    def from_probabilities(cls, node_indices, probabilities) -> "NodeDistribution":
        p = np.asarray(probabilities, dtype=float)
        total = p.sum()
        if total <= 0.0:
            raise ZeroNormError("probabilities sum to zero")
        p = p / total
        return cls(
            node_indices=np.asarray(node_indices, dtype=int),
            amplitudes=np.sqrt(p).astype(complex),
            probabilities=p,
        )


def gaussian_init(spec: EmbeddingSpec, packet: GaussianPacketSpec) -> NDArray[np.complex128]:
    """Unit-norm grid state with one Gaussian packet at the packet's node.

    Amplitudes follow exp(-d^2/(4 width^2)) in the periodic displacement d
    from the node's center element. The segment should be wide compared to
    the packet (m >= 4*width) so the packet effectively lives inside its
    own segment; a narrower segment triggers a warning, not an error.
    """
    center = spec.element_of_node(packet.center_node)
    if spec.m < 4 * packet.width:
        warnings.warn(
            f"segment width m = {spec.m} is below 4*packet width = {4 * packet.width}; "
            "node windows will clip the packet",
            stacklevel=2,
        )
    return packet.phase / abs(packet.phase) * gaussian_state(
        spec.total_elements, center, packet.width
    )


def _window_offsets(m: int):
    """Symmetric window offsets and weights covering m elements of measure.

    Odd m: unit weights on [-(m-1)/2, (m-1)/2]. Even m: trapezoid weights on
    [-m/2, m/2] with half-weight endpoints, which keeps the window centered
    on the node element (a plain m-element window would be off-center by
    half an element and break left-right symmetry of extracted
    distributions). Total weight is m either way.
    """
    if m % 2 == 1:
        offsets = np.arange(-(m // 2), m // 2 + 1)
        weights = np.ones(m)
    else:
        offsets = np.arange(-(m // 2), m // 2 + 1)
        weights = np.ones(m + 1)
        weights[0] = weights[-1] = 0.5
    return offsets, weights


def node_window_matrix(spec: EmbeddingSpec) -> NDArray[np.float64]:
    """Matrix W with W @ state = per-node window amplitude sums."""
    n = spec.total_elements
    offsets, weights = _window_offsets(spec.m)
    w = np.zeros((spec.node_count, n))
    for j, center in enumerate(spec.node_centers):
        for r, wt in zip(offsets, weights):
            w[j, (center + r) % n] += wt
    return w


def extract_nodes(state, spec: EmbeddingSpec) -> NodeDistribution:
    """Node amplitudes as coherent window sums over each node's segment.

    Windows overlap when lam < m; the resulting |amplitude|^2 values are
    renormalized into probabilities.
    """
    psi = np.asarray(state, dtype=complex)
    if psi.shape != (spec.total_elements,):
        raise DimensionMismatchError(
            f"state length {psi.shape} does not match grid size {spec.total_elements}"
        )
    amps = node_window_matrix(spec) @ psi
    return NodeDistribution.from_amplitudes(spec.node_indices, amps)


def extract_nodes_2d(state, spec_x: EmbeddingSpec, spec_y: EmbeddingSpec) -> NDArray[np.float64]:
    """Normalized 2D node probabilities from per-axis window sums."""
    psi = np.asarray(state, dtype=complex)
    if psi.shape != (spec_x.total_elements, spec_y.total_elements):
        raise DimensionMismatchError(
            f"grid shape {psi.shape} does not match "
            f"({spec_x.total_elements}, {spec_y.total_elements})"
        )
    amps = node_window_matrix(spec_x) @ psi @ node_window_matrix(spec_y).T
    p = np.abs(amps) ** 2
    total = p.sum()
    if total == 0.0:
        raise ZeroNormError("all node amplitudes are zero")
    return p / total


def lambda_sweep(
    base_rates: TransitionRates,
    node_count: int,
    m: int,
    lambdas,
    width: float,
    t: float,
) -> list[NodeDistribution]:
    """Evolve one walk per lambda and extract its node distribution.

    For each lambda: build the lambda-stretched kernel on node_count*lambda
    elements, start a Gaussian packet of the given width at the center
    node, evolve to time t with the spectral engine, and window the result
    back into node probabilities. Distributions are returned in the input
    lambda order.
    """
    out = []
    for lam in lambdas:
        spec = EmbeddingSpec(node_count=node_count, lam=int(lam), m=m)
        kernel = build_kernel(
            base_rates,
            spec.total_elements,
            lam=spec.lam,
            description=f"lambda={spec.lam}",
        )
        psi0 = gaussian_init(spec, GaussianPacketSpec(center_node=0, width=width))
        psi_t = evolve_fourier(psi0, kernel, t)
        out.append(extract_nodes(psi_t, spec))
    return out
