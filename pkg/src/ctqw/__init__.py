"""Continuous-time quantum walks on lines, rings, and meshes.

Banded symmetric hop rates induce a circulant Hamiltonian; evolution runs
either through a dense symmetric eigendecomposition (the oracle) or through
the FFT phase-kernel engine (the fast path). A node-segment embedding
models a walker of finite width and the transition from discrete hops to
free wave propagation as node spacing shrinks.
"""

__version__ = "0.1.0"

from .analytic import (
    analytic_node_distribution,
    classical_evolve,
    dispersion_coefficient,
    effective_packet_time,
    free_gaussian,
)
from .embedding import (
    GaussianPacketSpec,
    NodeDistribution,
    extract_nodes,
    extract_nodes_2d,
    gaussian_init,
    lambda_sweep,
)
from .errors import (
    DimensionMismatchError,
    EigenSolverError,
    EmbeddingMismatchError,
    InvalidSizeError,
    NodeOutOfRangeError,
    NonConservativeError,
    NonHermitianError,
    SizeTooSmallError,
    UnknownOrderError,
    ZeroNormError,
)
from .hamiltonians import (
    Boundary,
    DenseOperator,
    EmbeddingSpec,
    RateConvention,
    StencilCoefficients,
    SUPPORTED_ORDERS,
    TransitionRates,
    dilate_rates,
    embed_block_hamiltonian,
    laplacian_stencil,
    line_hamiltonian,
    rates_to_dense,
    stencil_to_rates,
)
from .metrics import (
    BenchRecord,
    QuadraticFit,
    benchmark_efficiency,
    fit_quadratic,
    spread_sigma,
    total_variation,
)
from .propagators import (
    PhaseFactors,
    SpectralKernel,
    build_kernel,
    evolve_direct,
    evolve_fourier,
    evolve_fourier_2d,
    fourier_phase,
    phase_factors,
    shift_state,
)
from .states import gaussian_state, l2_norm, normalize, probabilities
