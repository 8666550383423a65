"""Closed-form and classical baselines.

* ``free_gaussian`` - the dispersing free Gaussian wave packet, the
  continuum limit that the fine-grained walk collapses to.
* ``classical_evolve`` - the continuous-time classical walk
  P(t) = exp(-Ht) P(0) under a conservative rate matrix.

The free-packet formula is written in a convention whose dispersion is
omega(k) = k^2. A walk with hop rates gamma_s disperses as
omega(k) ~ c (lam k)^2 with c = -(1/2) sum_s gamma_s s^2, so walk time t
maps onto the formula's time parameter as tau = c lam^2 t. The comparison
helpers apply that mapping; without it the packet widths disagree by the
constant c.
"""

import numpy as np
from numpy.typing import NDArray

from .embedding import NodeDistribution, extract_nodes
from .errors import DimensionMismatchError, EigenSolverError, NonConservativeError
from .hamiltonians import DenseOperator, EmbeddingSpec, TransitionRates
from .states import normalize

__all__ = [
    "free_gaussian",
    "dispersion_coefficient",
    "effective_packet_time",
    "analytic_node_distribution",
    "classical_evolve",
]


def free_gaussian(x, t: float, width: float):
    """Free Gaussian packet amplitude at position x and time t.

    psi(x, t) = exp(-x^2 / (4 (width^2 + it))) / sqrt(sqrt(2 pi) (width + it/width))

    At t = 0 this is a normalized Gaussian whose |psi|^2 has standard
    deviation ``width``; the integral of |psi|^2 stays exactly 1 for all t.
    Accepts scalar or array x.
    """
    if width <= 0:
        raise ValueError(f"width must be positive, got {width}")
    x = np.asarray(x, dtype=float)
    prefactor = 1.0 / np.sqrt(np.sqrt(2.0 * np.pi) * (width + 1j * t / width))
    return prefactor * np.exp(-(x**2) / (4.0 * (width**2 + 1j * t)))


def dispersion_coefficient(rates: TransitionRates) -> float:
    """Quadratic dispersion constant c = -(1/2) sum_s gamma_s s^2.

    Small frequencies of the induced circulant operator disperse as
    c (lam k)^2; positive c means wave-like spreading.
    """
    return -0.5 * sum(float(g) * s * s for s, g in rates.items())


def effective_packet_time(rates: TransitionRates, lam: int, t: float) -> float:
    """Walk time t expressed in the free-packet formula's time parameter."""
    return dispersion_coefficient(rates) * lam * lam * t


def analytic_node_distribution(
    spec: EmbeddingSpec, width: float, rates: TransitionRates, t: float
) -> NodeDistribution:
    """Node distribution of the free packet a walk should collapse to.

    Samples ``free_gaussian`` on the grid elements (unit spacing, periodic
    minimal-image displacement from the center node) at the effective time
    for the given rates and lambda, then applies the same node windows as
    ``extract_nodes`` so the comparison with a simulated distribution is
    like for like.
    """
    center = spec.element_of_node(0)
    n = spec.total_elements
    x = np.arange(n)
    d = ((x - center + n // 2) % n - n // 2).astype(float)
    tau = effective_packet_time(rates, spec.lam, t)
    psi = normalize(free_gaussian(d, tau, width))
    return extract_nodes(psi, spec)


def classical_evolve(h: DenseOperator, p0, t: float) -> NDArray[np.float64]:
    """Master equation: P(t) = exp(-ht) P(0) for a conservative rate matrix.

    Rows of h must sum to zero (within 1e-10), which keeps the total
    probability exactly conserved. Tiny negative entries from rounding are
    clamped to zero.
    """
    p = np.asarray(p0, dtype=float)
    if p.shape != (h.n,):
        raise DimensionMismatchError(
            f"distribution length {p.shape} does not match operator size {h.n}"
        )
    row_sums = float(np.max(np.abs(h.matrix.sum(axis=1))))
    if row_sums > 1e-10:
        raise NonConservativeError(
            f"row sums deviate from zero by {row_sums:.3e}; matrix is not conservative"
        )
    try:
        w, v = np.linalg.eigh(h.matrix)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(str(exc)) from exc
    pt = v @ (np.exp(-w * t) * (v.T @ p))
    return np.clip(pt, 0.0, None)
