"""Complex state vectors and probability distributions over grid elements.

States are plain numpy arrays: 1D complex128 for a walk on a line/ring,
2D complex128 for a mesh. All norms are l2 over raw grid elements.
"""

import numpy as np
from numpy.typing import NDArray

from .errors import ZeroNormError

__all__ = ["l2_norm", "normalize", "probabilities", "gaussian_state"]


def l2_norm(state) -> float:
    """Euclidean norm of a state vector (any shape)."""
    return float(np.linalg.norm(np.asarray(state)))


def normalize(state) -> NDArray[np.complex128]:
    """Return state / ||state||. Raises ZeroNormError on a zero vector."""
    arr = np.asarray(state, dtype=complex)
    norm = np.linalg.norm(arr)
    if norm == 0.0:
        raise ZeroNormError("cannot normalize a zero-norm state")
    return arr / norm

def probabilities(state) -> NDArray[np.float64]:
    """Probability distribution |psi_i|^2 / sum_j |psi_j|^2 of a state vector."""
    arr = np.asarray(state, dtype=complex)
    p = np.abs(arr) ** 2
    total = p.sum()
    if total == 0.0:
        raise ZeroNormError("all amplitudes are zero")
    return p / total


def gaussian_state(n: int, center: int, width: float) -> NDArray[np.complex128]:
    """Normalized Gaussian amplitude packet on a ring of n elements.

    Amplitudes follow exp(-d^2 / (4 width^2)) where d is the minimal-image
    (periodic) displacement from ``center``, so the packet is exactly
    mirror-symmetric about its center. ``width`` is the position-space
    standard deviation of |psi|^2, in grid elements.
    """
    if width <= 0:
        raise ValueError(f"width must be positive, got {width}")
    x = np.arange(n)
    d = ((x - center + n // 2) % n - n // 2).astype(float)
    return normalize(np.exp(-(d**2) / (4.0 * width * width)))
