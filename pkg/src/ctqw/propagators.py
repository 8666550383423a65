"""Time evolution engines.

Two independent routes compute psi(t) = exp(-iHt) psi(0) for a banded
circulant H:

* ``evolve_direct`` - the dense oracle: real-symmetric eigendecomposition
  H = V diag(w) V^T, then V exp(-iwt) V^T psi. O(n^3) but exact up to
  rounding, and unitary by construction.
* ``evolve_fourier`` - the fast path: a circulant H is diagonal in the
  discrete Fourier basis, so evolution is FFT, multiply by the phase
  factors exp(-i q_k t), inverse FFT. The eigenphase vector q is built
  once per (rates, n, lam) and reused for any t.

The two must agree elementwise to ~1e-10; tests and the benchmark harness
hold them to that.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import (
    DimensionMismatchError,
    EigenSolverError,
    NonHermitianError,
    SizeTooSmallError,
)
from .hamiltonians import DenseOperator, TransitionRates, _require_symmetric

__all__ = [
    "SpectralKernel",
    "PhaseFactors",
    "fourier_phase",
    "build_kernel",
    "phase_factors",
    "evolve_direct",
    "evolve_fourier",
    "evolve_fourier_2d",
    "shift_state",
]

# Imaginary residue above this in the eigenphase sum signals asymmetric
# rates; below it the residue is rounding noise and is discarded.
_IMAG_RESIDUE_LIMIT = 1e-10


def _signed_frequencies(n: int) -> NDArray[np.int_]:
    """Signed DFT frequency indices: k for k <= n//2, else k - n."""
    k = np.arange(n)
    return np.where(k <= n // 2, k, k - n)


def fourier_phase(k: int, s: int, n: int) -> complex:
    """Unit phase exp(2 pi i k~ s / n) acquired by frequency k under a shift s.

    k~ is the signed frequency index (k up to n//2, k - n above).
    """
    if not 0 <= k < n:
        raise IndexError(f"frequency index {k} outside [0, {n})")
    ktilde = k if k <= n // 2 else k - n
    return complex(np.exp(2j * np.pi * ktilde * s / n))


@dataclass(frozen=True)
class SpectralKernel:
    """Real eigenphases q of a circulant hop operator, in frequency order.

    Frequency k evolves as exp(-i q_k t). ``description`` records the
    provenance of the rates (stencil order, lambda) for manifests and
    benchmark reports.
    """

    q: NDArray[np.float64]
    n: int
    description: str = ""

    def __post_init__(self):
        arr = np.asarray(self.q, dtype=float)
        if arr.shape != (self.n,):
            raise DimensionMismatchError(
                f"kernel length {arr.shape} does not match n = {self.n}"
            )
        object.__setattr__(self, "q", arr)


@dataclass(frozen=True)
class PhaseFactors:
    """Unit-modulus factors r_k = exp(-i q_k t) for one evolution time."""

    r: NDArray[np.complex128]
    t: float


def build_kernel(
    rates: TransitionRates, n: int, lam: int = 1, description: str = ""
) -> SpectralKernel:
    """Eigenphases of the circulant operator induced by banded hop rates.

    q_k = sum_s gamma_s exp(2 pi i k~ (lam s) / n), summed over the rate
    band s in [-d, d]. With lam > 1 every hop is stretched to lam*s grid
    elements (the node-segment embedding); lam = 1 is the plain walk.
    Symmetric rates make the imaginary parts cancel; a residue above 1e-10
    raises NonHermitianError, below that it is truncated.
    """
    d = rates.half_width
    if n <= 2 * d * lam:
        raise SizeTooSmallError(
            f"transform length n = {n} must exceed 2*d*lambda = {2 * d * lam}"
        )
    _require_symmetric(rates)
    ktilde = _signed_frequencies(n)
    q = np.zeros(n, dtype=complex)
    for s, g in rates.items():
        q += float(g) * np.exp(2j * np.pi * ktilde * (lam * s) / n)
    residue = float(np.max(np.abs(q.imag)))
    if residue > _IMAG_RESIDUE_LIMIT:
        raise NonHermitianError(
            f"eigenphases have imaginary residue {residue:.3e}; rates are not symmetric"
        )
    return SpectralKernel(q=q.real.copy(), n=n, description=description)


def phase_factors(kernel: SpectralKernel, t: float) -> PhaseFactors:
    """Evolution factors exp(-i q t) for time t."""
    return PhaseFactors(r=np.exp(-1j * kernel.q * t), t=t)


def evolve_direct(h: DenseOperator, psi0, t: float) -> NDArray[np.complex128]:
    """Dense oracle: psi(t) = V exp(-i w t) V^T psi0 with h = V diag(w) V^T."""
    psi = np.asarray(psi0, dtype=complex)
    if psi.shape != (h.n,):
        raise DimensionMismatchError(
            f"state length {psi.shape} does not match operator size {h.n}"
        )
    if h.asymmetry() > 1e-12:
        raise NonHermitianError(
            f"operator asymmetry {h.asymmetry():.3e} exceeds 1e-12"
        )
    try:
        w, v = np.linalg.eigh(h.matrix)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(str(exc)) from exc
    return v @ (np.exp(-1j * w * t) * (v.T @ psi))


def evolve_fourier(psi0, kernel: SpectralKernel, t: float) -> NDArray[np.complex128]:
    """Spectral evolution: inverse FFT of FFT(psi0) * exp(-i q t)."""
    psi = np.asarray(psi0, dtype=complex)
    if psi.shape != (kernel.n,):
        raise DimensionMismatchError(
            f"state length {psi.shape} does not match kernel length {kernel.n}"
        )
    return np.fft.ifft(np.fft.fft(psi) * phase_factors(kernel, t).r)


def evolve_fourier_2d(
    psi0, kx: SpectralKernel, ky: SpectralKernel, t: float
) -> NDArray[np.complex128]:
    """Separable 2D spectral evolution with independent kernels per axis.

    Frequencies (j, k) evolve as exp(-i (qx_j + qy_k) t); the result equals
    applying the two 1D evolutions sequentially along each axis.
    """
    psi = np.asarray(psi0, dtype=complex)
    if psi.ndim != 2 or psi.shape != (kx.n, ky.n):
        raise DimensionMismatchError(
            f"grid shape {psi.shape} does not match kernels ({kx.n}, {ky.n})"
        )
    phases = np.exp(-1j * (kx.q[:, None] + ky.q[None, :]) * t)
    return np.fft.ifft2(np.fft.fft2(psi) * phases)


def shift_state(psi, s: int) -> NDArray[np.complex128]:
    """Cyclic shift: result[i] = psi[(i + s) mod n].

    The direction is pinned by the Fourier identity
    FFT(shift_state(psi, s)) == FFT(psi) * [fourier_phase(k, s, n)]_k.
    """
    return np.roll(np.asarray(psi, dtype=complex), -s)
