"""Distribution distances, spread statistics, and the engine benchmark."""

import statistics
import time
from contextlib import nullcontext
from dataclasses import dataclass

import numpy as np

try:
    from threadpoolctl import threadpool_limits
except ImportError:  # pragma: no cover - threadpoolctl ships with the deps
    threadpool_limits = None

from .embedding import NodeDistribution
from .errors import DimensionMismatchError
from .hamiltonians import Boundary, TransitionRates, rates_to_dense
from .propagators import build_kernel, evolve_direct, evolve_fourier
from .states import gaussian_state

__all__ = [
    "total_variation",
    "spread_sigma",
    "BenchRecord",
    "QuadraticFit",
    "fit_quadratic",
    "benchmark_efficiency",
]


def total_variation(p, q) -> float:
    """Total variation distance (1/2) sum |p_i - q_i| between distributions."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise DimensionMismatchError(f"length mismatch: {p.shape} vs {q.shape}")
    return 0.5 * float(np.abs(p - q).sum())


def spread_sigma(dist: NodeDistribution) -> float:
    """Standard deviation of the node index under the distribution."""
    i = dist.node_indices.astype(float)
    p = dist.probabilities
    mean = float(np.dot(p, i))
    return float(np.sqrt(max(np.dot(p, i * i) - mean * mean, 0.0)))


@dataclass(frozen=True)
class BenchRecord:
    """One benchmark row: problem size, per-engine times, their ratio, and
    the elementwise disagreement of the two results."""

    n: int
    t_direct: float
    t_fourier: float
    efficiency: float
    repeats: int
    max_abs_diff: float


@dataclass(frozen=True)
class QuadraticFit:
    """Least-squares quadratic c0 + c1 x + c2 x^2 with rms residual."""

    c0: float
    c1: float
    c2: float
    residual: float

    def __call__(self, x):
        return self.c0 + self.c1 * np.asarray(x, dtype=float) + self.c2 * np.asarray(x, dtype=float) ** 2


def fit_quadratic(x, y) -> QuadraticFit:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise DimensionMismatchError(f"length mismatch: {x.shape} vs {y.shape}")
    # lstsq rather than polyfit: stays quiet (and least-norm) when fewer
    # than 3 samples make the quadratic underdetermined
    coeffs, *_ = np.linalg.lstsq(np.vander(x, 3, increasing=True), y, rcond=None)
    c0, c1, c2 = (float(c) for c in coeffs)
    residual = float(np.sqrt(np.mean((c0 + c1 * x + c2 * x**2 - y) ** 2)))
    return QuadraticFit(c0=c0, c1=c1, c2=c2, residual=residual)


def benchmark_efficiency(
    n_values,
    t: float,
    rates: TransitionRates,
    repeats: int,
    direct_engine=None,
    fourier_engine=None,
    packet_width: float = 2.0,
):
    """Time the dense oracle against the spectral engine at several sizes.

    For each n, a dense operator and a kernel are built from the same rates
    (periodic boundaries) before timing starts; both engines then evolve
    the same Gaussian initial state to time t. Each engine gets one
    untimed warm-up call, then ``repeats`` timed calls; the median wall
    time is recorded, along with the elementwise disagreement of the two
    results. Timing runs strictly sequentially on one thread (BLAS pools
    pinned to a single worker) so the ratio reflects arithmetic cost, not
    thread scheduling.

    ``direct_engine`` / ``fourier_engine`` default to the real engines and
    exist so tests can substitute constant-time stubs.

    Returns (records, fit) where fit is the least-squares quadratic of
    efficiency = t_direct / t_fourier against n.
    """
    if repeats < 3:
        raise ValueError(f"repeats must be at least 3, got {repeats}")
    direct_engine = direct_engine or evolve_direct
    fourier_engine = fourier_engine or evolve_fourier
    single_thread = threadpool_limits(1) if threadpool_limits is not None else nullcontext()
    records = []
    with single_thread:
        for n in n_values:
            h = rates_to_dense(rates, n, Boundary.PERIODIC)
            kernel = build_kernel(rates, n)
            psi0 = gaussian_state(n, n // 2, packet_width)
            result_direct = direct_engine(h, psi0, t)  # warm-up, result kept
            result_fourier = fourier_engine(psi0, kernel, t)
            max_abs_diff = float(
                np.max(np.abs(np.asarray(result_direct) - np.asarray(result_fourier)))
            )
            times_direct = []
            times_fourier = []
            for _ in range(repeats):
                start = time.perf_counter()
                direct_engine(h, psi0, t)
                times_direct.append(time.perf_counter() - start)
                start = time.perf_counter()
                fourier_engine(psi0, kernel, t)
                times_fourier.append(time.perf_counter() - start)
            t_direct = statistics.median(times_direct)
            t_fourier = statistics.median(times_fourier)
            records.append(
                BenchRecord(
                    n=int(n),
                    t_direct=t_direct,
                    t_fourier=t_fourier,
                    efficiency=t_direct / t_fourier,
                    repeats=repeats,
                    max_abs_diff=max_abs_diff,
                )
            )
    fit = fit_quadratic([r.n for r in records], [r.efficiency for r in records])
    return records, fit
