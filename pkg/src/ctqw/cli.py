"""Command-line surface: run experiments and emit CSV/JSON artifacts.

Subcommands
-----------
run1d      one walk on a line, node distribution -> dist.csv
sweep      one walk per lambda plus a convergence summary
run2d      separable walk on a mesh -> dist2d.csv
classical  master-equation walk -> classical.csv
bench      dense-oracle vs spectral-engine timing -> bench.csv, fit.json

Every command writes a manifest.json recording its parameters and the
engine version; re-running with the manifest's parameters reproduces the
distribution CSVs byte for byte (timing CSVs vary by nature). Exit codes:
0 ok, 1 engine error, 2 usage error.
"""

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .analytic import analytic_node_distribution, classical_evolve
from .embedding import (
    EmbeddingSpec,
    GaussianPacketSpec,
    extract_nodes,
    extract_nodes_2d,
    gaussian_init,
)
from .hamiltonians import (
    Boundary,
    RateConvention,
    SUPPORTED_ORDERS,
    laplacian_stencil,
    line_hamiltonian,
    stencil_to_rates,
)
from .metrics import benchmark_efficiency, spread_sigma, total_variation
from .propagators import build_kernel, evolve_fourier, evolve_fourier_2d

__all__ = ["RunManifest", "main", "entry"]


class UsageError(Exception):
    """Invalid flag combination; maps to exit code 2."""


@dataclass(frozen=True)
class RunManifest:
    command: str
    parameters: dict
    engine_version: str
    timestamp: str

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "parameters": self.parameters,
                "engine_version": self.engine_version,
                "timestamp": self.timestamp,
            },
            indent=2,
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "RunManifest":
        data = json.loads(text)
        return cls(
            command=data["command"],
            parameters=data["parameters"],
            engine_version=data["engine_version"],
            timestamp=data["timestamp"],
        )


def _write_atomic(path: Path, text: str):
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _format(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(float(value))  # shortest round-trip decimal


def _write_csv(path: Path, header, rows):
    lines = [",".join(header)]
    lines.extend(",".join(_format(v) for v in row) for row in rows)
    _write_atomic(path, "\n".join(lines) + "\n")


def _write_manifest(outdir: Path, command: str, parameters: dict):
    manifest = RunManifest(
        command=command,
        parameters=parameters,
        engine_version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat(),
    )
    _write_atomic(outdir / "manifest.json", manifest.to_json() + "\n")


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _embedding(nodes: int, lam: int, m: int) -> EmbeddingSpec:
    try:
        return EmbeddingSpec(node_count=nodes, lam=lam, m=m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _check_positive(name: str, value):
    if value <= 0:
        raise UsageError(f"{name} must be positive, got {value}")


def _require_periodic(boundary: str):
    if Boundary(boundary) is not Boundary.PERIODIC:
        raise UsageError("the spectral engine supports periodic boundaries only")


def _walk_distribution(order: int, nodes: int, lam: int, m: int, dx: float, t: float):
    """Shared pipeline behind run1d and sweep (bit-identical outputs)."""
    spec = _embedding(nodes, lam, m)
    rates = stencil_to_rates(laplacian_stencil(order))
    kernel = build_kernel(
        rates, spec.total_elements, lam=spec.lam,
        description=f"order={order},lambda={spec.lam}",
    )
    psi0 = gaussian_init(spec, GaussianPacketSpec(center_node=0, width=dx))
    psi_t = evolve_fourier(psi0, kernel, t)
    return spec, rates, extract_nodes(psi_t, spec)


def _dist_rows(dist):
    return list(zip(dist.node_indices.tolist(), dist.probabilities.tolist()))


def cmd_run1d(args) -> list[Path]:
    _check_positive("--dx", args.dx)
    _require_periodic(args.boundary)
    out = _outdir(args)
    _, _, dist = _walk_distribution(args.order, args.nodes, args.lam, args.m, args.dx, args.time)
    dist_path = out / "dist.csv"
    _write_csv(dist_path, ("node_index", "probability"), _dist_rows(dist))
    _write_manifest(out, "run1d", {
        "order": args.order, "nodes": args.nodes, "lambda": args.lam, "m": args.m,
        "dx": args.dx, "time": args.time, "boundary": args.boundary, "seed": args.seed,
    })
    return [dist_path, out / "manifest.json"]


def cmd_sweep(args) -> list[Path]:
    _check_positive("--dx", args.dx)
    _require_periodic(args.boundary)
    lambdas = args.lambdas
    for lam in lambdas:
        _embedding(args.nodes, lam, args.m)  # validate every lambda up front
    out = _outdir(args)
    written = []
    summary_rows = []
    for lam in lambdas:
        spec, rates, dist = _walk_distribution(args.order, args.nodes, lam, args.m, args.dx, args.time)
        analytic = analytic_node_distribution(spec, args.dx, rates, args.time)
        tv = total_variation(dist.probabilities, analytic.probabilities)
        summary_rows.append((lam, tv, spread_sigma(dist)))
        dist_path = out / f"dist_lambda{lam}.csv"
        _write_csv(dist_path, ("node_index", "probability"), _dist_rows(dist))
        analytic_path = out / f"analytic_lambda{lam}.csv"
        _write_csv(analytic_path, ("node_index", "probability"), _dist_rows(analytic))
        written.extend([dist_path, analytic_path])
    summary_path = out / "summary.csv"
    _write_csv(summary_path, ("lambda", "tv_distance_to_analytic", "sigma"), summary_rows)
    _write_manifest(out, "sweep", {
        "order": args.order, "nodes": args.nodes, "lambdas": lambdas, "m": args.m,
        "dx": args.dx, "time": args.time, "boundary": args.boundary, "seed": args.seed,
    })
    return written + [summary_path, out / "manifest.json"]


def cmd_run2d(args) -> list[Path]:
    _check_positive("--dx", args.dx)
    _require_periodic(args.boundary)
    spec_x = _embedding(args.nodes_x, args.lam, args.m)
    spec_y = _embedding(args.nodes_y, args.lam, args.m)
    out = _outdir(args)
    packet = GaussianPacketSpec(center_node=0, width=args.dx)
    psi_x = gaussian_init(spec_x, packet)
    psi_y = gaussian_init(spec_y, packet)
    rates_x = stencil_to_rates(laplacian_stencil(args.order_x))
    rates_y = stencil_to_rates(laplacian_stencil(args.order_y))
    kx = build_kernel(rates_x, spec_x.total_elements, lam=spec_x.lam,
                      description=f"order={args.order_x},lambda={spec_x.lam}")
    ky = build_kernel(rates_y, spec_y.total_elements, lam=spec_y.lam,
                      description=f"order={args.order_y},lambda={spec_y.lam}")
    psi_t = evolve_fourier_2d(np.outer(psi_x, psi_y), kx, ky, args.time)
    p2d = extract_nodes_2d(psi_t, spec_x, spec_y)
    rows = []
    ix = spec_x.node_indices.tolist()
    iy = spec_y.node_indices.tolist()
    for a, i in enumerate(ix):
        for b, j in enumerate(iy):
            rows.append((i, j, float(p2d[a, b])))
    dist_path = out / "dist2d.csv"
    _write_csv(dist_path, ("i", "j", "probability"), rows)
    _write_manifest(out, "run2d", {
        "order_x": args.order_x, "order_y": args.order_y,
        "nodes_x": args.nodes_x, "nodes_y": args.nodes_y,
        "lambda": args.lam, "m": args.m, "dx": args.dx, "time": args.time,
        "boundary": args.boundary, "seed": args.seed,
    })
    return [dist_path, out / "manifest.json"]


def cmd_classical(args) -> list[Path]:
    _check_positive("--gamma", args.gamma)
    if args.nodes < 2:
        raise UsageError(f"--nodes must be at least 2, got {args.nodes}")
    out = _outdir(args)
    h = line_hamiltonian(
        args.nodes, args.gamma, RateConvention.CONSERVATIVE, Boundary(args.boundary)
    )
    p0 = np.zeros(args.nodes)
    center = (args.nodes - 1) // 2
    p0[center] = 1.0
    pt = classical_evolve(h, p0, args.time)
    indices = np.arange(args.nodes) - center
    dist_path = out / "classical.csv"
    _write_csv(dist_path, ("node_index", "probability"),
               list(zip(indices.tolist(), pt.tolist())))
    _write_manifest(out, "classical", {
        "nodes": args.nodes, "gamma": args.gamma, "time": args.time,
        "boundary": args.boundary, "seed": args.seed,
    })
    return [dist_path, out / "manifest.json"]


def _stub_engines():
    """Constant-work engines for the timing-control experiment."""

    def spin():
        end = time.perf_counter() + 2e-4
        while time.perf_counter() < end:
            pass

    def direct(h, psi0, t):
        spin()
        return np.asarray(psi0, dtype=complex)

    def fourier(psi0, kernel, t):
        spin()
        return np.asarray(psi0, dtype=complex)

    return direct, fourier


def cmd_bench(args) -> list[Path]:
    if args.repeats < 3:
        raise UsageError(f"--repeats must be at least 3, got {args.repeats}")
    n_values = args.n
    out = _outdir(args)
    rates = stencil_to_rates(laplacian_stencil(args.order))
    engines = {}
    if args.stub_engines:
        direct, fourier = _stub_engines()
        engines = {"direct_engine": direct, "fourier_engine": fourier}
    records, fit = benchmark_efficiency(n_values, args.time, rates, args.repeats, **engines)
    bench_path = out / "bench.csv"
    _write_csv(
        bench_path,
        ("n", "t_direct_s", "t_fourier_s", "efficiency", "max_abs_diff"),
        [(r.n, r.t_direct, r.t_fourier, r.efficiency, r.max_abs_diff) for r in records],
    )
    fit_path = out / "fit.json"
    _write_atomic(fit_path, json.dumps(
        {"c0": fit.c0, "c1": fit.c1, "c2": fit.c2, "residual": fit.residual},
        indent=2, sort_keys=True,
    ) + "\n")
    _write_manifest(out, "bench", {
        "order": args.order, "n": args.n_spec, "time": args.time,
        "repeats": args.repeats, "stub_engines": args.stub_engines, "seed": args.seed,
    })
    return [bench_path, fit_path, out / "manifest.json"]


def _parse_lambdas(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid lambda list {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("lambda list is empty")
    return values


def _parse_n_range(text: str) -> tuple[list[int], str]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected lo:hi:step, got {text!r}")
    try:
        lo, hi, step = (int(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected integers in lo:hi:step, got {text!r}") from exc
    if lo < 2 or hi < lo or step < 1:
        raise argparse.ArgumentTypeError(f"need 2 <= lo <= hi and step >= 1, got {text!r}")
    return list(range(lo, hi + 1, step)), text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctqw",
        description="Continuous-time quantum walk experiments (spectral engine with a dense oracle).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=".", help="output directory (default: current)")
        p.add_argument("--seed", type=int, default=None,
                       help="recorded in the manifest; commands are deterministic")
        p.add_argument("--boundary", choices=[b.value for b in Boundary],
                       default=Boundary.PERIODIC.value)

    def walk_flags(p, nodes_default):
        p.add_argument("--order", type=int, choices=SUPPORTED_ORDERS, default=1)
        p.add_argument("--nodes", type=int, default=nodes_default)
        p.add_argument("--m", type=int, default=16)
        p.add_argument("--dx", type=float, default=2.0)
        p.add_argument("--time", type=float, default=15.0)

    p = sub.add_parser("run1d", help="single walk on a line")
    walk_flags(p, 160)
    p.add_argument("--lambda", dest="lam", type=int, default=16)
    common(p)
    p.set_defaults(func=cmd_run1d)

    p = sub.add_parser("sweep", help="walks over a list of lambdas plus summary")
    walk_flags(p, 160)
    p.add_argument("--lambdas", type=_parse_lambdas, default=[16, 4, 3, 2, 1])
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("run2d", help="separable walk on a mesh")
    p.add_argument("--order-x", type=int, choices=SUPPORTED_ORDERS, default=1)
    p.add_argument("--order-y", type=int, choices=SUPPORTED_ORDERS, default=10)
    p.add_argument("--nodes-x", type=int, default=64)
    p.add_argument("--nodes-y", type=int, default=64)
    p.add_argument("--lambda", dest="lam", type=int, default=16)
    p.add_argument("--m", type=int, default=16)
    p.add_argument("--dx", type=float, default=2.0)
    p.add_argument("--time", type=float, default=15.0)
    common(p)
    p.set_defaults(func=cmd_run2d)

    p = sub.add_parser("classical", help="classical master-equation walk")
    p.add_argument("--nodes", type=int, default=160)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--time", type=float, default=25.0)
    common(p)
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("bench", help="direct vs spectral timing")
    p.add_argument("--n", type=_parse_n_range, default=(list(range(50, 251, 50)), "50:250:50"))
    p.add_argument("--order", type=int, choices=SUPPORTED_ORDERS, default=1)
    p.add_argument("--time", type=float, default=5.0)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--stub-engines", action="store_true",
                   help="replace both engines with constant-work stubs (timing control)")
    common(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "bench":
        args.n, args.n_spec = args.n
    try:
        written = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # engine errors
        print(f"engine error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(f"wrote {path}")
    return 0


def entry():
    sys.exit(main())
