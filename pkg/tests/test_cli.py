import json

import numpy as np
import pytest

from ctqw.cli import RunManifest, main


def read_csv(path):
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


def dist_columns(path):
    _, rows = read_csv(path)
    idx = np.array([int(r[0]) for r in rows])
    p = np.array([float(r[1]) for r in rows])
    return idx, p


def run(args):
    return main(args)


def test_run1d_writes_distribution(tmp_path):
    code = run(["run1d", "--order", "1", "--nodes", "160", "--lambda", "16",
                "--m", "16", "--dx", "2", "--time", "15", "--out", str(tmp_path)])
    assert code == 0
    header, rows = read_csv(tmp_path / "dist.csv")
    assert header == ["node_index", "probability"]
    assert len(rows) == 160
    idx, p = dist_columns(tmp_path / "dist.csv")
    assert abs(p.sum() - 1.0) <= 1e-9
    assert idx[0] == -79 and idx[-1] == 80
    assert (tmp_path / "manifest.json").exists()


def test_run1d_time_zero_delta(tmp_path):
    code = run(["run1d", "--time", "0", "--out", str(tmp_path)])
    assert code == 0
    idx, p = dist_columns(tmp_path / "dist.csv")
    assert p[idx == 0][0] >= 0.999


def test_run1d_lambda_above_m_usage_error(tmp_path, capsys):
    code = run(["run1d", "--lambda", "32", "--m", "16", "--out", str(tmp_path)])
    assert code == 2
    assert "lambda must not exceed m" in capsys.readouterr().err


def test_run1d_invalid_order_usage_error(tmp_path):
    code = run(["run1d", "--order", "3", "--out", str(tmp_path)])
    assert code == 2


def test_sweep_single_lambda_matches_run1d(tmp_path):
    d1 = tmp_path / "one"
    d2 = tmp_path / "two"
    assert run(["run1d", "--order", "1", "--nodes", "160", "--lambda", "16",
                "--m", "16", "--dx", "2", "--time", "15", "--out", str(d1)]) == 0
    assert run(["sweep", "--order", "1", "--nodes", "160", "--lambdas", "16",
                "--m", "16", "--dx", "2", "--time", "15", "--out", str(d2)]) == 0
    assert (d1 / "dist.csv").read_bytes() == (d2 / "dist_lambda16.csv").read_bytes()


def test_sweep_default_summary_monotone(tmp_path):
    assert run(["sweep", "--out", str(tmp_path)]) == 0
    for lam in (16, 4, 3, 2, 1):
        assert (tmp_path / f"dist_lambda{lam}.csv").exists()
        assert (tmp_path / f"analytic_lambda{lam}.csv").exists()
    header, rows = read_csv(tmp_path / "summary.csv")
    assert header == ["lambda", "tv_distance_to_analytic", "sigma"]
    tvs = [float(r[1]) for r in rows]
    assert len(tvs) == 5
    for earlier, later in zip(tvs, tvs[1:]):
        assert later <= earlier + 1e-3


def test_sweep_lambda_zero_usage_error(tmp_path):
    assert run(["sweep", "--lambdas", "0", "--out", str(tmp_path)]) == 2


def test_run2d_marginal_matches_1d(tmp_path):
    d2 = tmp_path / "grid"
    d1 = tmp_path / "line"
    args2 = ["run2d", "--order-x", "1", "--order-y", "10", "--nodes-x", "16",
             "--nodes-y", "16", "--lambda", "8", "--m", "8", "--dx", "1",
             "--time", "3", "--out", str(d2)]
    args1 = ["run1d", "--order", "1", "--nodes", "16", "--lambda", "8",
             "--m", "8", "--dx", "1", "--time", "3", "--out", str(d1)]
    assert run(args2) == 0
    assert run(args1) == 0
    header, rows = read_csv(d2 / "dist2d.csv")
    assert header == ["i", "j", "probability"]
    assert len(rows) == 256
    grid = {}
    for r in rows:
        grid[(int(r[0]), int(r[1]))] = float(r[2])
    i_values = sorted({k[0] for k in grid})
    marginal = np.array([sum(grid[(i, j)] for j in i_values) for i in i_values])
    assert abs(marginal.sum() - 1.0) <= 1e-9
    _, p1 = dist_columns(d1 / "dist.csv")
    assert np.max(np.abs(marginal - p1)) <= 1e-8


def test_run2d_time_zero_dominant_origin(tmp_path):
    assert run(["run2d", "--nodes-x", "16", "--nodes-y", "16", "--lambda", "8",
                "--m", "8", "--dx", "1", "--time", "0", "--out", str(tmp_path)]) == 0
    _, rows = read_csv(tmp_path / "dist2d.csv")
    best = max(rows, key=lambda r: float(r[2]))
    assert (int(best[0]), int(best[1])) == (0, 0)
    assert float(best[2]) >= 0.99


def test_run2d_invalid_size_usage_error(tmp_path):
    assert run(["run2d", "--nodes-x", "0", "--out", str(tmp_path)]) == 2


def test_classical_distribution(tmp_path):
    assert run(["classical", "--nodes", "160", "--gamma", "1", "--time", "25",
                "--out", str(tmp_path)]) == 0
    idx, p = dist_columns(tmp_path / "classical.csv")
    assert abs(p.sum() - 1.0) <= 1e-9
    assert idx[np.argmax(p)] == 0


def test_classical_time_zero_delta(tmp_path):
    assert run(["classical", "--nodes", "32", "--time", "0", "--out", str(tmp_path)]) == 0
    idx, p = dist_columns(tmp_path / "classical.csv")
    assert p[idx == 0][0] >= 1.0 - 1e-12


def test_classical_negative_gamma_usage_error(tmp_path, capsys):
    assert run(["classical", "--gamma", "-1", "--out", str(tmp_path)]) == 2
    assert "gamma" in capsys.readouterr().err


def test_classical_truncated_is_engine_error(tmp_path, capsys):
    # open-ended conservative matrix leaks probability at the ends, and the
    # master equation refuses it: engine error, not usage error
    code = run(["classical", "--nodes", "16", "--boundary", "truncated",
                "--out", str(tmp_path)])
    assert code == 1
    assert "conservative" in capsys.readouterr().err


def test_bench_small_run(tmp_path):
    assert run(["bench", "--n", "16:32:16", "--time", "1", "--repeats", "3",
                "--out", str(tmp_path)]) == 0
    header, rows = read_csv(tmp_path / "bench.csv")
    assert header == ["n", "t_direct_s", "t_fourier_s", "efficiency", "max_abs_diff"]
    assert [int(r[0]) for r in rows] == [16, 32]
    for r in rows:
        assert float(r[4]) <= 1e-10
    fit = json.loads((tmp_path / "fit.json").read_text())
    assert set(fit) == {"c0", "c1", "c2", "residual"}


def test_bench_repeats_floor_usage_error(tmp_path):
    assert run(["bench", "--repeats", "1", "--out", str(tmp_path)]) == 2


def test_bench_stub_engines_near_unity(tmp_path):
    assert run(["bench", "--n", "16:48:16", "--time", "1", "--repeats", "3",
                "--stub-engines", "--out", str(tmp_path)]) == 0
    _, rows = read_csv(tmp_path / "bench.csv")
    for r in rows:
        assert 0.25 <= float(r[3]) <= 4.0
        assert float(r[4]) == 0.0


def test_bench_malformed_range_usage_error(tmp_path):
    assert run(["bench", "--n", "50-250", "--out", str(tmp_path)]) == 2


def test_manifest_json_roundtrip():
    manifest = RunManifest(
        command="run1d",
        parameters={"order": 1, "nodes": 160, "lambda": 16, "m": 16,
                    "dx": 2.0, "time": 15.0, "boundary": "periodic", "seed": None},
        engine_version="0.1.0",
        timestamp="2026-01-01T00:00:00+00:00",
    )
    assert RunManifest.from_json(manifest.to_json()) == manifest


def test_manifest_parameters_reproduce_run(tmp_path):
    d1 = tmp_path / "a"
    d2 = tmp_path / "b"
    assert run(["run1d", "--nodes", "64", "--lambda", "8", "--m", "8",
                "--dx", "1.5", "--time", "7.5", "--out", str(d1)]) == 0
    params = RunManifest.from_json((d1 / "manifest.json").read_text()).parameters
    argv = ["run1d",
            "--order", str(params["order"]),
            "--nodes", str(params["nodes"]),
            "--lambda", str(params["lambda"]),
            "--m", str(params["m"]),
            "--dx", str(params["dx"]),
            "--time", str(params["time"]),
            "--boundary", params["boundary"],
            "--out", str(d2)]
    assert run(argv) == 0
    assert (d1 / "dist.csv").read_bytes() == (d2 / "dist.csv").read_bytes()


def test_rerun_is_deterministic(tmp_path):
    d1 = tmp_path / "a"
    d2 = tmp_path / "b"
    args = ["sweep", "--nodes", "32", "--lambdas", "4,2,1", "--m", "8",
            "--dx", "1", "--time", "5"]
    assert run(args + ["--out", str(d1)]) == 0
    assert run(args + ["--out", str(d2)]) == 0
    for name in ("dist_lambda4.csv", "dist_lambda2.csv", "dist_lambda1.csv", "summary.csv"):
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes()


def test_unknown_command_usage_error():
    assert run(["frobnicate"]) == 2
