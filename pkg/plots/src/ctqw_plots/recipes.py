"""Figure recipes: which input files feed which figure id.

Input files follow the ctqw CLI contract:

* ``dist.csv`` / ``classical.csv`` / ``dist_lambda{L}.csv`` /
  ``analytic_lambda{L}.csv`` - ``node_index,probability``
* ``dist2d.csv`` - ``i,j,probability``
* ``bench.csv`` - ``n,t_direct_s,t_fourier_s,efficiency,max_abs_diff``
* ``fit.json`` - ``{c0, c1, c2, residual}``
"""

import csv
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

FIGURE_IDS = (1, 6, 7, 8, 9)


class RecipeError(Exception):
    """Missing or malformed input file."""


@dataclass(frozen=True)
class FigureRecipe:
    figure_id: int
    inputs: tuple[Path, ...]
    output: Path
    overlay_analytic: bool = True
    # per-panel analytic companions for sweep figures, same order as inputs
    analytic_inputs: tuple = field(default=())

    def check_inputs(self):
        for path in list(self.inputs) + [p for p in self.analytic_inputs if p is not None]:
            if not path.exists():
                raise RecipeError(f"missing input file: {path}")


def _sweep_inputs(indir: Path):
    pattern = re.compile(r"dist_lambda(\d+)\.csv$")
    found = []
    for path in indir.glob("dist_lambda*.csv"):
        match = pattern.search(path.name)
        if match:
            found.append((int(match.group(1)), path))
    if not found:
        raise RecipeError(f"no dist_lambda*.csv files in {indir}")
    found.sort(key=lambda pair: -pair[0])  # large lambda (most discrete) first
    lambdas = [lam for lam, _ in found]
    dists = [path for _, path in found]
    analytic = [
        indir / f"analytic_lambda{lam}.csv" if (indir / f"analytic_lambda{lam}.csv").exists() else None
        for lam in lambdas
    ]
    return lambdas, dists, analytic


def build_recipe(figure_id: int, indir: Path, output: Path, overlay: bool = True) -> FigureRecipe:
    """Resolve a figure id to concrete input paths inside ``indir``."""
    indir = Path(indir)
    output = Path(output)
    if figure_id == 1:
        return FigureRecipe(1, (indir / "dist.csv", indir / "classical.csv"), output, overlay)
    if figure_id in (6, 7):
        _, dists, analytic = _sweep_inputs(indir)
        if not overlay:
            analytic = [None] * len(dists)
        return FigureRecipe(figure_id, tuple(dists), output, overlay, tuple(analytic))
    if figure_id == 8:
        return FigureRecipe(8, (indir / "dist2d.csv",), output, overlay)
    if figure_id == 9:
        return FigureRecipe(9, (indir / "bench.csv", indir / "fit.json"), output, overlay)
    raise RecipeError(f"unknown figure id {figure_id}; known ids: {FIGURE_IDS}")


def _read_rows(path: Path, expected_header):
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header != list(expected_header):
                raise RecipeError(
                    f"{path}: expected header {','.join(expected_header)}, got "
                    f"{','.join(header) if header else 'empty file'}"
                )
            rows = list(reader)
    except OSError as exc:
        raise RecipeError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise RecipeError(f"{path}: no data rows")
    return rows


def read_distribution(path: Path):
    rows = _read_rows(path, ("node_index", "probability"))
    try:
        indices = [int(row[0]) for row in rows]
        probs = [float(row[1]) for row in rows]
    except (ValueError, IndexError) as exc:
        raise RecipeError(f"{path}: malformed row ({exc})") from exc
    return indices, probs


def read_grid(path: Path):
    rows = _read_rows(path, ("i", "j", "probability"))
    try:
        cells = {(int(r[0]), int(r[1])): float(r[2]) for r in rows}
    except (ValueError, IndexError) as exc:
        raise RecipeError(f"{path}: malformed row ({exc})") from exc
    i_values = sorted({ij[0] for ij in cells})
    j_values = sorted({ij[1] for ij in cells})
    grid = [[cells.get((i, j), 0.0) for j in j_values] for i in i_values]
    return i_values, j_values, grid


def read_bench(path: Path):
    rows = _read_rows(path, ("n", "t_direct_s", "t_fourier_s", "efficiency", "max_abs_diff"))
    try:
        sizes = [int(r[0]) for r in rows]
        efficiency = [float(r[3]) for r in rows]
    except (ValueError, IndexError) as exc:
        raise RecipeError(f"{path}: malformed row ({exc})") from exc
    return sizes, efficiency


def read_fit(path: Path):
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return float(data["c0"]), float(data["c1"]), float(data["c2"])
    except (OSError, ValueError, KeyError) as exc:
        raise RecipeError(f"cannot read fit coefficients from {path}: {exc}") from exc


def lambda_of(path: Path):
    match = re.search(r"lambda(\d+)", Path(path).name)
    return int(match.group(1)) if match else None
