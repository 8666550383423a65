"""Turn a FigureRecipe into an image file."""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .recipes import (
    FigureRecipe,
    lambda_of,
    read_bench,
    read_distribution,
    read_fit,
    read_grid,
)


def render(recipe: FigureRecipe) -> Path:
    """Render one figure; returns the written path. Inputs are read-only."""
    recipe.check_inputs()
    renderer = _RENDERERS[recipe.figure_id]
    fig = renderer(recipe)
    out = Path(recipe.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


def _render_overlay(recipe):
    quantum_path, classical_path = recipe.inputs
    qi, qp = read_distribution(quantum_path)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(qi, qp, "-", color="tab:blue", label="quantum walk")
    if recipe.overlay_analytic:
        ci, cp = read_distribution(classical_path)
        ax.plot(ci, cp, "--", color="tab:red", label="classical walk")
    ax.set_xlabel("node index")
    ax.set_ylabel("probability")
    ax.set_title("Quantum vs classical spreading")
    ax.legend()
    fig.tight_layout()
    return fig


def _render_sweep(recipe):
    n_panels = len(recipe.inputs)
    fig, axes = plt.subplots(n_panels, 1, figsize=(6, 2.2 * n_panels), sharex=True)
    if n_panels == 1:
        axes = [axes]
    for ax, dist_path, analytic_path in zip(axes, recipe.inputs, recipe.analytic_inputs):
        idx, p = read_distribution(dist_path)
        ax.plot(idx, p, "-", color="tab:blue", lw=1.2)
        if analytic_path is not None:
            ai, ap = read_distribution(analytic_path)
            ax.plot(ai, ap, "--", color="tab:red", lw=1.0)
        lam = lambda_of(dist_path)
        if lam is not None:
            ax.set_ylabel(f"$\\lambda$ = {lam}", rotation=0, ha="right", va="center")
    axes[-1].set_xlabel("node index")
    fig.suptitle("Walk distribution vs free-packet limit")
    fig.tight_layout()
    return fig


def _render_heatmap(recipe):
    i_values, j_values, grid = read_grid(recipe.inputs[0])
    fig, ax = plt.subplots(figsize=(5.5, 5))
    extent = (j_values[0] - 0.5, j_values[-1] + 0.5, i_values[0] - 0.5, i_values[-1] + 0.5)
    image = ax.imshow(grid, origin="lower", extent=extent, aspect="equal", cmap="viridis")
    ax.set_xlabel("node index j")
    ax.set_ylabel("node index i")
    ax.set_title("Mesh walk probability")
    fig.colorbar(image, ax=ax, shrink=0.85, label="probability")
    fig.tight_layout()
    return fig


def _render_efficiency(recipe):
    bench_path, fit_path = recipe.inputs
    sizes, efficiency = read_bench(bench_path)
    fig, ax = plt.subplots(figsize=(6, 4.2))
    ax.plot(sizes, efficiency, "o", color="tab:blue", label="measured")
    if recipe.overlay_analytic:
        c0, c1, c2 = read_fit(fit_path)
        lo, hi = min(sizes), max(sizes)
        steps = 200
        xs = [lo + (hi - lo) * k / steps for k in range(steps + 1)]
        ys = [c0 + c1 * x + c2 * x * x for x in xs]
        ax.plot(xs, ys, "-", color="tab:red", label="quadratic fit")
    ax.set_xlabel("problem size n")
    ax.set_ylabel("time ratio dense / spectral")
    ax.set_title("Spectral-engine speedup")
    ax.legend()
    fig.tight_layout()
    return fig


_RENDERERS = {
    1: _render_overlay,
    6: _render_sweep,
    7: _render_sweep,
    8: _render_heatmap,
    9: _render_efficiency,
}
