"""Figures for the CLI report paths (Agg backend, files only)."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _embedding(rs):
    # rows are Euclidean images of the fundamental weights
    form = np.array([[float(x) for x in row] for row in rs.weight_form])
    return np.linalg.cholesky(form)


def weight_diagram(rs, chi, path, title=None):
    """Scatter the weights of a rank-2 character, marker area ~ multiplicity."""
    if rs.rank != 2:
        raise ValueError("weight diagrams are drawn for rank 2 only")
    emb = _embedding(rs)
    pts = np.array([w for w, _ in chi], dtype=float) @ emb
    mult = np.array([c for _, c in chi], dtype=float)
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    ax.scatter(pts[:, 0], pts[:, 1], s=25 * np.sqrt(np.abs(mult)), c=mult, cmap="viridis",
               edgecolors="k", linewidths=0.4)
    for (x, y), c in zip(pts, mult):
        if c > 1:
            ax.annotate(str(int(c)), (x, y), fontsize=6, ha="center", va="bottom",
                        xytext=(0, 3), textcoords="offset points")
    ax.set_aspect("equal")
    ax.axhline(0, color="0.8", lw=0.5, zorder=0)
    ax.axvline(0, color="0.8", lw=0.5, zorder=0)
    ax.set_title(title or f"{rs.name}: {len(mult)} weights, dim {int(mult.sum())}", fontsize=9)
    ax.set_xticks([])
    ax.set_yticks([])
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def table_report_figure(report, path):
    """Per-row pass/fail strip plus valid counts per numbering convention."""
    res = np.array(report.results, dtype=float)
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(8, 2.6), gridspec_kw={"width_ratios": [3, 1]})
    cols = max(1, int(np.ceil(np.sqrt(len(res) * 4))))
    rows = max(1, int(np.ceil(len(res) / cols)))
    grid = np.full(rows * cols, np.nan)
    grid[: len(res)] = res
    ax0.imshow(grid.reshape(rows, cols), cmap="RdYlGn", vmin=0, vmax=1, aspect="auto")
    ax0.set_title(f"{report.fixture.root_system.name}, l={report.fixture.level}: "
                  f"{report.n_valid}/{len(res)} rows valid", fontsize=9)
    ax0.set_xticks([])
    ax0.set_yticks([])
    names = list(report.alternatives)
    ax1.bar(names, [report.alternatives[k] for k in names], color="0.5")
    ax1.axhline(len(res), color="k", ls="--", lw=0.8)
    ax1.set_ylabel("valid rows", fontsize=8)
    ax1.tick_params(labelsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
