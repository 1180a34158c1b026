"""Figure rendering: correlation heatmap, quadrant scatters, histograms.

Output is deterministic: fixed figure geometry, a fixed SVG hash salt, and
stripped date/software metadata make identical inputs produce identical image
bytes. Every number shown on a figure is recomputed from the CSV.
"""

from __future__ import annotations

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .csvdata import (SCHEMA_COLUMNS, CsvFormatError, read_sweep_csv,
                      require_columns, subset_rows)

FIGSIZE = (8.0, 6.0)

matplotlib.rcParams["svg.hashsalt"] = "threatdyn-figures"


def _save(fig, out):
    """Write the figure to `out`; a path without an image extension becomes
    both <out>.svg and <out>.png."""
    out = os.fspath(out)
    if out.endswith(".svg"):
        targets = [out]
    elif out.endswith(".png"):
        targets = [out]
    else:
        targets = [out + ".svg", out + ".png"]
    for target in targets:
        if target.endswith(".svg"):
            fig.savefig(target, format="svg", metadata={"Date": None})
        else:
            fig.savefig(target, format="png", metadata={"Software": None})
    plt.close(fig)
    return targets


def pearson(data: np.ndarray) -> np.ndarray:
    centered = data - data.mean(axis=0)
    std = np.sqrt((centered ** 2).mean(axis=0))
    with np.errstate(divide="ignore", invalid="ignore"):
        z = centered / std
        m = (z.T @ z) / data.shape[0]
    m = (m + m.T) / 2.0
    np.fill_diagonal(m, 1.0)
    m[std == 0.0, :] = np.nan
    m[:, std == 0.0] = np.nan
    return m


def fig_corr_heatmap(csv_path, out, columns=None):
    """Annotated correlation heatmap over all (or the given) numeric columns,
    diverging color scale pinned to [-1, 1]. Returns (paths, matrix)."""
    table = read_sweep_csv(csv_path)
    if columns is None:
        columns = [c for c in SCHEMA_COLUMNS if c != "run_id"]
    require_columns(table, columns)
    data = np.column_stack([table[c] for c in columns])
    matrix = pearson(data)
    k = len(columns)

    fig, ax = plt.subplots(figsize=FIGSIZE)
    im = ax.imshow(matrix, cmap="RdBu_r", vmin=-1.0, vmax=1.0)
    ax.set_xticks(range(k))
    ax.set_yticks(range(k))
    label_size = max(2.0, min(8.0, 240.0 / k))
    ax.set_xticklabels(columns, rotation=90, fontsize=label_size)
    ax.set_yticklabels(columns, fontsize=label_size)
    note_size = max(1.5, min(7.0, 160.0 / k))
    for i in range(k):
        for j in range(k):
            v = matrix[i, j]
            ax.text(j, i, "" if np.isnan(v) else f"{v:.2f}",
                    ha="center", va="center", fontsize=note_size,
                    color="white" if abs(v) > 0.6 else "black")
    fig.colorbar(im, ax=ax, shrink=0.8)
    ax.set_title(f"correlations over {data.shape[0]} runs")
    fig.tight_layout()
    return _save(fig, out), matrix


def fig_scatter_quadrant(csv_path, x, y, subset, out):
    """Scatter of y against x over the subset rows; `subset` is None or a
    (column, rule) pair. Returns (paths, number of points plotted)."""
    table = read_sweep_csv(csv_path)
    require_columns(table, [x, y])
    if subset is not None:
        column, rule = subset
        table = subset_rows(table, column, rule)
        subtitle = f"{rule.replace('_', ' ')} of {column}"
    else:
        subtitle = "all runs"
    xs, ys = table[x], table[y]
    if len(xs) == 0:
        raise CsvFormatError("empty subset: nothing to plot")

    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.scatter(xs, ys, s=6, alpha=0.35, color="#1f5d8a", linewidths=0)
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.axvline(0.0, color="0.6", lw=0.8)
    ax.set_xlabel(x)
    ax.set_ylabel(y)
    ax.set_title(f"{y} vs {x} ({subtitle}, n={len(xs)})")
    fig.tight_layout()
    return _save(fig, out), len(xs)


def fig_histograms(csv_path, columns, out_dir, n_bins=50):
    """One annotated histogram per column into out_dir (SVG and PNG each).
    Returns {column: paths}."""
    table = read_sweep_csv(csv_path)
    require_columns(table, columns)
    os.makedirs(out_dir, exist_ok=True)
    written = {}
    for column in columns:
        values = table[column]
        lo, hi = float(values.min()), float(values.max())
        if lo == hi:
            counts, edges = np.histogram(values, bins=n_bins)
        else:
            counts, edges = np.histogram(values, bins=n_bins, range=(lo, hi))
        centers = (edges[:-1] + edges[1:]) / 2.0

        fig, ax = plt.subplots(figsize=FIGSIZE)
        ax.bar(centers, counts, width=(edges[1] - edges[0]) * 0.97,
               color="#4a7fb0", edgecolor="none")
        step = max(1, n_bins // 10)
        for i in range(0, n_bins, step):
            if counts[i] > 0:
                ax.text(centers[i], counts[i], str(int(counts[i])),
                        ha="center", va="bottom", fontsize=5)
        mean = float(values.mean())
        median = float(np.median(values))
        ax.set_xlabel(column)
        ax.set_ylabel("runs")
        ax.set_title(f"{column}  (n={len(values)}, mean={mean:.3f}, "
                     f"median={median:.3f})")
        fig.tight_layout()
        written[column] = _save(fig, os.path.join(out_dir, column))
    return written
