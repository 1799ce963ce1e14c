"""Matplotlib figures written alongside the delimited outputs.

All renderers are headless (Agg) and write a file; nothing is shown
interactively.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .model import Dataset, ScoreMatrix


def save_score_heatmap(
    matrix: ScoreMatrix, source: Dataset, dest: Dataset, path: str | Path
) -> None:
    """Final scores as a sources x destinations heatmap."""
    src_names = source.attribute_names
    dst_names = dest.attribute_names
    index = {(p.source_attr, p.dest_attr): p.final for p in matrix.pairs}
    grid = np.array(
        [[index[(s, d)] for d in dst_names] for s in src_names], dtype=float
    )

    fig, ax = plt.subplots(
        figsize=(max(4.0, 0.45 * len(dst_names)), max(3.0, 0.4 * len(src_names)))
    )
    im = ax.imshow(grid, vmin=0.0, vmax=1.0, cmap="viridis", aspect="auto")
    ax.set_xticks(range(len(dst_names)), labels=dst_names, rotation=90, fontsize=7)
    ax.set_yticks(range(len(src_names)), labels=src_names, fontsize=7)
    ax.set_xlabel("destination attribute")
    ax.set_ylabel("source attribute")
    ax.set_title("final matching scores")
    fig.colorbar(im, ax=ax, fraction=0.03)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_topn_chart(topn: Mapping[int, float], path: str | Path) -> None:
    ns = sorted(topn)
    values = [topn[n] for n in ns]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar([str(n) for n in ns], values, color="#4878a8")
    for i, v in enumerate(values):
        ax.text(i, v + 0.01, f"{v:.2f}", ha="center", fontsize=8)
    ax.set_ylim(0, 1.05)
    ax.set_xlabel("top N suggestions")
    ax.set_ylabel("accuracy")
    ax.set_title("accuracy by number of suggestions")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_runtime_chart(timings: Mapping[str, float], path: str | Path) -> None:
    names = [k for k in timings if k != "total"]
    values = [timings[k] for k in names]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.barh(names, values, color="#76a06c")
    ax.set_xlabel("runtime (ms)")
    ax.set_title(f"per-matcher runtime (total {timings.get('total', 0.0):.0f} ms)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_ablation_chart(
    table: Mapping[str, Mapping[int, float]], path: str | Path
) -> None:
    components = list(table)
    ns = sorted(next(iter(table.values()))) if table else []
    width = 0.8 / max(1, len(ns))
    x = np.arange(len(components))

    fig, ax = plt.subplots(figsize=(7, 3.6))
    for i, n in enumerate(ns):
        ax.bar(
            x + i * width,
            [table[c][n] for c in components],
            width=width,
            label=f"top {n}",
        )
    ax.set_xticks(x + 0.4 - width / 2, labels=components, fontsize=8)
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("accuracy")
    ax.set_title("per-component accuracy by number of suggestions")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
