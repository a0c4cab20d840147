"""Figures for the CLI reports, rendered with the Agg backend to files."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .degrees import weight_table  # noqa: E402
from .transform import Spectrum  # noqa: E402


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    # fixed metadata keeps the files reproducible
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_power_by_weight(s: Spectrum, path: Path) -> Path:
    """Share of sum |W|^2 carried by each Hamming weight of z."""
    w = weight_table(s.spec.q, s.spec.n)
    power = s.power()
    totals = np.bincount(w, weights=power, minlength=s.spec.n + 1)
    share = totals / totals.sum() if totals.sum() else totals
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar(np.arange(s.spec.n + 1), share, color="#4477aa")
    ax.set_xlabel("wt(z)")
    ax.set_ylabel("share of |W|^2")
    ax.set_title(f"spectral weight, q={s.spec.q}, n={s.spec.n}")
    ax.set_xticks(np.arange(s.spec.n + 1))
    return _save(fig, Path(path))


def plot_mixed_edges(per_cycle, per_hamming, path: Path) -> Path:
    """Mixed edges per direction for both graphs."""
    idx = np.arange(1, len(per_cycle) + 1)
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar(idx - 0.2, per_cycle, width=0.4, label="cycle power", color="#4477aa")
    ax.bar(idx + 0.2, per_hamming, width=0.4, label="Hamming", color="#cc6677")
    ax.set_xlabel("variable")
    ax.set_ylabel("mixed edges")
    ax.set_xticks(idx)
    ax.legend(frameon=False)
    return _save(fig, Path(path))


def plot_law_counts(laws: dict, path: Path) -> Path:
    """Checked and violated counts per law."""
    names = list(laws)
    checked = np.array([laws[k]["checked"] for k in names], dtype=float)
    bad = np.array([laws[k]["violations"] for k in names], dtype=float)
    y = np.arange(len(names))
    fig, ax = plt.subplots(figsize=(6, 0.45 * len(names) + 1.2))
    ax.barh(y, checked, color="#bbbbbb", label="checked")
    ax.barh(y, bad, color="#cc3311", label="violations")
    for yi, c, b in zip(y, checked, bad):
        ax.text(c, yi, f" {int(c)} / {int(b)}", va="center", fontsize=8)
    ax.set_yticks(y)
    ax.set_yticklabels(names)
    ax.set_xlim(0, max(checked.max(initial=0), 1) * 1.25)
    ax.set_xlabel("functions checked / violations")
    ax.legend(frameon=False, loc="upper center", bbox_to_anchor=(0.5, -0.25), ncol=2)
    return _save(fig, Path(path))


def plot_tightness_histogram(counts, path: Path) -> Path:
    """Distribution of t / (smallest proved bound) over non-constant functions."""
    counts = np.asarray(counts)
    edges = np.linspace(0.0, 1.0, len(counts) + 1)
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.stairs(counts, edges, fill=True, color="#228833")
    ax.set_xlabel("t / min bound")
    ax.set_ylabel("functions")
    ax.set_xlim(0, 1)
    return _save(fig, Path(path))
