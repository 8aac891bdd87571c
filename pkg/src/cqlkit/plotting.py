"""Figures for evaluation reports and dataset statistics."""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .harness import CLASSES, STAT_FIELDS, pct  # noqa: E402

_STYLE = {
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "legend.frameon": False,
    "savefig.dpi": 150,
}


def _save(fig, path):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    fig.savefig(path, bbox_inches="tight", metadata={"Software": None})
    plt.close(fig)
    return path


def plot_report(report, path):
    """Grouped bars: one group per query class, one bar per metric."""
    keys = [c.value for c in CLASSES] + ["overall"]
    cols = report.columns()
    x = np.arange(len(keys))
    width = 0.8 / len(cols)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(6, 3.2))
        for i, metric in enumerate(cols):
            vals = [pct(report.rows[k][metric]) or 0.0 for k in keys]
            bars = ax.bar(x + (i - (len(cols) - 1) / 2) * width, vals, width, label=metric.upper())
            ax.bar_label(bars, fmt="%.1f", fontsize=6, padding=1)
        ax.set_xticks(x, [f"{k}\n(n={report.rows[k]['n']})" for k in keys])
        ax.set_ylim(0, 110)
        ax.set_ylabel("score (%)")
        ax.legend(ncol=len(cols), loc="upper center", bbox_to_anchor=(0.5, 1.15))
        return _save(fig, path)


def plot_stats(stats, path):
    """One panel per statistic, bars per query class."""
    keys = [c.value for c in CLASSES]
    with plt.rc_context(_STYLE):
        fig, axes = plt.subplots(2, 3, figsize=(8, 4.5))
        for ax, name in zip(axes.flat, STAT_FIELDS):
            vals = [stats.rows[k][name] or 0.0 for k in keys]
            bars = ax.bar(keys, vals, color=["C0", "C1", "C2"])
            ax.bar_label(bars, fmt="%.2f", fontsize=6, padding=1)
            ax.set_title(name.replace("_", " "))
            ax.margins(y=0.2)
        fig.tight_layout()
        return _save(fig, path)
