"""Figure rendering for evaluation reports."""

from __future__ import annotations

from typing import Sequence

from .model import EvalReport


def render_report_figures(reports: Sequence[EvalReport], stem: str) -> list[str]:
    """Write metric and timing bar charts next to a report.

    Returns the paths written: ``<stem>_metrics.png`` with grouped
    precision/recall/accuracy bars and ``<stem>_time.png`` with per-
    algorithm wall time.
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    names = [r.algorithm_name for r in reports]
    x = range(len(names))
    width = 0.27

    fig, ax = plt.subplots(figsize=(max(7.0, 0.85 * len(names)), 4.5))
    ax.bar([i - width for i in x], [r.precision for r in reports], width,
           label="precision")
    ax.bar(list(x), [r.recall for r in reports], width, label="recall")
    ax.bar([i + width for i in x], [r.accuracy for r in reports], width,
           label="accuracy")
    ax.set_xticks(list(x))
    ax.set_xticklabels(names, rotation=45, ha="right", fontsize=8)
    ax.set_ylim(0.0, 1.05)
    ax.set_ylabel("score")
    ax.set_title(f"Matching performance ({reports[0].split} split)")
    ax.legend()
    fig.tight_layout()
    metrics_path = f"{stem}_metrics.png"
    fig.savefig(metrics_path, dpi=120)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(max(7.0, 0.85 * len(names)), 4.0))
    ax.bar(list(x), [r.elapsed_seconds for r in reports], width=0.6,
           color="#558866")
    ax.set_xticks(list(x))
    ax.set_xticklabels(names, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("seconds")
    ax.set_title("Prediction wall time")
    fig.tight_layout()
    time_path = f"{stem}_time.png"
    fig.savefig(time_path, dpi=120)
    plt.close(fig)

    return [metrics_path, time_path]
