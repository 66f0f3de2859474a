"""Training-history curve rendering."""

from __future__ import annotations

from typing import Sequence


def render_history_figures(history: Sequence[dict], stem: str) -> list[str]:
    """Write loss and accuracy curves (train vs valid) next to the history."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    epochs = [row["epoch"] for row in history]
    paths = []
    for metric, label in (("loss", "loss"), ("acc", "accuracy")):
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        ax.plot(epochs, [row[f"train_{metric}"] for row in history],
                label="train", color="#d08030")
        ax.plot(epochs, [row[f"valid_{metric}"] for row in history],
                label="valid", color="#3060c0")
        ax.set_xlabel("epoch")
        ax.set_ylabel(label)
        ax.set_title(f"Training {label}")
        ax.legend()
        fig.tight_layout()
        path = f"{stem}_{label}.png"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        paths.append(path)
    return paths
