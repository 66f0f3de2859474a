"""Prediction and report generation in the benchmark's report schema."""

from __future__ import annotations

import json
import time
from typing import Sequence

import torch

from .data import Pair, Vocab
from .model import Hyperparams, MatcherNet
from .train import _encode_pairs


def predict_probabilities(model: MatcherNet, vocab: Vocab, hp: Hyperparams,
                          pairs: Sequence[Pair],
                          batch_size: int = 64) -> torch.Tensor:
    inputs, _ = _encode_pairs(pairs, vocab, hp)
    model.eval()
    probs = []
    with torch.no_grad():
        for start in range(0, len(pairs), batch_size):
            sl = slice(start, start + batch_size)
            probs.append(model.match_probability(*(t[sl] for t in inputs)))
    return torch.cat(probs)


def evaluate_split(model: MatcherNet, vocab: Vocab, hp: Hyperparams,
                   pairs: Sequence[Pair], split: str,
                   algorithm: str = "esim-char",
                   fit_seconds: float = 0.0) -> dict:
    """Score a split at threshold 0.5 and emit the shared report object.

    The JSON schema matches the baseline harness reports so downstream
    tooling can consume either: algorithm, split, confusion counts, the
    derived metrics (zero denominators reported as 1.0 and flagged),
    elapsed prediction seconds and the training time under fit_seconds.
    """
    if not pairs:
        raise ValueError(f"no pairs in split {split!r}")
    start = time.perf_counter()
    probs = predict_probabilities(model, vocab, hp, pairs)
    elapsed = time.perf_counter() - start
    predicted = probs >= 0.5
    labels = torch.tensor([p.label for p in pairs], dtype=torch.bool)
    tp = int((predicted & labels).sum())
    fp = int((predicted & ~labels).sum())
    tn = int((~predicted & ~labels).sum())
    fn = int((~predicted & labels).sum())
    flags = []
    if tp + fp > 0:
        precision = tp / (tp + fp)
    else:
        precision = 1.0
        flags.append("precision_zero_denominator")
    if tp + fn > 0:
        recall = tp / (tp + fn)
    else:
        recall = 1.0
        flags.append("recall_zero_denominator")
    return {
        "algorithm": algorithm,
        "split": split,
        "tp": tp,
        "fp": fp,
        "tn": tn,
        "fn": fn,
        "precision": precision,
        "recall": recall,
        "accuracy": (tp + tn) / len(pairs),
        "elapsed_seconds": elapsed,
        "fit_seconds": fit_seconds,
        "flags": flags,
        "parallelism": 1,
    }


def write_report(report: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
