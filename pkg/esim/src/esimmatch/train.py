"""Training loop with early stopping and per-epoch history."""

from __future__ import annotations

import copy
import random
import time
from dataclasses import dataclass, field
from statistics import mean, pstdev
from typing import Sequence

import torch
from torch import nn

from .data import Pair, Vocab, build_vocab, encode_addresses
from .model import Hyperparams, MatcherNet, load_word_table, random_word_table

HISTORY_COLUMNS = ("epoch", "train_loss", "valid_loss", "train_acc",
                   "valid_acc", "train_prec", "valid_prec", "train_rec",
                   "valid_rec")


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 1e-4
    batch_size: int = 8
    max_epochs: int = 50
    early_stop_patience: int = 4
    seed: int = 0


@dataclass
class TrainResult:
    model: MatcherNet
    vocab: Vocab
    history: list[dict]
    train_seconds: float
    best_epoch: int


class _Counts:
    def __init__(self) -> None:
        self.tp = self.fp = self.tn = self.fn = 0

    def add(self, predicted: torch.Tensor, labels: torch.Tensor) -> None:
        p = predicted.bool()
        y = labels.bool()
        self.tp += int((p & y).sum())
        self.fp += int((p & ~y).sum())
        self.tn += int((~p & ~y).sum())
        self.fn += int((~p & y).sum())

    def metrics(self) -> tuple[float, float, float]:
        total = self.tp + self.fp + self.tn + self.fn
        precision = self.tp / (self.tp + self.fp) if self.tp + self.fp else 0.0
        recall = self.tp / (self.tp + self.fn) if self.tp + self.fn else 0.0
        accuracy = (self.tp + self.tn) / total if total else 0.0
        return precision, recall, accuracy


def _encode_pairs(pairs: Sequence[Pair], vocab: Vocab, hp: Hyperparams):
    w1, c1, l1 = encode_addresses([p.a1 for p in pairs], vocab, hp.max_words,
                                  hp.max_chars_per_word)
    w2, c2, l2 = encode_addresses([p.a2 for p in pairs], vocab, hp.max_words,
                                  hp.max_chars_per_word)
    labels = torch.tensor([p.label for p in pairs], dtype=torch.long)
    return (w1, c1, l1, w2, c2, l2), labels


def _evaluate_loss(model: MatcherNet, inputs, labels: torch.Tensor,
                   batch_size: int, loss_fn) -> tuple[float, _Counts]:
    model.eval()
    counts = _Counts()
    total_loss = 0.0
    n = labels.shape[0]
    with torch.no_grad():
        for start in range(0, n, batch_size):
            sl = slice(start, start + batch_size)
            logits = model(*(t[sl] for t in inputs))
            total_loss += float(loss_fn(logits, labels[sl])) * (min(start + batch_size, n) - start)
            counts.add(logits.argmax(dim=-1), labels[sl])
    return total_loss / n, counts


def make_word_table(vocab: Vocab, hp: Hyperparams,
                    word_vectors_path: str | None) -> torch.Tensor:
    if word_vectors_path is not None:
        return load_word_table(word_vectors_path, vocab, hp.word_dim)
    return random_word_table(vocab, hp.word_dim)


def train(train_pairs: Sequence[Pair], valid_pairs: Sequence[Pair],
          hp: Hyperparams, cfg: TrainConfig,
          word_vectors_path: str | None = None,
          vocab_pairs: Sequence[Pair] | None = None) -> TrainResult:
    """Fit the matcher, stopping early on stalled validation loss.

    The best-validation weights are restored before returning.  History
    carries per-epoch loss/accuracy/precision/recall for both splits;
    training metrics are accumulated over the epoch's own batches.

    ``vocab_pairs`` selects the pairs whose tokens are indexed (typically
    the whole dataset, since the frozen word vectors are a pure function
    of the token string, like a pretrained file); training pairs are used
    when omitted.
    """
    if not train_pairs or not valid_pairs:
        raise ValueError("train and valid splits must both be non-empty")
    torch.manual_seed(cfg.seed)
    rng = random.Random(cfg.seed)
    vocab = build_vocab(vocab_pairs if vocab_pairs is not None else train_pairs)
    model = MatcherNet(vocab, hp, make_word_table(vocab, hp,
                                                  word_vectors_path))
    trainable = [p for p in model.parameters() if p.requires_grad]
    optimizer = torch.optim.Adam(trainable, lr=cfg.learning_rate)
    loss_fn = nn.CrossEntropyLoss()

    train_inputs, train_labels = _encode_pairs(train_pairs, vocab, hp)
    valid_inputs, valid_labels = _encode_pairs(valid_pairs, vocab, hp)

    history: list[dict] = []
    best_loss = float("inf")
    best_state = copy.deepcopy(model.state_dict())
    best_epoch = 0
    stale = 0
    n = len(train_pairs)
    start_time = time.perf_counter()
    for epoch in range(1, cfg.max_epochs + 1):
        order = list(range(n))
        rng.shuffle(order)
        model.train()
        counts = _Counts()
        total_loss = 0.0
        for start in range(0, n, cfg.batch_size):
            idx = torch.tensor(order[start:start + cfg.batch_size])
            batch_labels = train_labels[idx]
            logits = model(*(t[idx] for t in train_inputs))
            loss = loss_fn(logits, batch_labels)
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            total_loss += float(loss.detach()) * idx.shape[0]
            counts.add(logits.argmax(dim=-1), batch_labels)
        train_loss = total_loss / n
        train_prec, train_rec, train_acc = counts.metrics()
        valid_loss, valid_counts = _evaluate_loss(model, valid_inputs,
                                                  valid_labels,
                                                  cfg.batch_size, loss_fn)
        valid_prec, valid_rec, valid_acc = valid_counts.metrics()
        history.append({
            "epoch": epoch,
            "train_loss": train_loss, "valid_loss": valid_loss,
            "train_acc": train_acc, "valid_acc": valid_acc,
            "train_prec": train_prec, "valid_prec": valid_prec,
            "train_rec": train_rec, "valid_rec": valid_rec,
        })
        if valid_loss < best_loss:
            best_loss = valid_loss
            best_state = copy.deepcopy(model.state_dict())
            best_epoch = epoch
            stale = 0
        else:
            stale += 1
            if stale >= cfg.early_stop_patience:
                break
    model.load_state_dict(best_state)
    model.eval()
    return TrainResult(model=model, vocab=vocab, history=history,
                       train_seconds=time.perf_counter() - start_time,
                       best_epoch=best_epoch)


def train_many(train_pairs: Sequence[Pair], valid_pairs: Sequence[Pair],
               hp: Hyperparams, cfg: TrainConfig, seeds: Sequence[int],
               word_vectors_path: str | None = None,
               vocab_pairs: Sequence[Pair] | None = None) -> list[TrainResult]:
    """One training run per seed (for mean/sd reporting across seeds)."""
    results = []
    for seed in seeds:
        seeded = TrainConfig(learning_rate=cfg.learning_rate,
                             batch_size=cfg.batch_size,
                             max_epochs=cfg.max_epochs,
                             early_stop_patience=cfg.early_stop_patience,
                             seed=seed)
        results.append(train(train_pairs, valid_pairs, hp, seeded,
                             word_vectors_path, vocab_pairs=vocab_pairs))
    return results


def aggregate_metrics(reports: Sequence[dict]) -> dict:
    """Mean and population standard deviation per numeric report field."""
    out = {}
    for key in ("precision", "recall", "accuracy", "elapsed_seconds",
                "fit_seconds"):
        values = [r[key] for r in reports]
        out[key] = {"mean": mean(values),
                    "sd": pstdev(values) if len(values) > 1 else 0.0}
    return out


def write_history_csv(history: Sequence[dict], path: str) -> None:
    import csv

    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(HISTORY_COLUMNS)
        for row in history:
            writer.writerow([row[c] for c in HISTORY_COLUMNS])
