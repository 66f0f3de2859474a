"""Neural address-pair matcher trained on labeled JSONL datasets."""

from .data import Pair, Vocab, build_vocab, encode_addresses, read_pairs, split_pairs
from .evaluate import evaluate_split, predict_probabilities
from .model import Hyperparams, MatcherNet, enhance, soft_align, word_table_checksum
from .train import TrainConfig, TrainResult, aggregate_metrics, train, train_many

__version__ = "0.1.0"

__all__ = [
    "Hyperparams",
    "MatcherNet",
    "Pair",
    "TrainConfig",
    "TrainResult",
    "Vocab",
    "aggregate_metrics",
    "build_vocab",
    "encode_addresses",
    "enhance",
    "evaluate_split",
    "predict_probabilities",
    "read_pairs",
    "soft_align",
    "split_pairs",
    "train",
    "train_many",
    "word_table_checksum",
]
