"""Dataset loading and vocabulary handling.

Consumes the labeled-pair JSONL contract: one object per line with keys
"a1", "a2", "label" (0/1) and "split" ("train"/"valid"/"test").
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import torch

PAD_ID = 0
UNK_ID = 1
SPLITS = ("train", "valid", "test")


@dataclass(frozen=True)
class Pair:
    a1: str
    a2: str
    label: int
    split: str


def read_pairs(path: str) -> list[Pair]:
    pairs = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                pair = Pair(a1=obj["a1"], a2=obj["a2"], label=int(obj["label"]),
                            split=obj["split"])
            except (KeyError, ValueError, TypeError) as exc:
                raise ValueError(f"{path}:{lineno}: bad dataset line") from exc
            if pair.label not in (0, 1) or pair.split not in SPLITS:
                raise ValueError(f"{path}:{lineno}: bad label or split")
            pairs.append(pair)
    return pairs


def split_pairs(pairs: Sequence[Pair], split: str) -> list[Pair]:
    return [p for p in pairs if p.split == split]


@dataclass(frozen=True)
class Vocab:
    """Token and character indices with fixed padding (0) and unknown (1) ids."""

    word_index: dict[str, int]
    char_index: dict[str, int]

    @property
    def n_words(self) -> int:
        return len(self.word_index) + 2

    @property
    def n_chars(self) -> int:
        return len(self.char_index) + 2

    def word_id(self, token: str) -> int:
        return self.word_index.get(token, UNK_ID)

    def char_id(self, ch: str) -> int:
        return self.char_index.get(ch, UNK_ID)


def build_vocab(pairs: Iterable[Pair]) -> Vocab:
    """Index every token and character seen in the given (train) pairs."""
    words: dict[str, int] = {}
    chars: dict[str, int] = {}
    for pair in pairs:
        for side in (pair.a1, pair.a2):
            for token in side.split():
                if token not in words:
                    words[token] = len(words) + 2
                for ch in token:
                    if ch not in chars:
                        chars[ch] = len(chars) + 2
    if not words:
        raise ValueError("cannot build a vocabulary from empty data")
    return Vocab(word_index=words, char_index=chars)


def encode_addresses(addresses: Sequence[str], vocab: Vocab, max_words: int,
                     max_chars_per_word: int,
                     ) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
    """Pack addresses into (word_ids, char_ids, lengths) tensors.

    Shapes: words [B, W], chars [B, W, C], lengths [B].  Sequences are
    truncated to the fixed sizes; padding uses id 0 everywhere.
    """
    batch = len(addresses)
    words = torch.zeros((batch, max_words), dtype=torch.long)
    chars = torch.zeros((batch, max_words, max_chars_per_word), dtype=torch.long)
    lengths = torch.zeros(batch, dtype=torch.long)
    for i, addr in enumerate(addresses):
        toks = addr.split()[:max_words]
        lengths[i] = max(len(toks), 1)
        for j, tok in enumerate(toks):
            words[i, j] = vocab.word_id(tok)
            for k, ch in enumerate(tok[:max_chars_per_word]):
                chars[i, j, k] = vocab.char_id(ch)
    return words, chars, lengths
