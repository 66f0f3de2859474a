"""The sequence-pair matching network.

Each address is embedded per token (frozen word vectors, optionally fused
with a trainable character-level BiLSTM summary), contextualized by a
BiLSTM, softly aligned against the other address with dot-product
attention, enhanced with difference and product features, composed by a
second BiLSTM, pooled (masked average and max) and classified by a dense
layer with a two-way softmax.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import torch
from torch import nn
from torch.nn.utils.rnn import pack_padded_sequence, pad_packed_sequence

from .data import PAD_ID, Vocab


@dataclass(frozen=True)
class Hyperparams:
    word_dim: int = 300
    char_dim: int = 32
    char_hidden: int = 32
    hidden_dim: int = 128
    dense_dim: int = 128
    max_words: int = 24
    max_chars_per_word: int = 16
    use_char_embeddings: bool = True
    dropout: float = 0.2

    def __post_init__(self) -> None:
        for name in ("word_dim", "char_dim", "char_hidden", "hidden_dim",
                     "dense_dim", "max_words", "max_chars_per_word"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


def lecun_uniform_(tensor: torch.Tensor) -> torch.Tensor:
    """In-place uniform init with limit sqrt(3 / fan_in), fan_in = rows."""
    fan_in = tensor.shape[0]
    limit = math.sqrt(3.0 / fan_in)
    with torch.no_grad():
        return tensor.uniform_(-limit, limit)


def random_word_table(vocab: Vocab, dim: int,
                      scale: float = 3.0) -> torch.Tensor:
    """Offline stand-in for pretrained vectors.

    Every indexed token gets a frozen random vector derived only from the
    token string (hash-seeded), mirroring how a pretrained file assigns one
    fixed vector per surface form regardless of which split it occurs in.
    Padding and unknown rows stay zero, so genuinely unindexed tokens rely
    on the character path.
    """
    import zlib

    table = torch.zeros((vocab.n_words, dim))
    for token, idx in vocab.word_index.items():
        seed = zlib.crc32(token.encode("utf-8"))
        generator = torch.Generator().manual_seed(seed)
        table[idx] = torch.randn(dim, generator=generator) * (scale / math.sqrt(dim))
    return table


def load_word_table(path: str, vocab: Vocab, dim: int) -> torch.Tensor:
    """Read token-per-line text vectors; vocabulary misses get zero rows.

    Tokens absent from the file rely on the character path downstream.
    Lookup is case-insensitive because pretrained vocabularies are
    typically lowercase while addresses are uppercase.
    """
    table = torch.zeros((vocab.n_words, dim))
    wanted: dict[str, list[int]] = {}
    for token, idx in vocab.word_index.items():
        wanted.setdefault(token.lower(), []).append(idx)
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            parts = line.rstrip().split(" ")
            if len(parts) != dim + 1:
                continue
            ids = wanted.get(parts[0].lower())
            if ids:
                vec = torch.tensor([float(x) for x in parts[1:]])
                for idx in ids:
                    table[idx] = vec
    return table


def soft_align(e1: torch.Tensor, e2: torch.Tensor, mask1: torch.Tensor,
               mask2: torch.Tensor,
               ) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
    """Dot-product attention between two encoded sequences.

    Returns (aligned1, aligned2, attention) where attention[b, i, j] is the
    weight of e2[b, j] in the alignment for e1[b, i]; rows over valid
    positions sum to one, padding positions are excluded.
    """
    scores = torch.bmm(e1, e2.transpose(1, 2))
    fill = torch.finfo(scores.dtype).min
    attn1 = torch.softmax(
        scores.masked_fill(~mask2.unsqueeze(1), fill), dim=2)
    attn2 = torch.softmax(
        scores.masked_fill(~mask1.unsqueeze(2), fill), dim=1)
    aligned1 = torch.bmm(attn1, e2)
    aligned2 = torch.bmm(attn2.transpose(1, 2), e1)
    return aligned1, aligned2, attn1


def enhance(e: torch.Tensor, aligned: torch.Tensor) -> torch.Tensor:
    """Concatenate [e; aligned; e - aligned; e * aligned] (4x the width)."""
    if e.shape != aligned.shape:
        raise ValueError("enhancement needs equally shaped sequences")
    return torch.cat([e, aligned, e - aligned, e * aligned], dim=-1)


def masked_avg_pool(x: torch.Tensor, mask: torch.Tensor) -> torch.Tensor:
    weights = mask.unsqueeze(-1).to(x.dtype)
    return (x * weights).sum(dim=1) / weights.sum(dim=1).clamp(min=1.0)


def masked_max_pool(x: torch.Tensor, mask: torch.Tensor) -> torch.Tensor:
    fill = torch.finfo(x.dtype).min
    return x.masked_fill(~mask.unsqueeze(-1), fill).max(dim=1).values


class MatcherNet(nn.Module):
    def __init__(self, vocab: Vocab, hp: Hyperparams,
                 word_table: torch.Tensor) -> None:
        super().__init__()
        if word_table.shape != (vocab.n_words, hp.word_dim):
            raise ValueError("word table shape does not match vocab and dims")
        self.hp = hp
        # Word vectors stay fixed for the whole training run.
        self.word_embedding = nn.Embedding.from_pretrained(
            word_table.clone(), freeze=True, padding_idx=PAD_ID)
        token_dim = hp.word_dim
        if hp.use_char_embeddings:
            self.char_embedding = nn.Embedding(vocab.n_chars, hp.char_dim,
                                               padding_idx=PAD_ID)
            lecun_uniform_(self.char_embedding.weight)
            with torch.no_grad():
                self.char_embedding.weight[PAD_ID].zero_()
            self.char_lstm = nn.LSTM(hp.char_dim, hp.char_hidden,
                                     batch_first=True, bidirectional=True)
            token_dim += 2 * hp.char_hidden
        self.encoder = nn.LSTM(token_dim, hp.hidden_dim, batch_first=True,
                               bidirectional=True)
        self.composer = nn.LSTM(8 * hp.hidden_dim, hp.hidden_dim,
                                batch_first=True, bidirectional=True)
        self.dropout = nn.Dropout(hp.dropout)
        self.dense = nn.Linear(8 * hp.hidden_dim, hp.dense_dim)
        self.out = nn.Linear(hp.dense_dim, 2)

    def _char_summaries(self, chars: torch.Tensor) -> torch.Tensor:
        """Per-word character BiLSTM summary, shape [B, W, 2*char_hidden]."""
        batch, n_words, n_chars = chars.shape
        flat = chars.reshape(batch * n_words, n_chars)
        lengths = (flat != PAD_ID).sum(dim=1).clamp(min=1)
        embedded = self.char_embedding(flat)
        packed = pack_padded_sequence(embedded, lengths.cpu(),
                                      batch_first=True, enforce_sorted=False)
        _, (hidden, _) = self.char_lstm(packed)
        summary = torch.cat([hidden[0], hidden[1]], dim=-1)
        return summary.reshape(batch, n_words, -1)

    def _run_packed(self, lstm: nn.LSTM, x: torch.Tensor,
                    lengths: torch.Tensor, total: int) -> torch.Tensor:
        packed = pack_padded_sequence(x, lengths.cpu(), batch_first=True,
                                      enforce_sorted=False)
        out, _ = lstm(packed)
        return pad_packed_sequence(out, batch_first=True,
                                   total_length=total)[0]

    def encode(self, words: torch.Tensor, chars: torch.Tensor,
               lengths: torch.Tensor) -> torch.Tensor:
        """Contextual token vectors, shape [B, max_words, 2*hidden_dim]."""
        inputs = self.word_embedding(words)
        if self.hp.use_char_embeddings:
            inputs = torch.cat([inputs, self._char_summaries(chars)], dim=-1)
        return self._run_packed(self.encoder, inputs, lengths,
                                words.shape[1])

    def forward(self, w1: torch.Tensor, c1: torch.Tensor, l1: torch.Tensor,
                w2: torch.Tensor, c2: torch.Tensor, l2: torch.Tensor,
                ) -> torch.Tensor:
        batch = w1.shape[0]
        mask1 = w1 != PAD_ID
        mask2 = w2 != PAD_ID
        # Both sides ride through each LSTM in one call.
        encoded = self.encode(torch.cat([w1, w2]), torch.cat([c1, c2]),
                              torch.cat([l1, l2]))
        e1, e2 = encoded[:batch], encoded[batch:]
        aligned1, aligned2, _ = soft_align(e1, e2, mask1, mask2)
        composed = self._run_packed(
            self.composer,
            torch.cat([enhance(e1, aligned1), enhance(e2, aligned2)]),
            torch.cat([l1, l2]), w1.shape[1])
        f1, f2 = composed[:batch], composed[batch:]
        pooled = torch.cat([
            masked_avg_pool(f1, mask1), masked_max_pool(f1, mask1),
            masked_avg_pool(f2, mask2), masked_max_pool(f2, mask2),
        ], dim=-1)
        hidden = torch.tanh(self.dense(self.dropout(pooled)))
        return self.out(self.dropout(hidden))

    def match_probability(self, *args: torch.Tensor) -> torch.Tensor:
        """P(match) per pair, in [0, 1]."""
        return torch.softmax(self.forward(*args), dim=-1)[:, 1]


def word_table_checksum(model: MatcherNet) -> float:
    """Fingerprint of the frozen word table (must not move in training)."""
    return float(model.word_embedding.weight.double().sum())
