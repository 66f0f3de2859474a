"""Chainable record-to-record representation changes.

Five transforms share the record-in/record-out shape so they can be chained:
normalization, whitespace tokenization, character n-grams, tf-idf weighting
and rule-based segmentation into typed fields.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import count
from statistics import fmean
from typing import Iterable, Mapping, Sequence

from .generator import CityEntry, bundled_path, default_city_table
from .model import (
    ALL_FIELD_KEYS,
    AddressRecord,
    FieldKey,
    IngestionError,
    InvalidInputError,
)

TAG_OPEN = "⟨"
TAG_CLOSE = "⟩"
_TAG_CHARS = (TAG_OPEN, TAG_CLOSE)

# Punctuation stripped from token edges.  Tag brackets are never stripped.
_EDGE_PUNCT = ".,;:-_#*'\"()[]{}/!?&"

_ORDINAL_RE = re.compile(r"(\d+)(?:ST|ND|RD|TH)", re.IGNORECASE)


@dataclass(frozen=True)
class LexiconEntry:
    surface: str
    tag: str
    field_hint: FieldKey | None


@dataclass(frozen=True, eq=False)
class Lexicon:
    """Surface-form to canonical-tag table driving normalization.

    Single-token surfaces dominate; two-token surfaces (e.g. "PO BOX") are
    matched with one token of lookahead.  Field hints group the tags into
    the classes the segmenter keys on.
    """

    single: Mapping[str, LexiconEntry]
    compound: Mapping[tuple[str, str], LexiconEntry]
    hints_by_tag: Mapping[str, FieldKey | None]

    def tags_for(self, hint: FieldKey) -> frozenset[str]:
        return frozenset(t for t, h in self.hints_by_tag.items() if h is hint)


def load_lexicon(path: str | None = None) -> Lexicon:
    """Parse a SURFACE<TAB>TAG<TAB>FIELDHINT lexicon file."""
    try:
        if path is None:
            fh = bundled_path("lexicon.tsv").open("r", encoding="utf-8")
        else:
            fh = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise IngestionError(f"cannot open lexicon: {exc}") from exc
    single: dict[str, LexiconEntry] = {}
    compound: dict[tuple[str, str], LexiconEntry] = {}
    hints: dict[str, FieldKey | None] = {}
    with fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise IngestionError(f"lexicon line {lineno}: need 3 fields")
            surface, tag, hint_name = (p.strip() for p in parts)
            if not (tag.startswith(TAG_OPEN) and tag.endswith(TAG_CLOSE)):
                raise IngestionError(f"lexicon line {lineno}: bad tag {tag!r}")
            hint = None if hint_name == "none" else FieldKey(hint_name)
            entry = LexiconEntry(surface=surface.upper(), tag=tag, field_hint=hint)
            words = entry.surface.split()
            if len(words) == 1:
                if words[0] in single:
                    raise IngestionError(f"duplicate lexicon surface {surface!r}")
                single[words[0]] = entry
            elif len(words) == 2:
                key = (words[0], words[1])
                if key in compound:
                    raise IngestionError(f"duplicate lexicon surface {surface!r}")
                compound[key] = entry
            else:
                raise IngestionError(
                    f"lexicon line {lineno}: surfaces may have at most 2 words")
            if tag in hints and hints[tag] != hint:
                raise IngestionError(f"conflicting field hints for tag {tag}")
            hints[tag] = hint
    if not single and not compound:
        raise IngestionError("lexicon is empty")
    return Lexicon(single=single, compound=compound, hints_by_tag=hints)


_DEFAULT_LEXICON: Lexicon | None = None


def default_lexicon() -> Lexicon:
    global _DEFAULT_LEXICON
    if _DEFAULT_LEXICON is None:
        _DEFAULT_LEXICON = load_lexicon(None)
    return _DEFAULT_LEXICON


def _ascii_clean(s: str) -> str:
    return "".join(ch for ch in s if ord(ch) < 128 or ch in _TAG_CHARS)


def _lookup_key(core: str) -> str:
    return core.upper().replace(".", "")


def _normalize_string(s: str, lexicon: Lexicon) -> str:
    s = _ascii_clean(s)
    s = re.sub(r"\s+,", ",", s)
    s = re.sub(r",+", ",", s)
    s = re.sub(r",(?=\S)", ", ", s)
    pieces: list[tuple[str, str]] = []
    for raw in s.split():
        trailing = "," if raw.endswith(",") else ""
        core = raw.rstrip(",").strip(_EDGE_PUNCT)
        if not core:
            continue
        m = _ORDINAL_RE.fullmatch(core)
        if m:
            core = m.group(1)
        pieces.append((core, trailing))
    out: list[str] = []
    i = 0
    while i < len(pieces):
        core, trailing = pieces[i]
        key = _lookup_key(core)
        if i + 1 < len(pieces):
            pair = (key, _lookup_key(pieces[i + 1][0]))
            entry = lexicon.compound.get(pair)
            if entry is not None:
                out.append(entry.tag + pieces[i + 1][1])
                i += 2
                continue
        entry = lexicon.single.get(key)
        out.append((entry.tag if entry else core) + trailing)
        i += 1
    return " ".join(out)


def normalize(rec: AddressRecord, lexicon: Lexicon | None = None) -> AddressRecord:
    """Clean the address string and canonicalize known surface forms.

    Non-ASCII characters are dropped, delimiters homogenized, stray
    punctuation runs stripped, ordinal suffixes reduced to their number and
    lexicon surfaces replaced by canonical tags.  Idempotent: tags survive
    a second pass untouched.
    """
    if lexicon is None:
        lexicon = default_lexicon()
    values = rec.values(FieldKey.ADDRESS)
    if not values:
        return rec
    entries = dict(rec.entries)
    entries[FieldKey.ADDRESS] = tuple(_normalize_string(v, lexicon) for v in values)
    return AddressRecord(entries=entries, term_mode=rec.term_mode)


def _strip_token(tok: str) -> str:
    return tok.strip(_EDGE_PUNCT)


def tokens(rec: AddressRecord) -> AddressRecord:
    """Replace each key's strings with their whitespace tokens, in order."""
    entries = {}
    for key in ALL_FIELD_KEYS:
        values = rec.values(key)
        if not values:
            continue
        if any(not isinstance(v, str) for v in values):
            raise InvalidInputError("tokens expects string values")
        toks = tuple(t for v in values for t in
                     (_strip_token(w) for w in v.split()) if t)
        entries[key] = toks
    return AddressRecord(entries=entries, term_mode="tokens")


def _char_ngrams(s: str, n: int) -> list[str]:
    if len(s) >= n:
        return [s[i:i + n] for i in range(len(s) - n + 1)]
    return [s]


def ngrams(rec: AddressRecord, n: int = 3) -> AddressRecord:
    """Replace each key's strings with overlapping character n-grams.

    A string shorter than n stands for itself as a single gram.
    """
    if n < 1:
        raise InvalidInputError("n must be >= 1")
    entries = {}
    for key in ALL_FIELD_KEYS:
        values = rec.values(key)
        if not values:
            continue
        if any(not isinstance(v, str) for v in values):
            raise InvalidInputError("n-grams expects string values")
        entries[key] = tuple(g for v in values for g in _char_ngrams(v, n))
    return AddressRecord(entries=entries, term_mode="ngrams")


@dataclass(frozen=True)
class TermVector:
    """Sparse non-negative term weights tied to the model that produced them."""

    weights: Mapping[str, float]
    model_id: int


_MODEL_IDS = count(1)


@dataclass(frozen=True)
class TfidfModel:
    document_frequencies: Mapping[str, int]
    n_documents: int
    term_mode: str
    model_id: int = field(default_factory=lambda: next(_MODEL_IDS))

    def idf(self, term: str) -> float:
        df = self.document_frequencies.get(term, 0)
        return math.log((1 + self.n_documents) / (1 + df)) + 1.0


def tfidf_fit(corpus: Sequence[AddressRecord]) -> TfidfModel:
    """Fit document frequencies over a corpus (one record = one document)."""
    if not corpus:
        raise InvalidInputError("tf-idf fit needs a non-empty corpus")
    modes = {rec.term_mode for rec in corpus}
    if len(modes) != 1 or modes & {None}:
        raise InvalidInputError("corpus records must all be tokenized or n-grammed")
    df: Counter[str] = Counter()
    for rec in corpus:
        terms = {t for key in ALL_FIELD_KEYS for t in rec.values(key)}
        df.update(terms)
    return TfidfModel(document_frequencies=dict(df), n_documents=len(corpus),
                      term_mode=modes.pop())


def tfidf_vectorize(rec: AddressRecord, model: TfidfModel) -> AddressRecord:
    """Replace each key's term list with one smoothed tf-idf weight vector."""
    if rec.term_mode != model.term_mode:
        raise InvalidInputError(
            f"record terms are {rec.term_mode!r} but model was fitted on "
            f"{model.term_mode!r}")
    entries = {}
    for key in ALL_FIELD_KEYS:
        values = rec.values(key)
        if not values:
            continue
        tf = Counter(values)
        weights = {t: n * model.idf(t) for t, n in tf.items()}
        entries[key] = (TermVector(weights=weights, model_id=model.model_id),)
    return AddressRecord(entries=entries, term_mode=rec.term_mode)


def _is_tag(tok: str) -> bool:
    return tok.startswith(TAG_OPEN)


def _is_word(tok: str) -> bool:
    return not _is_tag(tok) and not tok.isdigit()


@lru_cache(maxsize=4)
def _city_suffix_index(cities: tuple[CityEntry, ...], lexicon: Lexicon,
                       ) -> tuple[dict[tuple[str, ...], int], int]:
    """Map normalized uppercase (city..., state) token tuples to their length.

    Table rows are normalized with the same lexicon as the address text, so
    rows whose names contain canonicalizable words (directionals, street
    types, colliding state codes) still match after normalization.
    """
    index: dict[tuple[str, ...], int] = {}
    max_len = 0
    for entry in cities:
        toks = _normalize_string(f"{entry.city} {entry.state}", lexicon).split()
        key = tuple(t.upper() for t in toks)
        index[key] = len(key)
        max_len = max(max_len, len(key))
    return index, max_len


def segment(rec: AddressRecord, cities: Sequence[CityEntry] | None = None,
            lexicon: Lexicon | None = None) -> AddressRecord:
    """Populate typed fields from a normalized address by pattern extraction.

    Extraction order: city/state (longest suffix match against the city
    table), person name (after an attention tag), unit and floor numbers
    (adjacent to their class tags), PO box, house (word run before a
    building tag), then street number (first number of what remains) and
    street name (the rest).  Matched spans are consumed; leftover tokens
    stay under the Address key.  Unmatched fields are empty, never errors.
    """
    if cities is None:
        cities = default_city_table()
    if lexicon is None:
        lexicon = default_lexicon()
    values = rec.values(FieldKey.ADDRESS)
    text = values[0] if values else ""
    toks = [t for t in (_strip_token(w) for w in text.split()) if t]
    n = len(toks)
    used = [False] * n
    fields: dict[FieldKey, tuple] = {}

    index, max_key_len = _city_suffix_index(tuple(cities), lexicon)
    for k in range(min(max_key_len, n), 1, -1):
        key = tuple(t.upper() for t in toks[n - k:])
        if key in index:
            fields[FieldKey.CITY] = (" ".join(toks[n - k:n - 1]),)
            fields[FieldKey.COUNTY_STATE] = (toks[n - 1],)
            for i in range(n - k, n):
                used[i] = True
            break

    person_tags = lexicon.tags_for(FieldKey.PERSON)
    for i in range(n):
        if not used[i] and toks[i] in person_tags:
            used[i] = True
            run = []
            j = i + 1
            while j < n and not used[j] and _is_word(toks[j]):
                run.append(toks[j])
                used[j] = True
                j += 1
            if run:
                fields[FieldKey.PERSON] = (" ".join(run),)
            break

    def _tagged_number(tag_set: frozenset[str], target: FieldKey) -> None:
        for i in range(n):
            if used[i] or toks[i] not in tag_set:
                continue
            used[i] = True
            if i + 1 < n and not used[i + 1] and toks[i + 1].isdigit():
                fields[target] = (toks[i + 1],)
                used[i + 1] = True
            elif i > 0 and not used[i - 1] and toks[i - 1].isdigit():
                fields[target] = (toks[i - 1],)
                used[i - 1] = True
            return

    _tagged_number(lexicon.tags_for(FieldKey.UNIT), FieldKey.UNIT)
    _tagged_number(lexicon.tags_for(FieldKey.FLOOR), FieldKey.FLOOR)
    _tagged_number(lexicon.tags_for(FieldKey.PO_BOX), FieldKey.PO_BOX)

    house_tags = lexicon.tags_for(FieldKey.HOUSE)
    for i in range(n):
        if used[i] or toks[i] not in house_tags:
            continue
        start = i
        while start > 0 and not used[start - 1] and _is_word(toks[start - 1]):
            start -= 1
        fields[FieldKey.HOUSE] = (" ".join(toks[start:i + 1]),)
        for j in range(start, i + 1):
            used[j] = True
        break

    clause = [i for i in range(n) if not used[i]]
    # Street number: the leading-most digit directly followed by a word of
    # the clause, so a stray locator number cannot shadow the real one.
    number_pos = None
    for pos, i in enumerate(clause):
        if toks[i].isdigit():
            if pos + 1 < len(clause) and not toks[clause[pos + 1]].isdigit():
                number_pos = i
                break
    if number_pos is None:
        number_pos = next((i for i in clause if toks[i].isdigit()), None)
    if number_pos is not None:
        fields[FieldKey.STREET_NUMBER] = (toks[number_pos],)
        used[number_pos] = True
        name = [toks[i] for i in clause if i > number_pos]
        if name:
            fields[FieldKey.STREET_NAME] = (" ".join(name),)
            for i in clause:
                if i > number_pos:
                    used[i] = True
    elif clause:
        fields[FieldKey.STREET_NAME] = (" ".join(toks[i] for i in clause),)
        for i in clause:
            used[i] = True

    residue = [toks[i] for i in range(n) if not used[i]]
    if residue:
        fields[FieldKey.ADDRESS] = (" ".join(residue),)
    return AddressRecord(entries=fields, term_mode=rec.term_mode)
