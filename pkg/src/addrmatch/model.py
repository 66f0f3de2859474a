"""Shared data model: address records, labeled pairs, datasets, algorithm
configurations and evaluation reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Mapping


class InvalidInputError(ValueError):
    """An operation received input that violates its preconditions."""


class IngestionError(RuntimeError):
    """A bundled or user-supplied data file could not be loaded."""


class FieldKey(str, Enum):
    """The closed set of keys an address record may carry."""

    ADDRESS = "Address"
    PERSON = "Person"
    UNIT = "Unit"
    FLOOR = "Floor"
    HOUSE = "House"
    AREA_DISTRICT = "AreaDistrict"
    PO_BOX = "POBox"
    STREET = "Street"
    STREET_NUMBER = "StreetNumber"
    STREET_NAME = "StreetName"
    POST_CODE = "PostCode"
    CITY = "City"
    COUNTY_STATE = "CountyState"
    COUNTRY = "Country"


ALL_FIELD_KEYS: tuple[FieldKey, ...] = tuple(FieldKey)


class Split(str, Enum):
    TRAIN = "train"
    VALID = "valid"
    TEST = "test"


class Distance(str, Enum):
    SIMPLE = "simple"
    JACQUARD = "jacquard"
    LEVENSHTEIN = "levenshtein"
    JARO_WINKLER = "jaro_winkler"
    COSINE = "cosine"


@dataclass(frozen=True)
class AddressRecord:
    """An address at any stage of representation change.

    ``entries`` maps field keys to value tuples.  Values are strings until
    tf-idf vectorization replaces them with weighted term vectors.  Absent
    keys mean empty value lists; keys are never mapped to None.
    ``term_mode`` records whether values have been split into tokens or
    character n-grams (None while values are whole strings).
    """

    entries: Mapping[FieldKey, tuple]
    term_mode: str | None = None

    def values(self, key: FieldKey) -> tuple:
        return self.entries.get(key, ())

    def populated_keys(self) -> tuple[FieldKey, ...]:
        return tuple(k for k in ALL_FIELD_KEYS if self.entries.get(k))


def make_record(raw: str) -> AddressRecord:
    """Wrap a raw address string into a fresh single-key record."""
    if not raw:
        raise InvalidInputError("address string must be non-empty")
    return AddressRecord(entries={FieldKey.ADDRESS: (raw,)})


@dataclass(frozen=True)
class LabeledPair:
    a1: str
    a2: str
    label: int
    split: Split

    def __post_init__(self) -> None:
        if not self.a1 or not self.a2:
            raise InvalidInputError("pair addresses must be non-empty")
        if self.label not in (0, 1):
            raise InvalidInputError(f"label must be 0 or 1, got {self.label!r}")


@dataclass(frozen=True)
class Dataset:
    """An ordered collection of labeled pairs plus its generation settings."""

    pairs: tuple[LabeledPair, ...]
    seed: int
    provenance: Mapping[str, object] = field(default_factory=dict)

    def split_pairs(self, split: Split) -> tuple[LabeledPair, ...]:
        return tuple(p for p in self.pairs if p.split is split)


def pair_to_json(pair: LabeledPair) -> str:
    # Field order is part of the file contract: a1, a2, label, split.
    return json.dumps(
        {"a1": pair.a1, "a2": pair.a2, "label": pair.label,
         "split": pair.split.value}
    )


def pair_from_json(line: str) -> LabeledPair:
    try:
        obj = json.loads(line)
        return LabeledPair(a1=obj["a1"], a2=obj["a2"], label=obj["label"],
                           split=Split(obj["split"]))
    except (KeyError, ValueError, TypeError) as exc:
        raise InvalidInputError(f"bad dataset line: {line!r}") from exc


def write_jsonl(dataset: Dataset, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for pair in dataset.pairs:
            fh.write(pair_to_json(pair))
            fh.write("\n")


def read_jsonl(path: str, seed: int = 0) -> Dataset:
    pairs = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                pairs.append(pair_from_json(line))
    return Dataset(pairs=tuple(pairs), seed=seed)


@dataclass(frozen=True)
class AlgorithmConfig:
    """Six-feature description of a baseline matching algorithm."""

    name: str
    normalization: bool = False
    segmentation: bool = False
    tokens: bool = False
    ngrams: bool = False
    tfidf: bool = False
    distance: Distance = Distance.SIMPLE
    thresholds: Mapping[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    reason: str | None = None


def validate_config(cfg: AlgorithmConfig) -> ValidationResult:
    """Check an algorithm configuration against the chaining constraints.

    Rejection is a value naming the violated constraint, never an exception.
    """
    if cfg.tokens and cfg.ngrams:
        return ValidationResult(False, "tokens and n-grams are exclusive")
    if cfg.tfidf and not (cfg.tokens or cfg.ngrams):
        return ValidationResult(False, "tf-idf requires tokens or n-grams")
    if cfg.tfidf and cfg.distance is not Distance.COSINE:
        return ValidationResult(False, "tf-idf requires cosine")
    if cfg.distance is Distance.COSINE and not cfg.tfidf:
        return ValidationResult(False, "cosine requires tf-idf")
    return ValidationResult(True)


PRECISION_ZERO_DENOMINATOR = "precision_zero_denominator"
RECALL_ZERO_DENOMINATOR = "recall_zero_denominator"


@dataclass(frozen=True)
class EvalReport:
    """Confusion counts and derived metrics for one algorithm on one split."""

    algorithm_name: str
    split: str
    tp: int
    fp: int
    tn: int
    fn: int
    precision: float
    recall: float
    accuracy: float
    elapsed_seconds: float
    fit_seconds: float = 0.0
    flags: tuple[str, ...] = ()
    parallelism: int = 1

    @classmethod
    def from_counts(cls, algorithm_name: str, split: str, tp: int, fp: int,
                    tn: int, fn: int, elapsed_seconds: float,
                    fit_seconds: float = 0.0, parallelism: int = 1,
                    ) -> "EvalReport":
        """Derive metrics from confusion counts.

        A zero denominator yields 1.0 by convention and is flagged, so that
        degenerate classifiers never propagate NaN into comparisons.
        """
        total = tp + fp + tn + fn
        flags = []
        if tp + fp > 0:
            precision = tp / (tp + fp)
        else:
            precision = 1.0
            flags.append(PRECISION_ZERO_DENOMINATOR)
        if tp + fn > 0:
            recall = tp / (tp + fn)
        else:
            recall = 1.0
            flags.append(RECALL_ZERO_DENOMINATOR)
        accuracy = (tp + tn) / total if total else 0.0
        return cls(algorithm_name=algorithm_name, split=split, tp=tp, fp=fp,
                   tn=tn, fn=fn, precision=precision, recall=recall,
                   accuracy=accuracy, elapsed_seconds=elapsed_seconds,
                   fit_seconds=fit_seconds, flags=tuple(flags),
                   parallelism=parallelism)

    def to_json_dict(self) -> dict:
        return {
            "algorithm": self.algorithm_name,
            "split": self.split,
            "tp": self.tp,
            "fp": self.fp,
            "tn": self.tn,
            "fn": self.fn,
            "precision": self.precision,
            "recall": self.recall,
            "accuracy": self.accuracy,
            "elapsed_seconds": self.elapsed_seconds,
            "fit_seconds": self.fit_seconds,
            "flags": list(self.flags),
            "parallelism": self.parallelism,
        }

    @classmethod
    def from_json_dict(cls, obj: Mapping) -> "EvalReport":
        return cls(algorithm_name=obj["algorithm"], split=obj["split"],
                   tp=obj["tp"], fp=obj["fp"], tn=obj["tn"], fn=obj["fn"],
                   precision=obj["precision"], recall=obj["recall"],
                   accuracy=obj["accuracy"],
                   elapsed_seconds=obj["elapsed_seconds"],
                   fit_seconds=obj.get("fit_seconds", 0.0),
                   flags=tuple(obj.get("flags", ())),
                   parallelism=obj.get("parallelism", 1))
