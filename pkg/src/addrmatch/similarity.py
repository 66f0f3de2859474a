"""String-distance primitives and record-pair match deciders.

All deciders compare two address records key by key.  A key with an empty
value list on either side counts as matching for that key; this keeps
partially populated records comparable after segmentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import fmean
from typing import Callable, Mapping

from .model import ALL_FIELD_KEYS, AddressRecord, Distance, InvalidInputError

DEFAULT_JACQUARD_THRESHOLD = 0.05
DEFAULT_LEVENSHTEIN_LTV_MIN = 0.2
DEFAULT_LEVENSHTEIN_LTA_MAX = 0.2
DEFAULT_JARO_WINKLER_LTV_MIN = 0.5
DEFAULT_JARO_WINKLER_LTA_MAX = 0.002
DEFAULT_COSINE_THRESHOLD = 0.75

_WINKLER_PREFIX_SCALE = 0.1
_WINKLER_MAX_PREFIX = 4
_WINKLER_BOOST_FLOOR = 0.7


def levenshtein_distance(s1: str, s2: str) -> int:
    """Minimum number of single-character inserts/deletes/substitutions."""
    if s1 == s2:
        return 0
    if not s1:
        return len(s2)
    if not s2:
        return len(s1)
    if len(s2) < len(s1):
        s1, s2 = s2, s1
    previous = list(range(len(s1) + 1))
    for j, c2 in enumerate(s2, start=1):
        current = [j]
        for i, c1 in enumerate(s1, start=1):
            cost = 0 if c1 == c2 else 1
            current.append(min(previous[i] + 1,
                               current[i - 1] + 1,
                               previous[i - 1] + cost))
        previous = current
    return previous[-1]


def _jaro_similarity(s1: str, s2: str) -> float:
    if s1 == s2:
        return 1.0
    len1, len2 = len(s1), len(s2)
    if not len1 or not len2:
        return 0.0
    window = max(len1, len2) // 2 - 1
    if window < 0:
        window = 0
    flags1 = [False] * len1
    flags2 = [False] * len2
    matches = 0
    for i, ch in enumerate(s1):
        lo = i - window if i > window else 0
        hi = min(i + window, len2 - 1)
        for j in range(lo, hi + 1):
            if not flags2[j] and s2[j] == ch:
                flags1[i] = flags2[j] = True
                matches += 1
                break
    if not matches:
        return 0.0
    mismatched = 0
    k = 0
    for i in range(len1):
        if flags1[i]:
            while not flags2[k]:
                k += 1
            if s1[i] != s2[k]:
                mismatched += 1
            k += 1
    transpositions = mismatched // 2
    return (matches / len1 + matches / len2
            + (matches - transpositions) / matches) / 3


def jaro_winkler_distance(s1: str, s2: str) -> float:
    """One minus the Jaro-Winkler similarity.

    The Winkler prefix bonus (scale 0.1 over at most 4 leading characters)
    is applied only when the base Jaro similarity exceeds 0.7, following
    the reference formulation.
    """
    jaro = _jaro_similarity(s1, s2)
    if jaro > _WINKLER_BOOST_FLOOR:
        prefix = 0
        for a, b in zip(s1, s2):
            if a != b or prefix == _WINKLER_MAX_PREFIX:
                break
            prefix += 1
        jaro += prefix * _WINKLER_PREFIX_SCALE * (1.0 - jaro)
    return 1.0 - jaro


@dataclass(frozen=True)
class DeciderParams:
    """Thresholds steering the match deciders.

    jt bounds the per-key Jaccard distance (scaled by the smaller set size);
    ltv_min scales the per-key mean-distance bound by the minimum string
    length of the key's values; lta_max scales the cross-key bound by the
    minimum original address length; cosine_threshold is the similarity
    floor for tf-idf vectors.
    """

    jt: float = DEFAULT_JACQUARD_THRESHOLD
    ltv_min: float = DEFAULT_LEVENSHTEIN_LTV_MIN
    lta_max: float = DEFAULT_LEVENSHTEIN_LTA_MAX
    cosine_threshold: float = DEFAULT_COSINE_THRESHOLD

    def __post_init__(self) -> None:
        for name in ("jt", "ltv_min", "lta_max", "cosine_threshold"):
            if getattr(self, name) < 0:
                raise InvalidInputError(f"{name} must be non-negative")

    @classmethod
    def for_distance(cls, distance: Distance,
                     overrides: Mapping[str, float] | None = None,
                     ) -> "DeciderParams":
        """Built-in defaults for a decider, with per-config overrides."""
        values = {
            "jt": DEFAULT_JACQUARD_THRESHOLD,
            "ltv_min": DEFAULT_LEVENSHTEIN_LTV_MIN,
            "lta_max": DEFAULT_LEVENSHTEIN_LTA_MAX,
            "cosine_threshold": DEFAULT_COSINE_THRESHOLD,
        }
        if distance is Distance.JARO_WINKLER:
            values["ltv_min"] = DEFAULT_JARO_WINKLER_LTV_MIN
            values["lta_max"] = DEFAULT_JARO_WINKLER_LTA_MAX
        for key, value in (overrides or {}).items():
            if key == "JT":
                key = "jt"
            elif key == "LTV_min":
                key = "ltv_min"
            elif key == "LTA_max":
                key = "lta_max"
            if key not in values:
                raise InvalidInputError(f"unknown decider parameter {key!r}")
            values[key] = value
        return cls(**values)


def simple_match(r1: AddressRecord, r2: AddressRecord) -> bool:
    """True when every key's values agree as sets (empty side matches)."""
    for key in ALL_FIELD_KEYS:
        v1 = r1.values(key)
        v2 = r2.values(key)
        if not v1 or not v2:
            continue
        if set(v1) != set(v2):
            return False
    return True


def jaccard_match(r1: AddressRecord, r2: AddressRecord,
                  params: DeciderParams) -> bool:
    """Per-key Jaccard distance below jt scaled by the smaller set size."""
    for key in ALL_FIELD_KEYS:
        v1 = r1.values(key)
        v2 = r2.values(key)
        if not v1 or not v2:
            continue
        s1 = set(v1)
        s2 = set(v2)
        distance = 1.0 - len(s1 & s2) / len(s1 | s2)
        if distance >= params.jt * min(len(s1), len(s2)):
            return False
    return True


def _mean_distance_match(r1: AddressRecord, r2: AddressRecord,
                         params: DeciderParams, original_a1: str,
                         original_a2: str,
                         distance_fn: Callable[[str, str], float]) -> bool:
    """Two-stage mean-distance decision shared by the edit-distance deciders.

    Stage one bounds each key's mean pairwise distance by ltv_min times the
    minimum value length for that key.  Stage two bounds the mean across
    keys by lta_max times the minimum original address length.  Keys that
    are empty on both sides are skipped; a key empty on one side passes
    with a zero mean.
    """
    key_means = []
    for key in ALL_FIELD_KEYS:
        v1 = r1.values(key)
        v2 = r2.values(key)
        if not v1 and not v2:
            continue
        if not v1 or not v2:
            key_means.append(0.0)
            continue
        mu = fmean(distance_fn(s1, s2) for s1 in v1 for s2 in v2)
        min_length = min(len(s) for s in v1 + v2)
        if mu >= params.ltv_min * min_length:
            return False
        key_means.append(mu)
    if not key_means:
        return True
    overall = fmean(key_means)
    min_address_length = min(len(original_a1), len(original_a2))
    return overall < params.lta_max * min_address_length


def levenshtein_match(r1: AddressRecord, r2: AddressRecord,
                      params: DeciderParams, original_a1: str,
                      original_a2: str) -> bool:
    return _mean_distance_match(r1, r2, params, original_a1, original_a2,
                                levenshtein_distance)


def jaro_winkler_match(r1: AddressRecord, r2: AddressRecord,
                       params: DeciderParams, original_a1: str,
                       original_a2: str) -> bool:
    return _mean_distance_match(r1, r2, params, original_a1, original_a2,
                                jaro_winkler_distance)


def _cosine_similarity(weights1: Mapping[str, float],
                       weights2: Mapping[str, float]) -> float | None:
    """Cosine of two sparse weight vectors; None when either has zero norm."""
    norm1 = sum(w * w for w in weights1.values()) ** 0.5
    norm2 = sum(w * w for w in weights2.values()) ** 0.5
    if norm1 == 0.0 or norm2 == 0.0:
        return None
    if len(weights2) < len(weights1):
        weights1, weights2 = weights2, weights1
    dot = sum(w * weights2.get(t, 0.0) for t, w in weights1.items())
    return dot / (norm1 * norm2)


def cosine_match(r1: AddressRecord, r2: AddressRecord,
                 params: DeciderParams) -> bool:
    """Per-key cosine similarity of tf-idf vectors at or above the threshold."""
    for key in ALL_FIELD_KEYS:
        v1 = r1.values(key)
        v2 = r2.values(key)
        if not v1 or not v2:
            continue
        for vec1 in v1:
            for vec2 in v2:
                if vec1.model_id != vec2.model_id:
                    raise InvalidInputError(
                        "cosine decider needs vectors from the same tf-idf model")
                similarity = _cosine_similarity(vec1.weights, vec2.weights)
                if similarity is None:
                    continue
                if similarity < params.cosine_threshold:
                    return False
    return True
