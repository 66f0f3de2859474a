"""Evaluation harness: runs matchers over dataset splits and reports the
confusion counts, derived metrics and wall time."""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .model import (
    AddressRecord,
    Dataset,
    EvalReport,
    InvalidInputError,
    LabeledPair,
    Split,
    make_record,
)
from .pipeline import BUILTIN_ALGORITHMS, Matcher, compile_matcher, match_pair


def _count_chunk(matcher: Matcher,
                 chunk: Sequence[tuple[str, str, int]]) -> tuple[int, int, int, int]:
    tp = fp = tn = fn = 0
    for a1, a2, label in chunk:
        predicted = match_pair(matcher, a1, a2)
        if predicted and label == 1:
            tp += 1
        elif predicted and label == 0:
            fp += 1
        elif not predicted and label == 0:
            tn += 1
        else:
            fn += 1
    return tp, fp, tn, fn


def evaluate(matcher: Matcher, pairs: Sequence[LabeledPair],
             split: str | None = None, parallelism: int = 1) -> EvalReport:
    """Score a matcher against labeled pairs.

    Wall time covers only the prediction loop; tf-idf fitting time is
    carried over from compilation and reported separately.  Counts are
    merged order-independently, so parallel evaluation stays deterministic.
    """
    if not pairs:
        raise InvalidInputError("cannot evaluate on an empty pair list")
    if split is None:
        splits = {p.split for p in pairs}
        split = splits.pop().value if len(splits) == 1 else "mixed"
    items = [(p.a1, p.a2, p.label) for p in pairs]
    start = time.perf_counter()
    if parallelism > 1:
        size = (len(items) + parallelism - 1) // parallelism
        chunks = [items[i:i + size] for i in range(0, len(items), size)]
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(_count_chunk, [matcher] * len(chunks), chunks))
        tp = sum(r[0] for r in results)
        fp = sum(r[1] for r in results)
        tn = sum(r[2] for r in results)
        fn = sum(r[3] for r in results)
    else:
        tp, fp, tn, fn = _count_chunk(matcher, items)
    elapsed = time.perf_counter() - start
    return EvalReport.from_counts(algorithm_name=matcher.name, split=split,
                                  tp=tp, fp=fp, tn=tn, fn=fn,
                                  elapsed_seconds=elapsed,
                                  fit_seconds=matcher.fit_seconds,
                                  parallelism=parallelism)


def split_records(pairs: Sequence[LabeledPair]) -> list[AddressRecord]:
    """Raw records for both sides of every pair (tf-idf fit corpus)."""
    records = []
    for p in pairs:
        records.append(make_record(p.a1))
        records.append(make_record(p.a2))
    return records


def evaluate_algorithms(dataset: Dataset, names: Sequence[str], split: Split,
                        parallelism: int = 1) -> list[EvalReport]:
    """Compile and evaluate each named built-in algorithm on one split."""
    pairs = dataset.split_pairs(split)
    if not pairs:
        raise InvalidInputError(f"dataset has no pairs in split {split.value!r}")
    reports = []
    for name in names:
        cfg = BUILTIN_ALGORITHMS[name]
        corpus = split_records(pairs) if cfg.tfidf else None
        matcher = compile_matcher(cfg, corpus)
        reports.append(evaluate(matcher, pairs, split=split.value,
                                parallelism=parallelism))
    return reports


def write_report_json(reports: Sequence[EvalReport], path: str,
                      as_array: bool) -> None:
    payload = [r.to_json_dict() for r in reports]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload if as_array else payload[0], fh, indent=2)
        fh.write("\n")


def read_report_json(path: str) -> list[EvalReport]:
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    if isinstance(payload, dict):
        payload = [payload]
    return [EvalReport.from_json_dict(obj) for obj in payload]


REPORT_CSV_COLUMNS = ("algorithm", "split", "tp", "fp", "tn", "fn",
                      "precision", "recall", "accuracy", "elapsed_seconds",
                      "fit_seconds")


def write_report_csv(reports: Sequence[EvalReport], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(REPORT_CSV_COLUMNS)
        for r in reports:
            obj = r.to_json_dict()
            writer.writerow([obj[c] for c in REPORT_CSV_COLUMNS])
