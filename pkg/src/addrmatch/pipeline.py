"""Compilation of algorithm configurations into executable matchers, plus
the built-in catalog of thirteen baseline configurations."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

from .model import (
    AlgorithmConfig,
    AddressRecord,
    Distance,
    InvalidInputError,
    make_record,
    validate_config,
)
from .represent import (
    TfidfModel,
    ngrams,
    normalize,
    segment,
    tfidf_fit,
    tfidf_vectorize,
    tokens,
)
from .similarity import (
    DeciderParams,
    cosine_match,
    jaccard_match,
    jaro_winkler_match,
    levenshtein_match,
    simple_match,
)


def _cfg(name: str, norm: bool = False, seg: bool = False, tok: bool = False,
         ng: bool = False, tfidf: bool = False,
         distance: Distance = Distance.SIMPLE) -> AlgorithmConfig:
    return AlgorithmConfig(name=name, normalization=norm, segmentation=seg,
                           tokens=tok, ngrams=ng, tfidf=tfidf,
                           distance=distance)


BUILTIN_ALGORITHMS: dict[str, AlgorithmConfig] = {
    cfg.name: cfg for cfg in (
        _cfg("plain"),
        _cfg("normalized-plain", norm=True),
        _cfg("tokens-jacquard", norm=True, tok=True,
             distance=Distance.JACQUARD),
        _cfg("n-grams-jacquard", norm=True, ng=True,
             distance=Distance.JACQUARD),
        _cfg("levenshtein", norm=True, distance=Distance.LEVENSHTEIN),
        _cfg("jaro-winkler", norm=True, distance=Distance.JARO_WINKLER),
        _cfg("tfidf", norm=True, ng=True, tfidf=True,
             distance=Distance.COSINE),
        _cfg("segment", norm=True, seg=True),
        _cfg("segment-levenshtein", norm=True, seg=True,
             distance=Distance.LEVENSHTEIN),
        _cfg("segment-jaro-winkler", norm=True, seg=True,
             distance=Distance.JARO_WINKLER),
        _cfg("segment-tokens-jacquard", norm=True, seg=True, tok=True,
             distance=Distance.JACQUARD),
        _cfg("segment-n-grams-jacquard", norm=True, seg=True, ng=True,
             distance=Distance.JACQUARD),
        _cfg("segment-tfidf", norm=True, seg=True, ng=True, tfidf=True,
             distance=Distance.COSINE),
    )
}


def chain_for(cfg: AlgorithmConfig) -> tuple[str, ...]:
    """Representation steps implied by a config, in their legal order."""
    chain = []
    if cfg.normalization:
        chain.append("normalize")
    if cfg.segmentation:
        chain.append("segment")
    if cfg.tokens:
        chain.append("tokens")
    if cfg.ngrams:
        chain.append("ngrams")
    if cfg.tfidf:
        chain.append("tfidf")
    return tuple(chain)


@dataclass(frozen=True)
class Matcher:
    """A compiled, immutable matcher: representation chain plus decider."""

    name: str
    chain: tuple[str, ...]
    distance: Distance
    params: DeciderParams
    model: TfidfModel | None = None
    fit_seconds: float = 0.0


def _apply_chain(chain: Sequence[str], rec: AddressRecord,
                 model: TfidfModel | None) -> AddressRecord:
    for step in chain:
        if step == "normalize":
            rec = normalize(rec)
        elif step == "segment":
            rec = segment(rec)
        elif step == "tokens":
            rec = tokens(rec)
        elif step == "ngrams":
            rec = ngrams(rec)
        elif step == "tfidf":
            rec = tfidf_vectorize(rec, model)
        else:
            raise InvalidInputError(f"unknown chain step {step!r}")
    return rec


def compile_matcher(cfg: AlgorithmConfig,
                    fit_corpus: Sequence[AddressRecord] | None = None,
                    ) -> Matcher:
    """Turn a validated config into a matcher, fitting tf-idf if needed.

    The fit corpus is given as raw records; the matcher's own pre-tf-idf
    chain is applied to them so the fitted term space matches what the
    decider will see.
    """
    result = validate_config(cfg)
    if not result.ok:
        raise InvalidInputError(f"invalid algorithm config: {result.reason}")
    chain = chain_for(cfg)
    params = DeciderParams.for_distance(cfg.distance, cfg.thresholds)
    model = None
    fit_seconds = 0.0
    if cfg.tfidf:
        if fit_corpus is None:
            raise InvalidInputError(
                "tf-idf configs need a fit corpus at compile time")
        start = time.perf_counter()
        pre_chain = chain[:-1]
        transformed = [_apply_chain(pre_chain, rec, None) for rec in fit_corpus]
        model = tfidf_fit(transformed)
        fit_seconds = time.perf_counter() - start
    elif fit_corpus is not None:
        raise InvalidInputError("fit corpus only applies to tf-idf configs")
    return Matcher(name=cfg.name, chain=chain, distance=cfg.distance,
                   params=params, model=model, fit_seconds=fit_seconds)


def match_pair(matcher: Matcher, a1: str, a2: str) -> bool:
    """Apply the matcher's chain to both sides and run its decider."""
    r1 = _apply_chain(matcher.chain, make_record(a1), matcher.model)
    r2 = _apply_chain(matcher.chain, make_record(a2), matcher.model)
    if matcher.distance is Distance.SIMPLE:
        return simple_match(r1, r2)
    if matcher.distance is Distance.JACQUARD:
        return jaccard_match(r1, r2, matcher.params)
    if matcher.distance is Distance.LEVENSHTEIN:
        return levenshtein_match(r1, r2, matcher.params, a1, a2)
    if matcher.distance is Distance.JARO_WINKLER:
        return jaro_winkler_match(r1, r2, matcher.params, a1, a2)
    return cosine_match(r1, r2, matcher.params)
