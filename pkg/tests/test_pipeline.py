import pytest

from addrmatch.model import (
    AlgorithmConfig,
    Distance,
    InvalidInputError,
    make_record,
)
from addrmatch.pipeline import (
    BUILTIN_ALGORITHMS,
    chain_for,
    compile_matcher,
    match_pair,
)

TABLE_ROWS = {
    "plain": (False, False, False, False, False, Distance.SIMPLE),
    "normalized-plain": (True, False, False, False, False, Distance.SIMPLE),
    "tokens-jacquard": (True, False, True, False, False, Distance.JACQUARD),
    "n-grams-jacquard": (True, False, False, True, False, Distance.JACQUARD),
    "levenshtein": (True, False, False, False, False, Distance.LEVENSHTEIN),
    "jaro-winkler": (True, False, False, False, False, Distance.JARO_WINKLER),
    "tfidf": (True, False, False, True, True, Distance.COSINE),
    "segment": (True, True, False, False, False, Distance.SIMPLE),
    "segment-levenshtein": (True, True, False, False, False,
                            Distance.LEVENSHTEIN),
    "segment-jaro-winkler": (True, True, False, False, False,
                             Distance.JARO_WINKLER),
    "segment-tokens-jacquard": (True, True, True, False, False,
                                Distance.JACQUARD),
    "segment-n-grams-jacquard": (True, True, False, True, False,
                                 Distance.JACQUARD),
    "segment-tfidf": (True, True, False, True, True, Distance.COSINE),
}


class TestCatalog:
    def test_thirteen_configurations(self):
        assert set(BUILTIN_ALGORITHMS) == set(TABLE_ROWS)

    def test_feature_flags(self):
        for name, row in TABLE_ROWS.items():
            cfg = BUILTIN_ALGORITHMS[name]
            assert (cfg.normalization, cfg.segmentation, cfg.tokens,
                    cfg.ngrams, cfg.tfidf, cfg.distance) == row, name


class TestCompile:
    def test_plain_chain_empty(self):
        matcher = compile_matcher(BUILTIN_ALGORITHMS["plain"])
        assert matcher.chain == ()
        assert matcher.distance is Distance.SIMPLE

    def test_segment_ngrams_chain(self):
        matcher = compile_matcher(BUILTIN_ALGORITHMS["segment-n-grams-jacquard"])
        assert matcher.chain == ("normalize", "segment", "ngrams")

    def test_chain_order(self):
        cfg = BUILTIN_ALGORITHMS["segment-tfidf"]
        assert chain_for(cfg) == ("normalize", "segment", "ngrams", "tfidf")

    def test_tfidf_without_corpus_rejected(self):
        with pytest.raises(InvalidInputError):
            compile_matcher(BUILTIN_ALGORITHMS["tfidf"])

    def test_corpus_without_tfidf_rejected(self):
        with pytest.raises(InvalidInputError):
            compile_matcher(BUILTIN_ALGORITHMS["plain"], [make_record("X")])

    def test_invalid_config_rejected(self):
        cfg = AlgorithmConfig(name="bad", tokens=True, ngrams=True)
        with pytest.raises(InvalidInputError):
            compile_matcher(cfg)

    def test_tfidf_fit_records_time(self):
        corpus = [make_record("APT 3 123 ABC CT LIMA OH"),
                  make_record("STE 17 123 ABC CT LIMA OH")]
        matcher = compile_matcher(BUILTIN_ALGORITHMS["tfidf"], corpus)
        assert matcher.model is not None
        assert matcher.fit_seconds >= 0.0


class TestMatchPair:
    def test_plain_reflexive(self):
        matcher = compile_matcher(BUILTIN_ALGORITHMS["plain"])
        assert match_pair(matcher, "123 ABC Court", "123 ABC Court")

    def test_plain_misses_abbreviation(self):
        matcher = compile_matcher(BUILTIN_ALGORITHMS["plain"])
        assert not match_pair(matcher, "123 ABC Court", "123 ABC Ct")

    def test_normalized_plain_catches_abbreviation(self):
        matcher = compile_matcher(BUILTIN_ALGORITHMS["normalized-plain"])
        assert match_pair(matcher, "123 ABC Court", "123 ABC Ct")

    def test_segment_levenshtein_rejects_city_redirect(self):
        matcher = compile_matcher(BUILTIN_ALGORITHMS["segment-levenshtein"])
        assert not match_pair(matcher, "APT 3 123 ABC CT LIMA OH",
                              "STE 17 123 ABC CT RENO NV")

    def test_all_algorithms_total_on_generated_pairs(self, small_dataset):
        dataset, _ = small_dataset
        pairs = dataset.pairs[:40]
        corpus = [make_record(p.a1) for p in pairs] + \
                 [make_record(p.a2) for p in pairs]
        for name, cfg in BUILTIN_ALGORITHMS.items():
            matcher = compile_matcher(cfg, corpus if cfg.tfidf else None)
            for pair in pairs:
                result = match_pair(matcher, pair.a1, pair.a2)
                assert isinstance(result, bool), name

    def test_symmetry(self, small_dataset):
        dataset, _ = small_dataset
        pairs = dataset.pairs[:30]
        corpus = [make_record(p.a1) for p in pairs] + \
                 [make_record(p.a2) for p in pairs]
        for name, cfg in BUILTIN_ALGORITHMS.items():
            matcher = compile_matcher(cfg, corpus if cfg.tfidf else None)
            for pair in pairs:
                assert match_pair(matcher, pair.a1, pair.a2) \
                    == match_pair(matcher, pair.a2, pair.a1), name
