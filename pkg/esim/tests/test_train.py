import pytest
import torch

from esimmatch.data import split_pairs
from esimmatch.evaluate import evaluate_split
from esimmatch.model import Hyperparams, word_table_checksum
from esimmatch.train import (
    HISTORY_COLUMNS,
    TrainConfig,
    aggregate_metrics,
    train,
    write_history_csv,
)

FAST = Hyperparams(char_hidden=16, hidden_dim=32, dense_dim=32)


class TestTrainLoop:
    def test_halts_within_max_epochs(self, small_pairs):
        tr = split_pairs(small_pairs, "train")[:48]
        va = split_pairs(small_pairs, "valid")[:16]
        result = train(tr, va, FAST, TrainConfig(max_epochs=6, seed=1))
        assert 1 <= len(result.history) <= 6

    def test_early_stopping_restores_best(self, small_pairs):
        tr = split_pairs(small_pairs, "train")[:48]
        va = split_pairs(small_pairs, "valid")[:16]
        cfg = TrainConfig(max_epochs=30, early_stop_patience=2, seed=1)
        result = train(tr, va, FAST, cfg)
        losses = [row["valid_loss"] for row in result.history]
        assert result.best_epoch == losses.index(min(losses)) + 1
        if len(result.history) < 30:
            # stopped early: the tail holds exactly patience non-improving epochs
            assert len(result.history) == result.best_epoch + 2

    def test_word_table_frozen(self, small_pairs):
        tr = split_pairs(small_pairs, "train")[:32]
        result = train(tr, tr, FAST, TrainConfig(max_epochs=3, seed=2))
        model = result.model
        before = word_table_checksum(model)
        assert not model.word_embedding.weight.requires_grad
        more = train(tr, tr, FAST, TrainConfig(max_epochs=3, seed=2))
        assert word_table_checksum(more.model) == before

    def test_deterministic_given_seed(self, small_pairs):
        tr = split_pairs(small_pairs, "train")[:32]
        va = split_pairs(small_pairs, "valid")[:16]
        first = train(tr, va, FAST, TrainConfig(max_epochs=3, seed=5))
        second = train(tr, va, FAST, TrainConfig(max_epochs=3, seed=5))
        assert first.history == second.history

    def test_loss_decreases_over_first_steps(self, small_pairs):
        # One fixed batch, five optimizer steps at the default rate.
        tr = split_pairs(small_pairs, "train")[:8]
        result = train(tr, tr, FAST,
                       TrainConfig(max_epochs=5, early_stop_patience=50,
                                   seed=3))
        losses = [row["train_loss"] for row in result.history]
        assert losses[-1] < losses[0]

    def test_empty_split_rejected(self, small_pairs):
        tr = split_pairs(small_pairs, "train")[:8]
        with pytest.raises(ValueError):
            train([], tr, FAST, TrainConfig())
        with pytest.raises(ValueError):
            train(tr, [], FAST, TrainConfig())

    def test_history_columns(self, small_pairs, tmp_path):
        tr = split_pairs(small_pairs, "train")[:16]
        result = train(tr, tr, FAST, TrainConfig(max_epochs=2, seed=1))
        path = tmp_path / "history.csv"
        write_history_csv(result.history, str(path))
        lines = path.read_text().strip().splitlines()
        assert lines[0] == ",".join(HISTORY_COLUMNS)
        assert len(lines) == len(result.history) + 1


class TestEvaluateSplit:
    def test_report_schema_matches_baseline_harness(self, small_pairs):
        tr = split_pairs(small_pairs, "train")[:32]
        te = split_pairs(small_pairs, "test")[:16]
        result = train(tr, tr, FAST, TrainConfig(max_epochs=2, seed=1))
        report = evaluate_split(result.model, result.vocab, FAST, te, "test",
                                fit_seconds=result.train_seconds)
        assert set(report) == {"algorithm", "split", "tp", "fp", "tn", "fn",
                               "precision", "recall", "accuracy",
                               "elapsed_seconds", "fit_seconds", "flags",
                               "parallelism"}
        assert report["tp"] + report["fp"] + report["tn"] + report["fn"] \
            == len(te)
        assert report["fit_seconds"] == result.train_seconds

    def test_empty_split_rejected(self, small_pairs):
        tr = split_pairs(small_pairs, "train")[:16]
        result = train(tr, tr, FAST, TrainConfig(max_epochs=1, seed=1))
        with pytest.raises(ValueError):
            evaluate_split(result.model, result.vocab, FAST, [], "test")


class TestAggregate:
    def test_mean_and_sd(self):
        reports = [
            {"precision": 0.9, "recall": 0.8, "accuracy": 0.85,
             "elapsed_seconds": 1.0, "fit_seconds": 10.0},
            {"precision": 0.7, "recall": 0.6, "accuracy": 0.65,
             "elapsed_seconds": 2.0, "fit_seconds": 20.0},
        ]
        agg = aggregate_metrics(reports)
        assert agg["accuracy"]["mean"] == pytest.approx(0.75)
        assert agg["accuracy"]["sd"] == pytest.approx(0.1)

    def test_single_report_zero_sd(self):
        agg = aggregate_metrics([{"precision": 1.0, "recall": 1.0,
                                  "accuracy": 1.0, "elapsed_seconds": 0.1,
                                  "fit_seconds": 1.0}])
        assert agg["precision"]["sd"] == 0.0
