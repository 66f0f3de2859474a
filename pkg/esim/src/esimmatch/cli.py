"""Command-line interface: train on a pair dataset, evaluate a saved model."""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

import torch

from .data import Vocab, read_pairs, split_pairs
from .evaluate import evaluate_split, write_report
from .model import Hyperparams, MatcherNet
from .train import (
    TrainConfig,
    aggregate_metrics,
    make_word_table,
    train,
    train_many,
    write_history_csv,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="esim-match",
        description="Neural address-pair matcher over labeled JSONL datasets.")
    sub = parser.add_subparsers(dest="command", required=True)

    tr = sub.add_parser("train", help="train on a dataset's train/valid splits")
    tr.add_argument("--data", required=True, help="labeled pair JSONL")
    tr.add_argument("--out", required=True, help="output directory")
    tr.add_argument("--seed", type=int, default=0)
    tr.add_argument("--seeds", default=None,
                    help="comma-separated seed list; reports mean/sd over runs")
    tr.add_argument("--lr", type=float, default=1e-4)
    tr.add_argument("--batch-size", type=int, default=8)
    tr.add_argument("--max-epochs", type=int, default=50)
    tr.add_argument("--patience", type=int, default=4)
    tr.add_argument("--no-char", action="store_true",
                    help="disable the character path (word vectors only)")
    group = tr.add_mutually_exclusive_group(required=True)
    group.add_argument("--word-vectors", default=None,
                       help="token-per-line 300-d vector file")
    group.add_argument("--random-word-init", action="store_true",
                       help="frozen random word vectors (offline runs)")

    ev = sub.add_parser("eval", help="evaluate a saved model on a split")
    ev.add_argument("--model", required=True)
    ev.add_argument("--data", required=True)
    ev.add_argument("--split", default="test",
                    choices=["train", "valid", "test"])
    ev.add_argument("--report", default=None)
    return parser


def save_model(path: str, model: MatcherNet, vocab: Vocab,
               train_seconds: float) -> None:
    torch.save({
        "state_dict": model.state_dict(),
        "word_index": vocab.word_index,
        "char_index": vocab.char_index,
        "hp": dataclasses.asdict(model.hp),
        "train_seconds": train_seconds,
    }, path)


def load_model(path: str) -> tuple[MatcherNet, Vocab, Hyperparams, float]:
    payload = torch.load(path, weights_only=False)
    vocab = Vocab(word_index=payload["word_index"],
                  char_index=payload["char_index"])
    hp = Hyperparams(**payload["hp"])
    model = MatcherNet(vocab, hp, torch.zeros((vocab.n_words, hp.word_dim)))
    model.load_state_dict(payload["state_dict"])
    model.eval()
    return model, vocab, hp, payload["train_seconds"]


def _cmd_train(args: argparse.Namespace) -> int:
    pairs = read_pairs(args.data)
    train_split = split_pairs(pairs, "train")
    valid_split = split_pairs(pairs, "valid")
    test_split = split_pairs(pairs, "test")
    hp = Hyperparams(use_char_embeddings=not args.no_char)
    cfg = TrainConfig(learning_rate=args.lr, batch_size=args.batch_size,
                      max_epochs=args.max_epochs,
                      early_stop_patience=args.patience, seed=args.seed)
    algorithm = "esim" if args.no_char else "esim-char"
    os.makedirs(args.out, exist_ok=True)

    if args.seeds:
        seeds = [int(s) for s in args.seeds.split(",")]
        results = train_many(train_split, valid_split, hp, cfg, seeds,
                             args.word_vectors, vocab_pairs=pairs)
        reports = []
        for seed, result in zip(seeds, results):
            if test_split:
                reports.append(evaluate_split(
                    result.model, result.vocab, hp, test_split, "test",
                    algorithm=algorithm, fit_seconds=result.train_seconds))
            write_history_csv(result.history,
                              os.path.join(args.out, f"history_seed{seed}.csv"))
        summary = {"algorithm": algorithm, "seeds": seeds,
                   "reports": reports}
        if reports:
            summary["aggregate"] = aggregate_metrics(reports)
        with open(os.path.join(args.out, "summary.json"), "w",
                  encoding="utf-8") as fh:
            json.dump(summary, fh, indent=2)
        best = results[0]
        save_model(os.path.join(args.out, "model.pt"), best.model, best.vocab,
                   best.train_seconds)
        if reports:
            agg = summary["aggregate"]
            print(f"{algorithm} over {len(seeds)} seeds: "
                  f"acc {agg['accuracy']['mean']:.3f}"
                  f"({agg['accuracy']['sd']:.3f})")
        return 0

    result = train(train_split, valid_split, hp, cfg, args.word_vectors,
                   vocab_pairs=pairs)
    save_model(os.path.join(args.out, "model.pt"), result.model, result.vocab,
               result.train_seconds)
    history_path = os.path.join(args.out, "history.csv")
    write_history_csv(result.history, history_path)
    from .plots import render_history_figures
    figure_paths = render_history_figures(
        result.history, os.path.join(args.out, "history"))
    last = result.history[-1]
    print(f"trained {len(result.history)} epochs "
          f"(best {result.best_epoch}) in {result.train_seconds:.1f}s; "
          f"valid acc {last['valid_acc']:.3f}")
    if test_split:
        report = evaluate_split(result.model, result.vocab, hp, test_split,
                                "test", algorithm=algorithm,
                                fit_seconds=result.train_seconds)
        write_report(report, os.path.join(args.out, "test_report.json"))
        print(f"test accuracy {report['accuracy']:.3f} "
              f"precision {report['precision']:.3f} "
              f"recall {report['recall']:.3f}")
    for path in figure_paths + [history_path]:
        print(f"wrote {path}")
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    model, vocab, hp, train_seconds = load_model(args.model)
    pairs = split_pairs(read_pairs(args.data), args.split)
    algorithm = "esim-char" if hp.use_char_embeddings else "esim"
    report = evaluate_split(model, vocab, hp, pairs, args.split,
                            algorithm=algorithm, fit_seconds=train_seconds)
    print(json.dumps(report, indent=2))
    if args.report:
        write_report(report, args.report)
    return 0


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        if args.command == "train":
            return _cmd_train(args)
        return _cmd_eval(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
