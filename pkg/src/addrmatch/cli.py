"""Command-line interface: dataset generation, evaluation and one-off matching."""

from __future__ import annotations

import argparse
import os
import sys

from .generator import GeneratorConfig, build_dataset
from .harness import (
    evaluate_algorithms,
    split_records,
    write_report_csv,
    write_report_json,
)
from .model import (
    IngestionError,
    InvalidInputError,
    Split,
    make_record,
    read_jsonl,
    write_jsonl,
)
from .pipeline import BUILTIN_ALGORITHMS, compile_matcher, match_pair

USAGE_ERROR = 2
RUNTIME_ERROR = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="addrmatch",
        description="Generate labeled address pairs and benchmark matchers.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a labeled pair dataset")
    gen.add_argument("--n-base", type=int, default=10000,
                     help="number of base addresses (default 10000)")
    gen.add_argument("--seed", type=int, default=42, help="generation seed")
    gen.add_argument("--cities", default=None,
                     help="City,State CSV (default: bundled snapshot)")
    gen.add_argument("--out", required=True, help="output JSONL path")

    ev = sub.add_parser("eval", help="evaluate matching algorithms")
    ev.add_argument("--data", required=True, help="dataset JSONL path")
    ev.add_argument("--algorithm", required=True,
                    help="algorithm name or 'all'")
    ev.add_argument("--split", default="test",
                    choices=[s.value for s in Split])
    ev.add_argument("--report", default=None,
                    help="write report JSON here (plus CSV and figures)")
    ev.add_argument("--parallelism", type=int, default=1)
    ev.add_argument("--no-figures", action="store_true",
                    help="skip figure rendering next to the report")

    mt = sub.add_parser("match", help="match one address pair")
    mt.add_argument("--a1", required=True)
    mt.add_argument("--a2", required=True)
    mt.add_argument("--algorithm", required=True)
    return parser


def _unknown_algorithm(name: str) -> int:
    valid = ", ".join(BUILTIN_ALGORITHMS)
    print(f"unknown algorithm {name!r}; valid names: {valid}", file=sys.stderr)
    return USAGE_ERROR


def _cmd_generate(args: argparse.Namespace) -> int:
    cfg = GeneratorConfig(n_base=args.n_base, seed=args.seed,
                          city_table_path=args.cities)
    dataset = build_dataset(cfg)
    write_jsonl(dataset, args.out)
    counts = {s.value: len(dataset.split_pairs(s)) for s in Split}
    print(f"wrote {len(dataset.pairs)} pairs to {args.out} "
          f"(train {counts['train']}, valid {counts['valid']}, "
          f"test {counts['test']})")
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    if args.algorithm == "all":
        names = list(BUILTIN_ALGORITHMS)
    elif args.algorithm in BUILTIN_ALGORITHMS:
        names = [args.algorithm]
    else:
        return _unknown_algorithm(args.algorithm)
    dataset = read_jsonl(args.data)
    reports = evaluate_algorithms(dataset, names, Split(args.split),
                                  parallelism=args.parallelism)
    header = (f"{'algorithm':<28} {'prec':>6} {'rec':>6} {'acc':>6} "
              f"{'time(s)':>8}")
    print(header)
    for r in reports:
        print(f"{r.algorithm_name:<28} {r.precision:>6.2f} {r.recall:>6.2f} "
              f"{r.accuracy:>6.2f} {r.elapsed_seconds:>8.2f}")
    if args.report:
        write_report_json(reports, args.report, as_array=args.algorithm == "all")
        stem = os.path.splitext(args.report)[0]
        write_report_csv(reports, stem + ".csv")
        if not args.no_figures:
            from .plots import render_report_figures
            for path in render_report_figures(reports, stem):
                print(f"wrote {path}")
        print(f"wrote {args.report} and {stem}.csv")
    return 0


def _cmd_match(args: argparse.Namespace) -> int:
    if args.algorithm not in BUILTIN_ALGORITHMS:
        return _unknown_algorithm(args.algorithm)
    cfg = BUILTIN_ALGORITHMS[args.algorithm]
    # For tf-idf configs a one-off match fits on the two inputs themselves.
    corpus = [make_record(args.a1), make_record(args.a2)] if cfg.tfidf else None
    matcher = compile_matcher(cfg, corpus)
    print("MATCH" if match_pair(matcher, args.a1, args.a2) else "NO-MATCH")
    return 0


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        if args.command == "generate":
            return _cmd_generate(args)
        if args.command == "eval":
            return _cmd_eval(args)
        return _cmd_match(args)
    except (InvalidInputError, IngestionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return RUNTIME_ERROR


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
