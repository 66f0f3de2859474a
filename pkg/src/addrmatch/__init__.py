"""Address-pair dataset generation and matching-algorithm benchmark toolkit."""

from .model import (
    ALL_FIELD_KEYS,
    AddressRecord,
    AlgorithmConfig,
    Dataset,
    Distance,
    EvalReport,
    FieldKey,
    IngestionError,
    InvalidInputError,
    LabeledPair,
    Split,
    ValidationResult,
    make_record,
    read_jsonl,
    validate_config,
    write_jsonl,
)
from .generator import (
    BaseAddress,
    CityEntry,
    GeneratorConfig,
    build_dataset,
    generate_base_addresses,
    generate_match_pair,
    generate_mismatch_pair,
)
from .pipeline import BUILTIN_ALGORITHMS, Matcher, compile_matcher, match_pair
from .harness import evaluate, evaluate_algorithms

__version__ = "0.1.0"

__all__ = [
    "ALL_FIELD_KEYS",
    "AddressRecord",
    "AlgorithmConfig",
    "BaseAddress",
    "BUILTIN_ALGORITHMS",
    "CityEntry",
    "Dataset",
    "Distance",
    "EvalReport",
    "FieldKey",
    "GeneratorConfig",
    "IngestionError",
    "InvalidInputError",
    "LabeledPair",
    "Matcher",
    "Split",
    "ValidationResult",
    "build_dataset",
    "compile_matcher",
    "evaluate",
    "evaluate_algorithms",
    "generate_base_addresses",
    "generate_match_pair",
    "generate_mismatch_pair",
    "make_record",
    "match_pair",
    "read_jsonl",
    "validate_config",
    "write_jsonl",
]
