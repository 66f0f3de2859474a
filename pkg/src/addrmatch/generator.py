"""Deterministic synthesis of labeled matching/mismatching address pairs.

Every random decision draws from a single seeded stream in a fixed order,
so a dataset is reproducible byte-for-byte from its seed.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass, field, replace
from enum import Enum
from importlib import resources
from typing import NamedTuple, Sequence

from .model import Dataset, IngestionError, InvalidInputError, LabeledPair, Split
from .wordlists import (
    APARTMENT_PREFIXES,
    FLOOR_PREFIXES,
    NAME_PREFIXES,
    NAME_WORDS,
    STREET_SUFFIXES,
    SUBSTITUTION_GROUPS,
)

BUILDING_NUMBER_RANGE = (1, 9999)
UNIT_NUMBER_RANGE = (1, 999)
FLOOR_NUMBER_RANGE = (1, 99)
REDIRECT_DELTA_RANGE = (1, 10)

# Characters eligible for noisy insertion.  Restricted to uppercase
# alphanumerics so the token structure survives the edit.
INSERTION_ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"

_WORD_TO_GROUP = {w: g for g in SUBSTITUTION_GROUPS for w in g}

# Street-type tokens recognised when locating the street span of a
# generated address (abbreviations plus their substitution partners).
_STREET_TYPE_TOKENS = set(STREET_SUFFIXES) | {"STREET", "ROAD", "AVENUE"}

_PREFIX_WORDS = set(APARTMENT_PREFIXES) | set(FLOOR_PREFIXES) | set(NAME_PREFIXES)


def bundled_path(name: str):
    return resources.files("addrmatch").joinpath("data", name)


class PrefixKind(Enum):
    APARTMENT = "apartment"
    FLOOR = "floor"
    NAME = "name"


PREFIX_WORDS_BY_KIND = {
    PrefixKind.APARTMENT: APARTMENT_PREFIXES,
    PrefixKind.FLOOR: FLOOR_PREFIXES,
    PrefixKind.NAME: NAME_PREFIXES,
}


@dataclass(frozen=True)
class CityEntry:
    city: str
    state: str

    def __post_init__(self) -> None:
        if not self.city or not self.state:
            raise IngestionError("city and state must be non-empty")
        if len(self.state) != 2 or not self.state.isalpha() or not self.state.isupper():
            raise IngestionError(f"state must be 2 uppercase letters: {self.state!r}")


@dataclass(frozen=True)
class BaseAddress:
    building_number: int
    street_name: str
    city: str
    state: str

    def __post_init__(self) -> None:
        if self.building_number < 1:
            raise InvalidInputError("building number must be >= 1")

    @property
    def base_string(self) -> str:
        return f"{self.building_number} {self.street_name} {self.city} {self.state}"


@dataclass(frozen=True)
class GeneratorConfig:
    n_base: int
    seed: int
    city_table_path: str | None = None
    split_ratios: tuple[float, float, float] = (0.8, 0.1, 0.1)

    def __post_init__(self) -> None:
        if self.n_base < 1:
            raise InvalidInputError("n_base must be >= 1")
        if abs(sum(self.split_ratios) - 1.0) > 1e-9:
            raise InvalidInputError("split ratios must sum to 1")


def load_city_table(path: str | None = None) -> tuple[CityEntry, ...]:
    """Load the City,State table (bundled snapshot unless a path is given).

    Rows are uppercased; the (city, state) pairing of each row is preserved
    verbatim so downstream sampling never recombines them.
    """
    try:
        if path is None:
            fh = bundled_path("us_cities.csv").open("r", encoding="utf-8")
        else:
            fh = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise IngestionError(f"cannot open city table: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["City", "State"]:
            raise IngestionError("city table must have header 'City,State'")
        entries = []
        for row in reader:
            if not row:
                continue
            if len(row) != 2:
                raise IngestionError(f"bad city table row: {row!r}")
            entries.append(CityEntry(city=row[0].strip().upper(),
                                     state=row[1].strip().upper()))
    if not entries:
        raise IngestionError("city table is empty")
    return tuple(entries)


_DEFAULT_TABLE: tuple[CityEntry, ...] | None = None


def default_city_table() -> tuple[CityEntry, ...]:
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = load_city_table(None)
    return _DEFAULT_TABLE


class AddressParts(NamedTuple):
    """Token-level decomposition of a generated address string."""

    tokens: list[str]
    number_idx: int       # building number
    street_word_idx: int  # name word of the street
    suffix_idx: int       # street-type token
    tail_start: int       # first city token

    @property
    def prefix_block(self) -> list[str]:
        return self.tokens[: self.number_idx]

    @property
    def tail(self) -> list[str]:
        return self.tokens[self.tail_start:]


def split_address(addr: str) -> AddressParts | None:
    """Locate the structural spans of a generated address.

    Returns None when the grammar is not recognised (callers degrade to
    identity in that case).
    """
    tokens = addr.split()
    for i, tok in enumerate(tokens):
        if tok.upper() in _STREET_TYPE_TOKENS:
            if i < 2:
                return None
            if not tokens[i - 2].isdigit():
                return None
            return AddressParts(tokens=tokens, number_idx=i - 2,
                                street_word_idx=i - 1, suffix_idx=i,
                                tail_start=i + 1)
    return None


def generate_base_addresses(cfg: GeneratorConfig, rng: random.Random,
                            cities: Sequence[CityEntry] | None = None,
                            ) -> list[BaseAddress]:
    """Draw ``cfg.n_base`` base addresses from the word lists and city table."""
    if cities is None:
        cities = load_city_table(cfg.city_table_path)
    bases = []
    for _ in range(cfg.n_base):
        number = rng.randint(*BUILDING_NUMBER_RANGE)
        word = rng.choice(NAME_WORDS)
        suffix = rng.choice(STREET_SUFFIXES)
        entry = rng.choice(cities)
        bases.append(BaseAddress(building_number=number,
                                 street_name=f"{word} {suffix}",
                                 city=entry.city, state=entry.state))
    return bases


def add_prefix(base: BaseAddress, rng: random.Random) -> str:
    """Prepend a randomly chosen sub-building locator or person tag."""
    kind = rng.choice((PrefixKind.APARTMENT, PrefixKind.FLOOR, PrefixKind.NAME))
    word = rng.choice(PREFIX_WORDS_BY_KIND[kind])
    if kind is PrefixKind.APARTMENT:
        detail = str(rng.randint(*UNIT_NUMBER_RANGE))
    elif kind is PrefixKind.FLOOR:
        detail = str(rng.randint(*FLOOR_NUMBER_RANGE))
    else:
        detail = f"{rng.choice(NAME_WORDS)} {rng.choice(NAME_WORDS)}"
    return f"{word} {detail} {base.base_string}"


def word_substitute(addr: str, rng: random.Random) -> str:
    """Swap one word of an equivalence group for another of the same group.

    Identity when no token belongs to a group.
    """
    tokens = addr.split()
    candidates = [i for i, t in enumerate(tokens) if t.upper() in _WORD_TO_GROUP]
    if not candidates:
        return addr
    idx = rng.choice(candidates)
    group = _WORD_TO_GROUP[tokens[idx].upper()]
    alternatives = [w for w in group if w != tokens[idx].upper()]
    tokens[idx] = rng.choice(alternatives)
    return " ".join(tokens)


def word_delete(addr: str, rng: random.Random) -> str:
    """Drop one prefix-block token (locator word or its number).

    Building number, street name and person-name tokens are never removed,
    and neither are the city/state tokens, so the addressed building stays
    recoverable from the string.  Identity when nothing is deletable.
    """
    parts = split_address(addr)
    if parts is None:
        return addr
    deletable = [i for i, tok in enumerate(parts.prefix_block)
                 if tok.upper() in _PREFIX_WORDS or tok.isdigit()]
    if not deletable:
        return addr
    idx = rng.choice(deletable)
    tokens = list(parts.tokens)
    del tokens[idx]
    return " ".join(tokens)


def char_add(addr: str, rng: random.Random) -> str:
    """Insert one alphanumeric character inside the street-name word."""
    parts = split_address(addr)
    if parts is None:
        return addr
    tokens = list(parts.tokens)
    word = tokens[parts.street_word_idx]
    pos = rng.randrange(len(word) + 1)
    ch = rng.choice(INSERTION_ALPHABET)
    tokens[parts.street_word_idx] = word[:pos] + ch + word[pos:]
    return " ".join(tokens)


def char_delete(addr: str, rng: random.Random) -> str:
    """Remove one character from the street-name word.

    Identity when the word is a single character (nothing would remain).
    """
    parts = split_address(addr)
    if parts is None:
        return addr
    tokens = list(parts.tokens)
    word = tokens[parts.street_word_idx]
    if len(word) < 2:
        return addr
    pos = rng.randrange(len(word))
    tokens[parts.street_word_idx] = word[:pos] + word[pos + 1:]
    return " ".join(tokens)


def permute(addr: str) -> str:
    """Move a leading "LOCATOR NUMBER" block to just after the street name.

    Applies only to apartment/floor locators; identity otherwise.
    """
    parts = split_address(addr)
    if parts is None:
        return addr
    block = parts.prefix_block
    if len(block) != 2 or block[0].upper() not in (
            set(APARTMENT_PREFIXES) | set(FLOOR_PREFIXES)) or not block[1].isdigit():
        return addr
    tokens = parts.tokens
    moved = (tokens[2:parts.suffix_idx + 1] + block + tokens[parts.tail_start:])
    return " ".join(moved)


def building_redirect(addr: str, rng: random.Random) -> str:
    """Shift the building number by a nonzero delta, keeping it >= 1."""
    parts = split_address(addr)
    if parts is None:
        return addr
    number = int(parts.tokens[parts.number_idx])
    while True:
        delta = rng.randint(*REDIRECT_DELTA_RANGE)
        sign = rng.choice((-1, 1))
        candidate = number + sign * delta
        if candidate >= 1:
            break
    tokens = list(parts.tokens)
    tokens[parts.number_idx] = str(candidate)
    return " ".join(tokens)


def street_redirect(addr: str, rng: random.Random) -> str:
    """Replace the street name (word plus type) with a fresh distinct one."""
    parts = split_address(addr)
    if parts is None:
        return addr
    old = f"{parts.tokens[parts.street_word_idx]} {parts.tokens[parts.suffix_idx]}".upper()
    while True:
        word = rng.choice(NAME_WORDS)
        suffix = rng.choice(STREET_SUFFIXES)
        if f"{word} {suffix}" != old:
            break
    tokens = list(parts.tokens)
    tokens[parts.street_word_idx] = word
    tokens[parts.suffix_idx] = suffix
    return " ".join(tokens)


def city_redirect(addr: str, rng: random.Random,
                  cities: Sequence[CityEntry] | None = None) -> str:
    """Swap the city/state pair for a different row of the city table."""
    parts = split_address(addr)
    if parts is None:
        return addr
    if cities is None:
        cities = default_city_table()
    old = " ".join(parts.tail).upper()
    while True:
        entry = rng.choice(cities)
        candidate = f"{entry.city} {entry.state}"
        if candidate != old:
            break
    tokens = parts.tokens[: parts.tail_start] + [entry.city, entry.state]
    return " ".join(tokens)


MATCH_OPS = ("word_substitute", "word_delete", "char_add", "char_delete", "permute")
MISMATCH_OPS = ("building_redirect", "street_redirect", "city_redirect", "pool_swap")


@dataclass(frozen=True)
class PairMeta:
    """Generation trace for one pair (used by invariant checks)."""

    base: BaseAddress
    ops: tuple[str, ...]
    transformed_side: int | None = None
    swap_base: BaseAddress | None = None


def _apply_match_op(name: str, addr: str, rng: random.Random) -> str:
    if name == "word_substitute":
        return word_substitute(addr, rng)
    if name == "word_delete":
        return word_delete(addr, rng)
    if name == "char_add":
        return char_add(addr, rng)
    if name == "char_delete":
        return char_delete(addr, rng)
    return permute(addr)


def match_pair_with_meta(base: BaseAddress, rng: random.Random,
                         ) -> tuple[LabeledPair, PairMeta]:
    sides = []
    ops = []
    for _ in range(2):
        addr = add_prefix(base, rng)
        op = rng.choice(MATCH_OPS)
        ops.append(op)
        sides.append(_apply_match_op(op, addr, rng))
    pair = LabeledPair(a1=sides[0], a2=sides[1], label=1, split=Split.TRAIN)
    return pair, PairMeta(base=base, ops=tuple(ops))


def generate_match_pair(base: BaseAddress, rng: random.Random) -> LabeledPair:
    """Two independently prefixed and perturbed views of one base address."""
    return match_pair_with_meta(base, rng)[0]


def mismatch_pair_with_meta(base: BaseAddress, pool: Sequence[BaseAddress],
                            rng: random.Random,
                            cities: Sequence[CityEntry] | None = None,
                            ) -> tuple[LabeledPair, PairMeta]:
    if len(pool) < 2:
        raise InvalidInputError("mismatch generation needs a pool of >= 2 bases")
    sides = [add_prefix(base, rng), add_prefix(base, rng)]
    side = rng.choice((0, 1))
    op = rng.choice(MISMATCH_OPS)
    swap_base = None
    if op == "pool_swap":
        for _ in range(1000):
            other = rng.choice(pool)
            if other != base:
                swap_base = other
                break
        else:
            raise InvalidInputError("pool contains no base distinct from the given one")
        sides[side] = add_prefix(swap_base, rng)
    elif op == "building_redirect":
        sides[side] = building_redirect(sides[side], rng)
    elif op == "street_redirect":
        sides[side] = street_redirect(sides[side], rng)
    else:
        sides[side] = city_redirect(sides[side], rng, cities)
    pair = LabeledPair(a1=sides[0], a2=sides[1], label=0, split=Split.TRAIN)
    meta = PairMeta(base=base, ops=(op,), transformed_side=side,
                    swap_base=swap_base)
    return pair, meta


def generate_mismatch_pair(base: BaseAddress, pool: Sequence[BaseAddress],
                           rng: random.Random) -> LabeledPair:
    """Two prefixed views of one base, one redirected to a different building."""
    return mismatch_pair_with_meta(base, pool, rng)[0]


def build_dataset_with_meta(cfg: GeneratorConfig,
                            ) -> tuple[Dataset, list[PairMeta]]:
    cities = load_city_table(cfg.city_table_path)
    rng = random.Random(cfg.seed)
    bases = generate_base_addresses(cfg, rng, cities)
    items = [match_pair_with_meta(b, rng) for b in bases]
    items += [mismatch_pair_with_meta(b, bases, rng, cities) for b in bases]
    rng.shuffle(items)
    n = len(items)
    n_train = int(n * cfg.split_ratios[0])
    n_valid = int(n * cfg.split_ratios[1])
    pairs = []
    metas = []
    for i, (pair, meta) in enumerate(items):
        if i < n_train:
            split = Split.TRAIN
        elif i < n_train + n_valid:
            split = Split.VALID
        else:
            split = Split.TEST
        pairs.append(replace(pair, split=split))
        metas.append(meta)
    provenance = {
        "n_base": cfg.n_base,
        "seed": cfg.seed,
        "city_table": cfg.city_table_path or "bundled",
        "split_ratios": list(cfg.split_ratios),
    }
    return Dataset(pairs=tuple(pairs), seed=cfg.seed, provenance=provenance), metas


def build_dataset(cfg: GeneratorConfig) -> Dataset:
    """Generate, shuffle and split the full labeled dataset for a config."""
    return build_dataset_with_meta(cfg)[0]
