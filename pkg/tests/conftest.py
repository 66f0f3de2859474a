import random

import pytest

from addrmatch.generator import GeneratorConfig, build_dataset_with_meta
from addrmatch.model import AddressRecord, FieldKey


def record(**kwargs) -> AddressRecord:
    """Build a record from FieldKey-name keyword arguments holding lists."""
    term_mode = kwargs.pop("term_mode", None)
    entries = {FieldKey(name): tuple(values) for name, values in kwargs.items()}
    return AddressRecord(entries=entries, term_mode=term_mode)


@pytest.fixture(scope="session")
def small_dataset():
    """A 300-base dataset with generation metadata, shared across tests."""
    dataset, metas = build_dataset_with_meta(GeneratorConfig(n_base=300, seed=1234))
    return dataset, metas


@pytest.fixture(scope="session")
def sample_addresses(small_dataset):
    dataset, _ = small_dataset
    out = []
    for pair in dataset.pairs[:250]:
        out.append(pair.a1)
        out.append(pair.a2)
    return out


@pytest.fixture()
def rng():
    return random.Random(99)
