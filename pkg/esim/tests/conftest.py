import subprocess

import pytest
import torch

from esimmatch.data import read_pairs

torch.set_num_threads(1)


def generate_dataset(path, n_base: int, seed: int) -> None:
    """Produce a labeled pair dataset through the generator CLI contract."""
    subprocess.run(
        ["addrmatch", "generate", "--n-base", str(n_base), "--seed", str(seed),
         "--out", str(path)],
        check=True, capture_output=True)


@pytest.fixture(scope="session")
def small_pairs(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "small.jsonl"
    generate_dataset(path, n_base=200, seed=3)
    return read_pairs(str(path))
