from __future__ import annotations

import io
from pathlib import Path

import pytest

from lexitax.firstpass import run_first_pass
from lexitax.pipeline import (
    load_bilingual,
    load_dictionary,
    load_net,
    load_wordlist,
)
from lexitax.semnet import parse_semantic_net

FIXTURES = Path(__file__).resolve().parent / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def net():
    return load_net(FIXTURES / "semnet.tsv")


@pytest.fixture(scope="session")
def bilingual():
    return load_bilingual(FIXTURES / "bilingual.tsv")


@pytest.fixture(scope="session")
def stopwords():
    return load_wordlist(FIXTURES / "stopwords.txt")


@pytest.fixture(scope="session")
def dictionary():
    return load_dictionary(FIXTURES / "dictionary.jsonl", FIXTURES / "stopwords.txt")


@pytest.fixture(scope="session")
def mini_dictionary():
    return load_dictionary(FIXTURES / "mini.jsonl", FIXTURES / "stopwords.txt")


@pytest.fixture(scope="session")
def first_pass(dictionary, net, bilingual):
    return run_first_pass(dictionary, net, bilingual)


@pytest.fixture()
def four_node_net():
    """R is a root; A and C hang under R, B under A.  Depths 1/2/3/2."""
    text = "R\t03 tops\tr\t\nA\t13 food\ta\tR\nB\t13 food\tb\tA\nC\t05 animal\tc\tR\n"
    return parse_semantic_net(io.StringIO(text))
