from __future__ import annotations

from pathlib import Path

import pytest

from markedposets.cli import parse_marked_poset
from markedposets.generate import random_family
from markedposets.marked import new_marked_poset
from markedposets.poset import validate

DATA = Path(__file__).parent / "data"
FAMILY_SEED = 2024


def load(name: str):
    return parse_marked_poset((DATA / name).read_text())


def segment(lo, hi):
    """a < p < b with marks lo, hi."""
    return new_marked_poset(validate("apb", [("a", "p"), ("p", "b")]), "ab", {"a": lo, "b": hi})


@pytest.fixture(scope="session")
def four_marks():
    return load("four_marks.poset")


@pytest.fixture(scope="session")
def small_family():
    return random_family(FAMILY_SEED + 1, 80)
