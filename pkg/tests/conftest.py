import random
from pathlib import Path

import pytest

from perfect_latin.services.generator_service import generator_service
from perfect_latin.services.rectangle_service import rectangle_service
from perfect_latin.services.registry_service import set_registry

FIXTURES = Path(__file__).parent / "fixtures"

# Worked example: cyclic(5) extended by itself (c=3, s=5), then by cyclic(5)
# relabeled to 10..14 (c=0, s=14). Raw labels, before recanonicalization.
WORKED_T = [
    [0, 1, 2, 4, 3, 6, 7, 8, 9],
    [4, 0, 1, 3, 9, 2, 6, 7, 8],
    [3, 4, 0, 2, 8, 9, 1, 6, 7],
    [2, 3, 4, 1, 7, 8, 9, 0, 6],
    [1, 2, 3, 0, 6, 7, 8, 9, 4],
]

WORKED_T_PRIME = [
    [1, 2, 4, 3, 6, 7, 8, 9, 10, 11, 12, 13, 0],
    [0, 1, 3, 9, 2, 6, 7, 8, 4, 10, 11, 12, 13],
    [4, 0, 2, 8, 9, 1, 6, 7, 13, 3, 10, 11, 12],
    [3, 4, 1, 7, 8, 9, 0, 6, 12, 13, 2, 10, 11],
    [2, 3, 0, 6, 7, 8, 9, 4, 11, 12, 13, 1, 10],
]


@pytest.fixture(autouse=True)
def reset_registry():
    """Each test starts from the settings-backed registry"""
    set_registry(None)
    yield
    set_registry(None)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture
def cyclic5():
    return generator_service.cyclic(5)


@pytest.fixture
def random_isotopy():
    """Apply random row, column and symbol permutations drawn from rng"""

    def apply(rect, rng):
        rows = list(range(rect.rows))
        cols = list(range(rect.cols))
        syms = list(range(rect.cols))
        rng.shuffle(rows)
        rng.shuffle(cols)
        rng.shuffle(syms)
        return rectangle_service.permute(rect, rows, cols, syms)

    return apply
