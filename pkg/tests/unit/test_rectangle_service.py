import itertools

import numpy as np
import pytest

from perfect_latin.core.exceptions import (
    DimensionError,
    GridShapeError,
    InvalidPermutationError,
    LatinViolationError,
)
from perfect_latin.models.rectangle import LatinRectangle, ViolationKind
from perfect_latin.services.generator_service import generator_service
from perfect_latin.services.perfection_service import perfection_service
from perfect_latin.services.rectangle_service import rectangle_service

pytestmark = pytest.mark.unit


def naive_is_latin(grid):
    n = len(grid[0])
    rows_ok = all(sorted(r) == list(range(n)) for r in grid)
    cols_ok = all(len({r[c] for r in grid}) == len(grid) for c in range(n))
    return rows_ok and cols_ok


def test_validate_accepts_worked_example(cyclic5):
    """Test the 5x5 cyclic square is a valid Latin square"""
    report = rectangle_service.validate(cyclic5.to_lists())
    assert report.valid
    assert report.violations == []
    assert (report.rows, report.cols) == (5, 5)


def test_validate_repeated_symbol_in_row():
    report = rectangle_service.validate([[0, 0]])
    assert not report.valid
    assert [(v.kind, v.row) for v in report.violations] == [(ViolationKind.ROW_NOT_PERMUTATION, 0)]
    assert report.violations[0].column == 1


def test_validate_duplicated_row_repeats_every_column():
    report = rectangle_service.validate([[0, 1], [0, 1]])
    assert not report.valid
    repeats = [v for v in report.violations if v.kind == ViolationKind.COLUMN_REPEAT]
    assert sorted(v.column for v in repeats) == [0, 1]
    assert all(v.row == 1 for v in repeats)


def test_validate_symbol_out_of_range():
    report = rectangle_service.validate([[0, 5]])
    kinds = {v.kind for v in report.violations}
    assert ViolationKind.SYMBOL_OUT_OF_RANGE in kinds
    assert ViolationKind.ROW_NOT_PERMUTATION in kinds


@pytest.mark.parametrize("grid", [[[0, 1], [1]], [], [[]], [[0, "1"]], [[True, False]], [[0, 10**20]]])
def test_validate_rejects_malformed_grids(grid):
    """Test structural problems raise instead of producing a report"""
    with pytest.raises(GridShapeError):
        rectangle_service.validate(grid)


@pytest.mark.parametrize("m,n,alphabet", [(2, 2, 3), (3, 3, 3), (2, 3, 3)])
def test_validate_matches_naive_oracle(m, n, alphabet):
    """Test validate against a double-loop check on every small grid"""
    for cells in itertools.product(range(alphabet), repeat=m * n):
        grid = [list(cells[a * n:(a + 1) * n]) for a in range(m)]
        assert rectangle_service.validate(grid).valid == naive_is_latin(grid), grid


def test_from_rows_raises_with_report():
    with pytest.raises(LatinViolationError) as exc:
        rectangle_service.from_rows([[0, 1], [0, 1]])
    assert not exc.value.report.valid


def test_from_labels_ranks_symbols():
    rect, labels = rectangle_service.from_labels([["b", "a"], ["a", "b"]])
    assert labels == ["a", "b"]
    assert rect.to_lists() == [[1, 0], [0, 1]]


def test_rectangle_is_read_only(cyclic5):
    with pytest.raises(ValueError):
        cyclic5.cells[0, 0] = 3


def test_column_of_uses_inverse_index(cyclic5):
    for a in range(5):
        for c in range(5):
            assert cyclic5.column_of(a, cyclic5.cell(a, c)) == c


def test_truncate_rows_identity(cyclic5):
    assert rectangle_service.truncate_rows(cyclic5, 5) == cyclic5


def test_truncate_rows_keeps_first_rows(cyclic5):
    two = rectangle_service.truncate_rows(cyclic5, 2)
    assert two.to_lists() == [[0, 1, 2, 3, 4], [4, 0, 1, 2, 3]]
    assert rectangle_service.validate(two).valid


@pytest.mark.parametrize("m", [0, 6])
def test_truncate_rows_out_of_range(cyclic5, m):
    with pytest.raises(DimensionError):
        rectangle_service.truncate_rows(cyclic5, m)


def test_permute_identity(cyclic5):
    assert rectangle_service.permute(cyclic5) == cyclic5
    identity = list(range(5))
    assert rectangle_service.permute(cyclic5, identity, identity, identity) == cyclic5


def test_permute_swap_rows_and_reverse_columns(cyclic5):
    swapped = rectangle_service.permute(cyclic5, row_perm=[1, 0, 2, 3, 4])
    reversed_cols = rectangle_service.permute(cyclic5, col_perm=[4, 3, 2, 1, 0])
    for rect in (swapped, reversed_cols):
        assert rectangle_service.validate(rect).valid
        assert perfection_service.perfection_report(rect).pf == 10


def test_permute_formula(rng):
    rect = generator_service.cyclic(7)
    rows = list(range(7))
    cols = list(range(7))
    syms = list(range(7))
    rng.shuffle(rows)
    rng.shuffle(cols)
    rng.shuffle(syms)
    out = rectangle_service.permute(rect, rows, cols, syms)
    for a in range(7):
        for c in range(7):
            assert out.cell(a, c) == syms[rect.cell(rows[a], cols[c])]


def test_permute_preserves_validity(rng, random_isotopy):
    for n in range(1, 10):
        for m in range(1, n + 1):
            rect = rectangle_service.truncate_rows(generator_service.cyclic(n), m)
            assert rectangle_service.validate(random_isotopy(rect, rng)).valid


@pytest.mark.parametrize("kwargs", [
    {"row_perm": [0, 0, 1, 2, 3]},
    {"col_perm": [0, 1, 2]},
    {"sym_perm": [1, 2, 3, 4, 5]},
])
def test_permute_rejects_non_permutations(cyclic5, kwargs):
    with pytest.raises(InvalidPermutationError):
        rectangle_service.permute(cyclic5, **kwargs)


def test_reduce_cyclic(cyclic5):
    """Test rows are reordered so the first column reads 0..4"""
    reduced = rectangle_service.reduce(cyclic5)
    assert reduced.row(0) == (0, 1, 2, 3, 4)
    assert reduced.cells[:, 0].tolist() == [0, 1, 2, 3, 4]
    assert all(reduced.cell(a, c) == (a + c) % 5 for a in range(5) for c in range(5))


def test_reduce_single_row():
    rect = LatinRectangle(np.array([[2, 0, 1]]))
    assert rectangle_service.reduce(rect).to_lists() == [[0, 1, 2]]


def test_reduce_is_idempotent(rng, random_isotopy):
    for n in (3, 5, 7, 9):
        for _ in range(10):
            rect = random_isotopy(rectangle_service.truncate_rows(generator_service.cyclic(n), 3), rng)
            once = rectangle_service.reduce(rect)
            assert rectangle_service.is_reduced(once)
            assert rectangle_service.reduce(once) == once
            assert perfection_service.perfection_report(once).pf == perfection_service.perfection_report(rect).pf
