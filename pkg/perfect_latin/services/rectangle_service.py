"""
Rectangle Service
Validation, ingestion and isotopy transformations of Latin rectangles.
"""

import logging
from numbers import Integral
from typing import Any, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import MAX_SYMBOLS
from ..core.exceptions import (
    DimensionError,
    GridShapeError,
    InvalidPermutationError,
    LatinViolationError,
)
from ..models.rectangle import LatinRectangle, ValidationReport, Violation, ViolationKind

logger = logging.getLogger(__name__)


def _as_int_array(grid: Any) -> np.ndarray:
    """Check the grid is a non-empty rectangle of integers and return it as int64."""
    if isinstance(grid, LatinRectangle):
        return grid.cells.astype(np.int64)
    if isinstance(grid, np.ndarray):
        if grid.ndim != 2 or grid.shape[0] < 1 or grid.shape[1] < 1:
            raise GridShapeError(f"Grid must be a non-empty 2-d array, got shape {grid.shape}")
        if not np.issubdtype(grid.dtype, np.integer):
            raise GridShapeError(f"Grid must hold integers, got dtype {grid.dtype}")
        arr = grid.astype(np.int64)
    else:
        rows = [list(r) for r in grid]
        if not rows:
            raise GridShapeError("Grid has no rows")
        n = len(rows[0])
        if n == 0:
            raise GridShapeError("Grid has no columns")
        for a, r in enumerate(rows):
            if len(r) != n:
                raise GridShapeError(f"Ragged grid: row {a} has {len(r)} entries, expected {n}")
            for c, x in enumerate(r):
                if isinstance(x, bool) or not isinstance(x, Integral):
                    raise GridShapeError(f"Non-integer symbol {x!r} at row {a}, column {c}")
        try:
            arr = np.array(rows, dtype=np.int64)
        except OverflowError as e:
            raise GridShapeError(f"Symbol outside the 64-bit range: {e}") from e
    if arr.shape[1] > MAX_SYMBOLS:
        raise GridShapeError(f"Width {arr.shape[1]} exceeds the supported maximum of {MAX_SYMBOLS}")
    return arr


class RectangleService:
    """Service for validating, building and transforming Latin rectangles"""

    def validate(self, grid: Any) -> ValidationReport:
        """List every violated Latin condition of a raw rectangular grid"""
        arr = _as_int_array(grid)
        m, n = arr.shape
        violations: List[Violation] = []

        out_of_range = (arr < 0) | (arr >= n)
        for a, c in zip(*np.nonzero(out_of_range)):
            violations.append(Violation(kind=ViolationKind.SYMBOL_OUT_OF_RANGE, row=int(a), column=int(c)))

        expected = np.arange(n)
        bad_rows = np.nonzero(~(np.sort(arr, axis=1) == expected).all(axis=1))[0]
        for a in bad_rows:
            seen = set()
            offending = None
            for c, x in enumerate(arr[a].tolist()):
                if x < 0 or x >= n or x in seen:
                    offending = c
                    break
                seen.add(x)
            violations.append(Violation(kind=ViolationKind.ROW_NOT_PERMUTATION, row=int(a), column=offending))

        if m > 1:
            sorted_cols = np.sort(arr, axis=0)
            bad_cols = np.nonzero((np.diff(sorted_cols, axis=0) == 0).any(axis=0))[0]
            for c in bad_cols:
                seen = set()
                for a, x in enumerate(arr[:, c].tolist()):
                    if x in seen:
                        violations.append(
                            Violation(kind=ViolationKind.COLUMN_REPEAT, row=a, column=int(c))
                        )
                        break
                    seen.add(x)

        violations.sort(key=lambda v: (v.row if v.row is not None else -1,
                                       v.column if v.column is not None else -1,
                                       v.kind.value))
        return ValidationReport(rows=m, cols=n, valid=not violations, violations=violations)

    def from_rows(self, grid: Any) -> LatinRectangle:
        """Validate a raw grid and build the rectangle"""
        report = self.validate(grid)
        if not report.valid:
            raise LatinViolationError(report)
        return LatinRectangle(_as_int_array(grid))

    def from_labels(self, rows: Sequence[Sequence[Hashable]]) -> Tuple[LatinRectangle, List[Any]]:
        """
        Ingest a grid over an arbitrary orderable alphabet.

        Labels are ranked in ascending order and replaced by their rank, so the result
        uses the canonical alphabet {0..n-1}. Returns the rectangle and the label list,
        where canonical symbol k stands for labels[k].
        """
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise GridShapeError("Grid must have at least one row and one column")
        labels = sorted({x for r in rows for x in r})
        rank = {label: k for k, label in enumerate(labels)}
        return self.from_rows([[rank[x] for x in r] for r in rows]), labels

    def truncate_rows(self, rect: LatinRectangle, m: int) -> LatinRectangle:
        """Keep the first m rows"""
        if not 1 <= m <= rect.rows:
            raise DimensionError(f"Row count {m} outside 1..{rect.rows}")
        if m == rect.rows:
            return rect
        return LatinRectangle(rect.cells[:m])

    def permute(
        self,
        rect: LatinRectangle,
        row_perm: Optional[Sequence[int]] = None,
        col_perm: Optional[Sequence[int]] = None,
        sym_perm: Optional[Sequence[int]] = None,
    ) -> LatinRectangle:
        """
        Apply an isotopy: result(a, c) = sym_perm[R(row_perm[a], col_perm[c])].
        Omitted arguments default to the identity.
        """
        m, n = rect.shape
        rp = self._check_permutation(row_perm, m, "row_perm")
        cp = self._check_permutation(col_perm, n, "col_perm")
        sp = self._check_permutation(sym_perm, n, "sym_perm")
        cells = rect.cells.astype(np.int64)[rp][:, cp]
        return LatinRectangle(sp[cells])

    def reduce(self, rect: LatinRectangle) -> LatinRectangle:
        """Isotopic normal form: first row 0..n-1 and first column increasing"""
        first_row = rect.cells[0].astype(np.int64)
        sym_perm = np.empty(rect.cols, dtype=np.int64)
        sym_perm[first_row] = np.arange(rect.cols)
        relabeled_first_col = sym_perm[rect.cells[:, 0].astype(np.int64)]
        row_perm = np.argsort(relabeled_first_col, kind="stable")
        return self.permute(rect, row_perm=row_perm, sym_perm=sym_perm)

    def is_reduced(self, rect: LatinRectangle) -> bool:
        first_col = rect.cells[:, 0].astype(np.int64)
        return bool(
            np.array_equal(rect.cells[0], np.arange(rect.cols))
            and (np.diff(first_col) > 0).all()
        )

    def _check_permutation(self, perm: Optional[Sequence[int]], size: int, name: str) -> np.ndarray:
        if perm is None:
            return np.arange(size)
        arr = np.asarray(perm, dtype=np.int64)
        if arr.shape != (size,) or not np.array_equal(np.sort(arr), np.arange(size)):
            raise InvalidPermutationError(f"{name} is not a permutation of 0..{size - 1}")
        return arr


rectangle_service = RectangleService()


def validate(grid: Any) -> ValidationReport:
    return rectangle_service.validate(grid)


def from_rows(grid: Any) -> LatinRectangle:
    return rectangle_service.from_rows(grid)


def from_labels(rows: Sequence[Sequence[Hashable]]) -> Tuple[LatinRectangle, List[Any]]:
    return rectangle_service.from_labels(rows)


def truncate_rows(rect: LatinRectangle, m: int) -> LatinRectangle:
    return rectangle_service.truncate_rows(rect, m)


def permute(rect, row_perm=None, col_perm=None, sym_perm=None) -> LatinRectangle:
    return rectangle_service.permute(rect, row_perm, col_perm, sym_perm)


def reduce(rect: LatinRectangle) -> LatinRectangle:
    return rectangle_service.reduce(rect)
