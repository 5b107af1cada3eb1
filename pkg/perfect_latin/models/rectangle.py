"""
Latin rectangle models.
LatinRectangle is the immutable grid value every service consumes; ValidationReport
describes which Latin conditions a raw grid breaks.
"""

from enum import Enum
from typing import Any, Iterator, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator


class ViolationKind(str, Enum):
    """Latin conditions a grid can break"""
    ROW_NOT_PERMUTATION = "row-not-permutation"
    COLUMN_REPEAT = "column-repeat"
    SYMBOL_OUT_OF_RANGE = "symbol-out-of-range"


class Violation(BaseModel):
    """A single broken Latin condition"""
    kind: ViolationKind
    row: Optional[int] = Field(None, description="Row index, when the violation is tied to a row")
    column: Optional[int] = Field(None, description="Column index, when the violation is tied to a column")


class ValidationReport(BaseModel):
    """Outcome of validating a raw grid"""
    rows: int
    cols: int
    valid: bool
    violations: List[Violation] = []

    @model_validator(mode="after")
    def check_consistency(self):
        if self.valid != (not self.violations):
            raise ValueError("valid must hold exactly when there are no violations")
        return self


class LatinRectangle:
    """
    An m x n Latin rectangle over the canonical alphabet {0..n-1}.

    The grid is a read-only uint16 numpy array in row-major order. A per-row inverse
    index (symbol -> column) is built lazily for O(1) lookups. Instances are created
    through the rectangle service, which validates the grid; the constructor itself
    trusts its input.
    """

    __slots__ = ("_cells", "_inverse")

    def __init__(self, cells: np.ndarray):
        cells = np.array(cells, dtype=np.uint16, copy=True)
        cells.setflags(write=False)
        self._cells = cells
        self._inverse: Optional[np.ndarray] = None

    @property
    def cells(self) -> np.ndarray:
        return self._cells

    @property
    def rows(self) -> int:
        return int(self._cells.shape[0])

    @property
    def cols(self) -> int:
        return int(self._cells.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def cell(self, a: int, c: int) -> int:
        return int(self._cells[a, c])

    def row(self, a: int) -> Tuple[int, ...]:
        return tuple(int(x) for x in self._cells[a])

    @property
    def inverse(self) -> np.ndarray:
        """inverse[a, x] is the column holding symbol x in row a"""
        if self._inverse is None:
            inverse = np.argsort(self._cells, axis=1, kind="stable").astype(np.int64)
            inverse.setflags(write=False)
            self._inverse = inverse
        return self._inverse

    def column_of(self, a: int, symbol: int) -> int:
        return int(self.inverse[a, symbol])

    def to_lists(self) -> List[List[int]]:
        return self._cells.astype(int).tolist()

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        for a in range(self.rows):
            yield self.row(a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatinRectangle):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._cells, other._cells))

    def __hash__(self) -> int:
        return hash((self.shape, self._cells.tobytes()))

    def __repr__(self) -> str:
        return f"LatinRectangle({self.rows}x{self.cols}, rows={self.to_lists()})"


def coerce_rectangle(value: Any) -> LatinRectangle:
    """Rebuild a rectangle from its serialized nested-list form (JSON payloads)"""
    if isinstance(value, LatinRectangle):
        return value
    arr = np.asarray(value)
    if arr.ndim != 2 or arr.size == 0 or not np.issubdtype(arr.dtype, np.integer):
        raise ValueError("rectangle must be a non-empty list of equal-length integer rows")
    if arr.min() < 0 or arr.max() >= arr.shape[1]:
        raise ValueError("symbols must lie in 0..n-1")
    return LatinRectangle(arr)
