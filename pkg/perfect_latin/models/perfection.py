"""
Pydantic models for row-pair permutations and perfection reports.
"""

from typing import List, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator


class RowPairPermutation(BaseModel):
    """The permutation taking the row-a symbol of each column to the row-b symbol"""
    a: int = Field(..., ge=0)
    b: int = Field(..., ge=0)
    mapping: Tuple[int, ...] = Field(..., description="mapping[x] = y")

    @field_validator("mapping")
    @classmethod
    def validate_mapping(cls, v):
        if sorted(v) != list(range(len(v))):
            raise ValueError("mapping must be a permutation of 0..n-1")
        return v

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, x: int) -> int:
        return self.mapping[x]


class CycleStructure(BaseModel):
    """Cycle decomposition, longest cycles first; each cycle starts at its minimum symbol"""
    n: int
    cycles: List[List[int]]

    @model_validator(mode="after")
    def check_partition(self):
        flat = sorted(x for cycle in self.cycles for x in cycle)
        if flat != list(range(self.n)):
            raise ValueError("cycles must partition 0..n-1")
        return self

    @property
    def lengths(self) -> List[int]:
        return [len(c) for c in self.cycles]

    @property
    def is_cyclic(self) -> bool:
        return len(self.cycles) == 1 and len(self.cycles[0]) == self.n


class ImperfectPair(BaseModel):
    """A row pair whose permutation splits into several cycles"""
    a: int
    b: int
    lengths: List[int] = Field(..., description="Cycle lengths, descending")


class PerfectionReport(BaseModel):
    """Perfect-pair count and verdict for a rectangle"""
    rows: int
    cols: int
    pf: int = Field(..., ge=0)
    total_pairs: int = Field(..., ge=0)
    imperfect: List[ImperfectPair] = []
    perfect: bool

    @model_validator(mode="after")
    def check_counts(self):
        if self.pf > self.total_pairs:
            raise ValueError("pf cannot exceed the number of pairs")
        if self.perfect != (self.pf == self.total_pairs):
            raise ValueError("perfect must hold exactly when every pair is perfect")
        if self.pf + len(self.imperfect) != self.total_pairs:
            raise ValueError("imperfect pairs and pf must account for every pair")
        return self

    def imperfect_set(self) -> set:
        return {(p.a, p.b, tuple(p.lengths)) for p in self.imperfect}
