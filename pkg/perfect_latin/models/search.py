"""
Pydantic models for backtracking search and theta estimation.
"""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

from .rectangle import LatinRectangle, coerce_rectangle


class SearchMode(str, Enum):
    """What the search returns"""
    FIRST = "first"
    COUNT = "count"
    ALL = "all"


class SearchQuery(BaseModel):
    """Shape and options of a backtracking search"""
    m: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    mode: SearchMode = SearchMode.COUNT
    reduce: bool = Field(True, description="Only reduced rectangles: first row 0..n-1, first column increasing")
    cutoff_nodes: int = Field(50_000_000, gt=0, description="Node budget")
    prune_pairs: bool = Field(True, description="Reject a completed row whose pair with an earlier row is not cyclic")
    require_perfect: bool = Field(True, description="False enumerates every Latin rectangle of the shape")
    threads: int = Field(1, ge=1)

    @model_validator(mode="after")
    def check_shape(self):
        if self.m > self.n:
            raise ValueError("m must not exceed n")
        return self


class SearchStats(BaseModel):
    nodes: int = 0
    prunes: int = 0
    leaves: int = 0
    wall_time: float = 0.0


class SearchResult(BaseModel):
    """Witnesses (first/all) or a count, with truncation status"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    query: SearchQuery
    count: int = 0
    rectangles: List[LatinRectangle] = []
    truncated: bool = Field(False, description="Budget ran out before the node space was exhausted")
    stats: SearchStats = Field(default_factory=SearchStats)

    @field_validator("rectangles", mode="before")
    @classmethod
    def parse_rectangles(cls, v):
        return [coerce_rectangle(r) for r in v]

    @field_serializer("rectangles")
    def serialize_rectangles(self, rectangles: List[LatinRectangle]):
        return [r.to_lists() for r in rectangles]


class ThetaStatus(str, Enum):
    EXACT = "exact"
    UPPER_BOUND = "upper-bound"
    UNKNOWN = "unknown-above-cutoff"


class ThetaSource(str, Enum):
    """How the witness width was certified"""
    REGISTRY = "registry"
    CHAIN = "chain"
    SEARCH = "search"


class ThetaResult(BaseModel):
    """Smallest certified width k = i (mod m-1), k >= m, with a perfect m x k rectangle"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    m: int
    i: int
    cutoff: int
    status: ThetaStatus
    value: Optional[int] = None
    source: Optional[ThetaSource] = None
    undecided_widths: List[int] = Field(default_factory=list, description="Widths whose search hit its budget")
    witness: Optional[LatinRectangle] = None

    @field_validator("witness", mode="before")
    @classmethod
    def parse_witness(cls, v):
        return None if v is None else coerce_rectangle(v)

    @field_serializer("witness")
    def serialize_witness(self, witness: Optional[LatinRectangle]):
        return witness.to_lists() if witness is not None else None

    @model_validator(mode="after")
    def check_value(self):
        if self.status == ThetaStatus.UNKNOWN:
            if self.value is not None:
                raise ValueError("unknown results carry no value")
            return self
        if self.value is None or self.witness is None:
            raise ValueError("resolved results need a value and a witness")
        if self.value < self.m or (self.value - self.i) % (self.m - 1) != 0:
            raise ValueError("value must be >= m and congruent to i modulo m-1")
        return self


class ThetaTable(BaseModel):
    """theta(m,i) for every odd residue, aggregated into an upper bound on theta(m)"""
    m: int
    cutoff: int
    entries: List[ThetaResult]
    value: Optional[int] = Field(None, description="max over residues, when every residue resolved")
    status: ThetaStatus
    claimed: Optional[int] = Field(None, description="Published theta(m) for small odd m")
