"""
Pydantic models for width extension and chain planning.
"""

from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

from .rectangle import LatinRectangle, coerce_rectangle


class ExtensionPlan(BaseModel):
    """Which column of R to delete and which symbol of the relabeled square S to overwrite"""
    c: int = Field(..., ge=0, description="Column of R to delete")
    s: int = Field(..., ge=0, description="Symbol of the relabeled S to overwrite")
    relabel_base: Optional[int] = Field(
        None, ge=0, description="S symbols become relabel_base..relabel_base+m-1; defaults to R's width"
    )


class PairWitness(BaseModel):
    """Certified full cycle of one output row pair, in pre-recanonicalization labels"""
    a: int
    b: int
    cycle: List[int]
    phase_lengths: Tuple[int, int, int, int]


class ExtensionTrace(BaseModel):
    """Everything needed to audit one width extension"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    plan: ExtensionPlan
    rows: int
    source_width: int
    width: int
    source_cells: List[List[int]] = Field(..., description="R in the labels used for construction")
    square_cells: List[List[int]] = Field(..., description="S after relabeling, before substitution")
    substitution_column: List[int] = Field(..., description="S(a): column of S holding s in row a")
    deleted_column_symbols: List[int] = Field(..., description="R(a, c) per row")
    raw_result: List[List[int]] = Field(..., description="Output grid before recanonicalization")
    symbol_map: List[int] = Field(..., description="Canonical symbol k stands for raw label symbol_map[k]")
    result: LatinRectangle

    @field_validator("result", mode="before")
    @classmethod
    def parse_result(cls, v):
        return coerce_rectangle(v)

    @field_serializer("result")
    def serialize_result(self, result: LatinRectangle):
        return result.to_lists()

    @model_validator(mode="after")
    def check_width(self):
        if self.width != self.source_width + self.rows - 1:
            raise ValueError("extension must add exactly m - 1 columns")
        return self


class WitnessSummary(BaseModel):
    a: int
    b: int
    length: int
    phase_lengths: Tuple[int, int, int, int]


class ExtensionReport(ExtensionTrace):
    """Trace plus the length and phases of the certified cycle of every ordered row pair"""
    witnesses: List[WitnessSummary] = []


class ChainPlan(BaseModel):
    """Extension schedule reaching width n_i = r + j(r-1) congruent to i modulo m-1"""
    m: int = Field(..., ge=3)
    r: int = Field(..., description="Prime r >= m with r = m-2 (mod m-1)")
    target_i: int
    j: int = Field(..., ge=0)
    n_i: int
    steps: List[ExtensionPlan] = []

    @model_validator(mode="after")
    def check_arithmetic(self):
        if self.n_i != self.r + self.j * (self.r - 1):
            raise ValueError("n_i must equal r + j(r-1)")
        if (self.n_i - self.target_i) % (self.m - 1) != 0:
            raise ValueError("n_i must be congruent to target_i modulo m-1")
        if self.n_i < self.m:
            raise ValueError("n_i must be at least m")
        if len(self.steps) != self.j:
            raise ValueError("one extension step per unit of j")
        return self
