"""
Pydantic models for the one-factorization view of K_{n,n}.
"""

from typing import List

from pydantic import BaseModel, Field, model_validator


class OneFactorization(BaseModel):
    """
    Perfect matchings of K_{n,n} read off rectangle rows: factor a matches left vertex
    (column) c to right vertex (symbol) factors[a][c]. With m = n rows the factors
    partition all n^2 edges.
    """
    n: int = Field(..., ge=1)
    factors: List[List[int]]

    @model_validator(mode="after")
    def check_matchings(self):
        for a, factor in enumerate(self.factors):
            if sorted(factor) != list(range(self.n)):
                raise ValueError(f"factor {a} is not a perfect matching of K_{{{self.n},{self.n}}}")
        return self

    @property
    def size(self) -> int:
        return len(self.factors)

    @property
    def is_complete(self) -> bool:
        return self.size == self.n


class OracleComparison(BaseModel):
    """Permutation-path and graph-path perfection verdicts side by side"""
    agree: bool
    pf: int
    graph_pf: int
    perfect: bool
    graph_perfect: bool
    mismatched_pairs: List[List[int]] = []
