"""
Pydantic models for generator outputs.
"""

from pydantic import BaseModel, Field, model_validator

CONDITIONAL_NOTE = (
    "conditional value assumes the Strong Riemann Hypothesis; informational only"
)


class BoundReport(BaseModel):
    """Explicit widths beyond which every odd width admits a perfect m-row rectangle"""
    m: int = Field(..., ge=2)
    unconditional: int = Field(..., description="74 * floor(m ** 6.2)")
    conditional: int = Field(..., description="ceil(m**3 * ln(m)**2)")
    chebyshev_prime: int = Field(..., description="Smallest prime in [m, 2m]")
    note: str = CONDITIONAL_NOTE

    @model_validator(mode="after")
    def check_bound(self):
        if self.unconditional < self.m:
            raise ValueError("unconditional bound must be at least m")
        return self
