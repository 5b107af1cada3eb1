"""Configuration management for perfect_latin."""

from pathlib import Path
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Symbols are stored as uint16
MAX_SYMBOLS = 2**16 - 1
INT64_MAX = 2**63 - 1

# Unconditional width bound 74 * floor(m ** (31/5))
BOUND_FACTOR = 74
BOUND_EXPONENT = (31, 5)

# Odd m up to this value have published theta(m) = m
THETA_CLAIMED_MAX_M = 27


class Settings(BaseSettings):
    """Application settings."""

    model_config = SettingsConfigDict(
        env_prefix="PLR_",
        env_file=".env",
        extra="ignore",
    )

    # Logging
    log_level: str = "INFO"

    # Registry of externally supplied perfect squares, files named <order>.lrect
    registry_dir: Optional[Path] = None

    # Number theory
    prime_search_ceiling: int = Field(default=10**9, gt=2)

    # Search budgets (nodes)
    search_node_budget: int = Field(default=50_000_000, gt=0)
    theta_search_budget: int = Field(default=200_000, gt=0)

    # Parallelism
    threads: int = Field(default=1, ge=1)


# Create settings instance
settings = Settings()
