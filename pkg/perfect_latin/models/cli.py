"""
Pydantic models for command results.
"""

from enum import IntEnum
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field


class ExitCode(IntEnum):
    OK = 0
    VERIFIED_FALSE = 1
    USAGE = 2
    BUDGET_EXHAUSTED = 3


class CommandResult(BaseModel):
    """Outcome of one CLI invocation"""
    exit_code: ExitCode = ExitCode.OK
    command: Optional[str] = None
    text: str = Field("", description="stdout payload, JSON when --json is given")
    payload: Optional[Dict[str, Any]] = Field(None, description="Machine-readable result")
    error: Optional[str] = Field(None, description="Diagnostic for stderr")
