"""
Models package for perfect_latin.
Pydantic models for rectangles, reports, extension traces, search queries and results.
"""

from .extension import ChainPlan, ExtensionPlan, ExtensionReport, ExtensionTrace, PairWitness, WitnessSummary
from .factorization import OneFactorization, OracleComparison
from .generators import BoundReport
from .perfection import CycleStructure, ImperfectPair, PerfectionReport, RowPairPermutation
from .rectangle import LatinRectangle, ValidationReport, Violation, ViolationKind
from .search import (
    SearchMode,
    SearchQuery,
    SearchResult,
    SearchStats,
    ThetaResult,
    ThetaSource,
    ThetaStatus,
    ThetaTable,
)

__all__ = [
    "BoundReport",
    "ChainPlan",
    "CycleStructure",
    "ExtensionPlan",
    "ExtensionReport",
    "ExtensionTrace",
    "ImperfectPair",
    "LatinRectangle",
    "OneFactorization",
    "OracleComparison",
    "PairWitness",
    "PerfectionReport",
    "RowPairPermutation",
    "SearchMode",
    "SearchQuery",
    "SearchResult",
    "SearchStats",
    "ThetaResult",
    "ThetaSource",
    "ThetaStatus",
    "ThetaTable",
    "ValidationReport",
    "Violation",
    "ViolationKind",
    "WitnessSummary",
]
