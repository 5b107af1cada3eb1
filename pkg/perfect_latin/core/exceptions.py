"""
Exception hierarchy for perfect_latin.
Every failure raised by a service derives from PerfectLatinError.
"""

from typing import List, Optional, Sequence, Tuple


class PerfectLatinError(Exception):
    """Base error for all perfect_latin failures"""
    pass


class GridShapeError(PerfectLatinError):
    """Grid is ragged, empty or larger than the supported alphabet"""
    pass


class LatinViolationError(PerfectLatinError):
    """Grid is rectangular but breaks a Latin condition"""

    def __init__(self, report):
        self.report = report
        kinds = ", ".join(
            f"{v.kind.value}@({v.row},{v.column})" for v in report.violations[:5]
        )
        more = "" if len(report.violations) <= 5 else f" (+{len(report.violations) - 5} more)"
        super().__init__(f"Not a Latin rectangle: {kinds}{more}")


class LrectParseError(PerfectLatinError):
    """Malformed LRECT v1 text"""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


class DimensionError(PerfectLatinError):
    """Index, row count or width outside the allowed range"""
    pass


class InvalidPermutationError(PerfectLatinError):
    """Argument expected to be a permutation of an index set is not one"""
    pass


class NotPerfectError(PerfectLatinError):
    """A rectangle required to be perfect has imperfect row pairs"""

    def __init__(self, message: str, imperfect: Sequence[Tuple[int, int, List[int]]] = ()):
        self.imperfect = list(imperfect)
        super().__init__(message)


class NotPerfectPairError(PerfectLatinError):
    """A row pair required to be perfect is not cyclic"""

    def __init__(self, a: int, b: int, lengths: List[int]):
        self.a = a
        self.b = b
        self.lengths = lengths
        super().__init__(
            f"Pair ({a},{b}) is not perfect: cycle lengths {'+'.join(map(str, lengths))}"
        )


class PrimeSearchExhaustedError(PerfectLatinError):
    """No prime found below the configured search ceiling"""
    pass


class BoundOverflowError(PerfectLatinError):
    """Bound value exceeds the supported 64-bit range"""
    pass


class CertificationError(PerfectLatinError):
    """An extension witness walk deviated from the expected phase"""

    def __init__(self, a: int, b: int, step: int, message: str):
        self.a = a
        self.b = b
        self.step = step
        super().__init__(f"pair ({a},{b}) step {step}: {message}")


class ChainVerificationError(PerfectLatinError):
    """A chain produced a rectangle that failed final verification"""
    pass


class RegistryError(PerfectLatinError):
    """Registry directory contains an unusable square"""
    pass


class ConstructionError(PerfectLatinError):
    """No constructive path exists for the requested shape"""

    def __init__(self, message: str, reason: Optional[str] = None):
        self.reason = reason
        super().__init__(message)
