"""
Generator Service
Cyclic perfect squares, prime scheduling for the chain planner, and the explicit bounds.
"""

import logging
from typing import Optional

import numpy as np
import sympy
from sympy import integer_nthroot

from ..core.config import BOUND_EXPONENT, BOUND_FACTOR, INT64_MAX, settings
from ..core.exceptions import BoundOverflowError, DimensionError, PrimeSearchExhaustedError
from ..models.generators import BoundReport
from ..models.rectangle import LatinRectangle

logger = logging.getLogger(__name__)


def integer_root_floor(x: int, k: int) -> int:
    """floor(x ** (1/k)) in exact integer arithmetic"""
    if x < 0 or k < 1:
        raise DimensionError(f"integer root needs x >= 0 and k >= 1, got x={x}, k={k}")
    root, _ = integer_nthroot(x, k)
    return int(root)


class GeneratorService:
    """Service producing known perfect squares, primes and bound values"""

    def cyclic(self, n: int) -> LatinRectangle:
        """Cyclic square with cell (a, c) = (c - a) mod n"""
        if n < 1:
            raise DimensionError(f"Cyclic square order must be at least 1, got {n}")
        idx = np.arange(n, dtype=np.int64)
        return LatinRectangle((idx[None, :] - idx[:, None]) % n)

    def is_prime(self, k: int) -> bool:
        if k < 0:
            raise DimensionError(f"Primality is defined here for k >= 0, got {k}")
        return bool(sympy.isprime(k))

    def prime_in_progression(self, m: int, ceiling: Optional[int] = None) -> int:
        """Smallest prime r >= m with r = m - 2 (mod m - 1)"""
        if m < 3 or m % 2 == 0:
            raise DimensionError(f"prime_in_progression needs odd m >= 3, got {m}")
        ceiling = ceiling or settings.prime_search_ceiling
        step = m - 1
        # m - 2 is the residue; 2m - 3 is its first representative >= m
        r = 2 * m - 3
        while r <= ceiling:
            if sympy.isprime(r):
                logger.debug(f"prime_in_progression({m}) = {r}")
                return r
            r += step
        raise PrimeSearchExhaustedError(
            f"No prime r = {m - 2} (mod {m - 1}) with {m} <= r <= {ceiling}"
        )

    def chebyshev_prime(self, m: int) -> int:
        """Smallest prime in [m, 2m]"""
        if m < 2:
            raise DimensionError(f"chebyshev_prime needs m >= 2, got {m}")
        p = int(sympy.nextprime(m - 1))
        assert p <= 2 * m
        return p

    def bound(self, m: int) -> BoundReport:
        """74 * floor(m^6.2) computed as 74 * floor((m^31)^(1/5))"""
        if m < 2:
            raise DimensionError(f"bound needs m >= 2, got {m}")
        num, den = BOUND_EXPONENT
        unconditional = BOUND_FACTOR * integer_root_floor(m**num, den)
        if unconditional > INT64_MAX:
            raise BoundOverflowError(
                f"74*floor({m}^6.2) = {unconditional} exceeds the 64-bit ceiling"
            )
        conditional = int(sympy.ceiling(sympy.Integer(m) ** 3 * sympy.log(m) ** 2))
        return BoundReport(
            m=m,
            unconditional=unconditional,
            conditional=conditional,
            chebyshev_prime=self.chebyshev_prime(m),
        )


generator_service = GeneratorService()


def cyclic(n: int) -> LatinRectangle:
    return generator_service.cyclic(n)


def is_prime(k: int) -> bool:
    return generator_service.is_prime(k)


def prime_in_progression(m: int, ceiling: Optional[int] = None) -> int:
    return generator_service.prime_in_progression(m, ceiling)


def chebyshev_prime(m: int) -> int:
    return generator_service.chebyshev_prime(m)


def bound(m: int) -> BoundReport:
    return generator_service.bound(m)
