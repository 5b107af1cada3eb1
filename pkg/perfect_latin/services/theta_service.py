"""
Theta Service
Smallest certified widths theta(m, i) per odd residue, trying known squares, extension
chains and direct search in order of cost, and the per-residue table bounding theta(m).
"""

import logging
from typing import List, Optional, Tuple

from ..core.config import THETA_CLAIMED_MAX_M, settings
from ..core.exceptions import DimensionError
from ..models.rectangle import LatinRectangle
from ..models.search import (
    SearchMode,
    SearchQuery,
    ThetaResult,
    ThetaSource,
    ThetaStatus,
    ThetaTable,
)
from .extension_service import extension_service
from .perfection_service import perfection_service
from .rectangle_service import rectangle_service
from .registry_service import RegistryService, get_registry
from .search_service import search_service

logger = logging.getLogger(__name__)


class ThetaService:
    """Service certifying theta(m, i) upper bounds and exact values"""

    def __init__(self, registry: Optional[RegistryService] = None):
        self._registry = registry

    @property
    def registry(self) -> RegistryService:
        return self._registry or get_registry()

    def _check_query(self, m: int, i: int) -> None:
        if m < 3 or m % 2 == 0:
            raise DimensionError(f"theta needs odd m >= 3, got {m}")
        if i % 2 == 0 or not 1 <= i <= m - 2:
            raise DimensionError(f"Residue must be odd in 1..{m - 2}, got {i}")

    def _from_registry(self, m: int, k: int) -> Optional[LatinRectangle]:
        square = self.registry.perfect_square(k)
        if square is None:
            return None
        return rectangle_service.truncate_rows(square, m)

    def _from_chain(self, m: int, k: int) -> Optional[LatinRectangle]:
        """Repeatedly extend a known r-square, m <= r < k, when k = r (mod r-1)"""
        for r in self.registry.known_orders(k - 1):
            if r < m or r < 3 or (k - r) % (r - 1) != 0:
                continue
            square = self.registry.perfect_square(r)
            rect = extension_service.extend_repeatedly(square, square, (k - r) // (r - 1))
            logger.debug(f"theta: width {k} reached from the order-{r} square")
            return rectangle_service.truncate_rows(rect, m)
        return None

    def _from_search(self, m: int, k: int, budget: int, threads: int) -> Tuple[Optional[LatinRectangle], bool]:
        """(witness, decided): decided is False when the budget ran out first"""
        result = search_service.search(
            SearchQuery(m=m, n=k, mode=SearchMode.FIRST, cutoff_nodes=budget, threads=threads)
        )
        if result.rectangles:
            return result.rectangles[0], True
        return None, not result.truncated

    def theta(
        self,
        m: int,
        i: int,
        cutoff: int,
        budget: Optional[int] = None,
        threads: int = 1,
    ) -> ThetaResult:
        """Scan k >= m, k = i (mod m-1), ascending, until a witness is certified or k passes cutoff"""
        self._check_query(m, i)
        budget = budget or settings.theta_search_budget
        undecided: List[int] = []

        k = m + (i - m) % (m - 1)
        while k <= cutoff:
            witness, source = self._from_registry(m, k), ThetaSource.REGISTRY
            if witness is None:
                witness, source = self._from_chain(m, k), ThetaSource.CHAIN
            if witness is None:
                witness, decided = self._from_search(m, k, budget, threads)
                source = ThetaSource.SEARCH
                if not decided:
                    logger.warning(f"theta({m},{i}): width {k} undecided within {budget} nodes")
                    undecided.append(k)
            if witness is not None:
                perfection_service.require_perfect(witness, name=f"theta({m},{i}) witness")
                status = ThetaStatus.UPPER_BOUND if undecided else ThetaStatus.EXACT
                logger.info(f"theta({m},{i}) = {k} ({status.value}, via {source.value})")
                return ThetaResult(
                    m=m, i=i, cutoff=cutoff, status=status, value=k, source=source,
                    undecided_widths=undecided, witness=witness,
                )
            k += m - 1

        logger.warning(f"theta({m},{i}): no witness up to width {cutoff}")
        return ThetaResult(m=m, i=i, cutoff=cutoff, status=ThetaStatus.UNKNOWN, undecided_widths=undecided)

    def theta_m(
        self,
        m: int,
        cutoff: int,
        budget: Optional[int] = None,
        threads: int = 1,
    ) -> ThetaTable:
        """theta(m, i) for each odd i; the max bounds theta(m) once every residue resolves"""
        entries = [self.theta(m, i, cutoff, budget, threads) for i in range(1, m - 1, 2)]
        statuses = {e.status for e in entries}
        if ThetaStatus.UNKNOWN in statuses:
            status, value = ThetaStatus.UNKNOWN, None
        else:
            status = ThetaStatus.UPPER_BOUND if ThetaStatus.UPPER_BOUND in statuses else ThetaStatus.EXACT
            value = max(e.value for e in entries)
        claimed = m if m <= THETA_CLAIMED_MAX_M else None
        return ThetaTable(m=m, cutoff=cutoff, entries=entries, value=value, status=status, claimed=claimed)


theta_service = ThetaService()


def theta(m: int, i: int, cutoff: int) -> ThetaResult:
    return theta_service.theta(m, i, cutoff)


def theta_m(m: int, cutoff: int) -> ThetaTable:
    return theta_service.theta_m(m, cutoff)
