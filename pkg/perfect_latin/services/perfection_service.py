"""
Perfection Service
Row-pair permutations, their cycle structure, and the perfect-pair count pf(R).
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from typing import List, Tuple

import numpy as np

from ..core.exceptions import DimensionError, NotPerfectError, NotPerfectPairError
from ..models.perfection import CycleStructure, ImperfectPair, PerfectionReport, RowPairPermutation
from ..models.rectangle import LatinRectangle

logger = logging.getLogger(__name__)


def _orbit_lengths(mapping) -> List[int]:
    """Cycle lengths of a permutation given as a sequence, descending"""
    n = len(mapping)
    visited = bytearray(n)
    lengths = []
    for start in range(n):
        if visited[start]:
            continue
        length = 0
        x = start
        while not visited[x]:
            visited[x] = 1
            x = mapping[x]
            length += 1
        lengths.append(length)
    lengths.sort(reverse=True)
    return lengths


def is_cyclic_mapping(mapping) -> bool:
    """True when the permutation is a single cycle through all symbols"""
    n = len(mapping)
    x = mapping[0]
    steps = 1
    while x != 0:
        x = mapping[x]
        steps += 1
    return steps == n


class PerfectionService:
    """Service computing row-pair permutations and perfection verdicts"""

    def _check_pair(self, rect: LatinRectangle, a: int, b: int) -> None:
        if a == b:
            raise DimensionError(f"Row pair needs two distinct rows, got ({a},{b})")
        for r in (a, b):
            if not 0 <= r < rect.rows:
                raise DimensionError(f"Row {r} outside 0..{rect.rows - 1}")

    def _mapping(self, rect: LatinRectangle, a: int, b: int) -> List[int]:
        mapping = np.empty(rect.cols, dtype=np.int64)
        mapping[rect.cells[a]] = rect.cells[b]
        return mapping.tolist()

    def pair_permutation(self, rect: LatinRectangle, a: int, b: int) -> RowPairPermutation:
        """R_{a,b}: map[R(a,c)] = R(b,c) for every column c"""
        self._check_pair(rect, a, b)
        return RowPairPermutation(a=a, b=b, mapping=tuple(self._mapping(rect, a, b)))

    def cycle_structure(self, perm: RowPairPermutation) -> CycleStructure:
        """Exact cycle decomposition by orbit walking over a visited bitmap"""
        mapping = perm.mapping
        n = len(mapping)
        visited = bytearray(n)
        cycles = []
        for start in range(n):
            if visited[start]:
                continue
            cycle = []
            x = start
            while not visited[x]:
                visited[x] = 1
                cycle.append(x)
                x = mapping[x]
            cycles.append(cycle)
        # stable sort keeps ties ordered by their minimum symbol
        cycles.sort(key=len, reverse=True)
        return CycleStructure(n=n, cycles=cycles)

    def is_perfect_pair(self, rect: LatinRectangle, a: int, b: int) -> bool:
        self._check_pair(rect, a, b)
        return is_cyclic_mapping(self._mapping(rect, a, b))

    def _pair_lengths(self, rect: LatinRectangle, pair: Tuple[int, int]) -> List[int]:
        return _orbit_lengths(self._mapping(rect, *pair))

    def perfection_report(self, rect: LatinRectangle, threads: int = 1) -> PerfectionReport:
        """Evaluate every pair a < b in lexicographic order"""
        pairs = list(combinations(range(rect.rows), 2))
        if threads > 1 and len(pairs) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                all_lengths = list(pool.map(lambda p: self._pair_lengths(rect, p), pairs))
        else:
            all_lengths = [self._pair_lengths(rect, p) for p in pairs]

        imperfect = [
            ImperfectPair(a=a, b=b, lengths=lengths)
            for (a, b), lengths in zip(pairs, all_lengths)
            if len(lengths) != 1
        ]
        pf = len(pairs) - len(imperfect)
        logger.debug(f"pf={pf}/{len(pairs)} for {rect.rows}x{rect.cols} rectangle")
        return PerfectionReport(
            rows=rect.rows,
            cols=rect.cols,
            pf=pf,
            total_pairs=len(pairs),
            imperfect=imperfect,
            perfect=not imperfect,
        )

    def require_perfect(self, rect: LatinRectangle, name: str = "rectangle") -> PerfectionReport:
        """Raise NotPerfectError unless every pair is perfect"""
        report = self.perfection_report(rect)
        if not report.perfect:
            raise NotPerfectError(
                f"{name} ({rect.rows}x{rect.cols}) is not perfect: pf={report.pf}/{report.total_pairs}",
                [(p.a, p.b, p.lengths) for p in report.imperfect],
            )
        return report

    def certify_pair_cycle(self, rect: LatinRectangle, a: int, b: int, start: int) -> List[int]:
        """Full orbit of start under R_{a,b}, stopping one step before it returns"""
        self._check_pair(rect, a, b)
        if not 0 <= start < rect.cols:
            raise DimensionError(f"Symbol {start} outside 0..{rect.cols - 1}")
        mapping = self._mapping(rect, a, b)
        if not is_cyclic_mapping(mapping):
            raise NotPerfectPairError(a, b, _orbit_lengths(mapping))
        orbit = [start]
        x = mapping[start]
        while x != start:
            orbit.append(x)
            x = mapping[x]
        return orbit

    def format_report(self, report: PerfectionReport) -> str:
        lines = [
            f"pf {report.pf}",
            f"total {report.total_pairs}",
            f"perfect {'true' if report.perfect else 'false'}",
        ]
        for p in report.imperfect:
            lines.append(f"{p.a} {p.b} : {'+'.join(str(l) for l in p.lengths)}")
        return "\n".join(lines) + "\n"


perfection_service = PerfectionService()


def pair_permutation(rect: LatinRectangle, a: int, b: int) -> RowPairPermutation:
    return perfection_service.pair_permutation(rect, a, b)


def cycle_structure(perm: RowPairPermutation) -> CycleStructure:
    return perfection_service.cycle_structure(perm)


def perfection_report(rect: LatinRectangle, threads: int = 1) -> PerfectionReport:
    return perfection_service.perfection_report(rect, threads=threads)


def certify_pair_cycle(rect: LatinRectangle, a: int, b: int, start: int) -> List[int]:
    return perfection_service.certify_pair_cycle(rect, a, b, start)
