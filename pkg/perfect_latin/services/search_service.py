"""
Search Service
Row-major backtracking over symbol bitsets for perfect Latin rectangles, with
isotopy reduction and completed-row pair pruning.
"""

import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import List, Sequence, Tuple

from ..models.rectangle import LatinRectangle
from ..models.search import SearchMode, SearchQuery, SearchResult, SearchStats
from .perfection_service import is_cyclic_mapping

logger = logging.getLogger(__name__)


class _BudgetExhausted(Exception):
    pass


class _FirstFound(Exception):
    pass


def _cyclic_pair(row_a: Sequence[int], row_b: Sequence[int]) -> bool:
    """True when the permutation row_a[c] -> row_b[c] is a single cycle"""
    mapping = [0] * len(row_a)
    for x, y in zip(row_a, row_b):
        mapping[x] = y
    return is_cyclic_mapping(mapping)


class _Backtracker:
    """
    Fills cells row-major with ascending symbols. Each row keeps a bitset of unused
    symbols and each column a bitset of used ones; candidates are their difference.
    """

    def __init__(self, query: SearchQuery, prefix: Sequence[Sequence[int]] = ()):
        self.q = query
        m, n = query.m, query.n
        self.grid = [[-1] * n for _ in range(m)]
        self.row_free = [(1 << n) - 1] * m
        self.col_used = [0] * n
        self.check_pairs = query.require_perfect and query.prune_pairs

        fixed_rows = [list(r) for r in prefix]
        if query.reduce and not fixed_rows:
            fixed_rows = [list(range(n))]
        for a, row in enumerate(fixed_rows):
            for c, s in enumerate(row):
                self._place(a, c, s)
        self.cells = [(a, c) for a in range(len(fixed_rows), m) for c in range(n)]

        self.nodes = 0
        self.prunes = 0
        self.leaves = 0
        self.count = 0
        self.found: List[List[List[int]]] = []

    def _place(self, a: int, c: int, s: int) -> None:
        bit = 1 << s
        self.grid[a][c] = s
        self.row_free[a] &= ~bit
        self.col_used[c] |= bit

    def _remove(self, a: int, c: int, s: int) -> None:
        bit = 1 << s
        self.grid[a][c] = -1
        self.row_free[a] |= bit
        self.col_used[c] &= ~bit

    def _row_pairs_ok(self, a: int) -> bool:
        row = self.grid[a]
        for b in range(a):
            if not _cyclic_pair(self.grid[b], row):
                return False
        return True

    def _leaf(self) -> None:
        self.leaves += 1
        if self.q.require_perfect and not self.check_pairs:
            for a in range(1, self.q.m):
                if not self._row_pairs_ok(a):
                    return
        self.count += 1
        if self.q.mode != SearchMode.COUNT:
            self.found.append([row[:] for row in self.grid])
        if self.q.mode == SearchMode.FIRST:
            raise _FirstFound()

    def _fill(self, k: int) -> None:
        if k == len(self.cells):
            self._leaf()
            return
        a, c = self.cells[k]
        avail = self.row_free[a] & ~self.col_used[c]
        if c == 0 and self.q.reduce and a > 0:
            # first column strictly increasing
            avail &= ~((1 << (self.grid[a - 1][0] + 1)) - 1)
        last_in_row = c == self.q.n - 1
        while avail:
            low = avail & -avail
            avail ^= low
            s = low.bit_length() - 1
            if self.nodes >= self.q.cutoff_nodes:
                raise _BudgetExhausted()
            self.nodes += 1
            self._place(a, c, s)
            if last_in_row and self.check_pairs and a > 0 and not self._row_pairs_ok(a):
                self.prunes += 1
            else:
                self._fill(k + 1)
            self._remove(a, c, s)

    def run(self) -> bool:
        """Run to completion; returns False when the budget ran out"""
        # one stack frame per cell
        sys.setrecursionlimit(max(sys.getrecursionlimit(), len(self.cells) + 1000))
        try:
            self._fill(0)
        except _FirstFound:
            pass
        except _BudgetExhausted:
            return False
        return True


def _run_branch(query: dict, prefix: List[List[int]]) -> dict:
    """Process-pool entry point: search below a fixed two-row prefix"""
    bt = _Backtracker(SearchQuery(**query), prefix)
    complete = bt.run()
    return {
        "count": bt.count,
        "found": bt.found,
        "nodes": bt.nodes,
        "prunes": bt.prunes,
        "leaves": bt.leaves,
        "truncated": not complete,
    }


class SearchService:
    """Service running exhaustive and first-find searches"""

    def _prefixes(self, query: SearchQuery) -> Tuple[List[List[List[int]]], bool]:
        """Every valid two-row start of the query in lexicographic order, and whether the list is complete"""
        head = query.model_copy(update={"m": 2, "mode": SearchMode.ALL, "threads": 1})
        bt = _Backtracker(head)
        complete = bt.run()
        return bt.found, complete

    def search(self, query: SearchQuery) -> SearchResult:
        started = time.perf_counter()
        stats = SearchStats()
        if query.threads > 1 and query.m > 2:
            count, found, truncated = self._search_parallel(query, stats)
        else:
            bt = _Backtracker(query)
            truncated = not bt.run()
            count, found = bt.count, bt.found
            stats.nodes, stats.prunes, stats.leaves = bt.nodes, bt.prunes, bt.leaves
        stats.wall_time = time.perf_counter() - started

        if query.mode == SearchMode.FIRST:
            found = found[:1]
            count = len(found)
        if truncated:
            logger.warning(
                f"Search {query.m}x{query.n} ({query.mode.value}) stopped at node budget {query.cutoff_nodes}"
            )
        logger.info(
            f"Search {query.m}x{query.n} {query.mode.value}: count={count} nodes={stats.nodes} "
            f"prunes={stats.prunes} time={stats.wall_time:.3f}s"
        )
        return SearchResult(
            query=query,
            count=count,
            rectangles=[LatinRectangle(g) for g in found],
            truncated=truncated,
            stats=stats,
        )

    def _search_parallel(self, query: SearchQuery, stats: SearchStats):
        """Fan the branches below each second row out to worker processes"""
        prefixes, complete = self._prefixes(query)
        payload = query.model_dump(mode="json")
        count, found, truncated = 0, [], not complete
        pool = ProcessPoolExecutor(max_workers=query.threads)
        try:
            # map yields in submission order, so the first hit is the lexicographic minimum
            for part in pool.map(_run_branch, [payload] * len(prefixes), prefixes):
                count += part["count"]
                found.extend(part["found"])
                stats.nodes += part["nodes"]
                stats.prunes += part["prunes"]
                stats.leaves += part["leaves"]
                truncated = truncated or part["truncated"]
                if query.mode == SearchMode.FIRST and found:
                    break
        finally:
            pool.shutdown(wait=True, cancel_futures=True)
        return count, found, truncated


search_service = SearchService()


def search(query: SearchQuery) -> SearchResult:
    return search_service.search(query)
