"""
Factorization Service
Latin rectangle rows as perfect matchings of K_{n,n}. Perfection is re-derived here by
walking the union graph of two matchings, independently of the permutation code path.
"""

import logging
from itertools import combinations
from pathlib import Path
from typing import List, Sequence, Union

from ..core.exceptions import DimensionError
from ..models.factorization import OneFactorization, OracleComparison
from ..models.perfection import ImperfectPair, PerfectionReport
from ..models.rectangle import LatinRectangle
from .perfection_service import perfection_service

logger = logging.getLogger(__name__)


class FactorizationService:
    """Service bridging rectangles and one-factorizations"""

    def to_factorization(self, rect: LatinRectangle) -> OneFactorization:
        """Factor a = {(c, R(a,c))}; the column condition makes the factors edge-disjoint"""
        return OneFactorization(n=rect.cols, factors=rect.to_lists())

    def matchings_from_grid(self, grid: Sequence[Sequence[int]]) -> OneFactorization:
        """Matchings of any grid whose rows are permutations; columns are not checked"""
        rows = [list(r) for r in grid]
        if not rows:
            raise DimensionError("Need at least one row")
        return OneFactorization(n=len(rows[0]), factors=rows)

    def edge_disjoint(self, factorization: OneFactorization) -> bool:
        seen = set()
        for factor in factorization.factors:
            for edge in enumerate(factor):
                if edge in seen:
                    return False
                seen.add(edge)
        return True

    def _check_pair(self, factorization: OneFactorization, a: int, b: int) -> None:
        if a == b:
            raise DimensionError(f"Union needs two distinct factors, got ({a},{b})")
        for f in (a, b):
            if not 0 <= f < factorization.size:
                raise DimensionError(f"Factor {f} outside 0..{factorization.size - 1}")

    def union_cycles(self, factorization: OneFactorization, a: int, b: int) -> List[int]:
        """
        Vertex counts of the cycles of f_a ∪ f_b, descending. Each walk leaves a left
        vertex along its f_a edge and returns to the left side along the f_b edge.
        """
        self._check_pair(factorization, a, b)
        n = factorization.n
        fa = factorization.factors[a]
        # right vertex -> left vertex along f_b
        fb_back = [0] * n
        for c, s in enumerate(factorization.factors[b]):
            fb_back[s] = c

        visited = bytearray(n)
        lengths = []
        for start in range(n):
            if visited[start]:
                continue
            vertices = 0
            left = start
            while not visited[left]:
                visited[left] = 1
                right = fa[left]
                left = fb_back[right]
                vertices += 2
            lengths.append(vertices)
        lengths.sort(reverse=True)
        return lengths

    def union_is_hamiltonian(self, factorization: OneFactorization, a: int, b: int) -> bool:
        return self.union_cycles(factorization, a, b) == [2 * factorization.n]

    def oracle_perfection(self, rect: LatinRectangle) -> PerfectionReport:
        """PerfectionReport derived only from union-graph traversal"""
        factorization = self.to_factorization(rect)
        imperfect = []
        pf = 0
        for a, b in combinations(range(rect.rows), 2):
            lengths = self.union_cycles(factorization, a, b)
            if len(lengths) == 1:
                pf += 1
            else:
                imperfect.append(ImperfectPair(a=a, b=b, lengths=[v // 2 for v in lengths]))
        total = rect.rows * (rect.rows - 1) // 2
        return PerfectionReport(
            rows=rect.rows,
            cols=rect.cols,
            pf=pf,
            total_pairs=total,
            imperfect=imperfect,
            perfect=pf == total,
        )

    def compare(self, rect: LatinRectangle) -> OracleComparison:
        """Run both verifiers and report whether they agree on pf, verdict and imperfect pairs"""
        direct = perfection_service.perfection_report(rect)
        graph = self.oracle_perfection(rect)
        mismatched = sorted(
            [a, b] for a, b, _ in direct.imperfect_set().symmetric_difference(graph.imperfect_set())
        )
        agree = direct.pf == graph.pf and direct.perfect == graph.perfect and not mismatched
        if not agree:
            logger.error(f"Perfection oracles disagree on a {rect.rows}x{rect.cols} rectangle: {mismatched}")
        return OracleComparison(
            agree=agree,
            pf=direct.pf,
            graph_pf=graph.pf,
            perfect=direct.perfect,
            graph_perfect=graph.perfect,
            mismatched_pairs=mismatched,
        )

    def export_edges(self, factorization: OneFactorization) -> str:
        """'u v factor_id' per edge; left vertices 0..n-1, right vertices n..2n-1"""
        n = factorization.n
        lines = [
            f"{c} {n + s} {a}"
            for a, factor in enumerate(factorization.factors)
            for c, s in enumerate(factor)
        ]
        return "\n".join(lines) + "\n"

    def write_edges(self, factorization: OneFactorization, path: Union[str, Path]) -> None:
        Path(path).write_text(self.export_edges(factorization), encoding="ascii")
        logger.info(f"Wrote {factorization.size * factorization.n} edges to {path}")


factorization_service = FactorizationService()


def to_factorization(rect: LatinRectangle) -> OneFactorization:
    return factorization_service.to_factorization(rect)


def union_is_hamiltonian(factorization: OneFactorization, a: int, b: int) -> bool:
    return factorization_service.union_is_hamiltonian(factorization, a, b)


def oracle_perfection(rect: LatinRectangle) -> PerfectionReport:
    return factorization_service.oracle_perfection(rect)


def export_edges(factorization: OneFactorization) -> str:
    return factorization_service.export_edges(factorization)
