"""
Extension Service
Width extension of a perfect m x n rectangle by a perfect m x m square into a perfect
m x (n+m-1) rectangle, certification of the resulting cycles, and the chain planner that
schedules extensions to reach every odd width residue modulo m-1.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Union

import numpy as np

from ..core.exceptions import (
    CertificationError,
    ChainVerificationError,
    ConstructionError,
    DimensionError,
)
from ..models.extension import ChainPlan, ExtensionPlan, ExtensionTrace, PairWitness
from ..models.rectangle import LatinRectangle
from .generator_service import generator_service
from .perfection_service import perfection_service
from .rectangle_service import rectangle_service
from .registry_service import RegistryService, get_registry

logger = logging.getLogger(__name__)

Source = Union[LatinRectangle, ExtensionTrace]


def _pair_map(cells: np.ndarray, a: int, b: int) -> Dict[int, int]:
    return dict(zip(cells[a].tolist(), cells[b].tolist()))


class ExtensionService:
    """Service implementing width extension, certification and chain execution"""

    def extend(
        self,
        source: Source,
        square: LatinRectangle,
        plan: Optional[ExtensionPlan] = None,
        checked: bool = True,
    ) -> ExtensionTrace:
        """
        Build T from R (m x n) and S (m x m): delete column c of R, overwrite symbol s
        of the relabeled S in each row a by R(a, c), and concatenate R' with S'.

        The source may be a previous trace, in which case its raw labels are used and
        the relabel base defaults to its largest label plus one.
        """
        if isinstance(source, ExtensionTrace):
            r_cells = np.array(source.raw_result, dtype=np.int64)
            r_canonical = source.result
            max_label = max(source.symbol_map)
        else:
            r_cells = source.cells.astype(np.int64)
            r_canonical = source
            max_label = source.cols - 1
        m, n = r_cells.shape

        if square.shape != (m, m):
            raise DimensionError(
                f"S must be a square with {m} rows, got {square.rows}x{square.cols}"
            )
        base = max_label + 1
        if plan is None:
            plan = ExtensionPlan(c=n - 1, s=base, relabel_base=base)
        elif plan.relabel_base is None:
            plan = plan.model_copy(update={"relabel_base": base})
        if plan.relabel_base <= max_label:
            raise DimensionError(
                f"relabel_base {plan.relabel_base} overlaps R's alphabet (largest label {max_label})"
            )
        if not 0 <= plan.c < n:
            raise DimensionError(f"Column {plan.c} outside 0..{n - 1}")
        if not plan.relabel_base <= plan.s < plan.relabel_base + m:
            raise DimensionError(
                f"Symbol {plan.s} outside S's alphabet {plan.relabel_base}..{plan.relabel_base + m - 1}"
            )

        if checked:
            perfection_service.require_perfect(r_canonical, name="R")
            perfection_service.require_perfect(square, name="S")

        s_cells = square.cells.astype(np.int64) + plan.relabel_base
        deleted = r_cells[:, plan.c]
        substitution = np.argmax(s_cells == plan.s, axis=1)

        s_prime = s_cells.copy()
        s_prime[np.arange(m), substitution] = deleted
        raw = np.hstack([np.delete(r_cells, plan.c, axis=1), s_prime])

        symbol_map = np.unique(raw)
        result = LatinRectangle(np.searchsorted(symbol_map, raw))

        logger.info(
            f"Extended {m}x{n} with {m}x{m} square (c={plan.c}, s={plan.s}) -> {m}x{result.cols}"
        )
        return ExtensionTrace(
            plan=plan,
            rows=m,
            source_width=n,
            width=result.cols,
            source_cells=r_cells.tolist(),
            square_cells=s_cells.tolist(),
            substitution_column=substitution.tolist(),
            deleted_column_symbols=deleted.tolist(),
            raw_result=raw.tolist(),
            symbol_map=symbol_map.tolist(),
            result=result,
        )

    def _witness(self, trace: ExtensionTrace, a: int, b: int) -> PairWitness:
        """Walk T_{a,b} from R(b,c) and check each phase of the cycle"""
        r_cells = np.array(trace.source_cells, dtype=np.int64)
        s_cells = np.array(trace.square_cells, dtype=np.int64)
        t_cells = np.array(trace.raw_result, dtype=np.int64)
        m, n, c = trace.rows, trace.source_width, trace.plan.c
        sub = trace.substitution_column

        t_map = _pair_map(t_cells, a, b)
        r_map = _pair_map(r_cells, a, b)
        s_map = _pair_map(s_cells, a, b)

        start = int(r_cells[b, c])
        cycle = [start]
        x = start
        step = 0

        def advance(expected: int, phase: str) -> None:
            nonlocal x, step
            step += 1
            y = t_map[x]
            if y != expected:
                raise CertificationError(a, b, step, f"{phase}: got {y}, expected {expected}")
            x = y

        for _ in range(n - 1):
            advance(r_map[x], "follows R_{a,b}")
            cycle.append(x)
        if x != r_cells[a, c]:
            raise CertificationError(a, b, step, f"expected R(a,c)={r_cells[a, c]} after n-1 steps, at {x}")

        advance(int(s_cells[b, sub[a]]), "enters S at S(b,S(a))")
        cycle.append(x)
        for _ in range(m - 2):
            advance(s_map[x], "follows S_{a,b}")
            cycle.append(x)
        if x != s_cells[a, sub[b]]:
            raise CertificationError(a, b, step, f"expected S(a,S(b))={s_cells[a, sub[b]]}, at {x}")

        advance(start, "returns to R(b,c)")
        if len(set(cycle)) != n + m - 1:
            raise CertificationError(a, b, step, "cycle revisits a symbol")
        return PairWitness(a=a, b=b, cycle=cycle, phase_lengths=(n - 1, 1, m - 2, 1))

    def certify_extension(self, trace: ExtensionTrace, threads: int = 1) -> List[PairWitness]:
        """Certified full cycle of every ordered row pair of the output"""
        pairs = [(a, b) for a in range(trace.rows) for b in range(trace.rows) if a != b]
        try:
            if threads > 1 and len(pairs) > 1:
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    witnesses = list(pool.map(lambda p: self._witness(trace, *p), pairs))
            else:
                witnesses = [self._witness(trace, a, b) for a, b in pairs]
        except CertificationError as e:
            logger.error(f"Extension certification failed: {e}")
            raise
        logger.debug(f"Certified {len(witnesses)} ordered pairs of a {trace.rows}x{trace.width} extension")
        return witnesses

    def extend_repeatedly(
        self, rect: LatinRectangle, square: LatinRectangle, times: int
    ) -> LatinRectangle:
        """Apply the default extension with the same square a number of times"""
        for _ in range(times):
            rect = self.extend(rect, square, checked=False).result
        return rect

    def plan_chain(self, m: int, target_i: int) -> ChainPlan:
        """Schedule n_i = r + j(r-1) with j = (m-2-i)/2 and r = prime_in_progression(m)"""
        if m < 3 or m % 2 == 0:
            raise DimensionError(f"Chains need odd m >= 3, got {m}")
        if target_i % 2 == 0 or not 1 <= target_i <= m - 2:
            raise DimensionError(f"target_i must be odd in 1..{m - 2}, got {target_i}")
        r = generator_service.prime_in_progression(m)
        j = (m - 2 - target_i) // 2
        n_i = r + j * (r - 1)
        if (n_i - target_i) % (m - 1) != 0:
            raise ChainVerificationError(f"n_i={n_i} is not congruent to {target_i} mod {m - 1}")
        steps = []
        for t in range(j):
            width = r + t * (r - 1)
            steps.append(ExtensionPlan(c=width - 1, s=width, relabel_base=width))
        return ChainPlan(m=m, r=r, target_i=target_i, j=j, n_i=n_i, steps=steps)

    def execute_chain(self, plan: ChainPlan) -> LatinRectangle:
        """Extend cyclic(r) j times with cyclic(r), truncate to m rows and verify"""
        square = generator_service.cyclic(plan.r)
        rect = square
        for step in plan.steps:
            rect = self.extend(rect, square, plan=step, checked=False).result
            logger.debug(f"Chain m={plan.m} i={plan.target_i}: width {rect.cols}")
        rect = rectangle_service.truncate_rows(rect, plan.m)
        report = perfection_service.perfection_report(rect)
        if not report.perfect or rect.cols != plan.n_i:
            logger.error(f"Chain m={plan.m} i={plan.target_i} failed verification: pf={report.pf}")
            raise ChainVerificationError(
                f"Chain output {rect.rows}x{rect.cols} failed verification (pf={report.pf}/{report.total_pairs})"
            )
        logger.info(f"Chain m={plan.m} i={plan.target_i} produced a perfect {rect.rows}x{rect.cols} rectangle")
        return rect

    def _chain_order(self, m: int, registry: RegistryService) -> int:
        """Row count of the perfect square the construction extends with"""
        if m % 2 == 1 and registry.is_known_member(m):
            return m
        return generator_service.chebyshev_prime(m)

    def _member_in_class(
        self, order: int, residue: int, limit: int, registry: RegistryService
    ) -> Optional[int]:
        """Smallest known member w with order <= w <= limit and w = residue (mod order-1)"""
        w = order + (residue - 1) % (order - 1)
        while w <= limit:
            if registry.is_known_member(w):
                return w
            w += order - 1
        return None

    def _seed_width(self, order: int, residue: int, registry: RegistryService) -> int:
        """Narrowest width in the residue class that has a perfect order-row seed"""
        n_i = self.plan_chain(order, residue).n_i
        w = self._member_in_class(order, residue, n_i, registry)
        return n_i if w is None else w

    def constructive_bound(self, m: int, registry: Optional[RegistryService] = None) -> int:
        """Smallest width from which construct reaches every odd width"""
        if m < 1:
            raise DimensionError(f"Row count must be at least 1, got {m}")
        if m <= 2:
            return m
        registry = registry or get_registry()
        order = self._chain_order(m, registry)
        return max(self._seed_width(order, i, registry) for i in range(1, order - 1, 2))

    def construct(self, m: int, n: int, registry: Optional[RegistryService] = None) -> LatinRectangle:
        """A perfect m x n rectangle built from known squares, extensions and chains"""
        if m < 1 or n < m:
            raise DimensionError(f"Need 1 <= m <= n, got m={m}, n={n}")
        if m <= 2:
            return rectangle_service.truncate_rows(generator_service.cyclic(n), m)
        if n % 2 == 0:
            raise ConstructionError(
                f"No perfect {m}x{n} rectangle exists: with three or more rows the width must be odd",
                reason="parity",
            )
        registry = registry or get_registry()

        direct = registry.perfect_square(n)
        if direct is not None:
            return rectangle_service.truncate_rows(direct, m)

        order = self._chain_order(m, registry)
        if order > n:
            raise ConstructionError(
                f"Width {n} is below the {order}-row square the construction extends with",
                reason="below-threshold",
            )
        residue = n % (order - 1)
        w = self._member_in_class(order, residue, n, registry)
        if w is not None:
            seed = rectangle_service.truncate_rows(registry.perfect_square(w), order)
        else:
            plan = self.plan_chain(order, residue)
            if n < plan.n_i:
                raise ConstructionError(
                    f"Width {n} is below the constructive threshold n_i={plan.n_i} for residue {residue}",
                    reason="below-threshold",
                )
            seed, w = self.execute_chain(plan), plan.n_i

        rect = self.extend_repeatedly(seed, registry.perfect_square(order), (n - w) // (order - 1))
        rect = rectangle_service.truncate_rows(rect, m)
        perfection_service.require_perfect(rect, name="constructed rectangle")
        logger.info(f"Constructed perfect {m}x{n} rectangle from a {order}x{w} seed")
        return rect


extension_service = ExtensionService()


def extend(source: Source, square: LatinRectangle, plan: Optional[ExtensionPlan] = None,
           checked: bool = True) -> ExtensionTrace:
    return extension_service.extend(source, square, plan, checked)


def certify_extension(trace: ExtensionTrace, threads: int = 1) -> List[PairWitness]:
    return extension_service.certify_extension(trace, threads)


def plan_chain(m: int, target_i: int) -> ChainPlan:
    return extension_service.plan_chain(m, target_i)


def execute_chain(plan: ChainPlan) -> LatinRectangle:
    return extension_service.execute_chain(plan)


def construct(m: int, n: int) -> LatinRectangle:
    return extension_service.construct(m, n)
