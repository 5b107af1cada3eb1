"""
Subcommand handlers. Each takes the parsed arguments and returns a CommandResult;
exceptions propagate to run(), which maps them to exit codes.
"""

import json
import logging
from pathlib import Path
from typing import Optional

from ..core.exceptions import LrectParseError, PerfectLatinError
from ..models.cli import CommandResult, ExitCode
from ..models.extension import ExtensionPlan, ExtensionReport, WitnessSummary
from ..models.rectangle import LatinRectangle
from ..models.search import SearchMode, SearchQuery, ThetaStatus
from ..services.extension_service import extension_service
from ..services.factorization_service import factorization_service
from ..services.generator_service import generator_service
from ..services.lrect_codec import format_lrect, read_lrect, write_lrect
from ..services.perfection_service import perfection_service
from ..services.search_service import search_service
from ..services.theta_service import theta_service

logger = logging.getLogger(__name__)


class InputFileError(PerfectLatinError):
    """An input file could not be parsed; message names the file, line and column"""
    pass


def _load(path: str) -> LatinRectangle:
    try:
        return read_lrect(path)
    except LrectParseError as e:
        raise InputFileError(f"{path}: {e}") from e


def _emit_or_print(rect: LatinRectangle, emit: Optional[str]) -> str:
    """Write to the emit path when given, otherwise return the LRECT text for stdout"""
    if emit:
        write_lrect(rect, emit)
        return f"wrote {rect.rows}x{rect.cols} rectangle to {emit}\n"
    return format_lrect(rect)


def gen_cyclic(args) -> CommandResult:
    rect = generator_service.cyclic(args.n)
    return CommandResult(
        text=_emit_or_print(rect, args.emit),
        payload={"rectangle": rect.to_lists()},
    )


def verify(args) -> CommandResult:
    rect = _load(args.file)
    report = perfection_service.perfection_report(rect, threads=args.threads)
    return CommandResult(
        exit_code=ExitCode.OK if report.perfect else ExitCode.VERIFIED_FALSE,
        text=perfection_service.format_report(report),
        payload=report.model_dump(),
    )


def extend(args) -> CommandResult:
    rect = _load(args.rect)
    square = _load(args.square)
    plan = None
    if args.col is not None or args.sym is not None or args.base is not None:
        base = args.base if args.base is not None else rect.cols
        plan = ExtensionPlan(
            c=args.col if args.col is not None else rect.cols - 1,
            s=args.sym if args.sym is not None else base,
            relabel_base=base,
        )
    trace = extension_service.extend(rect, square, plan)
    witnesses = extension_service.certify_extension(trace, threads=args.threads)

    report = ExtensionReport(
        **dict(trace),
        witnesses=[
            WitnessSummary(a=w.a, b=w.b, length=len(w.cycle), phase_lengths=w.phase_lengths)
            for w in witnesses
        ],
    )
    payload = report.model_dump(mode="json")
    if args.trace:
        Path(args.trace).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        logger.info(f"Wrote extension trace to {args.trace}")
    return CommandResult(text=_emit_or_print(trace.result, args.emit), payload=payload)


def chain(args) -> CommandResult:
    plan = extension_service.plan_chain(args.m, args.i)
    rect = extension_service.execute_chain(plan)
    return CommandResult(
        text=_emit_or_print(rect, args.emit),
        payload={"plan": plan.model_dump(), "rectangle": rect.to_lists()},
    )


def construct(args) -> CommandResult:
    rect = extension_service.construct(args.m, args.n)
    return CommandResult(
        text=_emit_or_print(rect, args.emit),
        payload={"m": args.m, "n": args.n, "rectangle": rect.to_lists()},
    )


def search(args) -> CommandResult:
    query = SearchQuery(
        m=args.m,
        n=args.n,
        mode=SearchMode(args.mode),
        reduce=args.reduced,
        cutoff_nodes=args.budget,
        prune_pairs=not args.no_prune,
        require_perfect=not args.unfiltered,
        threads=args.threads,
    )
    result = search_service.search(query)

    blocks = [format_lrect(r) for r in result.rectangles]
    stats = [
        f"count {result.count}",
        f"truncated {'true' if result.truncated else 'false'}",
        f"nodes {result.stats.nodes}",
        f"prunes {result.stats.prunes}",
        f"leaves {result.stats.leaves}",
    ]
    blocks.append("\n".join(stats) + "\n")
    logger.info(f"search wall time {result.stats.wall_time:.3f}s")

    if result.truncated:
        code = ExitCode.BUDGET_EXHAUSTED
    elif query.mode == SearchMode.FIRST and not result.rectangles:
        code = ExitCode.VERIFIED_FALSE
    else:
        code = ExitCode.OK
    return CommandResult(exit_code=code, text="\n".join(blocks), payload=result.model_dump(mode="json"))


def _theta_line(entry) -> str:
    if entry.status == ThetaStatus.UNKNOWN:
        return f"theta({entry.m},{entry.i}) unknown above {entry.cutoff}"
    line = f"theta({entry.m},{entry.i}) = {entry.value} ({entry.status.value}, {entry.source.value})"
    if entry.undecided_widths:
        line += f" undecided: {' '.join(str(k) for k in entry.undecided_widths)}"
    return line


def theta(args) -> CommandResult:
    result = theta_service.theta(args.m, args.i, args.cutoff, budget=args.budget, threads=args.threads)
    text = _theta_line(result) + "\n"
    if result.witness is not None:
        text += format_lrect(result.witness)
    code = ExitCode.BUDGET_EXHAUSTED if result.status == ThetaStatus.UNKNOWN else ExitCode.OK
    return CommandResult(exit_code=code, text=text, payload=result.model_dump(mode="json"))


def theta_m(args) -> CommandResult:
    table = theta_service.theta_m(args.m, args.cutoff, budget=args.budget, threads=args.threads)
    lines = [_theta_line(e) for e in table.entries]
    if table.value is not None:
        lines.append(f"theta({table.m}) <= {table.value} ({table.status.value})")
    else:
        lines.append(f"theta({table.m}) unknown above {table.cutoff}")
    if table.claimed is not None:
        lines.append(f"claimed theta({table.m}) = {table.claimed}")
    code = ExitCode.BUDGET_EXHAUSTED if table.status == ThetaStatus.UNKNOWN else ExitCode.OK
    payload = table.model_dump(mode="json")
    return CommandResult(exit_code=code, text="\n".join(lines) + "\n", payload=payload)


def bound(args) -> CommandResult:
    report = generator_service.bound(args.m)
    text = (
        f"unconditional {report.unconditional}\n"
        f"conditional {report.conditional}\n"
        f"# {report.note}\n"
    )
    return CommandResult(text=text, payload=report.model_dump())


def export_factorization(args) -> CommandResult:
    factorization = factorization_service.to_factorization(_load(args.file))
    if args.out:
        factorization_service.write_edges(factorization, args.out)
        text = f"wrote {factorization.size * factorization.n} edges to {args.out}\n"
    else:
        text = factorization_service.export_edges(factorization)
    return CommandResult(text=text, payload=factorization.model_dump())


def oracle_verify(args) -> CommandResult:
    comparison = factorization_service.compare(_load(args.file))
    text = (
        f"pf {comparison.pf} permutation / {comparison.graph_pf} graph\n"
        f"perfect {str(comparison.perfect).lower()} permutation / {str(comparison.graph_perfect).lower()} graph\n"
        f"agree {str(comparison.agree).lower()}\n"
    )
    ok = comparison.agree and comparison.perfect
    return CommandResult(
        exit_code=ExitCode.OK if ok else ExitCode.VERIFIED_FALSE,
        text=text,
        payload=comparison.model_dump(),
    )
