"""
LRECT v1 codec.

    line 1        "m n"
    lines 2..m+1  n space-separated base-10 symbols

A single trailing newline is accepted; anything after the grid is rejected.
Diagnostics carry 1-based line and column numbers.
"""

import logging
import re
from pathlib import Path
from typing import List, Tuple, Union

from ..core.config import MAX_SYMBOLS
from ..core.exceptions import LrectParseError
from ..models.rectangle import LatinRectangle
from .rectangle_service import rectangle_service

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"[0-9]+")
_MAX_DIGITS = len(str(MAX_SYMBOLS))


def _tokenize(line: str, lineno: int) -> List[Tuple[int, int]]:
    """Split a line on single spaces, returning (value, 1-based column) pairs"""
    tokens = []
    col = 1
    for raw in line.split(" "):
        if not _TOKEN.fullmatch(raw):
            what = "empty field" if raw == "" else f"invalid token {raw!r}"
            raise LrectParseError(lineno, col, what)
        digits = raw.lstrip("0") or "0"
        if len(digits) > _MAX_DIGITS or int(digits) > MAX_SYMBOLS:
            raise LrectParseError(lineno, col, f"value {digits[:12]} exceeds the maximum of {MAX_SYMBOLS}")
        tokens.append((int(digits), col))
        col += len(raw) + 1
    return tokens


def parse_lrect(text: str) -> LatinRectangle:
    """Parse LRECT v1 text into a validated rectangle"""
    lines = text.split("\n")
    if not lines or lines[0] == "":
        raise LrectParseError(1, 1, "missing header 'm n'")

    header = _tokenize(lines[0], 1)
    if len(header) != 2:
        raise LrectParseError(1, 1, f"header must have 2 fields, found {len(header)}")
    (m, _), (n, n_col) = header
    if m < 1:
        raise LrectParseError(1, 1, "row count must be at least 1")
    if n < 1:
        raise LrectParseError(1, n_col, "column count must be at least 1")

    grid: List[List[int]] = []
    columns: List[List[int]] = []
    for a in range(m):
        lineno = a + 2
        if lineno > len(lines) or (lineno == len(lines) and lines[-1] == ""):
            raise LrectParseError(lineno, 1, f"expected {m} grid lines, found {a}")
        tokens = _tokenize(lines[lineno - 1], lineno)
        if len(tokens) != n:
            col = tokens[n][1] if len(tokens) > n else len(lines[lineno - 1]) + 1
            raise LrectParseError(lineno, col, f"expected {n} symbols, found {len(tokens)}")
        grid.append([v for v, _ in tokens])
        columns.append([c for _, c in tokens])

    rest = lines[m + 1:]
    if rest and rest != [""]:
        raise LrectParseError(m + 2, 1, "trailing garbage after grid")

    report = rectangle_service.validate(grid)
    if not report.valid:
        v = report.violations[0]
        row = v.row if v.row is not None else 0
        col = columns[row][v.column] if v.column is not None else 1
        raise LrectParseError(row + 2, col, v.kind.value)
    return LatinRectangle(grid)


def format_lrect(rect: LatinRectangle) -> str:
    """Serialize a rectangle as LRECT v1 text, newline-terminated"""
    out = [f"{rect.rows} {rect.cols}"]
    out.extend(" ".join(str(x) for x in row) for row in rect)
    return "\n".join(out) + "\n"


def read_lrect(path: Union[str, Path]) -> LatinRectangle:
    path = Path(path)
    logger.debug(f"Reading LRECT file {path}")
    data = path.read_bytes()
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as e:
        line_start = data.rfind(b"\n", 0, e.start) + 1
        line = data.count(b"\n", 0, e.start) + 1
        raise LrectParseError(line, e.start - line_start + 1, f"non-ASCII byte 0x{data[e.start]:02x}") from e
    return parse_lrect(text)


def write_lrect(rect: LatinRectangle, path: Union[str, Path]) -> None:
    path = Path(path)
    path.write_text(format_lrect(rect), encoding="ascii")
    logger.info(f"Wrote {rect.rows}x{rect.cols} rectangle to {path}")
