"""Plain-text catalog format.

Each block is a header line ``n k`` followed by k rows of n decimal symbols.
Blocks are separated by one blank line and lines starting with ``#`` are
comments.  Arrays use the same layout with a header ``r c v`` and ``.`` for
empty cells.
"""

from __future__ import annotations

import io
import os
from pathlib import Path
from typing import Iterable, TextIO

from .arrays import GridArray
from .core import Rectangle
from .errors import ParseError, StructuralError

__all__ = [
    "format_rectangles",
    "write_rectangles",
    "parse_rectangles",
    "read_rectangles",
    "format_arrays",
    "parse_arrays",
]

PathLike = str | os.PathLike[str]


def _block(rect: Rectangle) -> str:
    head = f"{rect.n} {rect.k}"
    return "\n".join([head] + [" ".join(str(s) for s in row) for row in rect.rows])


def format_rectangles(rects: Iterable[Rectangle], comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" if c else "#" for c in comments]
    body = "\n\n".join(_block(r) for r in rects)
    text = "\n".join(lines + ([body] if body else []))
    return text + "\n" if text else ""


def write_rectangles(target: PathLike | TextIO, rects: Iterable[Rectangle], comments: Iterable[str] = ()) -> None:
    text = format_rectangles(rects, comments)
    if isinstance(target, (str, os.PathLike)):
        Path(target).write_text(text)
    else:
        target.write(text)


def _blocks(text: str) -> Iterable[list[tuple[int, str]]]:
    """Group non-comment lines into blank-line separated blocks with line numbers."""
    block: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if block:
                yield block
                block = []
            continue
        block.append((lineno, line))
    if block:
        yield block


def _ints(lineno: int, line: str, empty_ok: bool = False) -> list[int | None]:
    out: list[int | None] = []
    for tok in line.split():
        if empty_ok and tok == ".":
            out.append(None)
            continue
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(f"not an integer: {tok!r}", lineno) from None
    return out


def parse_rectangles(text: str) -> list[Rectangle]:
    rects = []
    for block in _blocks(text):
        lineno, head = block[0]
        header = _ints(lineno, head)
        if len(header) != 2:
            raise ParseError(f"header must be 'n k', got {head!r}", lineno)
        n, k = header
        if n < 1 or k < 1:
            raise ParseError(f"header values must be positive, got {head!r}", lineno)
        rows = block[1:]
        if len(rows) != k:
            where = rows[-1][0] if rows else lineno
            raise ParseError(f"expected {k} rows after the header, found {len(rows)}", where)
        grid = []
        for rl, line in rows:
            vals = _ints(rl, line)
            if len(vals) != n:
                raise ParseError(f"expected {n} symbols, found {len(vals)}", rl)
            if any(not 0 <= v < n for v in vals):
                raise ParseError(f"symbols must lie in 0..{n - 1}", rl)
            grid.append(vals)
        try:
            rects.append(Rectangle.from_rows(grid))
        except StructuralError as exc:
            raise ParseError(str(exc), lineno) from None
    return rects


def read_rectangles(source: PathLike | TextIO) -> list[Rectangle]:
    if isinstance(source, (str, os.PathLike)):
        return parse_rectangles(Path(source).read_text())
    return parse_rectangles(source.read())


def format_arrays(arrays: Iterable[GridArray], comments: Iterable[str] = ()) -> str:
    out = io.StringIO()
    for c in comments:
        out.write(f"# {c}\n" if c else "#\n")
    blocks = []
    for a in arrays:
        rows = [" ".join("." if x is None else str(x) for x in row) for row in a.cells]
        blocks.append("\n".join([f"{a.r} {a.c} {a.v}"] + rows))
    if blocks:
        out.write("\n\n".join(blocks) + "\n")
    return out.getvalue()


def parse_arrays(text: str) -> list[GridArray]:
    arrays = []
    for block in _blocks(text):
        lineno, head = block[0]
        header = _ints(lineno, head)
        if len(header) != 3:
            raise ParseError(f"array header must be 'r c v', got {head!r}", lineno)
        r, c, v = header
        rows = block[1:]
        if len(rows) != r:
            raise ParseError(f"expected {r} rows after the header, found {len(rows)}", rows[-1][0] if rows else lineno)
        grid = []
        for rl, line in rows:
            vals = _ints(rl, line, empty_ok=True)
            if len(vals) != c:
                raise ParseError(f"expected {c} cells, found {len(vals)}", rl)
            grid.append(vals)
        try:
            arrays.append(GridArray.from_rows(grid, v))
        except StructuralError as exc:
            raise ParseError(str(exc), lineno) from None
    return arrays
