"""Arrays derived from rectangles: Construction 1, RL-forms and TA1-TA5.

A GridArray is an r x c grid over symbols 0..v-1 in which cells may be
empty (None).  Construction 1 removes one column of a rectangle together with
every occurrence of that column's symbols and then swaps the roles of columns
and symbols.  Applied to Youden and 3-lambda rectangles it produces the triple,
double and sesqui arrays counted by ``scan_compatibility``.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .core import Rectangle, RectangleKind, _as_rectangle, classify_rectangle, is_latin
from .errors import BoundsError, ClassificationError, ParameterError, PreconditionError, StructuralError

__all__ = [
    "GridArray",
    "ArrayLabel",
    "Classification",
    "ScanSummary",
    "remove_and_swap",
    "rl_form",
    "classify_array",
    "scan_compatibility",
    "summarize_scan",
    "array_canonical_form",
    "array_autotopism_order",
    "build_3lambda_from_triple",
    "remove_and_swap_many",
    "classify_many",
    "canonical_many",
    "ArrayClass",
    "ScanReport",
    "parse_target",
    "scan_catalog",
]

Cell = int | None


@dataclass(frozen=True, order=True)
class GridArray:
    """An r x c grid on v symbols; None marks an empty cell."""

    cells: tuple[tuple[Cell, ...], ...]
    v: int

    def __post_init__(self) -> None:
        if not self.cells or not self.cells[0]:
            raise StructuralError("an array needs at least one row and one column")
        c = len(self.cells[0])
        for i, row in enumerate(self.cells):
            if len(row) != c:
                raise StructuralError(f"row {i} has {len(row)} cells, expected {c}")
            for x in row:
                if x is not None and not 0 <= x < self.v:
                    raise StructuralError(f"row {i} holds symbol {x} outside 0..{self.v - 1}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[Cell]], v: int | None = None) -> "GridArray":
        cells = tuple(tuple(None if x is None or x == -1 else int(x) for x in row) for row in rows)
        if v is None:
            v = 1 + max((x for row in cells for x in row if x is not None), default=-1)
        return cls(cells, v)

    @property
    def r(self) -> int:
        return len(self.cells)

    @property
    def c(self) -> int:
        return len(self.cells[0])

    @property
    def filled(self) -> bool:
        return all(x is not None for row in self.cells for x in row)

    def transpose(self) -> "GridArray":
        return GridArray(tuple(zip(*self.cells)), self.v)

    def to_array(self) -> np.ndarray:
        """int8 copy with -1 for empty cells."""
        return np.array([[-1 if x is None else x for x in row] for row in self.cells], dtype=np.int8)

    def __str__(self) -> str:
        width = max(1, len(str(self.v - 1)))
        return "\n".join(" ".join("." * width if x is None else f"{x:>{width}}" for x in row) for row in self.cells)


class ArrayLabel(str, enum.Enum):
    TRIPLE = "triple"
    PROPER_DOUBLE = "double"
    PROPER_SESQUI = "sesqui"
    TRANSPOSE_OF_PROPER_SESQUI = "sesqui-t"
    NONE = "none"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Classification:
    """Which of TA1-TA5 hold, the constants that go with them, and the label."""

    ta1: bool
    ta2: bool
    ta3: bool
    ta4: bool
    ta5: bool
    e: int | None
    lambda_rr: int | None
    lambda_cc: int | None
    lambda_rc: int | None
    label: ArrayLabel

    @property
    def flags(self) -> tuple[bool, bool, bool, bool, bool]:
        return (self.ta1, self.ta2, self.ta3, self.ta4, self.ta5)


def _label(ta1: bool, ta2: bool, ta3: bool, ta4: bool, ta5: bool) -> ArrayLabel:
    if ta1 and ta2 and ta3 and ta4:
        return ArrayLabel.TRIPLE if ta5 else ArrayLabel.PROPER_DOUBLE
    if ta1 and ta2 and ta3 and ta5:
        return ArrayLabel.PROPER_SESQUI
    # the transpose swaps TA3 and TA4 and keeps the rest
    if ta1 and ta2 and ta4 and ta5:
        return ArrayLabel.TRANSPOSE_OF_PROPER_SESQUI
    return ArrayLabel.NONE


def _classification(raw: Sequence[int]) -> Classification:
    """Build a Classification from the kernel's (ta1, e, l_rr, l_cc, l_rc) codes."""
    ta1 = bool(raw[0])

    def held(x: int) -> tuple[bool, int | None]:
        if x == -2:
            return False, None
        return True, (None if x == -1 else int(x))

    ta2, e = held(raw[1])
    ta3, lrr = held(raw[2])
    ta4, lcc = held(raw[3])
    ta5, lrc = held(raw[4])
    if e == 0:
        ta2, e = False, None
    return Classification(ta1, ta2, ta3, ta4, ta5, e, lrr, lcc, lrc, _label(ta1, ta2, ta3, ta4, ta5))


def classify_array(A: GridArray) -> Classification:
    """Evaluate TA1-TA5 on a filled array.

    TA1 no symbol twice in a row or column; TA2 every symbol occurs e times;
    TA3, TA4, TA5 constant row/row, column/column and row/column overlaps.
    """
    if not A.filled:
        raise ClassificationError("classify_array needs a filled array")
    raw = _kernels.array_conditions(A.to_array(), A.v)
    return _classification(raw)


def remove_and_swap(Y: Rectangle, c: int) -> GridArray:
    """Construction 1 on column ``c`` of Y.

    Cell (row i, j-th surviving symbol s) holds the column of Y where s sits
    in row i, with Y's columns other than c renumbered 0..n-2.
    """
    Y = _as_rectangle(Y)
    n, k = Y.n, Y.k
    if not 0 <= c < n:
        raise BoundsError(f"column {c} out of range 0..{n - 1}")
    if not is_latin(Y):
        raise PreconditionError("rectangle violates the Latin condition")
    removed = set(Y.column(c))
    survivors = [s for s in range(n) if s not in removed]
    cells = []
    for row in Y.rows:
        where = {s: j for j, s in enumerate(row)}
        cells.append(tuple(where[s] - (where[s] > c) for s in survivors))
    return GridArray(tuple(cells), n - 1)


def rl_form(T: GridArray) -> GridArray:
    """r x v array whose cell (i, s) is the column of T holding s in row i."""
    if not T.filled:
        raise ClassificationError("rl_form needs a filled array")
    cl = classify_array(T)
    if not (cl.ta1 and cl.ta2):
        raise ClassificationError("rl_form needs TA1 and TA2")
    cells = []
    for row in T.cells:
        where: list[Cell] = [None] * T.v
        for j, s in enumerate(row):
            where[s] = j
        cells.append(tuple(where))
    return GridArray(tuple(cells), T.c)


@dataclass(frozen=True)
class ScanSummary:
    """Construction-1 results for one rectangle, per column and per label."""

    per_column: tuple[Classification, ...]
    by_label: dict[ArrayLabel, int]

    def columns_with(self, label: ArrayLabel) -> list[int]:
        return [j for j, cl in enumerate(self.per_column) if cl.label is label]


def scan_compatibility(Y: Rectangle) -> list[Classification]:
    """Classification of remove_and_swap(Y, c) for every column c."""
    Y = _as_rectangle(Y)
    kind = classify_rectangle(Y)
    if kind not in (RectangleKind.YOUDEN, RectangleKind.THREE_LAMBDA):
        raise PreconditionError(f"scan_compatibility needs a Youden or 3-lambda rectangle, got {kind}")
    arrays = _kernels.remove_and_swap_all(Y.to_array()[None])
    raw = _kernels.array_conditions_batch(arrays, Y.n - 1)
    return [_classification(x) for x in raw]


def summarize_scan(per_column: Sequence[Classification]) -> ScanSummary:
    counts = Counter(cl.label for cl in per_column)
    return ScanSummary(tuple(per_column), {lab: counts.get(lab, 0) for lab in ArrayLabel})


@lru_cache(maxsize=None)
def _perm_table(m: int) -> np.ndarray:
    return np.array(list(permutations(range(m))), dtype=np.int64).reshape(-1, m)


def _canonical_raw(M: np.ndarray, v: int) -> tuple[np.ndarray, int]:
    r, c = M.shape
    return _kernels.array_canonical(np.ascontiguousarray(M, dtype=np.int8), v, _perm_table(r), _perm_table(c))


def _key(M: np.ndarray) -> tuple[tuple[int, ...], tuple[int, int]]:
    return tuple(M.ravel().tolist()), M.shape


def array_canonical_form(A: GridArray, fold_transposes: bool = False) -> GridArray:
    """Least row-major reading over row, column and symbol permutations.

    Symbols are relabelled by first appearance, so the form uses 0..u-1 for
    the u symbols that occur.  With ``fold_transposes`` the transpose's form
    competes too; the smaller flattened reading wins, ties broken by shape.
    """
    if not A.filled:
        raise ClassificationError("array_canonical_form needs a filled array")
    M = A.to_array()
    best, _ = _canonical_raw(M, A.v)
    if fold_transposes:
        other, _ = _canonical_raw(M.T, A.v)
        if _key(other) < _key(best):
            best = other
    return GridArray.from_rows(best.tolist(), A.v)


def array_autotopism_order(A: GridArray) -> int:
    """Number of (row, column, symbol) permutation triples fixing A."""
    if not A.filled:
        raise ClassificationError("array_autotopism_order needs a filled array")
    return int(_canonical_raw(A.to_array(), A.v)[1])


def build_3lambda_from_triple(T: GridArray) -> Rectangle:
    """A 3-lambda rectangle with T as Construction-1 output on column 0.

    Column 0 holds r new symbols c, c+1, ..., c+r-1 (one per row); columns
    1..v are the RL-form of T, with the empty cells of row i filled left to
    right by the new symbols other than row i's own, in increasing order.
    """
    cl = classify_array(T)
    if cl.label is not ArrayLabel.TRIPLE:
        raise ParameterError(f"expected a triple array, got {cl.label}")
    r, c, v = T.r, T.c, T.v
    if v != r + c - 1:
        raise ParameterError(f"need v = r + c - 1, got v={v}, r={r}, c={c}")
    if cl.lambda_cc != 1:
        raise ParameterError(f"need lambda_cc = 1, got {cl.lambda_cc}")
    rl = rl_form(T)
    new = [c + i for i in range(r)]
    rows = []
    for i, row in enumerate(rl.cells):
        fill = iter(s for s in new if s != new[i])
        rows.append([new[i]] + [next(fill) if x is None else x for x in row])
    return Rectangle.from_rows(rows)


def remove_and_swap_many(rects: np.ndarray) -> np.ndarray:
    """Construction 1 on every column of a stack of (k, n) rectangles.

    Index q * n + c of the result is the array from rectangle q, column c.
    """
    return _kernels.remove_and_swap_all(np.ascontiguousarray(rects, dtype=np.int8))


def classify_many(arrays: np.ndarray, v: int) -> list[Classification]:
    raw = _kernels.array_conditions_batch(np.ascontiguousarray(arrays, dtype=np.int8), v)
    return [_classification(x) for x in raw]


def canonical_many(arrays: np.ndarray, v: int) -> tuple[np.ndarray, np.ndarray]:
    """Canonical forms and autotopism orders for a stack of filled arrays."""
    arrays = np.ascontiguousarray(arrays, dtype=np.int8)
    if not len(arrays):
        return arrays, np.zeros(0, np.int64)
    _, r, c = arrays.shape
    return _kernels.array_canonical_batch(arrays, v, _perm_table(r), _perm_table(c))


_TARGETS = {
    "triple": ArrayLabel.TRIPLE,
    "double": ArrayLabel.PROPER_DOUBLE,
    "sesqui": ArrayLabel.PROPER_SESQUI,
    "sesqui-t": ArrayLabel.TRANSPOSE_OF_PROPER_SESQUI,
}


@dataclass(frozen=True)
class ArrayClass:
    """One isotopism class of arrays met in a scan."""

    form: GridArray
    aut_order: int
    rectangles: int  # how many scanned rectangles produce it
    columns: int  # how many (rectangle, column) pairs produce it


@dataclass(frozen=True)
class ScanReport:
    label: ArrayLabel
    fold_transposes: bool
    compatible_rectangles: int
    compatible_columns: int
    classes: tuple[ArrayClass, ...]

    @property
    def distinct_arrays(self) -> int:
        return len(self.classes)


def parse_target(name: str | ArrayLabel) -> ArrayLabel:
    if isinstance(name, ArrayLabel):
        return name
    try:
        return _TARGETS[name]
    except KeyError:
        raise ParameterError(f"unknown scan target {name!r}; pick one of {sorted(_TARGETS)}") from None


def _label_mask(raw: np.ndarray, label: ArrayLabel) -> np.ndarray:
    held = raw[:, 1:] != -2
    ta1 = raw[:, 0] == 1
    ta2 = held[:, 0] & (raw[:, 1] > 0)
    ta3, ta4, ta5 = held[:, 1], held[:, 2], held[:, 3]
    base = ta1 & ta2
    if label is ArrayLabel.TRIPLE:
        return base & ta3 & ta4 & ta5
    if label is ArrayLabel.PROPER_DOUBLE:
        return base & ta3 & ta4 & ~ta5
    if label is ArrayLabel.PROPER_SESQUI:
        return base & ta3 & ta5 & ~ta4
    if label is ArrayLabel.TRANSPOSE_OF_PROPER_SESQUI:
        return base & ta4 & ta5 & ~ta3
    raise ParameterError(f"cannot scan for label {label}")


def scan_catalog(
    rects: Sequence[Rectangle] | np.ndarray,
    target: str | ArrayLabel,
    fold_transposes: bool = False,
) -> ScanReport:
    """Apply Construction 1 to every column of every rectangle and count hits.

    Arrays are grouped by isotopism class (with transposes folded in on
    request); each class records how many rectangles and columns produce it.
    """
    label = parse_target(target)
    if isinstance(rects, np.ndarray):
        stack = np.ascontiguousarray(rects, dtype=np.int8)
    else:
        rects = [_as_rectangle(R) for R in rects]
        for R in rects:
            kind = classify_rectangle(R)
            if kind not in (RectangleKind.YOUDEN, RectangleKind.THREE_LAMBDA):
                raise PreconditionError(f"scans need Youden or 3-lambda rectangles, got {kind}")
        if not rects:
            return ScanReport(label, fold_transposes, 0, 0, ())
        if len({(R.k, R.n) for R in rects}) != 1:
            raise StructuralError("all rectangles in a scan must share one shape")
        stack = np.array([R.rows for R in rects], dtype=np.int8)
    m, k, n = stack.shape
    arrays = remove_and_swap_many(stack)
    raw = _kernels.array_conditions_batch(arrays, n - 1)
    hits = np.nonzero(_label_mask(raw, label))[0]
    picked = arrays[hits]
    forms, auts = canonical_many(picked, n - 1)
    keys = [_key(f) for f in forms]
    if fold_transposes and len(picked):
        tforms, tauts = canonical_many(np.ascontiguousarray(picked.transpose(0, 2, 1)), n - 1)
        for q, tf in enumerate(tforms):
            tk = _key(tf)
            if tk < keys[q]:
                keys[q] = tk
                auts[q] = tauts[q]
    groups: dict[tuple, list[int]] = {}
    for q, key in enumerate(keys):
        groups.setdefault(key, []).append(q)
    classes = []
    for key in sorted(groups):
        members = groups[key]
        flat, shape = key
        form = GridArray.from_rows(np.array(flat, dtype=np.int64).reshape(shape).tolist(), n - 1)
        rect_ids = {int(hits[q]) // n for q in members}
        classes.append(ArrayClass(form, int(auts[members[0]]), len(rect_ids), len(members)))
    return ScanReport(
        label,
        fold_transposes,
        len({int(h) // n for h in hits}),
        len(hits),
        tuple(classes),
    )
