"""Rectangle data model and the combinatorial predicates on it.

A rectangle is a k x n grid over the symbols 0..n-1.  Columns are treated as
k-subsets of the symbol set, which is how every intersection and covering
statistic below is defined.  Column symbol sets are kept as integer bit masks
so that an intersection size is a popcount.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import BoundsError, ParameterError, PreconditionError, StructuralError, TrivialParametersError

__all__ = [
    "Params",
    "Rectangle",
    "RectangleKind",
    "IntersectionProfile",
    "CoverageTable",
    "lambda_exact",
    "lambda_value",
    "lambda_bounds",
    "nyr_split",
    "is_latin",
    "column_intersection",
    "intersection_profile",
    "classify_rectangle",
    "covering_table",
    "tsuji_sides",
    "intersection_distribution",
]

MAX_SYMBOLS = 62


@dataclass(frozen=True)
class Params:
    """Column/symbol count ``n`` and row count ``k``."""

    n: int
    k: int

    def check(self) -> "Params":
        """Raise unless 2 <= k <= n-2; return self for chaining."""
        if not isinstance(self.n, int) or not isinstance(self.k, int):
            raise ParameterError(f"n and k must be integers, got {self.n!r}, {self.k!r}")
        if self.n < 2:
            raise ParameterError(f"n must be at least 2, got {self.n}")
        if self.n > MAX_SYMBOLS:
            raise ParameterError(f"n > {MAX_SYMBOLS} is not supported")
        if not 2 <= self.k <= self.n - 2:
            raise TrivialParametersError(
                f"trivial parameters (n={self.n}, k={self.k}): need 2 <= k <= n-2"
            )
        return self

    @property
    def lam(self) -> Fraction:
        return lambda_value(self)


def lambda_value(p: Params) -> Fraction:
    """k(k-1)/(n-1) as an exact fraction (no validation beyond n > 1)."""
    if p.n < 2:
        raise ParameterError(f"n must be at least 2, got {p.n}")
    return Fraction(p.k * (p.k - 1), p.n - 1)


def lambda_exact(p: Params) -> int | None:
    """The Youden intersection size, or None when k(k-1)/(n-1) is fractional."""
    lam = lambda_value(p.check())
    return int(lam) if lam.denominator == 1 else None


def lambda_bounds(p: Params) -> tuple[int, int]:
    """(floor, ceil) of k(k-1)/(n-1)."""
    lam = lambda_value(p.check())
    return math.floor(lam), math.ceil(lam)


def nyr_split(p: Params) -> tuple[int, int]:
    """Number of other columns a near Youden column meets in lambda1 and lambda2 symbols."""
    lo, hi = lambda_bounds(p)
    kk = p.k * (p.k - 1)
    return hi * (p.n - 1) - kk, kk - lo * (p.n - 1)


class RectangleKind(str, enum.Enum):
    YOUDEN = "youden"
    NEAR_YOUDEN = "nyr"
    THREE_LAMBDA = "3lambda"
    LATIN_ONLY = "latin"
    NOT_LATIN = "not-latin"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: str | "RectangleKind") -> "RectangleKind":
        if isinstance(text, RectangleKind):
            return text
        aliases = {"y": "youden", "yr": "youden", "near-youden": "nyr", "3-lambda": "3lambda", "3l": "3lambda"}
        key = text.strip().lower()
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ParameterError(f"unknown rectangle kind {text!r}") from None


@dataclass(frozen=True, order=True)
class Rectangle:
    """A k x n grid on the symbols 0..n-1, stored row-major as nested tuples.

    Ordering compares the row-major cell sequence, which is the tie-break used
    everywhere canonical forms are chosen.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = self.rows
        if not rows or not rows[0]:
            raise StructuralError("a rectangle needs at least one row and one column")
        n = len(rows[0])
        if n > MAX_SYMBOLS:
            raise StructuralError(f"at most {MAX_SYMBOLS} columns are supported")
        for r, row in enumerate(rows):
            if len(row) != n:
                raise StructuralError(f"row {r} has {len(row)} cells, expected {n}")
            for s in row:
                if not 0 <= s < n:
                    raise StructuralError(f"row {r} holds symbol {s} outside 0..{n - 1}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]] | np.ndarray) -> "Rectangle":
        if isinstance(rows, Rectangle):
            return rows
        try:
            return cls(tuple(tuple(int(x) for x in row) for row in rows))
        except TypeError as exc:
            raise StructuralError(f"not a grid of integers: {exc}") from None

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def params(self) -> Params:
        return Params(self.n, self.k)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    @cached_property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.rows))

    @cached_property
    def column_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << s for s in set(col)) for col in self.columns)

    def to_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int8)

    def flat(self) -> tuple[int, ...]:
        return tuple(s for row in self.rows for s in row)

    def __str__(self) -> str:
        width = len(str(self.n - 1))
        return "\n".join(" ".join(f"{s:>{width}}" for s in row) for row in self.rows)


def _as_rectangle(R: Rectangle | Sequence[Sequence[int]]) -> Rectangle:
    return R if isinstance(R, Rectangle) else Rectangle.from_rows(R)


def is_latin(R: Rectangle | Sequence[Sequence[int]]) -> bool:
    """True when no symbol repeats within a row or within a column."""
    R = _as_rectangle(R)
    if any(len(set(row)) != len(row) for row in R.rows):
        return False
    return all(len(set(col)) == len(col) for col in R.columns)


def _require_latin(R: Rectangle) -> None:
    if not is_latin(R):
        raise PreconditionError("rectangle violates the Latin condition")


def column_intersection(R: Rectangle, i: int, j: int) -> int:
    R = _as_rectangle(R)
    n = R.n
    if not (0 <= i < n and 0 <= j < n):
        raise BoundsError(f"column index out of range 0..{n - 1}: {i}, {j}")
    if i == j:
        raise BoundsError("a column cannot be intersected with itself")
    masks = R.column_masks
    return (masks[i] & masks[j]).bit_count()


@dataclass(frozen=True)
class IntersectionProfile:
    """Pairwise column intersection sizes; the diagonal of ``sizes`` is 0."""

    sizes: tuple[tuple[int, ...], ...]
    summary: dict[int, int]

    def values(self) -> set[int]:
        return set(self.summary)


def intersection_profile(R: Rectangle) -> IntersectionProfile:
    R = _as_rectangle(R)
    _require_latin(R)
    masks = R.column_masks
    n = R.n
    sizes = [[0] * n for _ in range(n)]
    summary: Counter[int] = Counter()
    for i, j in combinations(range(n), 2):
        m = (masks[i] & masks[j]).bit_count()
        sizes[i][j] = sizes[j][i] = m
        summary[m] += 1
    return IntersectionProfile(tuple(map(tuple, sizes)), dict(sorted(summary.items())))


def _sizes_set(R: Rectangle) -> set[int]:
    masks = R.column_masks
    return {(a & b).bit_count() for a, b in combinations(masks, 2)}


def classify_rectangle(R: Rectangle) -> RectangleKind:
    R = _as_rectangle(R)
    if not is_latin(R):
        return RectangleKind.NOT_LATIN
    if R.n < 2:
        return RectangleKind.LATIN_ONLY
    lam = lambda_value(R.params)
    sizes = _sizes_set(R)
    if lam.denominator == 1:
        lam = int(lam)
        if sizes <= {lam}:
            return RectangleKind.YOUDEN
        if sizes == {lam - 1, lam, lam + 1}:
            return RectangleKind.THREE_LAMBDA
        return RectangleKind.LATIN_ONLY
    if sizes <= {math.floor(lam), math.ceil(lam)}:
        return RectangleKind.NEAR_YOUDEN
    return RectangleKind.LATIN_ONLY


@dataclass(frozen=True)
class CoverageTable:
    """Number of columns containing each unordered symbol pair (p < q)."""

    counts: dict[tuple[int, int], int]

    def total(self) -> int:
        return sum(self.counts.values())

    def values(self) -> set[int]:
        return set(self.counts.values())

    def summary(self) -> dict[int, int]:
        return dict(sorted(Counter(self.counts.values()).items()))


def covering_table(R: Rectangle) -> CoverageTable:
    R = _as_rectangle(R)
    _require_latin(R)
    counts = {pair: 0 for pair in combinations(range(R.n), 2)}
    for col in R.columns:
        for pair in combinations(sorted(col), 2):
            counts[pair] += 1
    return CoverageTable(counts)


def tsuji_sides(R: Rectangle) -> tuple[Fraction, Fraction]:
    """Both sides of Tsuji's variance identity, evaluated exactly.

    The left side sums (l_pq - lambda)^2 over symbol pairs, the right side
    sums a quadratic in the column intersection sizes over column pairs.
    """
    R = _as_rectangle(R)
    _require_latin(R)
    n, k = R.n, R.k
    if n <= 2:
        raise ParameterError("the identity needs n > 2")
    lam = Fraction(k * (k - 1), n - 1)
    lhs = sum(((l - lam) ** 2 for l in covering_table(R).counts.values()), Fraction(0))
    linear = 1 + Fraction(2 * (k - 1) ** 2, n - 2)
    constant = lam * (1 - Fraction(2 * (k - 1), n - 2) + Fraction(n * k * (k - 1), (n - 1) * (n - 2)))
    masks = R.column_masks
    rhs = Fraction(0)
    for a, b in combinations(masks, 2):
        m = (a & b).bit_count()
        rhs += m * m - linear * m + constant
    return lhs, rhs


def intersection_distribution(R: Rectangle, c: int) -> dict[int, int]:
    """How many other columns meet column ``c`` in lambda1 and in lambda2 symbols."""
    R = _as_rectangle(R)
    if classify_rectangle(R) is not RectangleKind.NEAR_YOUDEN:
        raise PreconditionError("intersection_distribution needs a near Youden rectangle")
    if not 0 <= c < R.n:
        raise BoundsError(f"column {c} out of range 0..{R.n - 1}")
    lo, hi = lambda_bounds(R.params)
    counts = {lo: 0, hi: 0}
    masks = R.column_masks
    for j, mask in enumerate(masks):
        if j != c:
            counts[(mask & masks[c]).bit_count()] += 1
    return counts
