"""Isotopisms, normalization, canonical forms and autotopism groups.

An isotopism is a triple (row permutation, column permutation, symbol
permutation).  The canonical form of a Latin rectangle is the least normalized
member of its orbit in row-major reading order; it is found by the numba
kernel in ``_kernels``, which also counts how many isotopisms reach it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Sequence

import numpy as np

from . import _kernels
from .core import Rectangle, _as_rectangle, is_latin
from .errors import PreconditionError, StructuralError

__all__ = [
    "Isotopism",
    "CanonicalForm",
    "apply",
    "normalize",
    "is_normalized",
    "canonical_form",
    "canonical_with_aut",
    "are_isotopic",
    "autotopism_order",
    "autotopisms",
    "conjugate",
    "is_self_conjugate",
    "perm_table",
]


@lru_cache(maxsize=None)
def perm_table(m: int) -> np.ndarray:
    """All permutations of 0..m-1 in lexicographic order, one per row."""
    return np.array(list(permutations(range(m))), dtype=np.int64).reshape(-1, m)


def _check_perm(p: Sequence[int], size: int, what: str) -> tuple[int, ...]:
    p = tuple(int(x) for x in p)
    if len(p) != size or sorted(p) != list(range(size)):
        raise StructuralError(f"{what} is not a permutation of 0..{size - 1}: {p}")
    return p


@dataclass(frozen=True)
class Isotopism:
    """Row, column and symbol permutations, each given as an image tuple."""

    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]
    sym_perm: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "row_perm", _check_perm(self.row_perm, len(self.row_perm), "row_perm"))
        n = len(self.col_perm)
        object.__setattr__(self, "col_perm", _check_perm(self.col_perm, n, "col_perm"))
        object.__setattr__(self, "sym_perm", _check_perm(self.sym_perm, n, "sym_perm"))

    @property
    def k(self) -> int:
        return len(self.row_perm)

    @property
    def n(self) -> int:
        return len(self.col_perm)

    @classmethod
    def identity(cls, k: int, n: int) -> "Isotopism":
        return cls(tuple(range(k)), tuple(range(n)), tuple(range(n)))

    @classmethod
    def random(cls, k: int, n: int, rng: random.Random | None = None) -> "Isotopism":
        rng = rng or random.Random()
        return cls(
            tuple(rng.sample(range(k), k)),
            tuple(rng.sample(range(n), n)),
            tuple(rng.sample(range(n), n)),
        )

    def compose(self, other: "Isotopism") -> "Isotopism":
        """self after other: ``apply(g.compose(h), R) == apply(g, apply(h, R))``."""
        if (self.k, self.n) != (other.k, other.n):
            raise StructuralError("cannot compose isotopisms of different shapes")
        return Isotopism(
            tuple(self.row_perm[x] for x in other.row_perm),
            tuple(self.col_perm[x] for x in other.col_perm),
            tuple(self.sym_perm[x] for x in other.sym_perm),
        )

    __matmul__ = compose

    def inverse(self) -> "Isotopism":
        def inv(p: tuple[int, ...]) -> tuple[int, ...]:
            out = [0] * len(p)
            for i, x in enumerate(p):
                out[x] = i
            return tuple(out)

        return Isotopism(inv(self.row_perm), inv(self.col_perm), inv(self.sym_perm))


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """The distinguished representative of an isotopism class."""

    rect: Rectangle


def apply(g: Isotopism, R: Rectangle) -> Rectangle:
    """Move cell (r, c) holding s to (row_perm[r], col_perm[c]) holding sym_perm[s]."""
    R = _as_rectangle(R)
    if (g.k, g.n) != (R.k, R.n):
        raise StructuralError(f"isotopism shape {g.k}x{g.n} does not match rectangle {R.k}x{R.n}")
    out = [[0] * R.n for _ in range(R.k)]
    for r, row in enumerate(R.rows):
        rr = out[g.row_perm[r]]
        for c, s in enumerate(row):
            rr[g.col_perm[c]] = g.sym_perm[s]
    return Rectangle.from_rows(out)


def _require_latin(R: Rectangle) -> None:
    if not is_latin(R):
        raise PreconditionError("rectangle violates the Latin condition")


def is_normalized(R: Rectangle) -> bool:
    """First row is 0..n-1 and first column is 0..k-1."""
    R = _as_rectangle(R)
    return R.rows[0] == tuple(range(R.n)) and R.column(0) == tuple(range(R.k))


def normalize(R: Rectangle) -> Rectangle:
    """An isotopic rectangle with row 0 equal to 0..n-1 and column 0 equal to 0..k-1.

    Column 0's symbols are relabelled 0..k-1 top to bottom, every other symbol
    keeps its relative order above them, and the columns are then sorted by
    their row-0 entry.  Column 0 stays in front because its row-0 label is 0.
    """
    R = _as_rectangle(R)
    _require_latin(R)
    first = R.column(0)
    rest = sorted(set(range(R.n)) - set(first))
    relabel = {s: i for i, s in enumerate(first + tuple(rest))}
    rows = [[relabel[s] for s in row] for row in R.rows]
    order = sorted(range(R.n), key=lambda j: rows[0][j])
    return Rectangle.from_rows([[row[j] for j in order] for row in rows])


def _canonical_arrays(R: Rectangle) -> tuple[np.ndarray, int]:
    if R.k < 2:
        return np.arange(R.n, dtype=np.int8).reshape(1, R.n), math.factorial(R.n)
    return _kernels.rect_canonical(R.to_array(), perm_table(R.k))


def canonical_with_aut(R: Rectangle) -> tuple[Rectangle, int]:
    """Canonical rectangle together with the autotopism group order."""
    R = _as_rectangle(R)
    _require_latin(R)
    form, count = _canonical_arrays(R)
    return Rectangle.from_rows(form), int(count)


def canonical_form(R: Rectangle) -> CanonicalForm:
    return CanonicalForm(canonical_with_aut(R)[0])


def are_isotopic(A: Rectangle, B: Rectangle) -> bool:
    A, B = _as_rectangle(A), _as_rectangle(B)
    if (A.k, A.n) != (B.k, B.n):
        raise StructuralError(f"shapes differ: {A.k}x{A.n} vs {B.k}x{B.n}")
    return canonical_form(A) == canonical_form(B)


def autotopism_order(R: Rectangle) -> int:
    """|Aut(R)| for a normalized Latin rectangle, by forced propagation."""
    R = _as_rectangle(R)
    _require_latin(R)
    if not is_normalized(R):
        raise PreconditionError("autotopism_order needs a normalized rectangle; call normalize first")
    if R.k < 2:
        return math.factorial(R.n)
    return int(_kernels.autotopism_count(R.to_array(), perm_table(R.k)))


def autotopisms(R: Rectangle) -> list[Isotopism]:
    """Every isotopism fixing R, listed explicitly.

    Meant for tests and small rectangles: it walks the same propagation as
    ``autotopism_order`` but in plain Python and materializes each group element.
    """
    R = _as_rectangle(R)
    _require_latin(R)
    k, n = R.k, R.n
    rows = R.rows
    rowpos = [{s: j for j, s in enumerate(row)} for row in rows]
    found: list[Isotopism] = []

    def propagate(rho, pi, sig, queue) -> bool:
        while queue:
            j = queue.pop()
            tj = pi[j]
            for i in range(k):
                a, b = rows[i][j], rows[rho[i]][tj]
                if a in sig:
                    if sig[a] != b:
                        return False
                    continue
                if b in sig.values():
                    return False
                sig[a] = b
                for i2 in range(k):
                    c, tc = rowpos[i2][a], rowpos[rho[i2]][b]
                    if c in pi:
                        if pi[c] != tc:
                            return False
                    elif tc in pi.values():
                        return False
                    else:
                        pi[c] = tc
                        queue.append(c)
        return True

    def extend(rho, pi, sig) -> None:
        free = next((j for j in range(n) if j not in pi), None)
        if free is None:
            # every row holds all n symbols, so sig is total by now
            found.append(Isotopism(rho, tuple(pi[j] for j in range(n)), tuple(sig[s] for s in range(n))))
            return
        taken = set(pi.values())
        for tgt in range(n):
            if tgt in taken:
                continue
            pi2, sig2 = dict(pi), dict(sig)
            pi2[free] = tgt
            if propagate(rho, pi2, sig2, [free]):
                extend(rho, pi2, sig2)

    for c in range(n):
        for rho in permutations(range(k)):
            pi, sig = {0: c}, {}
            if propagate(rho, pi, sig, [0]):
                extend(rho, pi, sig)
    # R[rho(i)][pi(j)] = sig(R[i][j]) for every cell is exactly apply(g, R) == R
    return found


def conjugate(R: Rectangle) -> Rectangle:
    """Swap the roles of columns and symbols row by row (each row is inverted)."""
    R = _as_rectangle(R)
    _require_latin(R)
    out = []
    for row in R.rows:
        inv = [0] * R.n
        for c, s in enumerate(row):
            inv[s] = c
        out.append(inv)
    return Rectangle.from_rows(out)


def is_self_conjugate(R: Rectangle) -> bool:
    return are_isotopic(R, conjugate(R))
