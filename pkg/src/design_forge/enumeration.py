"""Isomorph-free enumeration of Youden, near Youden and 3-lambda rectangles.

Rectangles are grown one column at a time.  With pruning on, the search is an
orderly generation: columns come in increasing order, new symbols take the next
free label, and a prefix survives only when it is the column-major minimum of
its partial isotopism class.  Every completed rectangle is then reduced to its
row-major canonical form, so the catalog is exact whatever the pruning does.
"""

from __future__ import annotations

import logging
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from .core import (
    MAX_SYMBOLS,
    Params,
    Rectangle,
    RectangleKind,
    lambda_bounds,
    lambda_value,
    nyr_split,
)
from .errors import ParameterError, StructuralError
from .isotopy import conjugate, perm_table

__all__ = [
    "KindConstraint",
    "PartialRectangle",
    "SearchConfig",
    "ClassCatalog",
    "CountReport",
    "kind_constraint",
    "extend_column",
    "accepts_prefix",
    "enumerate_classes",
    "canonicalize_many",
    "count_self_conjugate",
    "develop",
    "is_difference_set",
    "default_jobs",
    "count_by_aut",
]

log = logging.getLogger(__name__)

ENUMERABLE = (RectangleKind.YOUDEN, RectangleKind.NEAR_YOUDEN, RectangleKind.THREE_LAMBDA)


@dataclass(frozen=True)
class KindConstraint:
    """Permitted column-intersection sizes for one kind and parameter set."""

    allowed: frozenset[int]
    required: frozenset[int]  # must all occur in a completed rectangle
    max_coverage: int | None  # bound on pair coverage that completions respect
    per_column_cap: dict[int, int]  # size -> most other columns one column meets in it


def kind_constraint(p: Params, kind: RectangleKind | str) -> KindConstraint:
    """Validate (p, kind) and describe what the search must enforce."""
    kind = RectangleKind.parse(kind)
    p.check()
    lam = lambda_value(p)
    if kind not in ENUMERABLE:
        raise ParameterError(f"cannot enumerate kind {kind}")
    integral = lam.denominator == 1
    if kind is RectangleKind.NEAR_YOUDEN:
        if integral:
            raise ParameterError(f"lambda = {lam} is integral for (n={p.n}, k={p.k}); near Youden needs a fraction")
        lo, hi = lambda_bounds(p)
        n1, n2 = nyr_split(p)
        # every symbol pair is covered lambda1 or lambda2 times
        return KindConstraint(frozenset({lo, hi}), frozenset(), hi, {lo: n1, hi: n2})
    if not integral:
        raise ParameterError(f"lambda = {lam} is not integral for (n={p.n}, k={p.k}); {kind} needs an integer")
    lam = int(lam)
    if kind is RectangleKind.YOUDEN:
        return KindConstraint(frozenset({lam}), frozenset(), lam, {})
    sizes = frozenset(x for x in (lam - 1, lam, lam + 1) if 0 <= x <= p.k)
    return KindConstraint(sizes, frozenset({lam - 1, lam, lam + 1}), None, {})


def _mask(values: Iterable[int]) -> int:
    return sum(1 << v for v in set(values))


@dataclass(frozen=True)
class PartialRectangle:
    """The first t columns of a k x n rectangle, each a k-tuple of symbols."""

    params: Params
    kind: RectangleKind
    cols: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", RectangleKind.parse(self.kind))
        object.__setattr__(self, "cols", tuple(tuple(int(s) for s in c) for c in self.cols))
        n, k = self.params.n, self.params.k
        if len(self.cols) > n:
            raise StructuralError(f"{len(self.cols)} columns exceed n = {n}")
        cons = kind_constraint(self.params, self.kind)
        seen_rows = [set() for _ in range(k)]
        for j, col in enumerate(self.cols):
            if len(col) != k:
                raise StructuralError(f"column {j} has {len(col)} cells, expected {k}")
            if len(set(col)) != k:
                raise StructuralError(f"column {j} repeats a symbol")
            for i, s in enumerate(col):
                if not 0 <= s < n:
                    raise StructuralError(f"column {j} holds symbol {s} outside 0..{n - 1}")
                if s in seen_rows[i]:
                    raise StructuralError(f"symbol {s} repeats in row {i}")
                seen_rows[i].add(s)
        for a, b in combinations(self.cols, 2):
            if len(set(a) & set(b)) not in cons.allowed:
                raise StructuralError(f"columns {a} and {b} break the {self.kind} intersection constraint")

    @classmethod
    def start(cls, p: Params, kind: RectangleKind | str) -> "PartialRectangle":
        return cls(p, RectangleKind.parse(kind), (tuple(range(p.k)),))

    @property
    def t(self) -> int:
        return len(self.cols)

    @property
    def complete(self) -> bool:
        return self.t == self.params.n

    def to_rectangle(self) -> Rectangle:
        if not self.complete:
            raise StructuralError(f"only {self.t} of {self.params.n} columns are filled")
        return Rectangle.from_rows(list(zip(*self.cols)))


def extend_column(P: PartialRectangle) -> list[PartialRectangle]:
    """Every way of appending one admissible column to P (no isotopism pruning)."""
    n, k = P.params.n, P.params.k
    if P.complete:
        return []
    cons = kind_constraint(P.params, P.kind)
    used_in_row = [{c[i] for c in P.cols} for i in range(k)]
    masks = [_mask(c) for c in P.cols]
    lo, hi = min(cons.allowed), max(cons.allowed)
    out: list[PartialRectangle] = []
    col: list[int] = []

    def rec(r: int, mask: int) -> None:
        if r == k:
            sizes = [(mask & m).bit_count() for m in masks]
            if any(x not in cons.allowed for x in sizes):
                return
            cols = P.cols + (tuple(col),)
            if len(cols) == n and cons.required:
                cm = [_mask(c) for c in cols]
                if not cons.required <= {(a & b).bit_count() for a, b in combinations(cm, 2)}:
                    return
            out.append(PartialRectangle(P.params, P.kind, cols))
            return
        rem = k - r - 1
        for s in range(n):
            b = 1 << s
            if mask & b or s in used_in_row[r]:
                continue
            nm = mask | b
            if any((nm & m).bit_count() > hi or (nm & m).bit_count() + rem < lo for m in masks):
                continue
            col.append(s)
            rec(r + 1, nm)
            col.pop()

    rec(0, 0)
    return out


def _cols_array(cols: Sequence[Sequence[int]], n: int, k: int) -> np.ndarray:
    arr = np.zeros((n + 1, k), dtype=np.int64)
    for j, c in enumerate(cols):
        arr[j] = c
    return arr


def accepts_prefix(P: PartialRectangle) -> bool:
    """False when P cannot be the prefix kept by the orderly search.

    The kept prefixes are exactly the column-major minima of their partial
    classes (reading column by column, symbols relabelled by first
    appearance).  Since the minimum of a class restricts to the minimum of its
    prefix class, rejecting anything else never loses a class.
    """
    if P.t == 0:
        raise StructuralError("accepts_prefix needs at least one column")
    k = P.params.k
    if P.cols[0] != tuple(range(k)):
        return False
    for a, b in zip(P.cols, P.cols[1:]):
        if b <= a:
            return False
    arr = _cols_array(P.cols, P.params.n, k)
    return bool(_kernels.prefix_is_minimal(arr, P.t, k, perm_table(k)))


@dataclass(frozen=True)
class SearchConfig:
    """How the search tree is cut into jobs and where prefixes are reduced.

    ``dedup_depths`` of None means every depth; ``prune=False`` turns the
    orderly machinery off entirely (every admissible extension is followed).
    """

    split_depth: int | None = None
    jobs: int = 1
    dedup_depths: frozenset[int] | None = None
    prune: bool = True

    def validated(self, n: int) -> "SearchConfig":
        if self.jobs < 1:
            raise ParameterError(f"jobs must be positive, got {self.jobs}")
        if self.split_depth is not None and not 1 <= self.split_depth < n:
            raise ParameterError(f"split_depth must lie in 1..{n - 1}, got {self.split_depth}")
        if self.dedup_depths is not None and not set(self.dedup_depths) <= set(range(1, n + 1)):
            raise ParameterError(f"dedup_depths must be a subset of 1..{n}")
        return self

    def depth_mask(self, n: int) -> int:
        depths = range(1, n + 1) if self.dedup_depths is None else self.dedup_depths
        return sum(1 << d for d in depths)


@dataclass(frozen=True)
class ClassCatalog:
    """One canonical representative per isotopism class, sorted, with |Aut|."""

    params: Params
    kind: RectangleKind
    reps: tuple[Rectangle, ...]
    aut_orders: tuple[int, ...]
    provenance: str = "search"
    stats: dict[str, object] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if len(self.reps) != len(self.aut_orders):
            raise StructuralError("reps and aut_orders differ in length")
        if any(a >= b for a, b in zip(self.reps, self.reps[1:])):
            raise StructuralError("reps must be strictly increasing")

    def __len__(self) -> int:
        return len(self.reps)

    def __iter__(self) -> Iterator[tuple[Rectangle, int]]:
        return iter(zip(self.reps, self.aut_orders))

    def same_classes(self, other: "ClassCatalog") -> bool:
        return self.reps == other.reps and self.aut_orders == other.aut_orders


@dataclass(frozen=True)
class CountReport:
    total: int
    by_aut_order: dict[int, int]


def count_by_aut(cat: ClassCatalog) -> CountReport:
    return CountReport(len(cat.reps), dict(sorted(Counter(cat.aut_orders).items())))


def canonicalize_many(rects: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Canonical forms and autotopism orders for a stack of (k, n) rectangles."""
    rects = np.ascontiguousarray(rects, dtype=np.int8)
    if rects.shape[0] == 0:
        return rects, np.zeros(0, np.int64)
    return _kernels.rect_canonical_batch(rects, perm_table(rects.shape[1]))


@dataclass(frozen=True)
class _Job:
    n: int
    k: int
    allowed: int
    required: int
    cov_max: int
    caps: tuple[int, ...]
    prune: bool
    depth_mask: int


def _search(job: _Job, start: np.ndarray, stop: int) -> tuple[np.ndarray, np.ndarray]:
    t0 = start.shape[0]
    arr = np.zeros((max(t0, 1), job.k), np.int64)
    arr[:t0] = start
    return _kernels.orderly_search(
        job.n, job.k, job.allowed, job.required, job.cov_max,
        np.array(job.caps, np.int64), perm_table(job.k),
        arr, t0, stop, job.prune, np.int64(job.depth_mask),
    )


def _complete_and_reduce(job: _Job, prefixes: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Run the subtrees below ``prefixes`` and canonicalize what they produce."""
    found = []
    levels = np.zeros(job.n + 1, np.int64)
    for prefix in prefixes:
        out, lv = _search(job, prefix, job.n)
        levels += lv
        if len(out):
            found.append(out)
    if not found:
        return np.zeros((0, job.k, job.n), np.int8), np.zeros(0, np.int64), levels
    cols = np.concatenate(found)
    forms, auts = canonicalize_many(cols.transpose(0, 2, 1))
    # keep one copy per class inside the job to bound what travels back
    _, idx = np.unique(forms.reshape(len(forms), -1), axis=0, return_index=True)
    return forms[idx], auts[idx], levels


def _chunks(items: np.ndarray, parts: int) -> list[np.ndarray]:
    # interleave so each chunk gets a mix of early and late prefixes
    return [items[i::parts] for i in range(parts) if len(items[i::parts])]


def default_jobs() -> int:
    raw = os.environ.get("DESIGN_FORGE_JOBS")
    if raw is None:
        return 1
    try:
        jobs = int(raw)
    except ValueError:
        raise ParameterError(f"DESIGN_FORGE_JOBS must be an integer, got {raw!r}") from None
    if jobs < 1:
        raise ParameterError(f"DESIGN_FORGE_JOBS must be positive, got {jobs}")
    return jobs


def enumerate_classes(
    p: Params,
    kind: RectangleKind | str,
    cfg: SearchConfig | None = None,
) -> ClassCatalog:
    """All isotopism classes of (p, kind) rectangles, one canonical rep each."""
    kind = RectangleKind.parse(kind)
    cons = kind_constraint(p, kind)
    cfg = (cfg or SearchConfig()).validated(p.n)
    n, k = p.n, p.k
    caps = [n - 1] * (k + 1)
    for size, cap in cons.per_column_cap.items():
        caps[size] = cap
    job = _Job(
        n=n,
        k=k,
        allowed=_mask(cons.allowed),
        required=_mask(cons.required),
        cov_max=-1 if cons.max_coverage is None else cons.max_coverage,
        caps=tuple(caps),
        prune=cfg.prune,
        depth_mask=cfg.depth_mask(n),
    )
    started = time.perf_counter()
    root = np.arange(k, dtype=np.int64).reshape(1, k)
    split = cfg.split_depth
    if split is None:
        split = 1 if cfg.jobs == 1 else min(n - 1, max(2, n // 3))
    if split > 1:
        prefixes, head_levels = _search(job, root, split)
        prefixes = prefixes.astype(np.int64)
    else:
        prefixes, head_levels = root.reshape(1, 1, k), np.zeros(n + 1, np.int64)
    log.debug("(%d,%d) %s: %d prefixes at depth %d", n, k, kind, len(prefixes), split)

    results = []
    if cfg.jobs == 1 or len(prefixes) <= 1:
        results.append(_complete_and_reduce(job, prefixes))
    else:
        chunks = _chunks(prefixes, min(len(prefixes), cfg.jobs * 8))
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results.extend(pool.map(_complete_and_reduce, [job] * len(chunks), chunks))

    forms = [r[0] for r in results if len(r[0])]
    levels = sum((r[2] for r in results), np.zeros(n + 1, np.int64))
    if split > 1:
        levels[: split + 1] = head_levels[: split + 1]
    merged: dict[bytes, tuple[tuple[tuple[int, ...], ...], int]] = {}
    for f_arr, a_arr, _ in results:
        for f, a in zip(f_arr, a_arr):
            merged.setdefault(f.tobytes(), (tuple(map(tuple, f.tolist())), int(a)))
    ordered = sorted(merged.values())
    reps = tuple(Rectangle(rows) for rows, _ in ordered)
    auts = tuple(a for _, a in ordered)
    elapsed = time.perf_counter() - started
    log.info("(%d,%d) %s: %d classes in %.2fs", n, k, kind, len(reps), elapsed)
    stats = {
        "elapsed": elapsed,
        "jobs": cfg.jobs,
        "split_depth": split,
        "prefixes": int(len(prefixes)),
        "nodes_per_depth": [int(x) for x in levels],
        "raw_completions": int(sum(len(f) for f in forms)),
    }
    return ClassCatalog(p, kind, reps, auts, "search", stats)


def count_self_conjugate(cat: ClassCatalog) -> int:
    """How many classes are isotopic to their conjugate."""
    if not cat.reps:
        return 0
    conj = np.array([conjugate(R).rows for R in cat.reps], dtype=np.int8)
    forms, _ = canonicalize_many(conj)
    return sum(1 for R, f in zip(cat.reps, forms) if R.rows == tuple(map(tuple, f.tolist())))


def develop(first_col: Iterable[int], n: int) -> Rectangle:
    """Develop a first column mod n: column j holds x + j for each x in it."""
    if not isinstance(n, int) or not 2 <= n <= MAX_SYMBOLS:
        raise ParameterError(f"n must be an integer in 2..{MAX_SYMBOLS}, got {n!r}")
    raw = [int(x) for x in first_col]
    residues = sorted(x % n for x in raw)
    if not residues:
        raise ParameterError("the first column is empty")
    if len(set(residues)) != len(residues):
        raise ParameterError(f"duplicate residues mod {n} in {raw}")
    return Rectangle.from_rows([[(x + j) % n for j in range(n)] for x in residues])


def is_difference_set(first_col: Iterable[int], n: int) -> bool:
    """True when every nonzero residue arises equally often as a difference."""
    xs = sorted({int(x) % n for x in first_col})
    diffs = Counter((a - b) % n for a in xs for b in xs if a != b)
    return len(diffs) == n - 1 and len(set(diffs.values())) == 1
