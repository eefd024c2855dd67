"""Slow, independent reference implementations for cross-checking.

Nothing here touches the numba kernels.  ``brute_enumerate`` lists every
normalized rectangle of a kind row by row with numpy, then walks them in
lexicographic order marking whole orbits; the first unmarked rectangle of
each orbit is its least normalized member.  ``brute_autotopism_order`` tries
all n * k! * (n-k)! isotopisms that land in normal form.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .core import Params, Rectangle, RectangleKind, _as_rectangle, is_latin, lambda_value
from .enumeration import ClassCatalog
from .errors import GuardError, ParameterError, PreconditionError
from .isotopy import is_normalized

__all__ = ["ORACLE_MAX_N", "brute_enumerate", "brute_autotopism_order", "normalized_orbit"]

ORACLE_MAX_N = 7
AUT_MAX_N = 13
AUT_MAX_K = 6


@lru_cache(maxsize=None)
def _perms(m: int) -> np.ndarray:
    return np.array(list(permutations(range(m))), dtype=np.int64).reshape(-1, m)


def _kind_sizes(p: Params, kind: RectangleKind) -> tuple[set[int], set[int]]:
    lam = lambda_value(p)
    if kind is RectangleKind.NEAR_YOUDEN:
        if lam.denominator == 1:
            raise ParameterError(f"lambda = {lam} is integral; no near Youden rectangles to list")
        return {math.floor(lam), math.ceil(lam)}, set()
    if lam.denominator != 1:
        raise ParameterError(f"lambda = {lam} is not integral; {kind} needs an integer")
    lam = int(lam)
    if kind is RectangleKind.YOUDEN:
        return {lam}, set()
    if kind is RectangleKind.THREE_LAMBDA:
        three = {lam - 1, lam, lam + 1}
        return three, three
    raise ParameterError(f"the oracle cannot enumerate kind {kind}")


def _normalized_rectangles(p: Params, allowed: set[int], required: set[int]) -> np.ndarray:
    """Every normalized k x n rectangle whose column intersections lie in ``allowed``."""
    n, k = p.n, p.k
    pairs = np.array(list(combinations(range(n), 2)), dtype=np.int64)
    lo, hi = min(allowed), max(allowed)
    rows = np.arange(n, dtype=np.int64).reshape(1, 1, n)
    masks = (np.int64(1) << rows[:, 0, :]).astype(np.int64)
    for r in range(1, k):
        rest = _perms(n - 1)
        others = np.array([s for s in range(n) if s != r], dtype=np.int64)
        cand = np.concatenate([np.full((len(rest), 1), r, np.int64), others[rest]], axis=1)
        cbits = np.int64(1) << cand
        grown_rows, grown_masks = [], []
        step = max(1, 200_000 // len(cand))
        for start in range(0, len(rows), step):
            part_masks = masks[start:start + step]
            clash = (part_masks[:, None, :] & cbits[None, :, :]).any(axis=2)
            pi, ci = np.nonzero(~clash)
            new_masks = part_masks[pi] | cbits[ci]
            # each later row can add at most two symbols to a column pair's overlap
            sizes = np.bitwise_count(new_masks[:, pairs[:, 0]] & new_masks[:, pairs[:, 1]])
            slack = 2 * (k - 1 - r)
            keep = ((sizes <= hi) & (sizes + slack >= lo)).all(axis=1)
            pi, ci = pi[keep], ci[keep]
            grown_rows.append(np.concatenate([rows[start:start + step][pi], cand[ci][:, None, :]], axis=1))
            grown_masks.append(new_masks[keep])
        rows = np.concatenate(grown_rows) if grown_rows else np.zeros((0, r + 1, n), np.int64)
        masks = np.concatenate(grown_masks) if grown_masks else np.zeros((0, n), np.int64)
    sizes = np.bitwise_count(masks[:, pairs[:, 0]] & masks[:, pairs[:, 1]]).astype(np.int64)
    allowed_arr = np.array(sorted(allowed))
    ok = np.isin(sizes, allowed_arr).all(axis=1)
    for need in required:
        ok &= (sizes == need).any(axis=1)
    return rows[ok].astype(np.int8)


def normalized_orbit(R: Rectangle) -> np.ndarray:
    """All normalized members of R's orbit, one row-major flattened row each (unique, sorted)."""
    R = _as_rectangle(R)
    A = np.array(R.rows, dtype=np.int64)
    k, n = A.shape
    taus = _perms(n - k) + k
    members = []
    for c0 in range(n):
        for rho in permutations(range(k)):
            B = A[list(rho)]
            first = B[:, c0]
            rest = np.setdiff1d(np.arange(n), first)
            sig = np.empty((len(taus), n), np.int64)
            sig[:, first] = np.arange(k)
            sig[:, rest] = taus
            img = sig[:, B]  # (T, k, n)
            order = np.argsort(img[:, 0, :], axis=1)
            members.append(np.take_along_axis(img, order[:, None, :], axis=2).reshape(len(taus), -1))
    return np.unique(np.concatenate(members).astype(np.int8), axis=0)


def brute_enumerate(p: Params, kind: RectangleKind | str, *, allow_large: bool = False) -> ClassCatalog:
    """Reference catalog by exhaustive listing and orbit marking."""
    kind = RectangleKind.parse(kind)
    p.check()
    if p.n > ORACLE_MAX_N and not allow_large:
        raise GuardError(f"oracle refuses n = {p.n} > {ORACLE_MAX_N} without allow_large")
    allowed, required = _kind_sizes(p, kind)
    leaves = _normalized_rectangles(p, allowed, required)
    flat = np.unique(leaves.reshape(len(leaves), -1), axis=0)
    total = p.n * math.factorial(p.k) * math.factorial(p.n - p.k)
    seen: set[bytes] = set()
    reps, auts = [], []
    for row in flat:
        key = row.tobytes()
        if key in seen:
            continue
        R = Rectangle.from_rows(row.reshape(p.k, p.n))
        orbit = normalized_orbit(R)
        seen.update(m.tobytes() for m in orbit)
        reps.append(R)
        auts.append(total // len(orbit))
    return ClassCatalog(p, kind, tuple(reps), tuple(auts), "oracle", {"normalized_members": int(len(flat))})


def brute_autotopism_order(R: Rectangle, *, allow_large: bool = False) -> int:
    """Count the isotopisms into normal form that give back R itself.

    Column c0 goes first and the row order is rho; that pins the labels of
    column c0's symbols.  The other n-k symbols get every labelling in
    turn, built one symbol at a time; a partial labelling is dropped as soon
    as some fully labelled column fails to land on the matching column of R.
    """
    R = _as_rectangle(R)
    if not is_latin(R):
        raise PreconditionError("rectangle violates the Latin condition")
    if not is_normalized(R):
        raise PreconditionError("brute_autotopism_order needs a normalized rectangle")
    k, n = R.k, R.n
    if (n > AUT_MAX_N or k > AUT_MAX_K) and not allow_large:
        raise GuardError(f"oracle refuses {k}x{n} (limits n <= {AUT_MAX_N}, k <= {AUT_MAX_K}) without allow_large")
    A = np.array(R.rows, dtype=np.int64)
    count = 0
    for c0 in range(n):
        for rho in permutations(range(k)):
            B = A[list(rho)]
            first = B[:, c0]
            rest = [s for s in range(n) if s not in set(first.tolist())]
            sig = np.full((1, n), -1, np.int64)
            sig[0, first] = np.arange(k)
            known = set(first.tolist())
            checked: set[int] = set()
            for step in range(len(rest) + 1):
                # test every column whose symbols are all labelled by now
                for j in range(n):
                    if j in checked or not set(B[:, j].tolist()) <= known:
                        continue
                    checked.add(j)
                    # the image puts column j at position sig(B[0, j]); it must read A there
                    pos = sig[:, B[0, j]]
                    ok = (sig[:, B[:, j]] == A[:, pos].T).all(axis=1)
                    sig = sig[ok]
                if not len(sig) or step == len(rest):
                    break
                s = rest[step]
                labels = np.arange(k, n)
                free = ~(sig[:, :, None] == labels[None, None, :]).any(axis=1)
                rows, which = np.nonzero(free)
                sig = sig[rows]
                sig[:, s] = labels[which]
                known.add(s)
            count += len(sig)
    return count
