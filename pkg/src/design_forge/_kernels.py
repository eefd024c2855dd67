"""numba kernels for the hot loops: orderly search, canonical forms, autotopisms.

Everything here works on small integer numpy arrays.  Rectangles are (k, n)
int8 arrays indexed [row, column]; the search keeps its columns as (n, k)
arrays indexed [column, row] because it grows them one column at a time.
Symbol sets are int64 bit masks, so n is limited to 62.
"""

from __future__ import annotations

import numpy as np
from numba import njit

INT8_MAX = 127


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


# ---------------------------------------------------------------------------
# prefix canonicity (column-major, rows and columns permuted, symbols relabelled
# by first appearance)
# ---------------------------------------------------------------------------


@njit(cache=True)
def _order_search(cols, t1, k, rho, lab, used, nlab, depth0, eq, eqn, eqi, chosen, saved_nlab, newsyms, newcnt):
    """Extend a reading that already matches cols[:depth0] column by column.

    ``lab`` holds the labels given so far and ``used`` the columns already
    placed.  Returns False as soon as some order of the remaining columns
    reads smaller than cols[:t1].
    """
    depth = depth0
    fresh = True
    while depth >= depth0:
        if depth == t1:
            fresh = False
            depth -= 1
            if depth >= depth0:
                used[chosen[depth]] = False
                for q in range(newcnt[depth]):
                    lab[newsyms[depth, q]] = -1
                nlab = saved_nlab[depth]
            continue
        if fresh:
            cnt = 0
            for j in range(t1):
                if used[j]:
                    continue
                nl = nlab
                cmp = 0
                for i in range(k):
                    l = lab[cols[j, rho[i]]]
                    if l < 0:
                        l = nl
                        nl += 1
                    p = cols[depth, i]
                    if l < p:
                        cmp = -1
                        break
                    if l > p:
                        cmp = 1
                        break
                if cmp < 0:
                    return False
                if cmp == 0:
                    eq[depth, cnt] = j
                    cnt += 1
            eqn[depth] = cnt
            eqi[depth] = 0
            fresh = False
        if eqi[depth] < eqn[depth]:
            j = eq[depth, eqi[depth]]
            eqi[depth] += 1
            chosen[depth] = j
            used[j] = True
            saved_nlab[depth] = nlab
            nc = 0
            for i in range(k):
                sy = cols[j, rho[i]]
                if lab[sy] < 0:
                    lab[sy] = nlab
                    nlab += 1
                    newsyms[depth, nc] = sy
                    nc += 1
            newcnt[depth] = nc
            depth += 1
            fresh = True
        else:
            depth -= 1
            if depth >= depth0:
                used[chosen[depth]] = False
                for q in range(newcnt[depth]):
                    lab[newsyms[depth, q]] = -1
                nlab = saved_nlab[depth]
    return True


@njit(cache=True)
def prefix_is_minimal(cols, t1, k, perms):
    """True when cols[:t1] is the column-major minimum of its isotopism class.

    The reading is column by column; symbols are relabelled in order of first
    appearance, so only row orders and column orders need to be searched.
    """
    nperm = perms.shape[0]
    lab = np.full(64, -1, np.int64)
    used = np.zeros(t1 + 1, np.bool_)
    eq = np.zeros((t1 + 1, t1), np.int64)
    eqn = np.zeros(t1 + 1, np.int64)
    eqi = np.zeros(t1 + 1, np.int64)
    chosen = np.zeros(t1 + 1, np.int64)
    saved_nlab = np.zeros(t1 + 1, np.int64)
    newsyms = np.zeros((t1 + 1, k), np.int64)
    newcnt = np.zeros(t1 + 1, np.int64)
    for pi in range(nperm):
        rho = perms[pi]
        for c0 in range(t1):
            for s in range(64):
                lab[s] = -1
            for j in range(t1):
                used[j] = False
            for i in range(k):
                lab[cols[c0, rho[i]]] = i
            used[c0] = True
            if not _order_search(cols, t1, k, rho, lab, used, k, 1,
                                 eq, eqn, eqi, chosen, saved_nlab, newsyms, newcnt):
                return False
    return True


@njit(cache=True)
def _pair_orders(cols, a, b, k, perms, invperms, symrow, plist, pcnt):
    """Row orders under which column b, read right after column a, gives cols[1].

    Their indices go to plist[a, b] and their number to pcnt[a, b].  Returns
    True when some row order reads smaller than cols[1] instead.
    """
    for s in range(64):
        symrow[s] = -1
    for i in range(k):
        symrow[cols[a, i]] = i
    less = False
    cnt = 0
    for pi in range(perms.shape[0]):
        nl = k
        cmp = 0
        for i in range(k):
            r = symrow[cols[b, perms[pi, i]]]
            l = nl
            if r >= 0:
                l = invperms[pi, r]
            else:
                nl += 1
            p = cols[1, i]
            if l < p:
                cmp = -1
                break
            if l > p:
                cmp = 1
                break
        if cmp < 0:
            less = True
        elif cmp == 0:
            plist[a, b, cnt] = pi
            cnt += 1
    pcnt[a, b] = cnt
    return less


@njit(cache=True)
def _pairs_for_column(cols, t, k, perms, invperms, symrow, plist, pcnt):
    """Fill the pair tables between column t and every earlier column."""
    less = False
    if t == 1:
        less |= _pair_orders(cols, 0, 1, k, perms, invperms, symrow, plist, pcnt)
        less |= _pair_orders(cols, 1, 0, k, perms, invperms, symrow, plist, pcnt)
    elif t > 1:
        for j in range(t):
            less |= _pair_orders(cols, t, j, k, perms, invperms, symrow, plist, pcnt)
            less |= _pair_orders(cols, j, t, k, perms, invperms, symrow, plist, pcnt)
    return less


@njit(cache=True)
def _minimal_from_pairs(cols, t1, k, perms, plist, pcnt, lab, used,
                        eq, eqn, eqi, chosen, saved_nlab, newsyms, newcnt):
    """Minimality test seeded by the pair tables.

    Every reading starts with some column c0 followed by some column j1 read
    equal to cols[1]; only the row orders stored for (c0, j1) can do that, so
    the column-order search begins at depth 2 for just those.
    """
    if t1 <= 2:
        return True
    for c0 in range(t1):
        for j1 in range(t1):
            if j1 == c0:
                continue
            for q in range(pcnt[c0, j1]):
                rho = perms[plist[c0, j1, q]]
                for s in range(64):
                    lab[s] = -1
                for j in range(t1):
                    used[j] = False
                for i in range(k):
                    lab[cols[c0, rho[i]]] = i
                nlab = k
                for i in range(k):
                    sy = cols[j1, rho[i]]
                    if lab[sy] < 0:
                        lab[sy] = nlab
                        nlab += 1
                used[c0] = True
                used[j1] = True
                if not _order_search(cols, t1, k, rho, lab, used, nlab, 2,
                                     eq, eqn, eqi, chosen, saved_nlab, newsyms, newcnt):
                    return False
    return True


# ---------------------------------------------------------------------------
# orderly column-extension search
# ---------------------------------------------------------------------------


@njit(cache=True)
def orderly_search(n, k, allowed, need_mask, cov_max, size_cap, perms,
                   start, t0, stop_t, prune, test_depths):
    """Depth-first column extension from the prefix ``start[:t0]``.

    allowed      bit mask of permitted pairwise column intersection sizes
    need_mask    sizes that must all occur once the rectangle is complete
    cov_max      upper bound on pair coverage (-1 disables the cull)
    size_cap     size_cap[m] bounds how many other columns one column may meet
                 in exactly m symbols
    prune        when set, columns are generated in increasing order, new
                 symbols take the next free label and prefixes at the depths in
                 ``test_depths`` must be column-major minimal
    Returns (prefixes reached at depth stop_t, per-depth node counts).
    """
    cols = np.zeros((n + 1, k), np.int64)
    colmask = np.zeros(n + 1, np.int64)
    rowused = np.zeros(k, np.int64)
    symcnt = np.zeros(64, np.int64)
    cov = np.zeros((64, 64), np.int64)
    sizecnt = np.zeros((n + 1, k + 1), np.int64)
    inter = np.zeros((n + 1, k + 1, n + 1), np.int64)
    cur = np.zeros((n + 1, k + 1), np.int64)
    r_at = np.zeros(n + 1, np.int64)
    tight = np.zeros((n + 1, k + 1), np.bool_)
    nl = np.zeros((n + 1, k + 1), np.int64)
    cmask = np.zeros((n + 1, k + 1), np.int64)
    nsym_at = np.zeros(n + 2, np.int64)
    levels = np.zeros(n + 1, np.int64)

    # pair tables for the minimality test, see _minimal_from_pairs
    nperm = perms.shape[0]
    invperms = np.zeros_like(perms)
    for pi in range(nperm):
        for i in range(k):
            invperms[pi, perms[pi, i]] = i
    plist = np.zeros((n + 1, n + 1, nperm), np.int32)
    pcnt = np.zeros((n + 1, n + 1), np.int64)
    less_at = np.zeros(n + 1, np.bool_)
    symrow = np.zeros(64, np.int64)
    lab = np.zeros(64, np.int64)
    used = np.zeros(n + 1, np.bool_)
    eq = np.zeros((n + 1, n + 1), np.int64)
    eqn = np.zeros(n + 1, np.int64)
    eqi = np.zeros(n + 1, np.int64)
    chosen = np.zeros(n + 1, np.int64)
    saved_nlab = np.zeros(n + 1, np.int64)
    newsyms = np.zeros((n + 1, k), np.int64)
    newcnt = np.zeros(n + 1, np.int64)

    amax = 0
    amin = 64
    for s in range(k + 1):
        if allowed & (1 << s):
            if s > amax:
                amax = s
            if s < amin:
                amin = s

    cap = 64
    out = np.zeros((cap, stop_t, k), np.int8)
    found = 0

    # load the starting prefix
    nsym = 0
    for t in range(t0):
        m = 0
        for i in range(k):
            s = start[t, i]
            cols[t, i] = s
            m |= 1 << s
            rowused[i] |= 1 << s
            symcnt[s] += 1
            if s + 1 > nsym:
                nsym = s + 1
        for j in range(t):
            x = _popcount(colmask[j] & m)
            sizecnt[j, x] += 1
            sizecnt[t, x] += 1
        for i in range(k):
            for i2 in range(i + 1, k):
                a = cols[t, i]
                b = cols[t, i2]
                cov[a, b] += 1
                cov[b, a] += 1
        colmask[t] = m
        if prune:
            less_at[t] = _pairs_for_column(cols, t, k, perms, invperms, symrow, plist, pcnt)
    if not prune:
        nsym = n
    nsym_at[t0] = nsym
    levels[t0] = 1

    if t0 >= stop_t:
        for t in range(stop_t):
            for i in range(k):
                out[0, t, i] = cols[t, i]
        return out[:1], levels

    t = t0
    r_at[t] = 0
    cur[t, 0] = -1
    tight[t, 0] = prune
    nl[t, 0] = nsym
    cmask[t, 0] = 0
    for j in range(t):
        inter[t, 0, j] = 0

    while t >= t0:
        r = r_at[t]
        s = cur[t, r] + 1
        if tight[t, r] and s < cols[t - 1, r]:
            s = cols[t - 1, r]
        hi = n - 1
        if prune and nl[t, r] < hi:
            hi = nl[t, r]
        rem = k - r - 1
        while s <= hi:
            b = 1 << s
            if (rowused[r] & b) == 0 and (cmask[t, r] & b) == 0:
                ok = True
                for j in range(t):
                    v = inter[t, r, j]
                    if colmask[j] & b:
                        v += 1
                    if v > amax or v + rem < amin:
                        ok = False
                        break
                if ok and cov_max >= 0:
                    for i in range(r):
                        if cov[cur[t, i], s] >= cov_max:
                            ok = False
                            break
                if ok:
                    break
            s += 1
        if s > hi:
            if r == 0:
                t -= 1
                if t >= t0:
                    # undo column t
                    for i in range(k):
                        sy = cols[t, i]
                        rowused[i] &= ~(1 << sy)
                        symcnt[sy] -= 1
                        for i2 in range(i + 1, k):
                            a = cols[t, i2]
                            cov[sy, a] -= 1
                            cov[a, sy] -= 1
                    for j in range(t):
                        x = inter[t, k, j]
                        sizecnt[j, x] -= 1
                        sizecnt[t, x] -= 1
                    colmask[t] = 0
                    r_at[t] = k - 1
            else:
                r_at[t] = r - 1
            continue
        cur[t, r] = s
        b = 1 << s
        for j in range(t):
            v = inter[t, r, j]
            if colmask[j] & b:
                v += 1
            inter[t, r + 1, j] = v
        tight[t, r + 1] = tight[t, r] and s == cols[t - 1, r]
        nl[t, r + 1] = nl[t, r] + (1 if s == nl[t, r] else 0)
        cmask[t, r + 1] = cmask[t, r] | b
        if r + 1 < k:
            r_at[t] = r + 1
            cur[t, r + 1] = -1
            continue
        # a full candidate column at row k-1
        if tight[t, k]:
            continue
        okc = True
        for j in range(t):
            x = inter[t, k, j]
            if (allowed & (1 << x)) == 0 or sizecnt[j, x] + 1 > size_cap[x]:
                okc = False
                break
        if not okc:
            continue
        for j in range(t):
            x = inter[t, k, j]
            sizecnt[j, x] += 1
            sizecnt[t, x] += 1
        for x in range(k + 1):
            if sizecnt[t, x] > size_cap[x]:
                okc = False
        if okc:
            for i in range(k):
                sy = cur[t, i]
                cols[t, i] = sy
                rowused[i] |= 1 << sy
                symcnt[sy] += 1
            for i in range(k):
                for i2 in range(i + 1, k):
                    a = cols[t, i]
                    c2 = cols[t, i2]
                    cov[a, c2] += 1
                    cov[c2, a] += 1
            colmask[t] = cmask[t, k]
            nsym_t = nl[t, k]
            if not prune:
                nsym_t = n
            remcols = n - t - 1
            cull = False
            if prune and nsym_t < n and remcols < k:
                cull = True
            if not cull:
                for sy in range(n):
                    if symcnt[sy] > 0 and k - symcnt[sy] > remcols:
                        cull = True
                        break
            if not cull and t + 1 == n and need_mask != 0:
                seen = 0
                for a in range(n):
                    for c2 in range(a + 1, n):
                        seen |= 1 << _popcount(colmask[a] & colmask[c2])
                if (seen & need_mask) != need_mask:
                    cull = True
            if not cull and prune:
                less_at[t] = _pairs_for_column(cols, t, k, perms, invperms, symrow, plist, pcnt)
                if (test_depths >> (t + 1)) & 1:
                    for j in range(t + 1):
                        if less_at[j]:
                            cull = True
                    if not cull and not _minimal_from_pairs(cols, t + 1, k, perms, plist, pcnt, lab, used,
                                                            eq, eqn, eqi, chosen, saved_nlab, newsyms, newcnt):
                        cull = True
            if not cull:
                levels[t + 1] += 1
                if t + 1 == stop_t:
                    if found == cap:
                        bigger = np.zeros((cap * 2, stop_t, k), np.int8)
                        bigger[:cap] = out
                        out = bigger
                        cap *= 2
                    for j in range(stop_t):
                        for i in range(k):
                            out[found, j, i] = cols[j, i]
                    found += 1
                else:
                    nsym_at[t + 1] = nsym_t
                    t += 1
                    r_at[t] = 0
                    cur[t, 0] = -1
                    tight[t, 0] = prune
                    nl[t, 0] = nsym_t
                    cmask[t, 0] = 0
                    for j in range(t):
                        inter[t, 0, j] = 0
                    continue
            # undo the placement of column t
            for i in range(k):
                sy = cols[t, i]
                rowused[i] &= ~(1 << sy)
                symcnt[sy] -= 1
                for i2 in range(i + 1, k):
                    a = cols[t, i2]
                    cov[sy, a] -= 1
                    cov[a, sy] -= 1
            colmask[t] = 0
        for j in range(t):
            x = inter[t, k, j]
            sizecnt[j, x] -= 1
            sizecnt[t, x] -= 1
    return out[:found], levels


# ---------------------------------------------------------------------------
# row-major canonical form of a Latin rectangle
# ---------------------------------------------------------------------------


@njit(cache=True)
def rect_canonical(R, perms):
    """Least normalized member (row-major) of the isotopism class of R.

    Returns (form, count) where count is the number of isotopisms taking R to
    the form, i.e. the autotopism group order.
    """
    k, n = R.shape
    nperm = perms.shape[0]
    rowpos = np.zeros((k, n), np.int64)
    for i in range(k):
        for j in range(n):
            rowpos[i, R[i, j]] = j
    best = np.full((k, n), INT8_MAX, np.int64)
    have = False
    count = 0
    lab = np.full(n, -1, np.int64)
    sym_of = np.full(n + 1, -1, np.int64)
    order = np.zeros(n, np.int64)  # symbols in the order their labels were given
    row1 = np.zeros(n, np.int64)
    cand = np.zeros((n + 1, n), np.int64)
    candn = np.zeros(n + 1, np.int64)
    candi = np.zeros(n + 1, np.int64)
    fpos = np.zeros(n + 1, np.int64)
    fnlab = np.zeros(n + 1, np.int64)
    cyc = np.zeros(n, np.int64)
    work = np.zeros((k, n), np.int64)
    for c0 in range(n):
        for pi in range(nperm):
            rho = perms[pi]
            for s in range(n):
                lab[s] = -1
                sym_of[s] = -1
            for i in range(k):
                s = R[rho[i], c0]
                lab[s] = i
                sym_of[i] = s
                order[i] = s
            nlab = k
            r0 = rho[0]
            r1 = rho[1]
            # state: 0 equal to best so far, -1 already smaller, (no best -> -1)
            state = 0 if have else -1
            j = 0
            nframes = 0
            while True:
                # advance along row 1 from position j
                pruned = False
                while j < n:
                    y = sym_of[j]
                    if y < 0:
                        break
                    z = R[r1, rowpos[r0, y]]
                    v = lab[z]
                    if v < 0:
                        v = nlab
                        lab[z] = v
                        sym_of[v] = z
                        order[v] = z
                        nlab += 1
                    row1[j] = v
                    if state == 0:
                        if v < best[1, j]:
                            state = -1
                        elif v > best[1, j]:
                            pruned = True
                            break
                    j += 1
                if not pruned and j < n:
                    # closure: branch on unlabeled symbols in shortest cycles
                    minlen = n + 1
                    for s in range(n):
                        cyc[s] = 0
                    for s in range(n):
                        if lab[s] < 0 and cyc[s] == 0:
                            length = 0
                            x = s
                            while True:
                                length += 1
                                x = R[r1, rowpos[r0, x]]
                                if x == s:
                                    break
                            x = s
                            while True:
                                cyc[x] = length
                                x = R[r1, rowpos[r0, x]]
                                if x == s:
                                    break
                            if length < minlen:
                                minlen = length
                    cnt = 0
                    for s in range(n):
                        if lab[s] < 0 and cyc[s] == minlen:
                            cand[nframes, cnt] = s
                            cnt += 1
                    candn[nframes] = cnt
                    candi[nframes] = 0
                    fpos[nframes] = j
                    fnlab[nframes] = nlab
                    nframes += 1
                elif not pruned:
                    # row 1 complete: finish the remaining rows and compare
                    for jj in range(n):
                        work[0, jj] = jj
                        work[1, jj] = row1[jj]
                    st = state
                    worse = False
                    for i in range(2, k):
                        ri = rho[i]
                        for jj in range(n):
                            v = lab[R[ri, rowpos[r0, sym_of[jj]]]]
                            work[i, jj] = v
                            if st == 0:
                                if v < best[i, jj]:
                                    st = -1
                                elif v > best[i, jj]:
                                    worse = True
                                    break
                        if worse:
                            break
                    if not worse:
                        if st == -1:
                            for i in range(k):
                                for jj in range(n):
                                    best[i, jj] = work[i, jj]
                            have = True
                            count = 1
                        else:
                            count += 1
                # resume at the deepest frame with an untried candidate
                resumed = False
                while nframes > 0:
                    f = nframes - 1
                    # undo labels given after this frame
                    for q in range(fnlab[f], nlab):
                        lab[order[q]] = -1
                        sym_of[q] = -1
                    nlab = fnlab[f]
                    if candi[f] < candn[f]:
                        y = cand[f, candi[f]]
                        candi[f] += 1
                        j = fpos[f]
                        if not have:
                            state = -1
                        else:
                            # the best may have changed since the frame was opened
                            state = 0
                            for jj in range(j):
                                if row1[jj] < best[1, jj]:
                                    state = -1
                                    break
                                if row1[jj] > best[1, jj]:
                                    state = 1
                                    break
                        if state == 1:
                            continue
                        lab[y] = nlab
                        sym_of[nlab] = y
                        order[nlab] = y
                        nlab += 1
                        resumed = True
                        break
                    nframes -= 1
                if not resumed:
                    break
    out = np.zeros((k, n), np.int8)
    for i in range(k):
        for j in range(n):
            out[i, j] = best[i, j]
    return out, count


@njit(cache=True)
def rect_canonical_batch(Rs, perms):
    m = Rs.shape[0]
    forms = np.zeros_like(Rs)
    counts = np.zeros(m, np.int64)
    for q in range(m):
        f, c = rect_canonical(Rs[q], perms)
        forms[q] = f
        counts[q] = c
    return forms, counts


# ---------------------------------------------------------------------------
# autotopism group order by propagation
# ---------------------------------------------------------------------------


@njit(cache=True)
def _propagate(R, rowpos, rho, pi_map, pi_inv, sig, sig_inv, queue, qlen):
    """Extend the partial column/symbol maps from the queued columns.

    Returns False on a contradiction.  Columns newly fixed are appended to the
    queue as they are discovered.
    """
    k, n = R.shape
    qh = 0
    while qh < qlen:
        j = queue[qh]
        qh += 1
        tj = pi_map[j]
        for i in range(k):
            a = R[i, j]
            b = R[rho[i], tj]
            if sig[a] < 0:
                if sig_inv[b] >= 0:
                    return False, qlen
                sig[a] = b
                sig_inv[b] = a
                # every column holding a in some row is now pinned
                for i2 in range(k):
                    c = rowpos[i2, a]
                    tc = rowpos[rho[i2], b]
                    if pi_map[c] < 0:
                        if pi_inv[tc] >= 0:
                            return False, qlen
                        pi_map[c] = tc
                        pi_inv[tc] = c
                        queue[qlen] = c
                        qlen += 1
                    elif pi_map[c] != tc:
                        return False, qlen
            elif sig[a] != b:
                return False, qlen
    return True, qlen


@njit(cache=True)
def autotopism_count(R, perms):
    """Count isotopisms fixing R: column 0's image x row order, then propagate."""
    k, n = R.shape
    rowpos = np.zeros((k, n), np.int64)
    for i in range(k):
        for j in range(n):
            rowpos[i, R[i, j]] = j
    total = 0
    nperm = perms.shape[0]
    # explicit stack of branch points for disconnected structures
    pi_stack = np.zeros((n + 1, n), np.int64)
    pinv_stack = np.zeros((n + 1, n), np.int64)
    sig_stack = np.zeros((n + 1, n), np.int64)
    sinv_stack = np.zeros((n + 1, n), np.int64)
    col_stack = np.zeros(n + 1, np.int64)
    tgt_stack = np.zeros(n + 1, np.int64)
    queue = np.zeros(n + 1, np.int64)
    for c in range(n):
        for pidx in range(nperm):
            rho = perms[pidx]
            pi_map = np.full(n, -1, np.int64)
            pi_inv = np.full(n, -1, np.int64)
            sig = np.full(n, -1, np.int64)
            sig_inv = np.full(n, -1, np.int64)
            pi_map[0] = c
            pi_inv[c] = 0
            queue[0] = 0
            ok, qlen = _propagate(R, rowpos, rho, pi_map, pi_inv, sig, sig_inv, queue, 1)
            if not ok:
                continue
            depth = 0
            while True:
                # find an unmapped column
                free = -1
                if ok:
                    for j in range(n):
                        if pi_map[j] < 0:
                            free = j
                            break
                    if free < 0:
                        total += 1
                    else:
                        pi_stack[depth] = pi_map
                        pinv_stack[depth] = pi_inv
                        sig_stack[depth] = sig
                        sinv_stack[depth] = sig_inv
                        col_stack[depth] = free
                        tgt_stack[depth] = -1
                        depth += 1
                # next branch
                advanced = False
                while depth > 0:
                    d = depth - 1
                    tgt = tgt_stack[d] + 1
                    pinv = pinv_stack[d]
                    while tgt < n and pinv[tgt] >= 0:
                        tgt += 1
                    if tgt >= n:
                        depth -= 1
                        continue
                    tgt_stack[d] = tgt
                    pi_map = pi_stack[d].copy()
                    pi_inv = pinv_stack[d].copy()
                    sig = sig_stack[d].copy()
                    sig_inv = sinv_stack[d].copy()
                    col = col_stack[d]
                    pi_map[col] = tgt
                    pi_inv[tgt] = col
                    queue[0] = col
                    ok, qlen = _propagate(R, rowpos, rho, pi_map, pi_inv, sig, sig_inv, queue, 1)
                    advanced = True
                    break
                if not advanced:
                    break
    return total


@njit(cache=True)
def autotopism_count_batch(Rs, perms):
    out = np.zeros(Rs.shape[0], np.int64)
    for q in range(Rs.shape[0]):
        out[q] = autotopism_count(Rs[q], perms)
    return out


# ---------------------------------------------------------------------------
# canonical form of a filled r x c array under row, column, symbol permutation
# ---------------------------------------------------------------------------


@njit(cache=True)
def array_canonical(A, v, rperms, cperms):
    """Row-major minimum over row and column orders with first-appearance labels.

    Returns (form, count); count is the number of (row order, column order)
    pairs reaching the form, which is the autotopism group order because the
    symbol map is forced once rows and columns are placed.
    """
    r, c = A.shape
    best = np.full(r * c, INT8_MAX, np.int64)
    work = np.zeros(r * c, np.int64)
    lab = np.full(v, -1, np.int64)
    stamp = np.zeros(v, np.int64)
    tick = 0
    count = 0
    for a in range(rperms.shape[0]):
        rp = rperms[a]
        for b in range(cperms.shape[0]):
            cp = cperms[b]
            tick += 1
            nlab = 0
            state = 0
            pos = 0
            for i in range(r):
                row = rp[i]
                for j in range(c):
                    s = A[row, cp[j]]
                    if stamp[s] != tick:
                        stamp[s] = tick
                        lab[s] = nlab
                        nlab += 1
                    x = lab[s]
                    work[pos] = x
                    if state == 0:
                        if x < best[pos]:
                            state = -1
                        elif x > best[pos]:
                            state = 1
                            break
                    pos += 1
                if state == 1:
                    break
            if state == -1:
                for q in range(r * c):
                    best[q] = work[q]
                count = 1
            elif state == 0:
                count += 1
    out = np.zeros((r, c), np.int8)
    for i in range(r):
        for j in range(c):
            out[i, j] = best[i * c + j]
    return out, count


@njit(cache=True)
def array_canonical_batch(As, v, rperms, cperms):
    out = np.zeros_like(As)
    counts = np.zeros(As.shape[0], np.int64)
    for q in range(As.shape[0]):
        f, cnt = array_canonical(As[q], v, rperms, cperms)
        out[q] = f
        counts[q] = cnt
    return out, counts


# ---------------------------------------------------------------------------
# Construction 1 and the array conditions, in bulk
# ---------------------------------------------------------------------------


@njit(cache=True)
def remove_and_swap_all(Rs):
    """Construction 1 applied to every column of every rectangle.

    Rs has shape (m, k, n); the result has shape (m * n, k, n - k) and holds
    the array for rectangle q, column c at index q * n + c.
    """
    m, k, n = Rs.shape
    out = np.zeros((m * n, k, n - k), np.int8)
    incol = np.zeros(n, np.bool_)
    for q in range(m):
        R = Rs[q]
        for c in range(n):
            for s in range(n):
                incol[s] = False
            for i in range(k):
                incol[R[i, c]] = True
            for i in range(k):
                pos = 0
                for s in range(n):
                    if incol[s]:
                        continue
                    j = 0
                    while R[i, j] != s:
                        j += 1
                    out[q * n + c, i, pos] = j if j < c else j - 1
                    pos += 1
    return out


@njit(cache=True)
def _constant_or_minus(values, cnt):
    if cnt == 0:
        return -1
    x = values[0]
    for q in range(1, cnt):
        if values[q] != x:
            return -2
    return x


@njit(cache=True)
def array_conditions(A, v):
    """TA1..TA5 for a filled array.

    Returns (ta1, e, l_rr, l_cc, l_rc) where e and the lambdas are -2 when the
    condition fails and -1 when it holds vacuously (no pairs to compare).
    """
    r, c = A.shape
    ta1 = True
    rowm = np.zeros(r, np.int64)
    colm = np.zeros(c, np.int64)
    for i in range(r):
        for j in range(c):
            b = 1 << A[i, j]
            if rowm[i] & b or colm[j] & b:
                ta1 = False
            rowm[i] |= b
            colm[j] |= b
    occ = np.zeros(v, np.int64)
    for i in range(r):
        for j in range(c):
            occ[A[i, j]] += 1
    e = occ[0]
    for s in range(1, v):
        if occ[s] != e:
            e = -2
            break
    buf = np.zeros(max(r * r, c * c, r * c) + 1, np.int64)
    cnt = 0
    for i in range(r):
        for i2 in range(i + 1, r):
            buf[cnt] = _popcount(rowm[i] & rowm[i2])
            cnt += 1
    lrr = _constant_or_minus(buf, cnt)
    cnt = 0
    for j in range(c):
        for j2 in range(j + 1, c):
            buf[cnt] = _popcount(colm[j] & colm[j2])
            cnt += 1
    lcc = _constant_or_minus(buf, cnt)
    cnt = 0
    for i in range(r):
        for j in range(c):
            buf[cnt] = _popcount(rowm[i] & colm[j])
            cnt += 1
    lrc = _constant_or_minus(buf, cnt)
    return ta1, e, lrr, lcc, lrc


@njit(cache=True)
def array_conditions_batch(As, v):
    m = As.shape[0]
    out = np.zeros((m, 5), np.int64)
    for q in range(m):
        ta1, e, lrr, lcc, lrc = array_conditions(As[q], v)
        out[q, 0] = 1 if ta1 else 0
        out[q, 1] = e
        out[q, 2] = lrr
        out[q, 3] = lcc
        out[q, 4] = lrc
    return out
