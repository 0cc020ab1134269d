"""Hot scalar loops over raw stream events, jitted when numba is present.

Both kernels walk events backward over distinct timestamps (links at one
instant cannot chain) keeping, per node x, the earliest arrival at a
fixed destination among paths departing at or after the scan position.
A stamp array makes the per-query/per-destination state reset O(1).

Without numba the same functions run as plain Python: identical results,
just slower.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func
        return wrap

_INF = 1 << 62


@njit(cache=True, nogil=True)
def column_sweep(n, K, snap_ids, snap_ptr, edge_src, edge_dst, cols):
    """Backward DP toward each destination in ``cols``, O(n) state per column.

    Snapshots come as a CSR layout over the non-empty snapshot ids with
    per-direction edges grouped by snapshot and sorted by source. Returns
    the emitted (hops, duration) samples as combined keys
    hops*(K+1)+duration plus per-column exact distance sums
    (sum_d_time, sum_d_hops, finite_triples).
    """
    sentinel = K + 1
    hop_inf = K + 2
    C = cols.size
    ea = np.empty(n, dtype=np.int64)
    hp = np.empty(n, dtype=np.int64)
    rend = np.empty(n, dtype=np.int64)
    ub_x = np.empty(n, dtype=np.int64)
    ub_a = np.empty(n, dtype=np.int64)
    ub_h = np.empty(n, dtype=np.int64)
    sum_dt = np.zeros(C, dtype=np.int64)
    sum_dh = np.zeros(C, dtype=np.int64)
    fin = np.zeros(C, dtype=np.int64)
    keys = np.empty(1024, dtype=np.int64)
    nkeys = 0
    for ci in range(C):
        v = cols[ci]
        for x in range(n):
            ea[x] = sentinel
            hp[x] = 0
            rend[x] = K
        for si in range(snap_ids.size - 1, -1, -1):
            k = snap_ids[si]
            hi = snap_ptr[si + 1]
            ucnt = 0
            i = snap_ptr[si]
            while i < hi:
                x = edge_src[i]
                best_a = sentinel
                best_h = hop_inf
                while i < hi and edge_src[i] == x:
                    w = edge_dst[i]
                    if w == v:
                        # direct edge arrives at k, earlier than any relay
                        best_a = k
                        best_h = 1
                    else:
                        a = ea[w]
                        if a < best_a:
                            best_a = a
                            best_h = hp[w] + 1
                        elif a == best_a and a != sentinel and hp[w] + 1 < best_h:
                            best_h = hp[w] + 1
                    i += 1
                if x == v:
                    continue
                na = ea[x]
                nh = hp[x]
                if best_a < na:
                    na = best_a
                    nh = best_h
                elif best_a == na and na != sentinel and best_h < nh:
                    nh = best_h
                if na != ea[x] or nh != hp[x]:
                    ub_x[ucnt] = x
                    ub_a[ucnt] = na
                    ub_h[ucnt] = nh
                    ucnt += 1
            # apply after the whole snapshot: same-snapshot edges cannot chain
            for r in range(ucnt):
                x = ub_x[r]
                na = ub_a[r]
                nh = ub_h[r]
                olda = ea[x]
                if olda != sentinel:
                    cnt = rend[x] - k
                    sum_dt[ci] += cnt * (2 * (olda + 1) - (k + 1 + rend[x])) // 2
                    sum_dh[ci] += cnt * hp[x]
                    fin[ci] += cnt
                rend[x] = k
                if na < olda:
                    if nkeys == keys.size:
                        grown = np.empty(keys.size * 2, dtype=np.int64)
                        grown[:nkeys] = keys
                        keys = grown
                    keys[nkeys] = nh * (K + 1) + (na - k + 1)
                    nkeys += 1
                ea[x] = na
                hp[x] = nh
        for x in range(n):
            if x != v and ea[x] != sentinel:
                r_ = rend[x]
                sum_dt[ci] += r_ * (2 * (ea[x] + 1) - (1 + r_)) // 2
                sum_dh[ci] += r_ * hp[x]
                fin[ci] += r_
    return keys[:nkeys], sum_dt, sum_dh, fin


@njit(cache=True)
def _advance(ev_t, ev_s, ev_d, i, limit, dest, mark, val, stamp, bx, ba):
    """Consume event groups with t > limit, updating arrival state.

    Events sharing a timestamp are staged and applied together so they
    cannot chain. Returns the new scan index.
    """
    while i >= 0 and ev_t[i] > limit:
        t = ev_t[i]
        j = i
        cnt = 0
        while j >= 0 and ev_t[j] == t:
            x = ev_s[j]
            y = ev_d[j]
            if y == dest:
                cand = t
            elif stamp[y] == mark:
                cand = val[y]
            else:
                cand = np.int64(-1)
            if cand >= 0:
                bx[cnt] = x
                ba[cnt] = cand
                cnt += 1
            j -= 1
        for r in range(cnt):
            x = bx[r]
            cand = ba[r]
            if stamp[x] != mark or cand < val[x]:
                stamp[x] = mark
                val[x] = cand
        i = j
    return i


@njit(cache=True)
def window_min_durations(ev_t, ev_s, ev_d, q_u, q_v, q_lo, q_hi, n):
    """Per query (u, v, t_lo, t_hi): min t_arr - t_dep over trips inside
    the window, -1 when v is unreachable from u there."""
    out = np.full(q_u.size, -1, dtype=np.int64)
    val = np.zeros(n, dtype=np.int64)
    stamp = np.full(n, -1, dtype=np.int64)
    bx = np.empty(ev_t.size, dtype=np.int64)
    ba = np.empty(ev_t.size, dtype=np.int64)
    for q in range(q_u.size):
        u = q_u[q]
        v = q_v[q]
        lo = np.searchsorted(ev_t, q_lo[q], side="left")
        hi = np.searchsorted(ev_t, q_hi[q], side="right")
        best = np.int64(-1)
        i = hi - 1
        while i >= lo:
            t = ev_t[i]
            j = i
            cnt = 0
            while j >= lo and ev_t[j] == t:
                x = ev_s[j]
                y = ev_d[j]
                if y == v:
                    cand = t
                elif stamp[y] == q:
                    cand = val[y]
                else:
                    cand = np.int64(-1)
                if cand >= 0:
                    if x == u:
                        d = cand - t
                        if best < 0 or d < best:
                            best = d
                    bx[cnt] = x
                    ba[cnt] = cand
                    cnt += 1
                j -= 1
            for r in range(cnt):
                x = bx[r]
                cand = ba[r]
                if stamp[x] != q or cand < val[x]:
                    stamp[x] = q
                    val[x] = cand
            i = j
        out[q] = best
    return out


@njit(cache=True)
def transition_checks(ev_t, ev_s, ev_d, q_a, q_t1, q_t2, grp_dest, grp_start, n):
    """Stream-level minimality of candidate trips (a, c, t1, t2).

    Queries are grouped by destination c (``grp_dest``/``grp_start``) and
    sorted by t1 descending inside a group. A candidate passes iff the
    earliest arrival from a to c departing at or after t1 equals t2 while
    departing strictly after t1 arrives strictly after t2.
    """
    out = np.zeros(q_a.size, dtype=np.bool_)
    val = np.zeros(n, dtype=np.int64)
    stamp = np.full(n, -1, dtype=np.int64)
    bx = np.empty(ev_t.size, dtype=np.int64)
    ba = np.empty(ev_t.size, dtype=np.int64)
    for g in range(grp_dest.size):
        c = grp_dest[g]
        qi = grp_start[g]
        qend = grp_start[g + 1]
        i = ev_t.size - 1
        while qi < qend:
            t1 = q_t1[qi]
            i = _advance(ev_t, ev_s, ev_d, i, t1, c, g, val, stamp, bx, ba)
            qj = qi
            while qj < qend and q_t1[qj] == t1:
                a = q_a[qj]
                ea_after = val[a] if stamp[a] == g else _INF
                out[qj] = ea_after > q_t2[qj]
                qj += 1
            i = _advance(ev_t, ev_s, ev_d, i, t1 - 1, c, g, val, stamp, bx, ba)
            for r in range(qi, qj):
                a = q_a[r]
                ea_at = val[a] if stamp[a] == g else _INF
                out[r] = out[r] and ea_at == q_t2[r]
            qi = qj
    return out
