"""Minimal trips, occupancy rates and temporal distances of a graph series.

The core is a dynamic program that walks the snapshots backward: knowing
the earliest arrival EA_{k+1}(u, v) and the minimum hop count
H_{k+1}(u, v) of all trips departing not before snapshot k+1, snapshot
k's edges update both in O(edges * destinations) work, giving O(n*M)
total over a sweep. A minimal trip (u, v, k, EA_k(u, v)) is emitted
exactly when the arrival strictly improves (EA_{k+1} > EA_k): a strictly
included interval would require either a later departure with the same
or earlier arrival, or an equal departure with an earlier arrival, and
the latter is impossible by minimality of EA.

Trips with u == v are never emitted; they carry no propagation meaning.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernels

__all__ = [
    "OccupancyDistribution",
    "DistanceAggregates",
    "occupancy_rate",
    "minimal_trip_sweep",
    "stream_earliest_arrival",
]

_FLUSH_AT = 1 << 20
# keep per-block DP state (3 arrays) under ~300 MB
_MAX_STATE_ELEMENTS = 24_000_000


def occupancy_rate(hops, duration):
    """Exact rate hops/duration in (0, 1] of a minimal trip."""
    hops = int(hops)
    duration = int(duration)
    if not 1 <= hops <= duration:
        raise ValueError(f"need 1 <= hops <= duration, got ({hops}, {duration})")
    return Fraction(hops, duration)


class OccupancyDistribution:
    """Multiset of occupancy rates, kept as exact (hops, duration) keys.

    Backed by sorted parallel arrays (hops, duration, count) so that
    distributions with millions of distinct keys stay cheap to build and
    reduce; ad-hoc ``add`` calls are buffered and folded in lazily.
    Hops and durations must fit 31 bits (they are snapshot counts).
    """

    def __init__(self, counts=None):
        self._h = np.empty(0, dtype=np.int64)
        self._d = np.empty(0, dtype=np.int64)
        self._c = np.empty(0, dtype=np.int64)
        self._pending = []
        self.total = 0
        if counts:
            for (h, d), c in dict(counts).items():
                self.add(h, d, c)

    def add(self, hops, duration, count=1):
        hops = int(hops)
        duration = int(duration)
        if not 1 <= hops <= duration:
            raise ValueError(f"need 1 <= hops <= duration, got ({hops}, {duration})")
        if duration >= 1 << 31:
            raise ValueError("duration does not fit 31 bits")
        self._pending.append((hops, duration, int(count)))
        self.total += int(count)

    @classmethod
    def from_pairs(cls, pairs):
        """Build from an iterable of (hops, duration) samples."""
        dist = cls()
        for h, d in pairs:
            dist.add(h, d)
        return dist

    @classmethod
    def _from_packed(cls, keys, counts, mult):
        """From combined keys hops*mult + duration with multiplicities.

        Keys sorted by hops*mult + duration are already in (hops,
        duration) lexicographic order since duration < mult.
        """
        dist = cls()
        if keys.size:
            if np.issubdtype(counts.dtype, np.floating):
                counts = np.rint(counts).astype(np.int64)
            dist._h = keys // mult
            dist._d = keys % mult
            if dist._d.max() >= 1 << 31 or dist._h.max() >= 1 << 31:
                raise ValueError("hops/duration do not fit 31 bits")
            dist._c = counts.astype(np.int64)
            dist.total = int(_exact_sum(dist._c))
        return dist

    def _normalize(self):
        if not self._pending:
            return
        h = np.array([x[0] for x in self._pending], dtype=np.int64)
        d = np.array([x[1] for x in self._pending], dtype=np.int64)
        c = np.array([x[2] for x in self._pending], dtype=np.int64)
        self._pending = []
        h = np.concatenate([self._h, h])
        d = np.concatenate([self._d, d])
        c = np.concatenate([self._c, c])
        packed = h * (np.int64(1) << 31) + d
        uniq, inv = np.unique(packed, return_inverse=True)
        merged = np.bincount(inv, weights=c.astype(np.float64))
        self._h = uniq // (np.int64(1) << 31)
        self._d = uniq % (np.int64(1) << 31)
        self._c = np.rint(merged).astype(np.int64)

    def arrays(self):
        """(hops, duration, count) arrays sorted by (hops, duration)."""
        self._normalize()
        return self._h, self._d, self._c

    def merge(self, other):
        h2, d2, c2 = other.arrays()
        self._normalize()
        self._pending = []
        self._h = np.concatenate([self._h, h2])
        self._d = np.concatenate([self._d, d2])
        self._c = np.concatenate([self._c, c2])
        self.total += other.total
        # fold duplicates eagerly; arrays stay canonical
        packed = self._h * (np.int64(1) << 31) + self._d
        uniq, inv = np.unique(packed, return_inverse=True)
        merged = np.bincount(inv, weights=self._c.astype(np.float64))
        self._h = uniq // (np.int64(1) << 31)
        self._d = uniq % (np.int64(1) << 31)
        self._c = np.rint(merged).astype(np.int64)

    def items(self):
        """Sorted ((hops, duration), count) pairs; avoid on huge supports."""
        h, d, c = self.arrays()
        return [((int(hh), int(dd)), int(cc))
                for hh, dd, cc in zip(h.tolist(), d.tolist(), c.tolist())]

    def count_where_duration_at_least(self, dmin):
        h, d, c = self.arrays()
        return int(c[d >= dmin].sum())

    def support(self):
        """Distinct rates as sorted (Fraction, weight) pairs.

        Keys with equal value (e.g. (1, 2) and (2, 4)) are merged.
        Builds Fractions per key: meant for small distributions.
        """
        h, d, c = self.arrays()
        reduced = {}
        for hh, dd, cc in zip(h.tolist(), d.tolist(), c.tolist()):
            r = Fraction(hh, dd)
            reduced[r] = reduced.get(r, 0) + cc
        return sorted(reduced.items())

    def reduced_rate_arrays(self):
        """(p, q, weight, value) arrays of distinct reduced rates p/q,
        strictly sorted by exact value.

        The float sort is exact here: distinct reduced rationals with
        denominators below 2^31 stay distinguishable, which a cross-
        multiplication check verifies (exact fallback otherwise).
        """
        h, d, c = self.arrays()
        g = np.gcd(h, d)
        p = h // g
        q = d // g
        packed = (p << np.int64(31)) | q
        uniq, inv = np.unique(packed, return_inverse=True)
        w = np.bincount(inv, weights=c.astype(np.float64))
        p = uniq >> np.int64(31)
        q = uniq & np.int64((1 << 31) - 1)
        val = p / q
        order = np.argsort(val, kind="stable")
        p, q, w, val = p[order], q[order], w[order], val[order]
        if p.size > 1 and not np.all(p[:-1] * q[1:] < p[1:] * q[:-1]):
            exact = sorted(range(p.size), key=lambda i: Fraction(int(p[i]), int(q[i])))
            idx = np.array(exact)
            p, q, w, val = p[idx], q[idx], w[idx], val[idx]
        return p, q, w, val

    def __len__(self):
        return int(self.arrays()[0].size)

    def __eq__(self, other):
        if not isinstance(other, OccupancyDistribution):
            return NotImplemented
        h1, d1, c1 = self.arrays()
        h2, d2, c2 = other.arrays()
        return (np.array_equal(h1, h2) and np.array_equal(d1, d2)
                and np.array_equal(c1, c2))

    def __repr__(self):
        return f"OccupancyDistribution(keys={len(self)}, total={self.total})"


@dataclass
class DistanceAggregates:
    """Exact integer accumulators for the distance curves.

    Sums run over all ordered pairs (u, v), v in the swept sink set,
    u != v, and all departure snapshots k with finite earliest arrival.
    """

    sum_d_time: int = 0
    sum_d_hops: int = 0
    finite_triples: int = 0
    pair_count: int = 0
    snapshot_count: int = 0
    delta_seconds: float = 0.0

    def merge(self, other):
        self.sum_d_time += other.sum_d_time
        self.sum_d_hops += other.sum_d_hops
        self.finite_triples += other.finite_triples
        self.pair_count += other.pair_count

    @property
    def mean_d_time(self):
        if self.finite_triples == 0:
            return float("nan")
        return self.sum_d_time / self.finite_triples

    @property
    def mean_d_hops(self):
        if self.finite_triples == 0:
            return float("nan")
        return self.sum_d_hops / self.finite_triples

    @property
    def mean_d_time_abs(self):
        return self.delta_seconds * self.mean_d_time

    @property
    def finite_pair_fraction(self):
        denom = self.pair_count * self.snapshot_count
        if denom == 0:
            return float("nan")
        return self.finite_triples / denom


def _exact_sum(a):
    """Sum an int64 array into a Python int without overflow."""
    if a.size == 0:
        return 0
    m = int(np.abs(a).max())
    if m == 0:
        return 0
    chunk = max(1, (1 << 62) // (m + 1))
    if chunk >= a.size:
        return int(a.sum(dtype=np.int64))
    return sum(int(a[i:i + chunk].sum(dtype=np.int64))
               for i in range(0, a.size, chunk))


class _EmissionBuffer:
    """Batches (hops, duration) samples, reducing to exact key counts."""

    def __init__(self, snapshot_count):
        self._mult = np.int64(snapshot_count + 1)
        self._keys = []
        self._size = 0
        self._partials = []

    def add(self, hops, durations):
        if hops.size == 0:
            return
        self._keys.append(hops.astype(np.int64) * self._mult + durations)
        self._size += hops.size
        if self._size >= _FLUSH_AT:
            self._flush()

    def _flush(self):
        if not self._keys:
            return
        keys = np.concatenate(self._keys)
        self._keys = []
        self._size = 0
        uniq, cnt = np.unique(keys, return_counts=True)
        self._partials.append((uniq, cnt.astype(np.int64)))

    def result(self):
        """Combined (packed keys, counts) arrays."""
        self._flush()
        return _combine_keyed_counts(self._partials)


def _combine_keyed_counts(partials):
    """Merge (keys, counts) pairs into one exact keyed count."""
    partials = [p for p in partials if p[0].size]
    if not partials:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    keys = np.concatenate([p[0] for p in partials])
    counts = np.concatenate([p[1] for p in partials])
    uniq, inv = np.unique(keys, return_inverse=True)
    merged = np.bincount(inv, weights=counts.astype(np.float64),
                         minlength=uniq.size)
    return uniq, np.rint(merged).astype(np.int64)


def _sweep_columns(series, cols, trip_sink=None):
    """Backward DP over one block of destination columns.

    Returns (packed emission keys, counts, sum_d_time, sum_d_hops,
    finite_triples) with exact integer sums.
    """
    n = series.node_count
    K = series.snapshot_count
    dtype = np.int32 if K + 1 < np.iinfo(np.int32).max else np.int64
    sentinel = dtype(K + 1)
    # never survives a minimum: at least one option always attains new_ea
    hop_inf = dtype(np.iinfo(dtype).max)
    C = cols.size

    ea = np.full((n, C), sentinel, dtype=dtype)
    hp = np.zeros((n, C), dtype=dtype)
    run_end = np.full((n, C), K, dtype=dtype)

    colmap = np.full(n, -1, dtype=np.int64)
    colmap[cols] = np.arange(C)

    buf = _EmissionBuffer(K)
    sum_d_time = 0
    sum_d_hops = 0
    finite_triples = 0

    snaps = series._s_snap
    starts = series._s_start
    su, sv = series.su, series.sv

    for i in range(len(snaps) - 1, -1, -1):
        k = int(snaps[i])
        lo, hi = starts[i], starts[i + 1]
        src = su[lo:hi]
        dst = sv[lo:hi]
        sources, g_start = np.unique(src, return_index=True)
        g_end = np.append(g_start[1:], src.size)

        # pass 1: compute every updated row from the k+1 state
        updates = []
        for s_idx in range(sources.size):
            u = int(sources[s_idx])
            targets = dst[g_start[s_idx]:g_end[s_idx]]
            old_ea = ea[u]
            old_hp = hp[u]
            if targets.size == 1:
                w = int(targets[0])
                relay_ea = ea[w]
                relay_hp = hp[w] + dtype(1)
            else:
                rows_ea = ea[targets]
                relay_ea = rows_ea.min(axis=0)
                relay_hp = np.where(rows_ea == relay_ea, hp[targets],
                                    hop_inf).min(axis=0) + dtype(1)
            new_ea = np.minimum(old_ea, relay_ea)
            new_hp = np.where(old_ea == new_ea, old_hp, hop_inf)
            np.minimum(new_hp, np.where(relay_ea == new_ea, relay_hp, hop_inf),
                       out=new_hp)
            tcols = colmap[targets]
            tcols = tcols[tcols >= 0]
            if tcols.size:
                new_ea[tcols] = dtype(k)
                new_hp[tcols] = dtype(1)
            diag = colmap[u]
            if diag >= 0:
                new_ea[diag] = sentinel
                new_hp[diag] = dtype(0)
            updates.append((u, new_ea, new_hp))

        # pass 2: close runs, emit improvements, write the k state
        for u, new_ea, new_hp in updates:
            old_ea = ea[u]
            old_hp = hp[u]
            changed = (new_ea != old_ea) | (new_hp != old_hp)
            ch = np.nonzero(changed)[0]
            if ch.size == 0:
                continue
            old_ea_ch = old_ea[ch].astype(np.int64)
            fin = old_ea_ch != int(sentinel)
            if fin.any():
                a = old_ea_ch[fin]
                h = old_hp[ch][fin].astype(np.int64)
                r = run_end[u][ch][fin].astype(np.int64)
                cnt = r - k
                sum_d_time += _exact_sum(cnt * (2 * (a + 1) - (k + 1 + r)) // 2)
                sum_d_hops += _exact_sum(cnt * h)
                finite_triples += _exact_sum(cnt)
            run_end[u][ch] = dtype(k)
            improved = ch[new_ea[ch].astype(np.int64) < old_ea_ch]
            if improved.size:
                arr = new_ea[improved].astype(np.int64)
                hops = new_hp[improved].astype(np.int64)
                buf.add(hops, arr - k + 1)
                if trip_sink is not None:
                    trip_sink(u, cols[improved], k, arr, hops)
            ea[u] = new_ea
            hp[u] = new_hp

    # flush the final runs: the last state holds for departures 1..run_end
    for u in range(n):
        row_ea = ea[u].astype(np.int64)
        fin = np.nonzero(row_ea != int(sentinel))[0]
        if fin.size == 0:
            continue
        a = row_ea[fin]
        h = hp[u][fin].astype(np.int64)
        r = run_end[u][fin].astype(np.int64)
        sum_d_time += _exact_sum(r * (2 * (a + 1) - (1 + r)) // 2)
        sum_d_hops += _exact_sum(r * h)
        finite_triples += _exact_sum(r)

    keys, counts = buf.result()
    return keys, counts, sum_d_time, sum_d_hops, finite_triples


def _kernel_columns(series, cols):
    """Run the jitted per-destination sweep over one column block."""
    keys, sum_dt, sum_dh, fin = _kernels.column_sweep(
        series.node_count, series.snapshot_count,
        series._s_snap.astype(np.int64), series._s_start.astype(np.int64),
        series.su.astype(np.int64, copy=False),
        series.sv.astype(np.int64, copy=False), cols)
    uniq, cnt = np.unique(keys, return_counts=True)
    sdt = sum(int(x) for x in sum_dt.tolist())
    sdh = sum(int(x) for x in sum_dh.tolist())
    return uniq, cnt.astype(np.int64), sdt, sdh, sum(int(x) for x in fin.tolist())


def _column_blocks(n, cols, threads, engine):
    if engine == "numba":
        blocks = max(1, threads)
    else:
        per_block = max(1, _MAX_STATE_ELEMENTS // n)
        blocks = max(threads, -(-cols.size // per_block))
    return np.array_split(cols, min(blocks, cols.size))


def minimal_trip_sweep(series, sinks=None, *, threads=1, trip_sink=None,
                       engine="auto"):
    """All minimal trips of a series, as occupancy and distance aggregates.

    Runs the backward DP toward every destination in ``sinks`` (all nodes
    by default). Destination columns are independent, so they are swept
    in blocks, in parallel when ``threads`` > 1; block partials merge
    exactly, making the result independent of the block/thread layout.
    ``trip_sink(u, v_array, dep, arr_array, hops_array)``, when given,
    receives every emitted minimal trip.

    ``engine`` picks the implementation: "numba" walks one destination
    column at a time with O(n) state, "numpy" vectorizes rows over column
    blocks; "auto" uses the jitted path when available except for
    ``trip_sink`` runs, which need the vectorized emission batches. Both
    produce identical results.

    Returns (OccupancyDistribution, DistanceAggregates).
    """
    n = series.node_count
    if sinks is None:
        cols = np.arange(n, dtype=np.int64)
    else:
        cols = np.unique(np.asarray(list(sinks), dtype=np.int64))
        if cols.size == 0:
            raise ValueError("sinks must be non-empty")
        if cols.min() < 0 or cols.max() >= n:
            raise ValueError("sink ids out of range")

    if engine == "auto":
        engine = "numba" if _kernels.HAVE_NUMBA and trip_sink is None else "numpy"
    if engine == "numba" and trip_sink is not None:
        raise ValueError("trip_sink requires the numpy engine")
    if engine == "numba":
        run = lambda b: _kernel_columns(series, b)
    elif engine == "numpy":
        run = lambda b: _sweep_columns(series, b, trip_sink=trip_sink)
    else:
        raise ValueError(f"unknown engine {engine!r}")

    blocks = _column_blocks(n, cols, threads, engine)
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, blocks))
    else:
        results = [run(b) for b in blocks]

    agg = DistanceAggregates(pair_count=int(cols.size) * (n - 1),
                             snapshot_count=series.snapshot_count,
                             delta_seconds=series.delta_seconds)
    for _, _, sdt, sdh, fin in results:
        agg.sum_d_time += sdt
        agg.sum_d_hops += sdh
        agg.finite_triples += fin
    keys, counts = _combine_keyed_counts([(r[0], r[1]) for r in results])
    dist = OccupancyDistribution._from_packed(keys, counts,
                                              series.snapshot_count + 1)
    return dist, agg


def stream_earliest_arrival(stream, u, window, v):
    """Fastest trip from u to v inside a time window of the raw stream.

    Scans the window's events backward over distinct timestamps (links at
    equal times cannot chain) and returns the (t_dep, t_arr) pair of a
    stream minimal trip with the smallest duration t_arr - t_dep, with
    both endpoints inside [t_lo, t_hi]; ties resolve to the earliest
    departure. Returns None when no such trip exists.
    """
    u = int(u)
    v = int(v)
    if u == v:
        raise ValueError("u and v must differ")
    t_lo, t_hi = int(window[0]), int(window[1])
    if t_lo > t_hi:
        raise ValueError("empty window")
    ts = stream.t
    lo = int(np.searchsorted(ts, t_lo, side="left"))
    hi = int(np.searchsorted(ts, t_hi, side="right"))
    if stream.directed:
        events = [(int(ts[i]), int(stream.u[i]), int(stream.v[i]))
                  for i in range(lo, hi)]
    else:
        events = []
        for i in range(lo, hi):
            t, a, b = int(ts[i]), int(stream.u[i]), int(stream.v[i])
            events.append((t, a, b))
            events.append((t, b, a))

    arrival = {}
    best = None
    i = len(events) - 1
    while i >= 0:
        t = events[i][0]
        group_updates = {}
        while i >= 0 and events[i][0] == t:
            _, x, y = events[i]
            arr = t if y == v else arrival.get(y)
            if arr is not None:
                if x == u and (best is None or arr - t < best[1] - best[0]
                               or (arr - t == best[1] - best[0] and t < best[0])):
                    best = (t, arr)
                prev = group_updates.get(x, arrival.get(x))
                if prev is None or arr < prev:
                    group_updates[x] = arr
            i -= 1
        arrival.update(group_updates)
    return best
