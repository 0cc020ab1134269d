"""Loss measures of an aggregation: destroyed transitions and trip elongation.

Two complementary quantifications of what a window length destroys:

* the share of the stream's shortest transitions (two-hop minimal trips)
  whose events fall inside one window, losing their ordering;
* the elongation factor of the series' minimal trips, comparing each
  trip's absolute duration against the fastest stream realization inside
  the same absolute window.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .reach import minimal_trip_sweep

__all__ = [
    "TransitionSet",
    "ElongationResult",
    "LossReport",
    "enumerate_shortest_transitions",
    "lost_fraction",
    "mean_elongation",
]


def _sym_events(stream):
    """(t, src, dst) int64 arrays sorted by t; both directions if undirected."""
    t = stream.t.astype(np.int64)
    u = stream.u.astype(np.int64)
    v = stream.v.astype(np.int64)
    if stream.directed:
        return t, u, v
    tt = np.concatenate([t, t])
    ss = np.concatenate([u, v])
    dd = np.concatenate([v, u])
    order = np.lexsort((dd, ss, tt))
    return tt[order], ss[order], dd[order]


@dataclass
class TransitionSet:
    """Shortest transitions (a, b, c, t1, t2) of a stream, as flat arrays."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    t1: np.ndarray
    t2: np.ndarray

    def __len__(self):
        return int(self.a.size)

    def as_tuples(self):
        return set(zip(self.a.tolist(), self.b.tolist(), self.c.tolist(),
                       self.t1.tolist(), self.t2.tolist()))


def enumerate_shortest_transitions(stream):
    """All shortest transitions ((a,b,t1),(b,c,t2)) of the stream.

    For each middle node b, each in-event (a, b, t1) and each out-neighbor
    c, only the earliest out-event with t2 > t1 can yield a minimal trip
    (a later one spans a strictly containing interval), so one candidate
    per (a, t1, c) is tested for stream-level minimality: the earliest
    arrival a->c departing at t1 or later must be exactly t2, and
    departing strictly after t1 must arrive strictly after t2. Trips with
    a == c are not trips of this analysis and are skipped.
    """
    t, s, d = _sym_events(stream)
    # in-events per node: sorted by (dst, t)
    in_order = np.lexsort((t, d))
    in_dst = d[in_order]
    in_src = s[in_order]
    in_t = t[in_order]
    in_nodes, in_starts = np.unique(in_dst, return_index=True)
    in_starts = np.append(in_starts, in_dst.size)
    # out-event times per (src, dst) pair: sorted by (src, dst, t)
    out_order = np.lexsort((t, d, s))
    out_src = s[out_order]
    out_dst = d[out_order]
    out_t = t[out_order]
    pair_change = np.ones(out_src.size, dtype=bool)
    pair_change[1:] = (out_src[1:] != out_src[:-1]) | (out_dst[1:] != out_dst[:-1])
    pair_starts = np.append(np.nonzero(pair_change)[0], out_src.size)

    cand_a, cand_b, cand_c, cand_t1, cand_t2 = [], [], [], [], []
    in_pos = {int(n): i for i, n in enumerate(in_nodes)}
    for p in range(pair_starts.size - 1):
        lo, hi = pair_starts[p], pair_starts[p + 1]
        b = int(out_src[lo])
        c = int(out_dst[lo])
        ip = in_pos.get(b)
        if ip is None:
            continue
        ilo, ihi = in_starts[ip], in_starts[ip + 1]
        a_arr = in_src[ilo:ihi]
        t1_arr = in_t[ilo:ihi]
        times_c = out_t[lo:hi]
        idx = np.searchsorted(times_c, t1_arr, side="right")
        ok = (idx < times_c.size) & (a_arr != c)
        if not ok.any():
            continue
        cand_a.append(a_arr[ok])
        cand_t1.append(t1_arr[ok])
        cand_t2.append(times_c[idx[ok]])
        cand_b.append(np.full(int(ok.sum()), b, dtype=np.int64))
        cand_c.append(np.full(int(ok.sum()), c, dtype=np.int64))

    if not cand_a:
        empty = np.empty(0, dtype=np.int64)
        return TransitionSet(empty, empty, empty, empty, empty)

    a = np.concatenate(cand_a)
    b = np.concatenate(cand_b)
    c = np.concatenate(cand_c)
    t1 = np.concatenate(cand_t1)
    t2 = np.concatenate(cand_t2)

    order = np.lexsort((-t1, c))
    a, b, c, t1, t2 = a[order], b[order], c[order], t1[order], t2[order]
    grp_dest, grp_start = np.unique(c, return_index=True)
    grp_start = np.append(grp_start, c.size)
    ok = _kernels.transition_checks(t, s, d, a, t1, t2, grp_dest, grp_start,
                                    stream.node_count)
    a, b, c, t1, t2 = a[ok], b[ok], c[ok], t1[ok], t2[ok]
    order = np.lexsort((t2, t1, c, b, a))
    return TransitionSet(a[order], b[order], c[order], t1[order], t2[order])


def lost_fraction(stream, K, transitions=None):
    """Share of shortest transitions falling inside one window at this K.

    NaN (undefined) when the stream has no shortest transition at all.
    """
    K = int(K)
    if not 1 <= K <= stream.horizon:
        raise ValueError(f"K must be in [1, {stream.horizon}], got {K}")
    if transitions is None:
        transitions = enumerate_shortest_transitions(stream)
    if len(transitions) == 0:
        return float("nan")
    h = stream.horizon
    same = (transitions.t1 * K) // h == (transitions.t2 * K) // h
    return float(same.mean())


_M1 = np.uint64(0x9E3779B97F4A7C15)
_M2 = np.uint64(0xC2B2AE3D27D4EB4F)
_M3 = np.uint64(0x165667B19E3779F9)
_M4 = np.uint64(0x27D4EB2F165667C5)


def _mix64(x):
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


class _TripSampler:
    """Order-independent seeded subsample of eligible minimal trips.

    A trip is kept when a hash of its identity falls under a threshold,
    so the sample does not depend on the emission order of the sweep
    (and hence not on the thread layout).
    """

    def __init__(self, threshold, seed):
        self.threshold = None if threshold is None else np.uint64(threshold)
        self.seed = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
        self.chunks = []

    def __call__(self, u, v_nodes, dep, arrs, hops):
        eligible = arrs > dep
        if not eligible.any():
            return
        v = v_nodes[eligible]
        arr = arrs[eligible]
        if self.threshold is not None:
            with np.errstate(over="ignore"):  # wraparound is the hash
                key = (np.uint64(u) * _M1
                       ^ v.astype(np.uint64) * _M2
                       ^ np.uint64(dep) * _M3
                       ^ arr.astype(np.uint64) * _M4)
                keep = _mix64(key ^ self.seed) < self.threshold
            v = v[keep]
            arr = arr[keep]
        if v.size:
            self.chunks.append((np.full(v.size, u, dtype=np.int64),
                                v.astype(np.int64), np.full(v.size, dep,
                                                            dtype=np.int64),
                                arr.astype(np.int64)))

    def trips(self):
        if not self.chunks:
            return (np.empty(0, dtype=np.int64),) * 4
        u = np.concatenate([c[0] for c in self.chunks])
        v = np.concatenate([c[1] for c in self.chunks])
        dep = np.concatenate([c[2] for c in self.chunks])
        arr = np.concatenate([c[3] for c in self.chunks])
        order = np.lexsort((arr, dep, v, u))
        return u[order], v[order], dep[order], arr[order]


@dataclass
class ElongationResult:
    mean: float
    samples: int
    eligible: int
    sampled: bool


@dataclass
class LossReport:
    snapshot_count: int
    delta_seconds: float
    total_shortest_transitions: int
    lost_fraction: float
    mean_elongation: float
    elongation_samples: int


def mean_elongation(stream, series, *, max_samples=100_000,
                    full_enumeration_below=1_000_000, seed=0, threads=1,
                    distribution=None):
    """Mean elongation factor of the series' minimal trips.

    For a minimal trip (u, v, t_u, t_v) of the series with t_u != t_v,
    the factor is (t_v - t_u + 1)*delta divided by the fastest stream
    realization u -> v whose departure and arrival both lie in the
    absolute window [(t_u-1)*delta, t_v*delta). Every factor is checked
    to be >= 1 in exact arithmetic. When more than
    ``full_enumeration_below`` trips are eligible, a seeded
    order-independent subsample of about ``max_samples`` trips is scored
    instead (flagged in the result).
    """
    if distribution is None:
        distribution, _ = minimal_trip_sweep(series, threads=threads)
    eligible = distribution.count_where_duration_at_least(2)
    if eligible == 0:
        return ElongationResult(float("nan"), 0, 0, False)
    if eligible <= full_enumeration_below or max_samples >= eligible:
        threshold = None
    else:
        threshold = min(2**64 - 1, int(max_samples / eligible * 2.0**64))
    sampler = _TripSampler(threshold, seed)
    minimal_trip_sweep(series, threads=threads, trip_sink=sampler)
    u, v, dep, arr = sampler.trips()
    if u.size == 0:
        return ElongationResult(float("nan"), 0, eligible, threshold is not None)

    h = stream.horizon
    K = series.snapshot_count
    win_lo = -((-(dep - 1) * h) // K)          # ceil((dep-1)*h/K)
    win_hi = -((-arr * h) // K) - 1            # last instant before arr*h/K
    t, s, d = _sym_events(stream)
    durations = _kernels.window_min_durations(
        t, s, d, u, v, win_lo, win_hi, stream.node_count)
    if np.any(durations < 1):
        raise AssertionError("series minimal trip without a stream realization "
                             "in its absolute window")
    span = arr - dep + 1
    # e >= 1 exactly: span*h/K >= duration  <=>  span*h >= K*duration
    if np.any(span * h < K * durations):
        raise AssertionError("elongation factor below 1")
    factors = span * h / (K * durations.astype(np.float64))
    return ElongationResult(float(factors.mean()), int(u.size), eligible,
                            threshold is not None)
