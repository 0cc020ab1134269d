from fractions import Fraction

import numpy as np
import pytest

from streamscale.aggregate import GraphSeries, aggregate
from streamscale.reach import (OccupancyDistribution, minimal_trip_sweep,
                               occupancy_rate, stream_earliest_arrival)
from streamscale.stream import LinkStream

from conftest import collect_trips, random_series, random_stream
from oracles import series_distance_sums, series_minimal_trips


def test_single_edge_mid_series():
    # one edge in snapshot 2 of K=3: only the one-snapshot interval is
    # minimal ([2,2] is strictly included in anything wider)
    g = GraphSeries.from_snapshots([[], [(0, 1)], []], directed=False)
    trips, dist, agg = collect_trips(g)
    assert trips == {(0, 1, 2, 2, 1), (1, 0, 2, 2, 1)}
    assert dist.items() == [((1, 1), 2)]
    assert (agg.sum_d_time, agg.sum_d_hops, agg.finite_triples) == (6, 4, 4)


def test_relay_chain_example():
    # G1={ab}, G2={bc}, G3={ac}: a->c minimal trips are (1,2) on two hops
    # and (3,3) direct; (2,3) is not minimal because [3,3] is inside [2,3]
    g = GraphSeries.from_snapshots([[(0, 1)], [(1, 2)], [(0, 2)]], directed=False)
    trips, _, _ = collect_trips(g)
    ac = {t for t in trips if t[0] == 0 and t[1] == 2}
    assert ac == {(0, 2, 1, 2, 2), (0, 2, 3, 3, 1)}
    assert not any(t[:4] == (0, 2, 2, 3) for t in trips)


def test_k1_all_trips_single_link():
    g = GraphSeries.from_snapshots([[(0, 1), (1, 2), (0, 3)]], directed=False)
    trips, dist, agg = collect_trips(g)
    assert all(dep == arr == 1 and h == 1 for _, _, dep, arr, h in trips)
    assert len(trips) == 6
    assert dist.items() == [((1, 1), 6)]
    assert agg.mean_d_time == 1.0 and agg.mean_d_hops == 1.0


def test_oracle_equivalence_random_instances():
    rng = np.random.default_rng(2024)
    for _ in range(300):
        series, snapshots, n, K, directed = random_series(rng)
        trips, dist, agg = collect_trips(series)
        expected = series_minimal_trips(snapshots, directed)
        assert trips == expected
        # the distribution is exactly the (hops, duration) multiset
        multiset = {}
        for _, _, dep, arr, h in expected:
            multiset[(h, arr - dep + 1)] = multiset.get((h, arr - dep + 1), 0) + 1
        assert dict(dist.items()) == multiset
        # distance sums match the naive triple loop
        assert (agg.sum_d_time, agg.sum_d_hops, agg.finite_triples) == \
            series_distance_sums(snapshots, n, directed)


def test_engines_agree():
    rng = np.random.default_rng(404)
    for _ in range(80):
        series, _, _, _, _ = random_series(rng, max_edges=16)
        d_np, a_np = minimal_trip_sweep(series, engine="numpy")
        d_nb, a_nb = minimal_trip_sweep(series, engine="numba")
        assert d_np == d_nb
        assert (a_np.sum_d_time, a_np.sum_d_hops, a_np.finite_triples) == \
            (a_nb.sum_d_time, a_nb.sum_d_hops, a_nb.finite_triples)


def test_emitted_trip_properties():
    rng = np.random.default_rng(99)
    for _ in range(60):
        series, _, _, _, _ = random_series(rng, max_n=6, max_k=8, max_edges=14)
        trips, dist, _ = collect_trips(series)
        per_pair = {}
        for u, v, dep, arr, h in trips:
            assert u != v
            assert dep <= arr
            dur = arr - dep + 1
            assert 1 <= h <= dur
            assert Fraction(h, dur) <= 1
            if dur == 1:
                assert h == 1
            per_pair.setdefault((u, v), []).append((dep, arr))
        # anti-chain: intervals of one pair are incomparable and arrivals
        # increase strictly with departures
        for intervals in per_pair.values():
            intervals.sort()
            for (d1, a1), (d2, a2) in zip(intervals, intervals[1:]):
                assert d1 < d2 and a1 < a2


def test_sink_subset_restricts_destinations():
    g = GraphSeries.from_snapshots([[(0, 1)], [(1, 2)]], directed=True)
    trips, dist, agg = collect_trips(g, sinks=[2])
    assert trips == {(0, 2, 1, 2, 2), (1, 2, 2, 2, 1)}
    assert agg.pair_count == 2


def test_result_independent_of_threads():
    rng = np.random.default_rng(5)
    series, _, _, _, _ = random_series(rng, max_n=6, max_k=8, max_edges=14)
    t1, d1, a1 = collect_trips(series, threads=1)
    t4, d4, a4 = collect_trips(series, threads=4)
    assert t1 == t4
    assert d1 == d4
    assert (a1.sum_d_time, a1.sum_d_hops, a1.finite_triples) == \
        (a4.sum_d_time, a4.sum_d_hops, a4.finite_triples)


def test_symmetric_directed_equals_undirected():
    rng = np.random.default_rng(17)
    for _ in range(20):
        stream, events, directed = random_stream(rng)
        if directed:
            continue
        sym = sorted({(u, v, t) for u, v, t in events}
                     | {(v, u, t) for u, v, t in events})
        dstream = LinkStream.from_events(
            sym, directed=True, labels=list(stream.labels),
            horizon=stream.horizon, normalize_times=False)
        for K in {1, 3, stream.horizon}:
            tu, du, au = collect_trips(aggregate(stream, K))
            td, dd, ad = collect_trips(aggregate(dstream, K))
            assert tu == td
            assert du == dd
            assert (au.sum_d_time, au.sum_d_hops) == (ad.sum_d_time, ad.sum_d_hops)


def test_occupancy_rate_values():
    assert occupancy_rate(1, 1) == 1
    assert occupancy_rate(2, 2) == 1
    assert occupancy_rate(3, 12) == Fraction(1, 4)
    with pytest.raises(ValueError):
        occupancy_rate(0, 1)
    with pytest.raises(ValueError):
        occupancy_rate(3, 2)


def test_distribution_merges_and_support():
    d = OccupancyDistribution.from_pairs([(1, 2), (2, 4), (1, 1)])
    assert d.total == 3
    assert d.support() == [(Fraction(1, 2), 2), (Fraction(1, 1), 1)]


def test_stream_earliest_arrival_examples():
    def stream(events, directed=True, horizon=10):
        n = max(max(u, v) for u, v, _ in events) + 1
        return LinkStream.from_events(sorted(events), directed=directed,
                                      labels=[str(i) for i in range(n)],
                                      horizon=horizon, normalize_times=False)

    s = stream([(0, 1, 5)])
    assert stream_earliest_arrival(s, 0, (0, 9), 1) == (5, 5)
    s = stream([(0, 2, 2), (2, 1, 7)])
    assert stream_earliest_arrival(s, 0, (0, 9), 1) == (2, 7)
    s = stream([(0, 2, 2), (2, 1, 7), (0, 1, 8)])
    assert stream_earliest_arrival(s, 0, (0, 9), 1) == (8, 8)
    # window cutting off the relay
    s = stream([(0, 2, 2), (2, 1, 7)])
    assert stream_earliest_arrival(s, 0, (0, 6), 1) is None
    assert stream_earliest_arrival(s, 0, (3, 9), 1) is None


def test_stream_earliest_arrival_matches_brute_force():
    from oracles import stream_minimal_trips

    rng = np.random.default_rng(31)
    for _ in range(100):
        stream, events, directed = random_stream(rng)
        trips = stream_minimal_trips(events, directed)
        lo = int(rng.integers(0, stream.horizon))
        hi = int(rng.integers(lo, stream.horizon))
        u = int(rng.integers(0, stream.node_count))
        v = int(rng.integers(0, stream.node_count))
        if u == v:
            continue
        got = stream_earliest_arrival(stream, u, (lo, hi), v)
        inside = [(d, a) for (x, y, d, a) in trips
                  if x == u and y == v and lo <= d and a <= hi]
        if not inside:
            assert got is None
        else:
            best = min(a - d for d, a in inside)
            assert got is not None
            assert got[1] - got[0] == best
