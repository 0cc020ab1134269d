import numpy as np
import pytest
from scipy.stats import chisquare

from streamscale.stream import stream_summary, write_tsv
from streamscale.synth import TwoModeSpec, UniformSpec, gen_two_mode, gen_uniform


def test_uniform_exact_pair_counts():
    s = gen_uniform(UniformSpec(node_count=2, links_per_pair=3, horizon=100, seed=0))
    assert s.event_count == 3
    assert s.node_count == 2
    s = gen_uniform(UniformSpec(node_count=5, links_per_pair=4, horizon=500, seed=1))
    pair_events = {}
    for u, v, _ in s.events():
        pair_events[(u, v)] = pair_events.get((u, v), 0) + 1
    assert all(c == 4 for c in pair_events.values())
    assert len(pair_events) == 10


def test_uniform_directed_counts():
    s = gen_uniform(UniformSpec(node_count=3, links_per_pair=2, horizon=200,
                                seed=2, directed=True))
    assert s.event_count == 2 * 6


def test_seed_determinism_and_variation():
    spec = dict(node_count=6, links_per_pair=3, horizon=1000)
    a = write_tsv(gen_uniform(UniformSpec(seed=7, **spec)))
    b = write_tsv(gen_uniform(UniformSpec(seed=7, **spec)))
    c = write_tsv(gen_uniform(UniformSpec(seed=8, **spec)))
    assert a == b
    assert a != c


def test_collision_redraw_keeps_counts():
    with pytest.warns(UserWarning):
        spec = UniformSpec(node_count=2, links_per_pair=50, horizon=60, seed=3)
    s = gen_uniform(spec)
    assert s.event_count == 50
    assert len(set(s.t.tolist())) == 50


def test_links_per_pair_cannot_exceed_horizon():
    with pytest.raises(ValueError):
        UniformSpec(node_count=2, links_per_pair=11, horizon=10, seed=0)


def test_mean_inter_contact_formula():
    n, N, T = 20, 10, 100_000
    s = gen_uniform(UniformSpec(node_count=n, links_per_pair=N, horizon=T, seed=5))
    summary = stream_summary(s)
    assert summary.mean_inter_contact_s == pytest.approx(T / (N * (n - 1)))


def test_uniformity_chi_square():
    # 20 bins at the 1% level on a comfortably large sample
    s = gen_uniform(UniformSpec(node_count=15, links_per_pair=100,
                                horizon=100_000, seed=11))
    counts, _ = np.histogram(s.t, bins=20, range=(0, s.horizon))
    assert chisquare(counts).pvalue > 0.01


def test_two_mode_exact_counts_and_segments():
    spec = TwoModeSpec(node_count=4, n_high=3, t_high=50, n_low=1, t_low=50,
                       seed=9, alternations=10)
    s = gen_two_mode(spec)
    pairs = 6
    assert s.event_count == 10 * pairs * (3 + 1)
    assert s.horizon == 10 * 100
    # each block window holds exactly its share of events
    block = spec.t_high + spec.t_low
    for i in range(spec.alternations):
        hi_mask = (s.t >= i * block) & (s.t < i * block + spec.t_high)
        lo_mask = (s.t >= i * block + spec.t_high) & (s.t < (i + 1) * block)
        assert int(hi_mask.sum()) == pairs * spec.n_high
        assert int(lo_mask.sum()) == pairs * spec.n_low


def test_two_mode_degenerate_modes():
    # rho = 0: pure high activity
    s = gen_two_mode(TwoModeSpec(node_count=3, n_high=2, t_high=40, n_low=5,
                                 t_low=0, seed=1, alternations=4))
    assert s.event_count == 4 * 3 * 2
    assert s.horizon == 160
    # rho = 1: pure low activity
    s = gen_two_mode(TwoModeSpec(node_count=3, n_high=9, t_high=0, n_low=2,
                                 t_low=40, seed=1, alternations=4))
    assert s.event_count == 4 * 3 * 2


def test_two_mode_uniformity_within_segments():
    spec = TwoModeSpec(node_count=12, n_high=40, t_high=20_000, n_low=4,
                       t_low=20_000, seed=13, alternations=2)
    s = gen_two_mode(spec)
    block = spec.t_high + spec.t_low
    hi_times = s.t[(s.t % block) < spec.t_high] % block
    counts, _ = np.histogram(hi_times, bins=20, range=(0, spec.t_high))
    assert chisquare(counts).pvalue > 0.01


def test_two_mode_rho():
    spec = TwoModeSpec(node_count=3, n_high=1, t_high=30, n_low=1, t_low=70,
                       seed=0)
    assert spec.low_activity_share == pytest.approx(0.7)
