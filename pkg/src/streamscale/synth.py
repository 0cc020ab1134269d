"""Seeded generators of synthetic link streams.

Two families: time-uniform streams (every pair receives the same number
of links at i.i.d. uniform instants) and two-mode streams alternating a
high-activity and a low-activity uniform segment. Generation is
deterministic given the spec's seed; timestamp collisions inside a pair
are re-drawn so per-pair event counts are exact.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .stream import LinkStream

__all__ = ["UniformSpec", "TwoModeSpec", "gen_uniform", "gen_two_mode"]


@dataclass
class UniformSpec:
    node_count: int
    links_per_pair: int
    horizon: int
    seed: int
    directed: bool = False
    resolution: int = 1

    def __post_init__(self):
        if self.node_count < 2:
            raise ValueError("need at least 2 nodes")
        if self.links_per_pair < 1:
            raise ValueError("links_per_pair must be >= 1")
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        if self.links_per_pair > self.horizon:
            raise ValueError("cannot place more distinct instants than the horizon")
        if self.links_per_pair > self.horizon / 10:
            warnings.warn("links_per_pair should be much smaller than the horizon",
                          stacklevel=2)


@dataclass
class TwoModeSpec:
    node_count: int
    n_high: int
    t_high: int
    n_low: int
    t_low: int
    seed: int
    alternations: int = 10
    resolution: int = 1

    def __post_init__(self):
        if self.node_count < 2:
            raise ValueError("need at least 2 nodes")
        if self.alternations < 1:
            raise ValueError("alternations must be >= 1")
        if self.t_high < 0 or self.t_low < 0:
            raise ValueError("segment lengths must be >= 0")
        if self.t_high + self.t_low < 1:
            raise ValueError("one of the segments must have positive length")
        for n, t in ((self.n_high, self.t_high), (self.n_low, self.t_low)):
            if t > 0 and n > t:
                raise ValueError("cannot place more distinct instants than a segment holds")

    @property
    def horizon(self):
        return self.alternations * (self.t_high + self.t_low)

    @property
    def low_activity_share(self):
        """rho = t_low / (t_high + t_low)."""
        return self.t_low / (self.t_high + self.t_low)


def _pairs(n, directed):
    if directed:
        return [(i, j) for i in range(n) for j in range(n) if i != j]
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _draw_distinct(rng, count, lo, hi):
    """``count`` distinct uniform integers in [lo, hi); collisions re-drawn."""
    got = np.unique(rng.integers(lo, hi, size=count))
    while got.size < count:
        extra = rng.integers(lo, hi, size=count - got.size)
        got = np.unique(np.concatenate([got, extra]))
    return got


def _assemble(chunks_u, chunks_v, chunks_t, n, horizon, directed, resolution):
    u = np.concatenate(chunks_u)
    v = np.concatenate(chunks_v)
    t = np.concatenate(chunks_t)
    order = np.lexsort((v, u, t))
    return LinkStream(t[order], u[order], v[order],
                      [str(i) for i in range(n)], horizon,
                      resolution=resolution, directed=directed)


def gen_uniform(spec):
    """Time-uniform stream: N links per pair, uniform instants in [0, T)."""
    rng = np.random.default_rng(spec.seed)
    pairs = _pairs(spec.node_count, spec.directed)
    N = spec.links_per_pair
    us, vs, ts = [], [], []
    for a, b in pairs:
        times = _draw_distinct(rng, N, 0, spec.horizon)
        us.append(np.full(N, a, dtype=np.int64))
        vs.append(np.full(N, b, dtype=np.int64))
        ts.append(times)
    return _assemble(us, vs, ts, spec.node_count, spec.horizon,
                     spec.directed, spec.resolution)


def gen_two_mode(spec):
    """Alternating high/low-activity stream of ``alternations`` blocks.

    Each block is a high segment (n_high links per pair, uniform within
    its t_high window) followed by a low segment (n_low within t_low).
    A zero-length segment contributes no events regardless of its link
    count.
    """
    rng = np.random.default_rng(spec.seed)
    pairs = _pairs(spec.node_count, False)
    us, vs, ts = [], [], []
    offset = 0
    for _ in range(spec.alternations):
        for count, length in ((spec.n_high, spec.t_high), (spec.n_low, spec.t_low)):
            if length > 0 and count > 0:
                for a, b in pairs:
                    times = _draw_distinct(rng, count, offset, offset + length)
                    us.append(np.full(count, a, dtype=np.int64))
                    vs.append(np.full(count, b, dtype=np.int64))
                    ts.append(times)
            offset += length
    if not ts:
        raise ValueError("spec generates no events")
    return _assemble(us, vs, ts, spec.node_count, spec.horizon,
                     False, spec.resolution)
