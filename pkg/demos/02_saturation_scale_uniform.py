"""Finding the saturation scale of a time-uniform stream.

As the window length grows, the occupancy-rate distribution of all
minimal trips stretches from "concentrated near 0" to "concentrated at
1"; the saturation scale is the window length where it is maximally
stretched over (0, 1], scored here by the M-K proximity to the uniform
density. For a time-uniform stream the result is proportional to the
mean inter-contact time of a node, T/(N(n-1)).
"""

from streamscale import UniformSpec, gen_uniform, run_sweep, stream_summary

spec = UniformSpec(node_count=30, links_per_pair=10, horizon=20_000, seed=42)
stream = gen_uniform(spec)
summary = stream_summary(stream)
print(stream)
print(f"mean inter-contact time of a node: {summary.mean_inter_contact_s:.1f}s")

report = run_sweep(stream, points=30)
print("\n  K      window(s)   trips     M-K proximity")
for e in report.entries:
    marker = " <-- gamma" if e.K == report.gamma["mk"]["K"] else ""
    print(f"  {e.K:>6} {e.delta_seconds:>10.1f} {e.trip_count:>8} "
          f"{e.metrics['mk']:>12.4f}{marker}")

gamma = report.gamma["mk"]
print(f"\nsaturation scale: {gamma['delta_s']:.1f}s (K={gamma['K']})")
print(f"ratio to inter-contact time: "
      f"{gamma['delta_s'] / summary.mean_inter_contact_s:.2f}")
