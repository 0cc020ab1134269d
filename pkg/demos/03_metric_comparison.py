"""Comparing the five selection metrics on one stream.

M-K proximity, standard deviation, variation coefficient, slotted
Shannon entropy and cumulative residual entropy all score how spread the
occupancy distribution is. On most streams M-K, stddev, Shannon and CRE
select close window lengths, while the variation coefficient favors tiny
windows (small means inflate sigma/mu) and is kept only for comparison.

Writes normalized curves to demo_out/metric_curves.csv and, when
matplotlib is importable, a plot alongside.
"""

from pathlib import Path

from streamscale import UniformSpec, gen_uniform, run_sweep

out_dir = Path("demo_out")
out_dir.mkdir(exist_ok=True)

stream = gen_uniform(UniformSpec(node_count=25, links_per_pair=12,
                                 horizon=30_000, seed=7))
report = run_sweep(stream, points=25)

metrics = list(report.entries[0].metrics)
maxima = {m: max(e.metrics[m] for e in report.entries) for m in metrics}

csv_path = out_dir / "metric_curves.csv"
with open(csv_path, "w") as fh:
    fh.write("K,delta_s," + ",".join(m.replace(":", "") for m in metrics) + "\n")
    for e in report.entries:
        normed = [e.metrics[m] / maxima[m] if maxima[m] else 0.0 for m in metrics]
        fh.write(f"{e.K},{e.delta_seconds:g},"
                 + ",".join(f"{x:.6f}" for x in normed) + "\n")
print(f"normalized curves written to {csv_path}")

print("\nselected window length per metric:")
for m in metrics:
    g = report.gamma[m]
    print(f"  {m:<12} {g['delta_s']:>10.1f}s  (K={g['K']})")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not available; skipping the plot")
else:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    deltas = [e.delta_seconds for e in report.entries]
    for m in metrics:
        ax.plot(deltas, [e.metrics[m] / maxima[m] if maxima[m] else 0.0
                         for e in report.entries], marker="o", ms=3, label=m)
    ax.set_xscale("log")
    ax.set_xlabel("window length (s)")
    ax.set_ylabel("score (normalized to max 1)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_dir / "metric_curves.png", dpi=120)
    print(f"plot written to {out_dir / 'metric_curves.png'}")
