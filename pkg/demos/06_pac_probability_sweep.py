"""A small Monte-Carlo sweep of the probability that learning succeeds.

For each (p, N) cell the harness repeats train-and-check until the standard
error of the success fraction is within the target, then reports the curve.
The full experiment grids live in `ltlrl.harness`; this demo uses a reduced
grid so it finishes in under a minute.
"""

import os
import tempfile

from ltlrl import ExperimentConfig, find_intercept, sample_lower_bound, sweep
from ltlrl.harness import curves_by_p, read_curves_csv, write_curves_csv, write_curves_svg

cfg = ExperimentConfig(
    environment="simple-1",
    scheme="multi-discount",
    algo="q",
    p_grid=(0.1, 0.01),
    n_grid=(10, 50, 250, 1250, 6250, 31250),
    target_se=0.02,
    master_seed=42,
)

print(f"sweeping {len(cfg.p_grid)} x {len(cfg.n_grid)} cells "
      f"(epsilon={cfg.epsilon}, target stderr {cfg.target_se})...")
points = sweep(cfg)

print(f"\n{'p':>6s} {'N':>7s} {'estimate':>9s} {'stderr':>8s} {'reps':>6s}")
for pt in points:
    print(f"{pt.p:6.2f} {pt.n_samples:7d} {pt.pac_estimate:9.3f} "
          f"{pt.stderr:8.4f} {pt.repetitions:6d}")

out_dir = tempfile.mkdtemp(prefix="ltlrl-demo-")
csv_path = os.path.join(out_dir, "curves.csv")
svg_path = os.path.join(out_dir, "curves.svg")
write_curves_csv(csv_path, cfg, points)
write_curves_svg(svg_path, read_curves_csv(csv_path))
print(f"\nwrote {csv_path} and {svg_path}")

print("\nintercepts at 0.9 vs the analytic minimum (delta = 0.1):")
for p, pts in curves_by_p(read_curves_csv(csv_path)).items():
    n_star = find_intercept(pts, 0.9)
    bound = sample_lower_bound(p, 0.1)
    shown = f"{n_star:8.1f}" if n_star else "censored"
    print(f"  p={p:5.2f}: N* = {shown}   analytic bound = {bound:6.1f}")
print("\nsmaller p pushes the crossing right: the decisive transitions get rarer.")
