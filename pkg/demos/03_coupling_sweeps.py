"""
Sweeping the coupling coefficients
==================================

A coarse grid over both coupling coefficients shows where a thermal charger
charges best, and a sweep over its photon number shows the extractable
fraction approaching one.
"""

import numpy as np

from lcbattery import SweepSpec, run_sweep, sweep_to_csv

grid = tuple(np.round(np.linspace(-0.9, 0.9, 13), 12))
result = run_sweep(SweepSpec(grid, grid, (4.0,)))

ee = result.array("max_ee")[:, :, 0]
print("Max Ee over the grid (rows kL, columns kC)")
print("       " + " ".join(f"{k:6.2f}" for k in grid))
for kl, row in zip(grid, ee):
    print(f"{kl:6.2f} " + " ".join(f"{v:6.2f}" for v in row))

for name in ("max_ee", "max_r"):
    best = result.argmax(name)
    print(f"best {name}: kL = {best.kl:+.2f}, kC = {best.kc:+.2f}, value {getattr(best, name):.4f}")

# Opposite-sign couplings fill the upper-left and lower-right quadrants.
opposite = np.sign(np.array(grid))[:, None] * np.sign(np.array(grid))[None, :] < 0
print("mean Max Ee, opposite signs:", ee[opposite].mean().round(3), " same signs:", ee[~opposite].mean().round(3))

line = run_sweep(SweepSpec((-0.37,), (0.7,), (1, 4, 16, 64, 256, 1e3, 1e5)), workers=1)
print(sweep_to_csv(line))
