"""Erroneous-data operators: speed-constraint repair and discord discovery."""

import numpy as np

from tsbench.operators import hotsax_discords, screen_repair

# A sensor ramp with two implausible jumps.
t = np.arange(20)
x = np.linspace(0, 19, 20)
x[7] = 60.0
x[13] = -40.0

repaired = screen_repair(x, t, smin=-2.0, smax=2.0, window=5)
print("idx   raw     repaired")
for i in (6, 7, 8, 12, 13, 14):
    print(f"{i:3d} {x[i]:7.1f} {repaired[i]:9.3f}")

rates = np.diff(repaired) / np.diff(t)
print("all rates within [-2, 2]:", bool((rates >= -2).all() and (rates <= 2).all()))

# Discords: the windows farthest from their nearest non-overlapping match.
rng = np.random.default_rng(3)
series = np.sin(np.arange(600) * 0.12) + rng.normal(0, 0.1, 600)
series[300:308] += 4.0  # implanted anomaly

discords = hotsax_discords(series, win=16, count=2, name="sensor")
for d in discords:
    print(f"discord at {d.start}..{d.start + d.length} "
          f"(nearest-match distance {d.distance:.3f})")
print("strongest discord covers the implanted anomaly:",
      285 <= discords[0].start <= 307)
