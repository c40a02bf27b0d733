"""Transformation operators: z-normalization, PAA, and SAX words."""

import numpy as np

from tsbench.operators import paa, sax, znormalize
from tsbench.operators.normalize import sax_breakpoints

rng = np.random.default_rng(7)
x = 3.0 * np.sin(np.linspace(0, 6 * np.pi, 64)) + rng.normal(0, 0.3, 64) + 10.0

# Z-normalization rescales to zero mean, unit population deviation.
z = znormalize(x)
print(f"raw      mean={x.mean():7.3f} std={x.std():.3f}")
print(f"znormed  mean={z.mean():7.1e} std={z.std():.3f}")

# PAA compresses to w segment means; fractional segment borders are
# weighted exactly, so the overall mean is always preserved.
compressed = paa(x, 8)
print("\npaa(8):", np.round(compressed, 3))
print("mean preserved:", abs(compressed.mean() - x.mean()) < 1e-12)
print("paa([1,2,3], 2) splits the middle cell:", paa([1, 2, 3], 2))

# SAX maps PAA segments onto letters using Gaussian-quantile breakpoints.
word = sax(x, 8, 4)
print("\nbreakpoints a=4:", np.round(sax_breakpoints(4), 4))
print("sax word:", word.letters)

# Scaling and shifting the series never changes its word.
print("affine invariant:", sax(5 * x - 40, 8, 4).letters == word.letters)
