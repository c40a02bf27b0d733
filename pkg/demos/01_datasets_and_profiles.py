"""Datasets: synthetic profiles, CSV interchange, and slicing."""

import numpy as np

from tsbench.data import (
    BUILTIN_PROFILES,
    DatasetProfile,
    generate_synthetic,
    parse_dataset_csv,
    serialize_dataset_csv,
    slice_dataset,
)

# Four built-in profiles mirror the shapes of well-known public datasets,
# scaled down so everything runs in seconds.
for pid, profile in BUILTIN_PROFILES.items():
    print(f"{pid:15s} {profile.n_series:5d} series x {profile.n_rows:5d} rows "
          f"({profile.regularity}, features={','.join(profile.features)})")

# Generation is deterministic: same profile (including seed), same bits.
sports = generate_synthetic(BUILTIN_PROFILES["sports_mini"])
again = generate_synthetic(BUILTIN_PROFILES["sports_mini"])
print("\ndeterministic:", sports == again)
print("labels are two phase classes:", sorted(set(sports.labels)))

# Custom profiles control shape, anomaly rate, missing rate, regularity.
custom = generate_synthetic(DatasetProfile(
    "custom", n_series=3, n_rows=500, anomaly_rate=0.01, missing_rate=0.05,
    regularity="irregular", seed=42))
print("\ncustom:", custom.n_series, "series,", custom.n_rows, "rows,",
      f"{custom.mask_matrix().mean():.1%} cells masked")
print("irregular gaps (ms):", sorted(set(np.diff(custom.timestamps).tolist())))

# CSV is the only interchange format; masked cells serialize as empty cells.
csv = serialize_dataset_csv(custom)
print("\nfirst CSV lines:")
for line in csv.decode().splitlines()[:4]:
    print("   ", line)
back = parse_dataset_csv(csv, custom.name)
print("round trip preserves values, masks, timestamps:",
      all(a == b for a, b in zip(back.series, custom.series)))

# Benchmarks take a rows x cols prefix of a dataset.
small = slice_dataset(sports, 100, 5)
print("\nsliced:", small.n_rows, "rows x", small.n_series,
      "series, names:", small.series_names)
