"""Learning and similarity operators: k-means, k-NN, distance, series index."""

import numpy as np

from tsbench.operators import (
    dstree_build,
    dstree_search,
    euclid_distance,
    kmeans,
    knn_classify,
)

rng = np.random.default_rng(5)

# Three well-separated blobs; k-means recovers them deterministically.
blobs = np.vstack([rng.normal(c, 0.3, size=(30, 2)) for c in (0.0, 5.0, 10.0)])
result = kmeans(blobs, 3, seed=123)
print("centroids:\n", np.round(result.centroids, 2))
print("inertia:", round(result.inertia, 3))
print("cluster sizes:", np.bincount(result.assignments).tolist())

# k-NN majority vote.
train = np.array([[0.0, 0.0], [0.2, 0.1], [5.0, 5.0], [5.1, 4.9]])
labels = ["low", "low", "high", "high"]
print("\nknn([0.3, 0.2]) ->", knn_classify(train, labels, [0.3, 0.2], 3))
print("knn([4.8, 5.2]) ->", knn_classify(train, labels, [4.8, 5.2], 3))

# Euclidean distance is the building block everything shares.
print("\ndistance([0,0],[3,4]) =", euclid_distance([0.0, 0.0], [3.0, 4.0]))

# The series index answers exact nearest-neighbour queries with pruning.
collection = [np.sin(np.linspace(0, 4 * np.pi, 64) + phase) + rng.normal(0, 0.05, 64)
              for phase in rng.uniform(0, 2 * np.pi, 40)]
index = dstree_build(collection, leaf_capacity=4)
query = collection[17] + rng.normal(0, 0.01, 64)
sid, dist = dstree_search(index, query)
print(f"\nnearest series to a perturbed copy of #17: #{sid} at {dist:.4f}")

# The answer is exact: compare against scanning every series.
dists = [float(np.sqrt(((s - query) ** 2).sum())) for s in collection]
print("matches the full scan:", sid == int(np.argmin(dists)))
