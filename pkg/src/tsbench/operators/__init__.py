"""Reference implementations of the analytical operator catalog.

Every function here is pure and reentrant: no shared mutable state, safe
to call from multiple threads.
"""

from .normalize import SaxWord, paa, sax, znormalize
from .decomposition import CentroidFactors, centroid_decomposition, sign_vector
from .clustering import ClusterResult, kmeans, knn_classify
from .cleaning import recover_missing, screen_repair
from .discords import Discord, hotsax_discords
from .dstree import DSTreeIndex, dstree_build, dstree_search
from .simple import euclid_distance, moving_average, select_range, sum_series

__all__ = [
    "SaxWord", "paa", "sax", "znormalize",
    "CentroidFactors", "centroid_decomposition", "sign_vector",
    "ClusterResult", "kmeans", "knn_classify",
    "recover_missing", "screen_repair",
    "Discord", "hotsax_discords",
    "DSTreeIndex", "dstree_build", "dstree_search",
    "euclid_distance", "moving_average", "select_range", "sum_series",
]
