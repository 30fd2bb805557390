"""Downstream consumers of dissimilarity matrices: Ward clustering,
classical MDS, leave-one-out kNN classification.

All three read only the off-diagonal entries; the diagonal is ignored
(the walk dissimilarity carries a positive self-affinity entry, while
baseline matrices carry zeros, and neither should influence merges,
embeddings, or neighbor lists).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.cluster.hierarchy import linkage
from scipy.spatial.distance import squareform

from .generators import Partition


@dataclass(frozen=True)
class Dendrogram:
    """Agglomerative merge history, one row per merge.

    Row t = (cluster_a, cluster_b, height, size): clusters < n are
    original nodes, cluster n + t is the one created at step t.
    """

    merges: np.ndarray
    n: int


@dataclass(frozen=True)
class EmbeddingMatrix:
    coordinates: np.ndarray


def _checked_distances(d: np.ndarray) -> np.ndarray:
    values = np.asarray(getattr(d, "values", d), float)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise ValueError("dissimilarity matrix must be square")
    if not np.array_equal(values, values.T):
        raise ValueError("dissimilarity matrix must be symmetric")
    off = values.copy()
    np.fill_diagonal(off, 0.0)
    if (off < 0).any():
        raise ValueError("dissimilarities must be nonnegative")
    return off


def ward_linkage(d) -> Dendrogram:
    """Ward merge history via the Lance-Williams recurrence."""
    off = _checked_distances(d)
    n = off.shape[0]
    merges = linkage(squareform(off, checks=False), method="ward")
    return Dendrogram(merges=merges, n=n)


def ward_cluster(d, num_clusters: int) -> Partition:
    """Cut the Ward dendrogram at num_clusters.

    Labels are assigned in order of each cluster's smallest member id,
    so output labels do not depend on merge bookkeeping.
    """
    off = _checked_distances(d)
    n = off.shape[0]
    if not 1 <= num_clusters <= n:
        raise ValueError(f"num_clusters must be in [1, n] (got {num_clusters})")
    if num_clusters == n:
        return Partition(labels=np.arange(n))
    merges = ward_linkage(off).merges
    parent = np.arange(2 * n - 1)

    def root(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for t in range(n - num_clusters):
        a, b = int(merges[t, 0]), int(merges[t, 1])
        parent[root(a)] = n + t
        parent[root(b)] = n + t
    roots = np.array([root(i) for i in range(n)])
    labels = np.empty(n, np.int64)
    next_label = 0
    seen: dict[int, int] = {}
    for i in range(n):
        r = int(roots[i])
        if r not in seen:
            seen[r] = next_label
            next_label += 1
        labels[i] = seen[r]
    return Partition(labels=labels)


def classical_mds(d, dim: int) -> EmbeddingMatrix:
    """Double-center -0.5 * J D^2 J and keep the top-dim eigenpairs.

    Eigenvalues are clamped at zero, so non-Euclidean directions come out
    as zero coordinate columns.
    """
    off = _checked_distances(d)
    n = off.shape[0]
    if dim >= n:
        raise ValueError(f"dim must be < n (got dim={dim}, n={n})")
    sq = off**2
    j = np.eye(n) - np.full((n, n), 1.0 / n)
    b = -0.5 * (j @ sq @ j)
    b = 0.5 * (b + b.T)
    vals, vecs = np.linalg.eigh(b)
    top = np.argsort(vals, kind="stable")[::-1][:dim]
    lam = np.maximum(vals[top], 0.0)
    return EmbeddingMatrix(coordinates=vecs[:, top] * np.sqrt(lam))


def knn_classify(d, labels, k: int) -> np.ndarray:
    """Leave-one-out k-nearest-neighbor predictions.

    Neighbor ties break toward the lower node id, majority ties toward
    the smallest class id.
    """
    off = _checked_distances(d)
    n = off.shape[0]
    if not 1 <= k < n:
        raise ValueError(f"k must satisfy 1 <= k < n (got k={k}, n={n})")
    y = np.asarray(getattr(labels, "labels", labels))
    if y.shape != (n,):
        raise ValueError("labels must align with the matrix")
    classes, codes = np.unique(y, return_inverse=True)
    if classes.size < 2:
        raise ValueError("knn_classify needs at least 2 classes")
    work = off.copy()
    np.fill_diagonal(work, np.inf)
    pred = np.empty(n, np.int64)
    for i in range(n):
        nn = np.argsort(work[i], kind="stable")[:k]
        votes = np.bincount(codes[nn], minlength=classes.size)
        pred[i] = np.argmax(votes)
    return classes[pred]
