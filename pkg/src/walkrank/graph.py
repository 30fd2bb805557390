"""Immutable undirected graph with CSR adjacency and neighborhood overlap measures."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc


@dataclass(frozen=True)
class Graph:
    """Undirected, unweighted graph over dense node ids 0..n-1.

    Adjacency is stored in CSR form: the neighbors of v are
    ``indices[indptr[v]:indptr[v+1]]``, strictly ascending, with no
    self-loops and no duplicates. ``m`` counts undirected edges, so
    ``len(indices) == 2*m``. Arrays are read-only; a Graph is safe to
    share across threads.
    """

    n: int
    m: int
    indptr: np.ndarray
    indices: np.ndarray

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v) -> np.ndarray:
        """Sorted neighbor ids of v (read-only view)."""
        v = _check_node(self, v)
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def to_edge_list(self) -> np.ndarray:
        """Canonical (m, 2) edge array with u < v, lexicographically sorted."""
        u = np.repeat(np.arange(self.n), self.degrees)
        keep = u < self.indices
        return np.column_stack([u[keep], self.indices[keep]])


def _check_node(g: Graph, v) -> int:
    v = int(v)
    if not 0 <= v < g.n:
        raise ValueError(f"node id {v} out of range for graph with n={g.n}")
    return v


def from_edge_list(edges, n: int) -> Graph:
    """Build a Graph from an iterable of (u, v) pairs.

    Self-loops are dropped, duplicate and reversed pairs are collapsed,
    and adjacency is symmetrized and sorted. Ids must lie in [0, n).
    """
    n = int(n)
    if n < 0:
        raise ValueError("node count must be nonnegative")
    e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                   dtype=np.int64)
    if e.size == 0:
        e = e.reshape(0, 2)
    if e.ndim != 2 or e.shape[1] != 2:
        raise ValueError("edges must be pairs of node ids")
    if e.size and (e.min() < 0 or e.max() >= n):
        bad = e.flat[np.argmax((e < 0) | (e >= n))]
        raise ValueError(f"edge endpoint {bad} out of range for n={n}")

    e = e[e[:, 0] != e[:, 1]]
    lo = np.minimum(e[:, 0], e[:, 1])
    hi = np.maximum(e[:, 0], e[:, 1])
    e = np.unique(np.column_stack([lo, hi]), axis=0)
    m = len(e)

    # both directions, then CSR via sort
    src = np.concatenate([e[:, 0], e[:, 1]])
    dst = np.concatenate([e[:, 1], e[:, 0]])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    np.cumsum(indptr, out=indptr)
    indices = dst.astype(np.int64)
    for a in (indptr, indices):
        a.flags.writeable = False
    return Graph(n=n, m=m, indptr=indptr, indices=indices)


def jaccard(g: Graph, s, v) -> float:
    """Overlap of one-hop neighborhoods: |N(s) & N(v)| / |N(s) | N(v)|.

    Returns 0.0 when both neighborhoods are empty.
    """
    ns, nv = g.neighbors(s), g.neighbors(v)
    inter = np.intersect1d(ns, nv, assume_unique=True).size
    union = ns.size + nv.size - inter
    return inter / union if union else 0.0


def dice(g: Graph, s, v) -> float:
    """2 |N(s) & N(v)| / (|N(s)| + |N(v)|); 0.0 on empty denominator."""
    ns, nv = g.neighbors(s), g.neighbors(v)
    denom = ns.size + nv.size
    if denom == 0:
        return 0.0
    inter = np.intersect1d(ns, nv, assume_unique=True).size
    return 2.0 * inter / denom


def component_labels(g: Graph) -> np.ndarray:
    """Connected-component label per node (labels are arbitrary but dense)."""
    if g.n == 0:
        return np.zeros(0, dtype=np.int64)
    adj = csr_matrix((np.ones(len(g.indices), dtype=np.int8),
                      g.indices, g.indptr), shape=(g.n, g.n))
    _, labels = _cc(adj, directed=False)
    return labels.astype(np.int64)


def is_connected(g: Graph) -> bool:
    return g.n > 0 and component_labels(g).max(initial=0) == 0


def induced_subgraph(g: Graph, nodes) -> tuple[Graph, np.ndarray]:
    """Subgraph on the given nodes, relabeled 0..k-1 in the given order.

    Returns the subgraph and the old-id array (new id i maps to nodes[i]).
    """
    nodes = np.asarray(nodes, dtype=np.int64)
    new_id = np.full(g.n, -1, dtype=np.int64)
    new_id[nodes] = np.arange(len(nodes))
    edges = []
    for new_u, old_u in enumerate(nodes):
        for old_v in g.neighbors(old_u):
            nv = new_id[old_v]
            if nv >= 0 and new_u < nv:
                edges.append((new_u, nv))
    return from_edge_list(edges, len(nodes)), nodes.copy()


def largest_connected_component(g: Graph) -> tuple[Graph, np.ndarray]:
    """Induced subgraph on the largest component, relabeled contiguously.

    Ties between equally sized components go to the one containing the
    smallest original node id. The returned map gives, for each new id,
    the original node id (ascending).
    """
    if g.n == 0:
        raise ValueError("largest_connected_component: graph is empty")
    labels = component_labels(g)
    sizes = np.bincount(labels)
    best = sizes.max()
    candidates = np.flatnonzero(sizes == best)
    # np.argmax(labels == c) is the smallest node id in component c
    first_node = np.array([np.argmax(labels == c) for c in candidates])
    chosen = candidates[np.argmin(first_node)]
    keep = np.flatnonzero(labels == chosen)
    return induced_subgraph(g, keep)
