"""Comparison affinity methods: Jaccard, Dice, personalized PageRank,
Laplacian embedding.

Every method ends as a symmetric dissimilarity with zero diagonal and
entries in [0, 1], so all methods share one downstream path (clustering,
embedding, nearest-neighbor classification).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from . import _kernels
from .affinity import SYMMETRIC, AffinityMatrix
from .graph import Graph, component_labels


@dataclass(frozen=True)
class PprConfig:
    restart_prob: float = 0.15
    tol: float = 1e-10
    max_iters: int = 10000

    def __post_init__(self):
        if not 0 < self.restart_prob < 1:
            raise ValueError("restart_prob must be in (0, 1)")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


@dataclass(frozen=True)
class EmbeddingConfig:
    dim: int = 8

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")


def _pairwise_one_minus(g: Graph, counts_to_score) -> AffinityMatrix:
    n = g.n
    deg = g.degrees
    values = np.empty((n, n))
    for s in range(n):
        overlap = _kernels.overlap_counts(g.indptr, g.indices, s)
        values[s] = 1.0 - counts_to_score(deg[s], deg, overlap)
    np.fill_diagonal(values, 0.0)
    values.setflags(write=False)
    return AffinityMatrix(values=values, state=SYMMETRIC)


def jaccard_matrix(g: Graph) -> AffinityMatrix:
    """Dissimilarity 1 - |N(u) & N(v)| / |N(u) | N(v)|, zero diagonal."""

    def score(ds, deg, overlap):
        union = ds + deg - overlap
        return np.where(union > 0, overlap / np.maximum(union, 1), 0.0)

    return _pairwise_one_minus(g, score)


def dice_matrix(g: Graph) -> AffinityMatrix:
    """Dissimilarity 1 - 2|N(u) & N(v)| / (|N(u)| + |N(v)|), zero diagonal."""

    def score(ds, deg, overlap):
        denom = ds + deg
        return np.where(denom > 0, 2.0 * overlap / np.maximum(denom, 1), 0.0)

    return _pairwise_one_minus(g, score)


def _ppr_row_dense(P: np.ndarray, dangling: np.ndarray, s: int, cfg: PprConfig):
    n = P.shape[0]
    e = np.zeros(n)
    e[s] = 1.0
    pi = e.copy()
    alpha = cfg.restart_prob
    for _ in range(cfg.max_iters):
        # dangling nodes restart: their mass teleports back to the seed
        nxt = alpha * e + (1.0 - alpha) * (pi @ P)
        nxt[s] += (1.0 - alpha) * pi[dangling].sum()
        delta = np.abs(nxt - pi).sum()
        pi = nxt
        if delta < cfg.tol:
            return pi, True
    return pi, False


def _ppr_row_sparse(P: sp.csr_matrix, dangling: np.ndarray, s: int, cfg: PprConfig):
    n = P.shape[0]
    e = np.zeros(n)
    e[s] = 1.0
    pi = e.copy()
    alpha = cfg.restart_prob
    for _ in range(cfg.max_iters):
        nxt = alpha * e + (1.0 - alpha) * (pi @ P)
        nxt = np.asarray(nxt).ravel()
        nxt[s] += (1.0 - alpha) * pi[dangling].sum()
        delta = np.abs(nxt - pi).sum()
        pi = nxt
        if delta < cfg.tol:
            return pi, True
    return pi, False


def ppr_rows(g: Graph, cfg: PprConfig, mode: str = "auto") -> np.ndarray:
    """Stationary personalized-PageRank row per seed node.

    `mode` picks the matrix-vector path: "dense" (numpy), "sparse"
    (scipy CSR), or "auto" (dense below 1500 nodes). Both paths iterate
    identically and agree within 2*tol; keeping them separate lets tests
    cross-check one against the other.
    """
    if mode not in ("auto", "dense", "sparse"):
        raise ValueError(f"unknown mode {mode!r}")
    n = g.n
    deg = g.degrees
    dangling = deg == 0
    if mode == "auto":
        mode = "dense" if n < 1500 else "sparse"
    rows = np.empty((n, n))
    failed = 0
    if mode == "dense":
        P = np.zeros((n, n))
        rows_idx = np.repeat(np.arange(n), deg)
        P[rows_idx, g.indices] = 1.0 / deg[rows_idx]
        for s in range(n):
            rows[s], ok = _ppr_row_dense(P, dangling, s, cfg)
            failed += not ok
    else:
        data = 1.0 / np.repeat(deg[deg > 0], deg[deg > 0])
        P = sp.csr_matrix((data, g.indices, g.indptr), shape=(n, n))
        for s in range(n):
            rows[s], ok = _ppr_row_sparse(P, dangling, s, cfg)
            failed += not ok
    if failed:
        warnings.warn(
            f"personalized pagerank: {failed} seed(s) hit max_iters={cfg.max_iters} "
            "before reaching tol; last iterate used",
            RuntimeWarning,
            stacklevel=2,
        )
    return rows


def personalized_pagerank(
    g: Graph, cfg: PprConfig | None = None, mode: str = "auto"
) -> AffinityMatrix:
    """Dissimilarity 1 - (row-max-normalized PPR), symmetrized, zero diagonal."""
    if cfg is None:
        cfg = PprConfig()
    rows = ppr_rows(g, cfg, mode=mode)
    values = 1.0 - rows / rows.max(axis=1, keepdims=True)
    values = 0.5 * (values + values.T)
    np.fill_diagonal(values, 0.0)
    values.setflags(write=False)
    return AffinityMatrix(values=values, state=SYMMETRIC)


def laplacian_embedding(g: Graph, cfg: EmbeddingConfig | None = None) -> np.ndarray:
    """Coordinates from eigenvectors 2..d+1 of the normalized Laplacian.

    L_sym = I - D^{-1/2} A D^{-1/2}, eigenvalues ascending; the first
    eigenvector (eigenvalue 0) is dropped.
    """
    if cfg is None:
        cfg = EmbeddingConfig()
    n = g.n
    if cfg.dim >= n:
        raise ValueError(f"dim must be < n (got dim={cfg.dim}, n={n})")
    if np.unique(component_labels(g)).size != 1:
        raise ValueError(
            "laplacian_embedding requires a connected graph; restrict to "
            "largest_connected_component(g) first"
        )
    deg = g.degrees.astype(float)
    inv_sqrt = 1.0 / np.sqrt(deg)
    L = np.eye(n)
    rows_idx = np.repeat(np.arange(n), g.degrees)
    L[rows_idx, g.indices] -= inv_sqrt[rows_idx] * inv_sqrt[g.indices]
    # L is symmetric by construction; eigh returns ascending eigenvalues
    _, vecs = np.linalg.eigh(L)
    return vecs[:, 1 : cfg.dim + 1].copy()


def embedding_distance_matrix(coords: np.ndarray) -> AffinityMatrix:
    """Pairwise Euclidean distances, normalized by the global max."""
    sq = (coords**2).sum(axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (coords @ coords.T)
    np.maximum(d2, 0.0, out=d2)
    values = np.sqrt(d2)
    values = 0.5 * (values + values.T)
    np.fill_diagonal(values, 0.0)
    top = values.max()
    if top > 0:
        values /= top
    values.setflags(write=False)
    return AffinityMatrix(values=values, state=SYMMETRIC)


def laplacian_matrix(g: Graph, cfg: EmbeddingConfig | None = None) -> AffinityMatrix:
    """Laplacian-embedding dissimilarity: embed, then pairwise distances."""
    return embedding_distance_matrix(laplacian_embedding(g, cfg))
