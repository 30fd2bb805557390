"""Borda aggregation of walk rankings into an affinity matrix.

The matrix stores mean ranks, so smaller means more affine: it is a
dissimilarity, and every downstream consumer (clustering, embedding,
nearest-neighbor classification) treats it as a distance. A matrix moves
through an explicit state machine raw -> row-normalized -> symmetric to
rule out double normalization.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .walks import ExtendedRanking, WalkConfig, build_kernel, rank_table

RAW = "raw"
ROW_NORMALIZED = "row-normalized"
SYMMETRIC = "symmetric"
STATES = (RAW, ROW_NORMALIZED, SYMMETRIC)


class MatrixStateError(ValueError):
    """An affinity matrix was used in a state a transition does not accept."""


@dataclass(frozen=True)
class BordaScores:
    """Mean rank of every node over the K walks from one start node."""

    start: int
    score: np.ndarray


@dataclass(frozen=True)
class AffinityMatrix:
    """Dense n x n dissimilarity with an explicit normalization state."""

    values: np.ndarray
    state: str

    def __post_init__(self):
        if self.state not in STATES:
            raise MatrixStateError(f"unknown state {self.state!r}")
        if self.values.ndim != 2 or self.values.shape[0] != self.values.shape[1]:
            raise ValueError("affinity matrix must be square")

    @property
    def n(self) -> int:
        return self.values.shape[0]


def borda(rankings: list[ExtendedRanking]) -> BordaScores:
    """Mean of the total-rank positions over all walks."""
    if not rankings:
        raise ValueError("borda needs at least one ranking")
    start = rankings[0].start
    n = rankings[0].rank.shape[0]
    for r in rankings:
        if r.start != start or r.rank.shape[0] != n:
            raise ValueError("rankings disagree on start node or node universe")
    table = np.stack([r.rank for r in rankings])
    return BordaScores(start=start, score=table.mean(axis=0))


def _thread_count() -> int:
    raw = os.environ.get("WALKRANK_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def assemble_affinity(g: Graph, cfg: WalkConfig) -> AffinityMatrix:
    """Raw affinity: row s holds the Borda scores of walks started at s.

    Rows are independent and fill disjoint regions, so assembly may run on
    several threads (WALKRANK_THREADS); per-(start, walk) rng streams make
    the result identical regardless of scheduling.
    """
    if g.n < 2:
        raise ValueError("affinity needs at least 2 nodes")
    values = np.empty((g.n, g.n))

    def fill(s: int) -> None:
        kernel = build_kernel(g, s, cfg.epsilon)
        values[s] = rank_table(g, s, cfg, kernel).mean(axis=0)

    workers = _thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, range(g.n)))
    else:
        for s in range(g.n):
            fill(s)
    values.setflags(write=False)
    return AffinityMatrix(values=values, state=RAW)


def row_normalize(a: AffinityMatrix) -> AffinityMatrix:
    """Divide each row by its max, so every row max becomes 1."""
    if a.state != RAW:
        raise MatrixStateError(f"row_normalize expects state {RAW!r}, got {a.state!r}")
    values = a.values / a.values.max(axis=1, keepdims=True)
    values.setflags(write=False)
    return AffinityMatrix(values=values, state=ROW_NORMALIZED)


def symmetrize(a: AffinityMatrix) -> AffinityMatrix:
    """Average the matrix with its transpose. Accepts raw or row-normalized."""
    if a.state == SYMMETRIC:
        raise MatrixStateError("matrix is already symmetric")
    values = 0.5 * (a.values + a.values.T)
    values.setflags(write=False)
    return AffinityMatrix(values=values, state=SYMMETRIC)
