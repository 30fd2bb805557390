"""Start-anchored biased random walks and first-visit rankings.

Each walk from a start node s moves between neighbors with probability
proportional to jaccard(g, s, v) + epsilon, where the weights are computed
once per start node and stay fixed for all of its walks. A walk yields a
total ranking of all nodes: visited nodes ordered by first-visit time
(start gets rank 1), then the unvisited nodes in a uniformly random order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph


class DeadEndError(ValueError):
    """A transition was requested from a node with no neighbors."""


@dataclass(frozen=True)
class WalkConfig:
    """Parameters shared by all walks of one affinity computation."""

    walk_length: int = 20
    num_walks: int = 50
    epsilon: float = 0.01
    seed: int = 0

    def __post_init__(self):
        if self.walk_length < 1:
            raise ValueError("walk_length must be >= 1")
        if self.num_walks < 1:
            raise ValueError("num_walks must be >= 1")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")


@dataclass(frozen=True)
class AnchoredKernel:
    """Per-node transition weights jaccard(g, start, v) + epsilon.

    Fixed for the lifetime of every walk started at `start`.
    """

    start: int
    weights: np.ndarray


@dataclass(frozen=True)
class ExtendedRanking:
    """Total ranking from one walk: rank[v] in {1..n}, rank[start] = 1."""

    start: int
    rank: np.ndarray


def mix_seed(master: int, *key: int) -> int:
    """Collapse a master seed and an integer key path into one 64-bit seed.

    Order-sensitive and collision-resistant, so derived seeds are
    independent of evaluation order.
    """
    ss = np.random.SeedSequence(master, spawn_key=tuple(int(x) for x in key))
    return int(ss.generate_state(1, np.uint64)[0])


def walk_stream(seed: int, stream_key: int, walk_index: int) -> np.random.Generator:
    """The rng stream for walk `walk_index` keyed by `stream_key` (the start node)."""
    ss = np.random.SeedSequence(seed, spawn_key=(int(stream_key), int(walk_index)))
    return np.random.default_rng(ss)


def build_kernel(g: Graph, s: int, epsilon: float = 0.01) -> AnchoredKernel:
    """Weights jaccard(g, s, v) + epsilon for every node v."""
    if not 0 <= s < g.n:
        raise ValueError(f"start node {s} out of range for n={g.n}")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    deg = g.degrees
    overlap = _kernels.overlap_counts(g.indptr, g.indices, int(s))
    union = deg[int(s)] + deg - overlap
    jacc = np.where(union > 0, overlap / np.maximum(union, 1), 0.0)
    return AnchoredKernel(start=int(s), weights=jacc + epsilon)


def transition_distribution(g: Graph, kernel: AnchoredKernel, u: int) -> np.ndarray:
    """Transition probabilities from u, aligned with g.neighbors(u)."""
    nb = g.neighbors(u)
    if nb.size == 0:
        raise DeadEndError(f"node {u} has no neighbors")
    w = kernel.weights[nb]
    return w / w.sum()


def run_walk(
    g: Graph,
    kernel: AnchoredKernel,
    cfg: WalkConfig,
    walk_index: int,
    rng: np.random.Generator,
    *,
    node_order: np.ndarray | None = None,
    return_trajectory: bool = False,
):
    """Simulate one walk and return its ExtendedRanking.

    All T uniforms are drawn up front (unused ones are discarded on early
    dead-end termination); the tail permutation is drawn from the same
    stream afterwards. `node_order`, when given, supplies per-node sort
    keys that replace ascending node id wherever an iteration order
    matters (neighbor traversal, tail candidates); it exists so that tests
    can reproduce a relabeled graph's walks exactly.
    """
    n = g.n
    s = kernel.start
    u = rng.random(cfg.walk_length)
    first = np.full(n, -1, np.int64)
    first[s] = 0
    count = 1
    cur = s
    trajectory = [s]
    for t in range(cfg.walk_length):
        nb = g.neighbors(cur)
        if nb.size == 0:
            break
        if node_order is not None:
            nb = nb[np.argsort(node_order[nb], kind="stable")]
        c = np.cumsum(kernel.weights[nb])
        x = u[t] * c[-1]
        sel = min(int(np.searchsorted(c, x, side="left")), nb.size - 1)
        cur = int(nb[sel])
        trajectory.append(cur)
        if first[cur] < 0:
            first[cur] = count
            count += 1
    rank = np.empty(n, np.int64)
    visited = first >= 0
    rank[visited] = first[visited] + 1
    unvisited = np.flatnonzero(~visited)
    if node_order is not None:
        unvisited = unvisited[np.argsort(node_order[unvisited], kind="stable")]
    tail = rng.permutation(unvisited)
    rank[tail] = count + 1 + np.arange(unvisited.size)
    ranking = ExtendedRanking(start=s, rank=rank)
    if return_trajectory:
        return ranking, trajectory
    return ranking


def run_walks(
    g: Graph,
    s: int,
    cfg: WalkConfig,
    *,
    kernel: AnchoredKernel | None = None,
    stream_key: int | None = None,
    node_order: np.ndarray | None = None,
) -> list[ExtendedRanking]:
    """K independent rankings from node s, streams keyed by (seed, s, k)."""
    if kernel is None:
        kernel = build_kernel(g, s, cfg.epsilon)
    key = s if stream_key is None else stream_key
    out = []
    for k in range(cfg.num_walks):
        rng = walk_stream(cfg.seed, key, k)
        out.append(run_walk(g, kernel, cfg, k, rng, node_order=node_order))
    return out


def rank_table(
    g: Graph,
    s: int,
    cfg: WalkConfig,
    kernel: AnchoredKernel | None = None,
) -> np.ndarray:
    """The K x n table of ranks from node s, via the compiled walk kernel.

    Row k equals run_walks(g, s, cfg)[k].rank bit for bit; the kernel
    consumes the same pre-drawn uniforms and the tail permutations are
    drawn here from the same per-walk streams.
    """
    if kernel is None:
        kernel = build_kernel(g, s, cfg.epsilon)
    K, T = cfg.num_walks, cfg.walk_length
    streams = [walk_stream(cfg.seed, s, k) for k in range(K)]
    uniforms = np.empty((K, T))
    for k, stream in enumerate(streams):
        uniforms[k] = stream.random(T)
    first_pos, counts = _kernels.walk_table(
        g.indptr, g.indices, kernel.weights, int(s), uniforms
    )
    ranks = np.empty((K, g.n), np.int64)
    for k in range(K):
        fp = first_pos[k]
        vis = fp >= 0
        ranks[k, vis] = fp[vis] + 1
        unvisited = np.flatnonzero(~vis)
        tail = streams[k].permutation(unvisited)
        ranks[k, tail] = counts[k] + 1 + np.arange(unvisited.size)
    return ranks
