"""Graph generators: SBM, LFR, latent-graph perturbation, kNN graphs from
feature vectors, connected-subgraph sampling.

All generators are deterministic under a fixed seed. LFR follows the
configuration-model-with-rewiring construction: power-law degrees
calibrated to the requested mean, power-law community sizes summing to n,
capacity-respecting community assignment, then internal/external stub
wiring with bounded rewiring repair. Infeasible configurations raise
GenerationError naming the violated constraint rather than degrading
silently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, from_edge_list, induced_subgraph


class GenerationError(RuntimeError):
    """A generator could not satisfy its constraints within bounded retries."""


@dataclass(frozen=True)
class Partition:
    """Ground-truth community/class id per node."""

    labels: np.ndarray

    def __post_init__(self):
        if np.asarray(self.labels).ndim != 1:
            raise ValueError("labels must be one-dimensional")

    @property
    def num_communities(self) -> int:
        return int(np.unique(self.labels).size)


@dataclass(frozen=True)
class SbmConfig:
    block_sizes: tuple
    p_intra: float
    p_inter: float
    seed: int = 0

    def __post_init__(self):
        if len(self.block_sizes) == 0 or any(b < 1 for b in self.block_sizes):
            raise ValueError("block sizes must all be >= 1")
        for p in (self.p_intra, self.p_inter):
            if not 0.0 <= p <= 1.0:
                raise ValueError("edge probabilities must lie in [0, 1]")


@dataclass(frozen=True)
class LfrConfig:
    n: int
    avg_degree: float
    max_degree: int
    mu: float
    tau1: float = 2.0
    tau2: float = 1.1
    min_community: int = 5
    max_community: int = 50
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.avg_degree <= self.max_degree < self.n:
            raise ValueError("need 1 <= avg_degree <= max_degree < n")
        if not 1 <= self.min_community <= self.max_community <= self.n:
            raise ValueError("need 1 <= min_community <= max_community <= n")
        if not 0.0 < self.mu < 1.0:
            raise ValueError("mu must be in (0, 1)")
        if self.tau1 <= 0 or self.tau2 <= 0:
            raise ValueError("power-law exponents must be positive")


@dataclass(frozen=True)
class PerturbConfig:
    keep_prob: float
    add_prob: float
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.keep_prob <= 1.0:
            raise ValueError("keep_prob must be in (0, 1]")
        if not 0.0 <= self.add_prob <= 1.0:
            raise ValueError("add_prob must be in [0, 1]")


# ----------------------------------------------------------------- SBM

def sbm(cfg: SbmConfig) -> tuple[Graph, Partition]:
    """Each intra-block pair is an edge w.p. p_intra, inter-block w.p. p_inter."""
    rng = np.random.default_rng(cfg.seed)
    labels = np.repeat(np.arange(len(cfg.block_sizes)), cfg.block_sizes)
    n = labels.size
    draws = rng.random((n, n))
    probs = np.where(labels[:, None] == labels[None, :], cfg.p_intra, cfg.p_inter)
    iu, ju = np.triu_indices(n, 1)
    mask = draws[iu, ju] < probs[iu, ju]
    edges = np.column_stack((iu[mask], ju[mask]))
    return from_edge_list(edges, n), Partition(labels=labels)


# ----------------------------------------------------------------- LFR

def _powerlaw_interval_mass(lo, hi, tau):
    # integral of x^-tau over [lo, hi]
    if tau == 1.0:
        return np.log(hi / lo)
    p = 1.0 - tau
    return (hi**p - lo**p) / p


def _degree_bin_masses(a: float, max_degree: int, tau: float) -> np.ndarray:
    """Mass per integer degree when continuous draws on [a, max+0.5) round half-up."""
    b = max_degree + 0.5
    d = np.arange(1, max_degree + 1, dtype=float)
    lo = np.maximum(a, d - 0.5)
    hi = np.minimum(b, d + 0.5)
    mass = np.where(hi > lo, _powerlaw_interval_mass(np.maximum(lo, 1e-12), hi, tau), 0.0)
    return mass


def _calibrate_degree_cut(cfg: LfrConfig) -> float:
    """Lower cutoff a such that E[round-half-up(X)] = avg_degree.

    X is power-law (exponent tau1) on [a, max_degree + 0.5). The expected
    rounded value is continuous and increasing in a, so bisection applies.
    """

    def mean_of(a):
        mass = _degree_bin_masses(a, cfg.max_degree, cfg.tau1)
        d = np.arange(1, cfg.max_degree + 1)
        return float((d * mass).sum() / mass.sum())

    lo, hi = 0.5, cfg.max_degree + 0.5 - 1e-9
    if cfg.avg_degree <= mean_of(lo):
        if cfg.avg_degree < mean_of(lo) - 0.5:
            raise GenerationError(
                f"avg_degree={cfg.avg_degree} below the minimum achievable "
                f"{mean_of(lo):.3f} for tau1={cfg.tau1}, max_degree={cfg.max_degree}"
            )
        return lo
    if cfg.avg_degree >= cfg.max_degree:
        return cfg.max_degree - 1e-9
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mean_of(mid) < cfg.avg_degree:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _sample_degrees(cfg: LfrConfig, a: float, rng: np.random.Generator) -> np.ndarray:
    b = cfg.max_degree + 0.5
    u = rng.random(cfg.n)
    if cfg.tau1 == 1.0:
        x = a * (b / a) ** u
    else:
        p = 1.0 - cfg.tau1
        x = (a**p + u * (b**p - a**p)) ** (1.0 / p)
    return np.floor(x + 0.5).astype(np.int64)


def _sample_community_sizes(cfg: LfrConfig, rng: np.random.Generator) -> np.ndarray:
    support = np.arange(cfg.min_community, cfg.max_community + 1)
    pmf = support.astype(float) ** (-cfg.tau2)
    pmf /= pmf.sum()
    for _ in range(100):
        sizes: list[int] = []
        while sum(sizes) < cfg.n:
            sizes.append(int(rng.choice(support, p=pmf)))
        excess = sum(sizes) - cfg.n
        if excess == 0:
            return np.array(sizes)
        if sizes[-1] - excess >= cfg.min_community:
            sizes[-1] -= excess
            return np.array(sizes)
        # last community cannot shrink enough: drop it and pad the others
        deficit = cfg.n - (sum(sizes) - sizes[-1])
        sizes = sizes[:-1]
        idx = 0
        while deficit > 0 and any(s < cfg.max_community for s in sizes):
            if sizes[idx % len(sizes)] < cfg.max_community:
                sizes[idx % len(sizes)] += 1
                deficit -= 1
            idx += 1
        if deficit == 0 and sizes:
            return np.array(sizes)
    raise GenerationError(
        f"community sizes in [{cfg.min_community}, {cfg.max_community}] "
        f"could not be made to sum to n={cfg.n}"
    )


def _assign_communities(
    d_int: np.ndarray, sizes: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """Place each node in a community larger than its internal degree."""
    n = d_int.size
    if d_int.max() >= sizes.max():
        raise GenerationError(
            f"a node needs {int(d_int.max())} internal partners but the largest "
            f"community has only {int(sizes.max())} members"
        )
    membership = np.full(n, -1, np.int64)
    members: list[set] = [set() for _ in sizes]
    pending = list(rng.permutation(n))
    budget = 100 * n
    while pending and budget > 0:
        budget -= 1
        v = pending.pop()
        c = int(rng.integers(len(sizes)))
        if d_int[v] >= sizes[c]:
            pending.insert(0, v)
            continue
        membership[v] = c
        members[c].add(v)
        if len(members[c]) > sizes[c]:
            out = sorted(members[c])[rng.integers(len(members[c]))]
            members[c].discard(out)
            membership[out] = -1
            pending.insert(0, out)
    if pending:
        raise GenerationError("community assignment did not converge")
    return membership


def _pair_stubs(stubs: np.ndarray, rng: np.random.Generator, labels=None):
    """Configuration-model matching into simple edges.

    Pairs shuffled stubs, then repairs self-loops, duplicate edges and
    (when labels given) same-community pairs by swapping endpoints with
    randomly chosen partner pairs. Returns an (npairs, 2) array or None
    when repair did not converge.
    """
    if stubs.size == 0:
        return np.empty((0, 2), np.int64)
    if stubs.size % 2:
        raise GenerationError("stub list has odd length; parity fix missed it")
    for _ in range(20):
        order = rng.permutation(stubs)
        left = order[0::2].copy()
        right = order[1::2].copy()
        npairs = left.size
        for _ in range(100):
            lo = np.minimum(left, right)
            hi = np.maximum(left, right)
            key = lo * (hi.max() + 2) + hi
            srt = np.argsort(key, kind="stable")
            dup = np.zeros(npairs, bool)
            dup[srt[1:]] = key[srt[1:]] == key[srt[:-1]]
            bad = (left == right) | dup
            if labels is not None:
                bad |= labels[left] == labels[right]
            bad_idx = np.flatnonzero(bad)
            if bad_idx.size == 0:
                return np.column_stack((left, right))
            for i in bad_idx:
                j = int(rng.integers(npairs))
                right[i], right[j] = right[j], right[i]
    return None


def _split_stubs(
    degrees: np.ndarray, mu: float, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """External stub count per node: mu*degree, rounded stochastically.

    Deterministic rounding would zero out every node's external stubs at
    small mu (mu * max_degree < 1), disconnecting all communities, so the
    fractional part becomes a Bernoulli draw and the split is unbiased.
    """
    target = mu * degrees
    base = np.floor(target)
    d_ext = (base + (rng.random(degrees.size) < target - base)).astype(np.int64)
    d_ext = np.minimum(d_ext, degrees)
    return degrees - d_ext, d_ext


def _lfr_attempt(cfg: LfrConfig, rng: np.random.Generator) -> tuple[Graph, Partition]:
    degrees = _sample_degrees(cfg, _calibrate_degree_cut(cfg), rng)
    sizes = _sample_community_sizes(cfg, rng)
    d_int, d_ext = _split_stubs(degrees, cfg.mu, rng)
    membership = _assign_communities(d_int, sizes, rng)

    # parity: internal stubs must sum even within each community
    for c in range(sizes.size):
        nodes = np.flatnonzero(membership == c)
        if d_int[nodes].sum() % 2 == 1:
            cand = nodes[d_int[nodes] >= 1]
            pick = cand[rng.integers(cand.size)]
            d_int[pick] -= 1
            d_ext[pick] += 1
    # parity: external stubs must sum even globally; drop one stub if not
    if d_ext.sum() % 2 == 1:
        cand = np.flatnonzero(d_ext >= 1)
        d_ext[cand[rng.integers(cand.size)]] -= 1

    edges = []
    for c in range(sizes.size):
        nodes = np.flatnonzero(membership == c)
        stubs = np.repeat(nodes, d_int[nodes])
        pairs = _pair_stubs(stubs, rng)
        if pairs is None:
            raise GenerationError(
                f"internal wiring of community {c} (size {nodes.size}) "
                "did not reach a simple graph"
            )
        edges.append(pairs)
    ext_stubs = np.repeat(np.arange(cfg.n), d_ext)
    pairs = _pair_stubs(ext_stubs, rng, labels=membership)
    if pairs is None:
        raise GenerationError("external wiring did not reach a simple graph")
    edges.append(pairs)

    all_edges = np.vstack(edges)
    return from_edge_list(all_edges, cfg.n), Partition(labels=membership)


def lfr(cfg: LfrConfig, max_attempts: int = 20) -> tuple[Graph, Partition]:
    """LFR benchmark graph with ground-truth communities.

    Retries the whole construction with derived seeds up to max_attempts
    before giving up; the first attempt uses the seed itself, so a
    successful first attempt is reproducible from cfg alone.
    """
    last: GenerationError | None = None
    for attempt in range(max_attempts):
        ss = np.random.SeedSequence(cfg.seed, spawn_key=(attempt,))
        try:
            return _lfr_attempt(cfg, np.random.default_rng(ss))
        except GenerationError as exc:
            last = exc
    raise GenerationError(
        f"lfr failed after {max_attempts} attempts; last error: {last}"
    )


def mixing_fraction(g: Graph, labels: np.ndarray) -> float:
    """Fraction of edges whose endpoints lie in different communities."""
    if g.m == 0:
        return 0.0
    edges = g.to_edge_list()
    return float(np.mean(labels[edges[:, 0]] != labels[edges[:, 1]]))


# ----------------------------------------------------------- perturb

def perturb(g_star: Graph, cfg: PerturbConfig) -> Graph:
    """Observed graph: latent edges kept w.p. p, non-edges added w.p. q.

    Keep draws are consumed first (in canonical edge order), then add
    draws (in lexicographic non-edge order), so results are reproducible.
    """
    rng = np.random.default_rng(cfg.seed)
    n = g_star.n
    latent = g_star.to_edge_list()
    kept = latent[rng.random(latent.shape[0]) < cfg.keep_prob]
    adj = np.zeros((n, n), bool)
    if latent.size:
        adj[latent[:, 0], latent[:, 1]] = True
    iu, ju = np.triu_indices(n, 1)
    hole = ~adj[iu, ju]
    cand_u, cand_v = iu[hole], ju[hole]
    added_mask = rng.random(cand_u.size) < cfg.add_prob
    added = np.column_stack((cand_u[added_mask], cand_v[added_mask]))
    return from_edge_list(np.vstack((kept, added)), n)


# ---------------------------------------------------------- kNN graph

def knn_graph(features: np.ndarray, k: int, standardize: bool = True) -> Graph:
    """Union-symmetrized k-nearest-neighbor graph over feature rows.

    Euclidean distances; ties broken toward the lower sample index.
    Standardization z-scores each feature with sd denominator n-1 and
    leaves constant features at 0.
    """
    X = np.asarray(features, float)
    if X.ndim != 2:
        raise ValueError("features must be a 2-D sample x feature matrix")
    n = X.shape[0]
    if not 1 <= k < n:
        raise ValueError(f"k must satisfy 1 <= k < n (got k={k}, n={n})")
    if standardize:
        sd = X.std(axis=0, ddof=1)
        centered = X - X.mean(axis=0)
        X = np.where(sd > 0, centered / np.where(sd > 0, sd, 1.0), 0.0)
    edges = np.empty((n * k, 2), np.int64)
    for i in range(n):
        d2 = ((X - X[i]) ** 2).sum(axis=1)
        d2[i] = np.inf
        nn = np.argsort(d2, kind="stable")[:k]
        edges[i * k : (i + 1) * k, 0] = i
        edges[i * k : (i + 1) * k, 1] = nn
    return from_edge_list(edges, n)


# ------------------------------------------------- subgraph sampling

def sample_connected_subgraph(
    g: Graph, size: int, seed: int = 0
) -> tuple[Graph, np.ndarray]:
    """Induced subgraph grown by uniform frontier expansion.

    Starts at a uniform node and repeatedly absorbs a uniformly chosen
    frontier node (rather than whole BFS layers) to avoid biasing the
    sample toward hubs. Returns (subgraph, original node ids).
    """
    if not 1 <= size <= g.n:
        raise ValueError(f"size must be in [1, n] (got size={size}, n={g.n})")
    rng = np.random.default_rng(seed)
    start = int(rng.integers(g.n))
    chosen = {start}
    frontier = set(int(v) for v in g.neighbors(start)) - chosen
    while len(chosen) < size:
        if not frontier:
            raise ValueError(
                f"connected component of node {start} has only {len(chosen)} "
                f"nodes, fewer than the requested {size}"
            )
        pool = sorted(frontier)
        v = pool[rng.integers(len(pool))]
        chosen.add(v)
        frontier.discard(v)
        frontier.update(int(u) for u in g.neighbors(v) if u not in chosen)
    return induced_subgraph(g, np.array(sorted(chosen), np.int64))
