"""Benchmark harness: presets reproducing the experiment grids, repeated
runs with derived seeds, and line-delimited reports.

Per repetition: generate (or subsample) a graph, restrict graph and
labels to the largest connected component, build each method's
dissimilarity matrix (this construction is the only timed section),
cluster with Ward at the ground-truth community count, and score
ARI/NMI/AMI; classification presets additionally run leave-one-out kNN
and score balanced accuracy. Reports are bit-reproducible for a fixed
master seed: record order is (setting, method, rep) and no wall-clock
values are stored outside the runtime fields.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .affinity import AffinityMatrix, assemble_affinity, row_normalize, symmetrize
from .analysis import knn_classify, ward_cluster
from .baselines import (
    EmbeddingConfig,
    PprConfig,
    dice_matrix,
    jaccard_matrix,
    laplacian_matrix,
    personalized_pagerank,
)
from .generators import (
    LfrConfig,
    SbmConfig,
    knn_graph,
    lfr,
    sample_connected_subgraph,
    sbm,
)
from .graph import Graph, largest_connected_component
from .metrics import ami, ari, balanced_accuracy, nmi
from .walks import WalkConfig, mix_seed

METHODS = ("topk", "jaccard", "dice", "ppr", "laplacian")


@dataclass(frozen=True)
class Preset:
    name: str
    kind: str
    sweep_key: str
    sweep_values: tuple
    methods: tuple
    needs: tuple
    description: str


PRESETS: dict[str, Preset] = {
    p.name: p
    for p in (
        Preset(
            name="fig1-intra",
            kind="sbm-intra",
            sweep_key="p_intra",
            sweep_values=(0.10, 0.20, 0.30, 0.40, 0.50),
            methods=METHODS,
            needs=(),
            description="SBM 3x10 nodes, p_inter=0.05, sweep intra-community probability",
        ),
        Preset(
            name="fig2-inter",
            kind="sbm-inter",
            sweep_key="p_inter",
            sweep_values=(0.01, 0.05, 0.10, 0.20, 0.30),
            methods=METHODS,
            needs=(),
            description="SBM 3x10 nodes, p_intra=0.50, sweep inter-community probability",
        ),
        Preset(
            name="fig3-lfr-mu",
            kind="lfr-mu",
            sweep_key="mu",
            sweep_values=(0.03, 0.05, 0.10, 0.20, 0.30),
            methods=METHODS,
            needs=(),
            description="LFR n=100 avg_degree=5 max_degree=10, sweep mixing parameter",
        ),
        Preset(
            name="fig4a-walklen",
            kind="walklen",
            sweep_key="walk_length",
            sweep_values=(5, 10, 25, 50, 100),
            methods=("topk",),
            needs=(),
            description="LFR mu=0.05, sweep walk length",
        ),
        Preset(
            name="fig4b-numwalks",
            kind="numwalks",
            sweep_key="num_walks",
            sweep_values=(5, 10, 25, 50, 100, 200),
            methods=("topk",),
            needs=(),
            description="SBM 3x10 p_intra=0.50 p_inter=0.05, sweep number of walks",
        ),
        Preset(
            name="fig5-scaling",
            kind="scaling",
            sweep_key="n",
            sweep_values=(50, 100, 200, 400),
            methods=METHODS,
            needs=(),
            description="LFR mu=0.05, sweep graph size; runtimes are the payload",
        ),
        Preset(
            name="fig6-knn-tabular",
            kind="knn-tabular",
            sweep_key="knn_k",
            sweep_values=(5, 7, 10),
            methods=METHODS,
            needs=("features", "labels"),
            description="kNN graph from standardized features, sweep k; clustering + classification",
        ),
        Preset(
            name="fig7-subgraph-classify",
            kind="subgraph",
            sweep_key="knn_k",
            sweep_values=(5, 7, 10),
            methods=METHODS,
            needs=("edges", "labels"),
            description="100-node connected subgraphs of a supplied graph; clustering + classification",
        ),
    )
}


def _key_of(value) -> int:
    return int(round(float(value) * 1000))


def build_method_matrix(
    method: str,
    g: Graph,
    walk_cfg: WalkConfig,
    ppr_cfg: PprConfig,
    embed_dim: int,
) -> tuple[AffinityMatrix, float]:
    """The method's symmetric dissimilarity and its construction time."""
    t0 = time.perf_counter()
    if method == "topk":
        mat = symmetrize(row_normalize(assemble_affinity(g, walk_cfg)))
    elif method == "jaccard":
        mat = jaccard_matrix(g)
    elif method == "dice":
        mat = dice_matrix(g)
    elif method == "ppr":
        mat = personalized_pagerank(g, ppr_cfg)
    elif method == "laplacian":
        mat = laplacian_matrix(g, EmbeddingConfig(dim=embed_dim))
    else:
        raise ValueError(f"unknown method {method!r}")
    return mat, time.perf_counter() - t0


def _restricted(g: Graph, labels: np.ndarray) -> tuple[Graph, np.ndarray]:
    sub, old_ids = largest_connected_component(g)
    return sub, labels[old_ids]


def _make_graph(preset: Preset, value, rep_graph_seed: int, data) -> tuple[Graph, np.ndarray]:
    if preset.kind == "sbm-intra":
        g, part = sbm(SbmConfig((10, 10, 10), float(value), 0.05, seed=rep_graph_seed))
    elif preset.kind == "sbm-inter":
        g, part = sbm(SbmConfig((10, 10, 10), 0.50, float(value), seed=rep_graph_seed))
    elif preset.kind == "lfr-mu":
        g, part = lfr(
            LfrConfig(n=100, avg_degree=5, max_degree=10, mu=float(value), seed=rep_graph_seed)
        )
    elif preset.kind in ("walklen",):
        g, part = lfr(
            LfrConfig(n=100, avg_degree=5, max_degree=10, mu=0.05, seed=rep_graph_seed)
        )
    elif preset.kind == "numwalks":
        g, part = sbm(SbmConfig((10, 10, 10), 0.50, 0.05, seed=rep_graph_seed))
    elif preset.kind == "scaling":
        n = int(value)
        g, part = lfr(
            LfrConfig(
                n=n,
                avg_degree=5,
                max_degree=10,
                mu=0.05,
                min_community=5,
                max_community=min(50, n // 2),
                seed=rep_graph_seed,
            )
        )
    else:
        raise ValueError(f"kind {preset.kind!r} does not generate graphs")
    return g, part.labels


def run_preset(
    preset_name: str,
    reps: int = 50,
    seed: int = 0,
    methods: tuple | None = None,
    values: tuple | None = None,
    walk_length: int = 20,
    num_walks: int = 50,
    epsilon: float = 0.01,
    ppr_cfg: PprConfig | None = None,
    features: np.ndarray | None = None,
    graph: Graph | None = None,
    labels: np.ndarray | None = None,
    subgraph_size: int = 100,
) -> list[dict]:
    """All records (meta, runs, aggregates) for one preset invocation."""
    if preset_name not in PRESETS:
        raise ValueError(
            f"unknown preset {preset_name!r}; available: {', '.join(sorted(PRESETS))}"
        )
    preset = PRESETS[preset_name]
    if reps < 1:
        raise ValueError("reps must be >= 1")
    if methods is None:
        methods = preset.methods
    bad = [m for m in methods if m not in METHODS]
    if bad:
        raise ValueError(f"unknown methods {bad}; available: {', '.join(METHODS)}")
    if values is None:
        values = preset.sweep_values
    else:
        values = tuple(type(preset.sweep_values[0])(v) for v in values)
    if "features" in preset.needs and features is None:
        raise ValueError(f"preset {preset.name} needs a feature table")
    if "edges" in preset.needs and graph is None:
        raise ValueError(f"preset {preset.name} needs an input graph")
    if preset.needs and labels is None:
        raise ValueError(f"preset {preset.name} needs ground-truth labels")
    if ppr_cfg is None:
        ppr_cfg = PprConfig()
    if "topk" in methods:
        _kernels.warmup()

    walk_params = {
        "walk_length": walk_length,
        "num_walks": num_walks,
        "epsilon": epsilon,
    }
    meta = {
        "record": "meta",
        "preset": preset.name,
        "description": preset.description,
        "master_seed": seed,
        "reps": reps,
        "methods": list(methods),
        "sweep_key": preset.sweep_key,
        "sweep_values": list(values),
        "walk_params": walk_params,
        "ppr_params": {
            "restart_prob": ppr_cfg.restart_prob,
            "tol": ppr_cfg.tol,
            "max_iters": ppr_cfg.max_iters,
        },
        "nmi_ami_normalization": "arithmetic mean of entropies, natural log",
        "omitted_methods": ["node2vec"],
        "backend": _kernels.BACKEND,
    }

    runs: list[dict] = []
    for value in values:
        for r in range(reps):
            rep_seed = mix_seed(seed, r)
            vkey = _key_of(value)
            cfg = WalkConfig(
                walk_length=int(value) if preset.kind == "walklen" else walk_length,
                num_walks=int(value) if preset.kind == "numwalks" else num_walks,
                epsilon=epsilon,
                seed=mix_seed(seed, r, 1, vkey),
            )
            if preset.kind in ("walklen", "numwalks"):
                graph_seed = mix_seed(seed, r, 0)
            else:
                graph_seed = mix_seed(seed, r, 0, vkey)

            if preset.kind == "knn-tabular":
                g = knn_graph(features, int(value), standardize=True)
                g_r, y_r = _restricted(g, np.asarray(labels))
            elif preset.kind == "subgraph":
                base, base_ids = largest_connected_component(graph)
                sub, sub_ids = sample_connected_subgraph(
                    base, subgraph_size, seed=mix_seed(seed, r, 2)
                )
                g_r = sub
                y_r = np.asarray(labels)[base_ids][sub_ids]
            else:
                g, y = _make_graph(preset, value, graph_seed, None)
                g_r, y_r = _restricted(g, y)

            k_clusters = int(np.unique(y_r).size)
            embed_dim = max(1, min(k_clusters, g_r.n - 1))
            for method in methods:
                mat, runtime = build_method_matrix(method, g_r, cfg, ppr_cfg, embed_dim)
                pred = ward_cluster(mat, k_clusters)
                rec = {
                    "record": "run",
                    "preset": preset.name,
                    "setting": {preset.sweep_key: value},
                    "method": method,
                    "rep": r,
                    "seed": rep_seed,
                    "walk_params": dict(walk_params),
                    "n": g_r.n,
                    "m": g_r.m,
                    "ari": ari(y_r, pred.labels),
                    "nmi": nmi(y_r, pred.labels),
                    "ami": ami(y_r, pred.labels),
                    "runtime_seconds": runtime,
                }
                if preset.kind in ("knn-tabular", "subgraph"):
                    predicted = knn_classify(mat, y_r, int(value))
                    rec["balanced_accuracy"] = balanced_accuracy(y_r, predicted)
                runs.append(rec)

    runs.sort(key=lambda rec: (json.dumps(rec["setting"], sort_keys=True), rec["method"], rec["rep"]))
    return [meta] + runs + _aggregate(runs)


def _aggregate(runs: list[dict]) -> list[dict]:
    """Mean and standard error per (setting, method); se = sd(ddof=1)/sqrt(R)."""
    groups: dict[tuple, list[dict]] = {}
    for rec in runs:
        key = (json.dumps(rec["setting"], sort_keys=True), rec["method"])
        groups.setdefault(key, []).append(rec)
    out = []
    for (skey, method), members in sorted(groups.items()):
        agg = {
            "record": "aggregate",
            "preset": members[0]["preset"],
            "setting": json.loads(skey),
            "method": method,
            "reps": len(members),
        }
        fields = ["ari", "nmi", "ami"]
        if "balanced_accuracy" in members[0]:
            fields.append("balanced_accuracy")
        for field in fields:
            vals = np.array([m[field] for m in members], float)
            agg[f"{field}_mean"] = float(vals.mean())
            agg[f"{field}_se"] = _se(vals)
        times = np.array([m["runtime_seconds"] for m in members], float)
        agg["runtime_mean"] = float(times.mean())
        agg["runtime_se"] = _se(times)
        out.append(agg)
    return out


def _se(vals: np.ndarray) -> float:
    if vals.size < 2:
        return 0.0
    return float(vals.std(ddof=1) / np.sqrt(vals.size))
