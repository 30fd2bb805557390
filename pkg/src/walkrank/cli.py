"""Command-line interface.

Subcommands: affinity (edge list -> matrix CSV), generate (synthetic
graphs and derived graphs), cluster / classify (matrix + labels ->
metrics), bench (preset experiment grids -> report file).

Exit codes: 0 success, 1 runtime failure, 2 usage error (including
missing input files).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import io
from .affinity import MatrixStateError
from .analysis import knn_classify, ward_cluster
from .baselines import PprConfig
from .bench import METHODS, PRESETS, build_method_matrix, run_preset
from .generators import (
    GenerationError,
    LfrConfig,
    PerturbConfig,
    SbmConfig,
    knn_graph,
    lfr,
    mixing_fraction,
    perturb,
    sample_connected_subgraph,
    sbm,
)
from .metrics import ami, ari, balanced_accuracy, nmi
from .walks import DeadEndError, WalkConfig


class UsageError(ValueError):
    """Bad flag values; reported with exit code 2."""


def _add_walk_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--walks", type=int, default=50, help="walks per start node")
    p.add_argument("--walk-length", type=int, default=20, help="steps per walk")
    p.add_argument("--epsilon", type=float, default=0.01, help="kernel smoothing constant")


def _add_ppr_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=0.15, help="restart probability")
    p.add_argument("--tol", type=float, default=1e-10, help="L1 convergence threshold")
    p.add_argument("--max-iters", type=int, default=10000)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walkrank",
        description="Node affinities from Borda-aggregated biased random walks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("affinity", help="build a dissimilarity matrix from an edge list")
    p.add_argument("edges", help="input edge-list file")
    p.add_argument("output", help="output matrix CSV")
    p.add_argument("--method", choices=METHODS, default="topk")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=8, help="laplacian embedding dimension")
    _add_walk_flags(p)
    _add_ppr_flags(p)
    p.set_defaults(func=cmd_affinity)

    p = sub.add_parser("generate", help="write synthetic or derived graphs")
    gen = p.add_subparsers(dest="kind", required=True)

    g = gen.add_parser("sbm", help="stochastic block model")
    g.add_argument("out_edges")
    g.add_argument("out_labels")
    g.add_argument("--blocks", default="10,10,10", help="comma-separated block sizes")
    g.add_argument("--p-intra", type=float, required=True)
    g.add_argument("--p-inter", type=float, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_generate_sbm)

    g = gen.add_parser("lfr", help="LFR benchmark graph")
    g.add_argument("out_edges")
    g.add_argument("out_labels")
    g.add_argument("--n", type=int, default=100)
    g.add_argument("--avg-degree", type=float, default=5.0)
    g.add_argument("--max-degree", type=int, default=10)
    g.add_argument("--mu", type=float, required=True)
    g.add_argument("--tau1", type=float, default=2.0)
    g.add_argument("--tau2", type=float, default=1.1)
    g.add_argument("--min-community", type=int, default=5)
    g.add_argument("--max-community", type=int, default=50)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_generate_lfr)

    g = gen.add_parser("knn", help="kNN graph from a feature CSV")
    g.add_argument("features")
    g.add_argument("out_edges")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--no-standardize", action="store_true")
    g.set_defaults(func=cmd_generate_knn)

    g = gen.add_parser("perturb", help="randomly drop and add edges")
    g.add_argument("edges")
    g.add_argument("out_edges")
    g.add_argument("--keep-prob", type=float, required=True)
    g.add_argument("--add-prob", type=float, default=0.0)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_generate_perturb)

    g = gen.add_parser("subgraph", help="sample a connected subgraph")
    g.add_argument("edges")
    g.add_argument("out_edges")
    g.add_argument("--size", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_generate_subgraph)

    p = sub.add_parser("cluster", help="Ward-cluster a matrix and score against labels")
    p.add_argument("matrix")
    p.add_argument("labels")
    p.add_argument("--k-clusters", type=int, default=None,
                   help="dendrogram cut (default: number of label classes)")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("classify", help="leave-one-out kNN classification on a matrix")
    p.add_argument("matrix")
    p.add_argument("labels")
    p.add_argument("--k", type=int, default=5, help="neighbor count")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bench", help="run a preset experiment grid")
    p.add_argument("--preset", required=True)
    p.add_argument("--reps", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="report.jsonl")
    p.add_argument("--methods", default=None, help="comma-separated subset of methods")
    p.add_argument("--values", default=None, help="comma-separated subset of sweep values")
    p.add_argument("--features", default=None, help="feature CSV (fig6-knn-tabular)")
    p.add_argument("--labels", default=None, help="label CSV (data presets)")
    p.add_argument("--edges", default=None, help="edge list (fig7-subgraph-classify)")
    p.add_argument("--subgraph-size", type=int, default=100)
    _add_walk_flags(p)
    _add_ppr_flags(p)
    p.set_defaults(func=cmd_bench)

    return parser


def cmd_affinity(args) -> int:
    g, names = io.read_edge_list(args.edges)
    cfg = WalkConfig(
        walk_length=args.walk_length,
        num_walks=args.walks,
        epsilon=args.epsilon,
        seed=args.seed,
    )
    ppr_cfg = PprConfig(restart_prob=args.alpha, tol=args.tol, max_iters=args.max_iters)
    dim = max(1, min(args.dim, g.n - 1)) if g.n > 1 else 1
    mat, runtime = build_method_matrix(args.method, g, cfg, ppr_cfg, dim)
    io.write_matrix(mat, args.output, names)
    print(f"wrote {g.n}x{g.n} matrix to {args.output} ({runtime:.6f}s)", file=sys.stderr)
    return 0


def _echo_graph(g, path) -> None:
    print(f"n={g.n} m={g.m} -> {path}")


def cmd_generate_sbm(args) -> int:
    blocks = tuple(int(b) for b in args.blocks.split(","))
    g, part = sbm(SbmConfig(blocks, args.p_intra, args.p_inter, seed=args.seed))
    io.write_edge_list(g, args.out_edges)
    io.write_labels(part, args.out_labels)
    _echo_graph(g, args.out_edges)
    return 0


def cmd_generate_lfr(args) -> int:
    cfg = LfrConfig(
        n=args.n,
        avg_degree=args.avg_degree,
        max_degree=args.max_degree,
        mu=args.mu,
        tau1=args.tau1,
        tau2=args.tau2,
        min_community=args.min_community,
        max_community=args.max_community,
        seed=args.seed,
    )
    g, part = lfr(cfg)
    io.write_edge_list(g, args.out_edges)
    io.write_labels(part, args.out_labels)
    realized = mixing_fraction(g, part.labels)
    print(
        f"n={g.n} m={g.m} mean_degree={2 * g.m / g.n:.3f} "
        f"realized_mu={realized:.4f} -> {args.out_edges}"
    )
    return 0


def cmd_generate_knn(args) -> int:
    X, names = io.read_features(args.features)
    g = knn_graph(X, args.k, standardize=not args.no_standardize)
    io.write_edge_list(g, args.out_edges, names)
    _echo_graph(g, args.out_edges)
    return 0


def cmd_generate_perturb(args) -> int:
    g, names = io.read_edge_list(args.edges)
    out = perturb(g, PerturbConfig(args.keep_prob, args.add_prob, seed=args.seed))
    io.write_edge_list(out, args.out_edges, names)
    _echo_graph(out, args.out_edges)
    return 0


def cmd_generate_subgraph(args) -> int:
    g, names = io.read_edge_list(args.edges)
    sub, old_ids = sample_connected_subgraph(g, args.size, seed=args.seed)
    io.write_edge_list(sub, args.out_edges, [names[i] for i in old_ids])
    _echo_graph(sub, args.out_edges)
    return 0


def cmd_cluster(args) -> int:
    mat, names = io.read_matrix(args.matrix)
    part = io.read_labels(args.labels, names)
    k = args.k_clusters if args.k_clusters is not None else part.num_communities
    pred = ward_cluster(mat, k)
    record = {
        "k_clusters": k,
        "ari": ari(part, pred),
        "nmi": nmi(part, pred),
        "ami": ami(part, pred),
    }
    print(json.dumps(record, sort_keys=True))
    return 0


def cmd_classify(args) -> int:
    mat, names = io.read_matrix(args.matrix)
    part = io.read_labels(args.labels, names)
    predicted = knn_classify(mat, part, args.k)
    record = {
        "k": args.k,
        "balanced_accuracy": balanced_accuracy(part.labels, predicted),
    }
    print(json.dumps(record, sort_keys=True))
    return 0


def cmd_bench(args) -> int:
    if args.preset not in PRESETS:
        raise UsageError(
            f"unknown preset {args.preset!r}; available: {', '.join(sorted(PRESETS))}"
        )
    methods = tuple(args.methods.split(",")) if args.methods else None
    values = tuple(args.values.split(",")) if args.values else None
    features = labels = graph = None
    label_names = None
    if args.features:
        features, label_names = io.read_features(args.features)
    if args.edges:
        graph, label_names = io.read_edge_list(args.edges)
    if args.labels:
        if label_names is None:
            raise UsageError("--labels needs --features or --edges for node names")
        labels = io.read_labels(args.labels, label_names).labels
    t0 = time.perf_counter()
    records = run_preset(
        args.preset,
        reps=args.reps,
        seed=args.seed,
        methods=methods,
        values=values,
        walk_length=args.walk_length,
        num_walks=args.walks,
        epsilon=args.epsilon,
        ppr_cfg=PprConfig(restart_prob=args.alpha, tol=args.tol, max_iters=args.max_iters),
        features=features,
        graph=graph,
        labels=labels,
        subgraph_size=args.subgraph_size,
    )
    io.write_report(records, args.out)
    n_runs = sum(1 for r in records if r.get("record") == "run")
    print(
        f"wrote {len(records)} records ({n_runs} runs) to {args.out} "
        f"({time.perf_counter() - t0:.1f}s)",
        file=sys.stderr,
    )
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (
        io.ParseError,
        GenerationError,
        MatrixStateError,
        DeadEndError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
