import numpy as np
import pytest

from walkrank import (
    GenerationError,
    LfrConfig,
    PerturbConfig,
    SbmConfig,
    component_labels,
    from_edge_list,
    is_connected,
    knn_graph,
    lfr,
    mixing_fraction,
    perturb,
    sample_connected_subgraph,
    sbm,
)

FIG3 = dict(
    n=100, avg_degree=5, max_degree=10, mu=0.05,
    tau1=2.0, tau2=1.1, min_community=5, max_community=50,
)


def complete_graph(n):
    return from_edge_list([(i, j) for i in range(n) for j in range(i + 1, n)], n)


# ------------------------------------------------------------------ SBM

def test_sbm_degenerate_probabilities():
    g, part = sbm(SbmConfig(block_sizes=[3, 3], p_intra=1.0, p_inter=0.0, seed=0))
    assert g.m == 6
    assert len(np.unique(component_labels(g))) == 2
    assert part.labels.tolist() == [0, 0, 0, 1, 1, 1]

    empty, _ = sbm(SbmConfig(block_sizes=[4, 4], p_intra=0.0, p_inter=0.0, seed=0))
    assert empty.m == 0

    full, _ = sbm(SbmConfig(block_sizes=[3, 2], p_intra=1.0, p_inter=1.0, seed=0))
    assert full.m == 5 * 4 // 2


def test_sbm_edge_count_statistics():
    cfg = dict(block_sizes=[10, 10, 10], p_intra=0.5, p_inter=0.05)
    counts = [sbm(SbmConfig(seed=s, **cfg))[0].m for s in range(200)]
    expected = 3 * 45 * 0.5 + 300 * 0.05
    var = 135 * 0.25 + 300 * 0.05 * 0.95
    assert abs(np.mean(counts) - expected) < 3 * np.sqrt(var / 200)


def test_sbm_deterministic():
    cfg = SbmConfig(block_sizes=[5, 5], p_intra=0.4, p_inter=0.1, seed=123)
    a, _ = sbm(cfg)
    b, _ = sbm(cfg)
    assert np.array_equal(a.to_edge_list(), b.to_edge_list())


def test_sbm_config_validation():
    with pytest.raises(ValueError):
        SbmConfig(block_sizes=[], p_intra=0.5, p_inter=0.1)
    with pytest.raises(ValueError):
        SbmConfig(block_sizes=[3, 0], p_intra=0.5, p_inter=0.1)
    with pytest.raises(ValueError):
        SbmConfig(block_sizes=[3], p_intra=1.5, p_inter=0.1)


# ------------------------------------------------------------------ LFR

def test_lfr_hard_constraints():
    for seed in range(5):
        g, part = lfr(LfrConfig(seed=seed, **FIG3))
        assert g.n == 100
        assert g.degrees.max() <= FIG3["max_degree"]
        sizes = np.bincount(part.labels)
        assert sizes.min() >= FIG3["min_community"]
        assert sizes.max() <= FIG3["max_community"]
        assert sizes.sum() == 100


def test_lfr_mean_degree_tracks_target():
    means = [
        lfr(LfrConfig(seed=s, **FIG3))[0].degrees.mean() for s in range(20)
    ]
    assert abs(np.mean(means) - 5) < 0.15 * 5


def test_lfr_realized_mixing_tracks_mu():
    """Averaged over seeds, the cross-community edge fraction follows mu."""
    for mu in (0.05, 0.10, 0.30):
        cfg = dict(FIG3, mu=mu)
        vals = []
        for s in range(50):
            g, part = lfr(LfrConfig(seed=s, **cfg))
            vals.append(mixing_fraction(g, part.labels))
        assert abs(np.mean(vals) - mu) < 0.05


def test_lfr_deterministic():
    cfg = LfrConfig(seed=7, **FIG3)
    (g1, p1), (g2, p2) = lfr(cfg), lfr(cfg)
    assert np.array_equal(g1.to_edge_list(), g2.to_edge_list())
    assert np.array_equal(p1.labels, p2.labels)


def test_lfr_infeasible_internal_degree():
    cfg = LfrConfig(
        n=12, avg_degree=8, max_degree=11, mu=0.05,
        tau1=2.0, tau2=1.1, min_community=3, max_community=4, seed=0,
    )
    with pytest.raises(GenerationError, match="internal partners"):
        lfr(cfg)


def test_lfr_config_validation():
    with pytest.raises(ValueError):
        LfrConfig(n=10, avg_degree=8, max_degree=5, mu=0.1)
    with pytest.raises(ValueError):
        LfrConfig(n=10, avg_degree=3, max_degree=10, mu=0.1)
    with pytest.raises(ValueError):
        LfrConfig(n=10, avg_degree=3, max_degree=5, mu=0.0)
    with pytest.raises(ValueError):
        LfrConfig(n=20, avg_degree=3, max_degree=5, mu=0.1,
                  min_community=8, max_community=6)


def test_mixing_fraction_hand_case():
    g = from_edge_list([(0, 1), (1, 2)], 3)
    assert mixing_fraction(g, np.array([0, 0, 1])) == 0.5
    assert mixing_fraction(from_edge_list([], 3), np.array([0, 0, 1])) == 0.0


# -------------------------------------------------------------- perturb

def test_perturb_identity_and_complete():
    g = complete_graph(5)
    same = perturb(g, PerturbConfig(keep_prob=1.0, add_prob=0.0, seed=0))
    assert np.array_equal(same.to_edge_list(), g.to_edge_list())

    sparse = from_edge_list([(0, 1), (2, 3)], 5)
    full = perturb(sparse, PerturbConfig(keep_prob=1.0, add_prob=1.0, seed=0))
    assert full.m == 10


def test_perturb_sub_and_supergraph():
    g = complete_graph(8)
    for seed in range(5):
        sub = perturb(g, PerturbConfig(keep_prob=0.5, add_prob=0.0, seed=seed))
        sub_edges = {tuple(e) for e in sub.to_edge_list()}
        assert sub_edges <= {tuple(e) for e in g.to_edge_list()}

    thin = from_edge_list([(0, 1), (3, 4)], 6)
    for seed in range(5):
        sup = perturb(thin, PerturbConfig(keep_prob=1.0, add_prob=0.3, seed=seed))
        assert {tuple(e) for e in thin.to_edge_list()} <= {
            tuple(e) for e in sup.to_edge_list()
        }


def test_perturb_edge_count_statistics():
    g = complete_graph(10)
    counts = [
        perturb(g, PerturbConfig(keep_prob=0.8, add_prob=0.0, seed=s)).m
        for s in range(200)
    ]
    sigma = np.sqrt(45 * 0.8 * 0.2 / 200)
    assert abs(np.mean(counts) - 36.0) < 3 * sigma


def test_perturb_deterministic():
    g = complete_graph(6)
    cfg = PerturbConfig(keep_prob=0.7, add_prob=0.1, seed=99)
    assert np.array_equal(perturb(g, cfg).to_edge_list(), perturb(g, cfg).to_edge_list())


def test_perturb_config_validation():
    with pytest.raises(ValueError):
        PerturbConfig(keep_prob=0.0, add_prob=0.0)
    with pytest.raises(ValueError):
        PerturbConfig(keep_prob=0.5, add_prob=1.5)
    PerturbConfig(keep_prob=1.0, add_prob=1.0)


# ------------------------------------------------------------ kNN graph

def test_knn_one_dimensional_example():
    g = knn_graph(np.array([[0.0], [1.0], [10.0]]), k=1, standardize=False)
    assert sorted(tuple(e) for e in g.to_edge_list()) == [(0, 1), (1, 2)]


def test_knn_full_k_is_complete():
    rng = np.random.default_rng(0)
    g = knn_graph(rng.normal(size=(6, 3)), k=5)
    assert g.m == 15


def test_knn_duplicate_points_tie_to_lower_index():
    g = knn_graph(np.array([[0.0], [0.0], [5.0]]), k=1, standardize=False)
    assert sorted(tuple(e) for e in g.to_edge_list()) == [(0, 1), (0, 2)]


def test_knn_constant_feature_is_ignored():
    feats = np.array([[1.0, 2.0], [1.0, 3.0], [1.0, 4.0], [1.0, 10.0]])
    g = knn_graph(feats, k=1)
    assert g.n == 4 and g.m >= 2
    assert np.isfinite(g.degrees).all()


def test_knn_standardization_changes_geometry():
    # raw distances are ruled by the third feature's 1000x scale; z-scored,
    # the two aligned small features outvote it (cost 2 vs 3 per z-step)
    feats = np.array(
        [
            [0.0, 0.0, 0.0],
            [0.0, 0.0, 1000.0],
            [10.0, 10.0, 2.0],
            [10.0, 10.0, 998.0],
        ]
    )
    raw = knn_graph(feats, k=1, standardize=False)
    std = knn_graph(feats, k=1, standardize=True)
    assert sorted(map(tuple, raw.to_edge_list())) == [(0, 2), (1, 3)]
    assert sorted(map(tuple, std.to_edge_list())) == [(0, 1), (2, 3)]


def test_knn_rejects_bad_k():
    feats = np.zeros((4, 2))
    with pytest.raises(ValueError):
        knn_graph(feats, k=4)
    with pytest.raises(ValueError):
        knn_graph(feats, k=0)


# ----------------------------------------------------------- subgraphs

def test_subgraph_connected_for_many_seeds():
    g, _ = sbm(SbmConfig(block_sizes=[15, 15], p_intra=0.4, p_inter=0.05, seed=1))
    for seed in range(100):
        sub, ids = sample_connected_subgraph(g, 10, seed=seed)
        assert sub.n == 10 and ids.size == 10
        assert is_connected(sub)


def test_subgraph_whole_graph():
    g = complete_graph(4)
    sub, ids = sample_connected_subgraph(g, 4, seed=0)
    assert ids.tolist() == [0, 1, 2, 3]
    assert sub.m == g.m


def test_subgraph_single_node():
    g = complete_graph(4)
    sub, _ = sample_connected_subgraph(g, 1, seed=3)
    assert sub.n == 1 and sub.m == 0


def test_subgraph_too_large_errors():
    g = from_edge_list([(0, 1), (2, 3)], 4)
    with pytest.raises(ValueError):
        sample_connected_subgraph(g, 3, seed=0)


def test_subgraph_deterministic():
    g, _ = sbm(SbmConfig(block_sizes=[20], p_intra=0.3, p_inter=0.0, seed=5))
    a = sample_connected_subgraph(g, 8, seed=11)[1]
    b = sample_connected_subgraph(g, 8, seed=11)[1]
    assert np.array_equal(a, b)
