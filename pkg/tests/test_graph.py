import numpy as np
import pytest

from walkrank import (
    Graph,
    component_labels,
    dice,
    from_edge_list,
    induced_subgraph,
    is_connected,
    jaccard,
    largest_connected_component,
)


def path3() -> Graph:
    return from_edge_list([(0, 1), (1, 2)], 3)


def test_from_edge_list_builds_sorted_csr():
    g = from_edge_list([(2, 1), (0, 1)], 3)
    assert g.n == 3 and g.m == 2
    assert g.neighbors(1).tolist() == [0, 2]
    assert g.degrees.tolist() == [1, 2, 1]


def test_from_edge_list_dedups_and_drops_self_loops():
    g = from_edge_list([(0, 1), (1, 0), (0, 1), (2, 2)], 3)
    assert g.m == 1
    assert g.neighbors(2).size == 0


def test_from_edge_list_rejects_out_of_range_nodes():
    with pytest.raises(ValueError):
        from_edge_list([(0, 3)], 3)
    with pytest.raises(ValueError):
        from_edge_list([(-1, 0)], 2)


def test_arrays_are_read_only():
    g = path3()
    with pytest.raises(ValueError):
        g.indices[0] = 5


def test_to_edge_list_round_trip():
    edges = [(0, 1), (0, 2), (1, 3), (2, 3)]
    g = from_edge_list(edges, 4)
    out = [tuple(e) for e in g.to_edge_list()]
    assert out == sorted(edges)
    g2 = from_edge_list(g.to_edge_list(), 4)
    assert np.array_equal(g2.indptr, g.indptr)
    assert np.array_equal(g2.indices, g.indices)


def test_jaccard_path_examples():
    # path 0-1-2: N(0)={1}, N(2)={1} identical; N(0) vs N(1) disjoint
    g = path3()
    assert jaccard(g, 0, 2) == 1.0
    assert jaccard(g, 0, 1) == 0.0
    assert jaccard(g, 0, 0) == 1.0


def test_jaccard_empty_union_is_zero():
    g = from_edge_list([(0, 1)], 3)
    assert jaccard(g, 2, 2) == 0.0


def test_jaccard_triangle():
    g = from_edge_list([(0, 1), (1, 2), (0, 2)], 3)
    # N(0)={1,2}, N(1)={0,2}: intersection {2}, union {0,1,2}
    assert jaccard(g, 0, 1) == pytest.approx(1 / 3)
    assert dice(g, 0, 1) == pytest.approx(0.5)


def test_dice_monotone_with_jaccard():
    rng = np.random.default_rng(0)
    for _ in range(20):
        n = 8
        mask = np.triu(rng.random((n, n)) < 0.4, 1)
        g = from_edge_list(np.argwhere(mask), n)
        for u in range(n):
            for v in range(n):
                j, d = jaccard(g, u, v), dice(g, u, v)
                assert d >= j - 1e-15
                if j > 0:
                    assert d == pytest.approx(2 * j / (1 + j))


def test_component_labels_and_connectivity():
    g = from_edge_list([(0, 1), (2, 3), (3, 4)], 6)
    labels = component_labels(g)
    assert labels[0] == labels[1]
    assert labels[2] == labels[3] == labels[4]
    assert len({labels[0], labels[2], labels[5]}) == 3
    assert not is_connected(g)
    assert is_connected(path3())


def test_largest_connected_component_tie_breaks_by_smallest_id():
    # two components of equal size; the one containing node 0 wins
    g = from_edge_list([(0, 1), (2, 3)], 4)
    sub, ids = largest_connected_component(g)
    assert ids.tolist() == [0, 1]
    assert sub.n == 2 and sub.m == 1


def test_induced_subgraph_remaps_edges():
    g = from_edge_list([(0, 1), (1, 2), (2, 3), (0, 3)], 4)
    sub, ids = induced_subgraph(g, [1, 2, 3])
    assert ids.tolist() == [1, 2, 3]
    assert sorted(tuple(e) for e in sub.to_edge_list()) == [(0, 1), (1, 2)]


def test_neighbors_rejects_bad_node():
    g = path3()
    with pytest.raises(ValueError):
        g.neighbors(3)
