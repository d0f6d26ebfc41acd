import itertools

from mapwit.src.graph import Graph
from mapwit.src.tree_decomposition import TreeDecomposition
from mapwit.src.witness import (compactness_violation, make_witness,
                                max_intersection_degree, verify_witness)


def complete_graph(n):
    return Graph(n, itertools.combinations(range(n), 2))


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def single_bag_td(graph):
    return TreeDecomposition([graph.vertices], [])


def k3_star_witness():
    return make_witness(3, range(3), {3: [0, 1, 2]})


def k3_cycle_witness():
    return make_witness(3, range(3), {3: [0, 1], 4: [1, 2], 5: [0, 2]})


def k23_witness():
    return make_witness(3, range(3), {3: [0, 1, 2], 4: [0, 1, 2]})


def edge_witness():
    return make_witness(2, range(2), {2: [0, 1]})


def cube_witness():
    """Hole-free witness of K_4: each intersection vertex misses one real."""
    return make_witness(4, range(4), {4 + i: [v for v in range(4) if v != i]
                                      for i in range(4)})


def check_witness(graph, witness, k=None, hole_free=False):
    """Asserts that `witness` is a compact (hole-free) k-map witness."""
    report = verify_witness(graph, witness, hole_free)
    assert report.is_witness, report.first_failure
    assert report.within_size_bound
    assert compactness_violation(witness) is None, \
        compactness_violation(witness)
    if k is not None:
        assert max_intersection_degree(witness) <= k
    if hole_free:
        assert report.is_biconnected_quadrangulation
