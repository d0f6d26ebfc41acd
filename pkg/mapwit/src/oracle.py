"""Brute-force recognizer for small graphs.

A graph is a k-map graph iff some set of its cliques of size at most k covers
every edge and the vertex-clique incidence graph is planar; that incidence
graph is then a witness. Graphs with a clique larger than 3k/2 are
rejected before any search. Hole-free maps need a multiset of cliques whose
incidence graph is a biconnected quadrangulation.
"""
import itertools
import logging

import networkx as nx

from mapwit.src.config import DEFAULT_OPTIONS
from mapwit.src.embedding import EmbeddedGraph
from mapwit.src.errors import EmbeddingError, OracleLimitError
from mapwit.src.graph import enumerate_cliques, violates_clique_bound
from mapwit.src.sketch import compute_sketch
from mapwit.src.witness import (check_hole_free, compactify,
                                compactness_violation, make_witness)

logger = logging.getLogger(__name__)


def _check_limit(graph, options):
    if graph.vertex_count > options.oracle_vertex_limit:
        raise OracleLimitError(
            "Oracle handles at most %d vertices, graph has %d." %
            (options.oracle_vertex_limit, graph.vertex_count))


def _candidate_cliques(graph, k):
    largest = graph.vertex_count if k is None else min(k, graph.vertex_count)
    if largest < 2 or not graph.edges:
        return []
    return enumerate_cliques(graph, 2, largest)


def _incidence(graph, cliques):
    incidence = nx.Graph()
    incidence.add_nodes_from(graph.vertices)
    for i, clique in enumerate(cliques):
        incidence.add_edges_from((v, ('c', i)) for v in clique)
    return incidence


def _witness_of(graph, cliques):
    n = max(graph.vertices) + 1
    return make_witness(n, graph.vertices,
                        {n + i: clique for i, clique in enumerate(cliques)})


def brute_force_is_k_map(graph, k, options=DEFAULT_OPTIONS):
    """Decides k-map membership by searching sets of cliques.

    :param graph: `Graph` with at most `options.oracle_vertex_limit`
      vertices.
    :param k: maximal clique size, or None for any.
    :return: (decision, compact witness or None).
    """
    if violates_clique_bound(graph, k):
        return False, None
    _check_limit(graph, options)
    if not graph.edges:
        return True, _witness_of(graph, [])
    cliques = _candidate_cliques(graph, k)
    planar_memo = {}

    def planar(chosen):
        if chosen not in planar_memo:
            planar_memo[chosen] = nx.check_planarity(
                _incidence(graph, [cliques[i] for i in sorted(chosen)]))[0]
        return planar_memo[chosen]

    def search(chosen):
        covered = set()
        for i in chosen:
            covered.update(itertools.combinations(sorted(cliques[i]), 2))
        uncovered = sorted(graph.edges - covered)
        if not uncovered:
            return chosen
        u, v = uncovered[0]
        for i, clique in enumerate(cliques):
            if u in clique and v in clique:
                extended = chosen | {i}
                if planar(extended):
                    found = search(extended)
                    if found is not None:
                        return found
        return None

    found = search(frozenset())
    logger.debug("Oracle tested %d clique sets.", len(planar_memo))
    if found is None:
        return False, None
    return True, compactify(_witness_of(graph, [cliques[i]
                                                for i in sorted(found)]))


def _small_hole_free(graph, k):
    """Hole-free status of graphs with at most two vertices."""
    if graph.vertex_count == 2 and graph.edges and (k is None or k >= 2):
        return True, _witness_of(graph, [graph.vertices])
    return False, None


def brute_force_is_hole_free_k_map(graph, k, options=DEFAULT_OPTIONS):
    """Decides hole-free k-map membership by searching clique multisets.

    A candidate is accepted when its incidence graph is planar, biconnected
    and has exactly 2N - 4 edges for N vertices, which makes every face a
    quadrangle.

    :return: (decision, witness or None).
    """
    if violates_clique_bound(graph, k):
        return False, None
    _check_limit(graph, options)
    n = graph.vertex_count
    if n <= 2:
        return _small_hole_free(graph, k)
    if not graph.is_biconnected():
        return False, None
    cliques = _candidate_cliques(graph, k)
    target = 2 * n - 4

    def accepts(chosen):
        members = [cliques[i] for i in chosen]
        covered = set()
        for clique in members:
            covered.update(itertools.combinations(sorted(clique), 2))
        if covered != graph.edges:
            return False
        incidence = _incidence(graph, members)
        return (incidence.number_of_edges() == 2 * len(incidence) - 4 and
                nx.is_biconnected(incidence))

    def search(start, chosen, excess):
        if excess == target and accepts(chosen):
            return chosen
        if len(chosen) == target:
            return None
        for i in range(start, len(cliques)):
            grown = excess + len(cliques[i]) - 2
            if grown > target:
                continue
            extended = chosen + (i,)
            if not nx.check_planarity(_incidence(
                    graph, [cliques[j] for j in extended]))[0]:
                continue
            found = search(i, extended, grown)
            if found is not None:
                return found
        return None

    found = search(0, (), 0)
    if found is None:
        return False, None
    witness = _witness_of(graph, [cliques[i] for i in found])
    compact = compactify(witness)
    return True, compact if check_hole_free(compact) else witness


def _abstract_compact(members):
    """No clique of size 2 strictly inside another chosen clique."""
    return not any(len(a) == 2 and a < b for a in members for b in members)


def _rotation_systems(incidence):
    """Every rotation system of a simple graph, one cyclic order per vertex
    fixed by its smallest neighbour."""
    vertices = sorted(incidence.nodes)
    choices = []
    for v in vertices:
        neighbors = sorted(incidence.neighbors(v))
        if len(neighbors) <= 2:
            choices.append([neighbors])
        else:
            choices.append([[neighbors[0]] + list(rest) for rest in
                            itertools.permutations(neighbors[1:])])
    for orders in itertools.product(*choices):
        yield dict(zip(vertices, orders))


def enumerate_compact_witnesses(graph, bag, hole_free=False,
                                options=DEFAULT_OPTIONS):
    """Sketch keys of all compact witnesses of a connected graph.

    :param graph: connected `Graph` within the oracle limit.
    :param bag: vertex set the sketches are taken with respect to.
    :return: set of canonical sketch keys.
    """
    _check_limit(graph, options)
    if not graph.is_connected():
        raise ValueError("Witness enumeration needs a connected graph.")
    n = graph.vertex_count
    real_bound = max(graph.vertices) + 1
    if n == 1:
        return {compute_sketch(_witness_of(graph, []), bag, hole_free,
                               options).key}
    cliques = _candidate_cliques(graph, None)
    count_bound = max(1, 5 * n - 10)
    keys = set()
    for size in range(1, count_bound + 1):
        for chosen in itertools.combinations_with_replacement(
                range(len(cliques)), size):
            members = [cliques[i] for i in chosen]
            covered = set()
            for clique in members:
                covered.update(itertools.combinations(sorted(clique), 2))
            if covered != graph.edges or not _abstract_compact(members):
                continue
            labelled = {real_bound + i: c for i, c in enumerate(members)}
            incidence = nx.Graph()
            incidence.add_nodes_from(graph.vertices)
            for u, clique in labelled.items():
                incidence.add_edges_from((u, v) for v in clique)
            if not nx.check_planarity(incidence)[0]:
                continue
            for rotation in _rotation_systems(incidence):
                witness = EmbeddedGraph.from_rotation(real_bound, rotation)
                try:
                    witness.validate()
                except EmbeddingError:
                    continue
                if compactness_violation(witness) is None:
                    keys.add(compute_sketch(witness, bag, hole_free,
                                            options).key)
    return keys
