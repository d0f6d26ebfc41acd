"""Witnesses: embedded bipartite graphs whose half-square is the input graph.

Vertices below `real_bound` are the real vertices (labelled as in the input
graph); all other vertices are intersection vertices.
"""
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from mapwit.src.embedding import HIDDEN, EmbeddedGraph
from mapwit.src.errors import EmbeddingError
from mapwit.src.graph import half_square, is_planar
from mapwit.src.utils import witness_size_bound


@dataclass
class VerificationReport:
    is_witness: bool
    is_compact: bool
    max_intersection_degree: int
    is_biconnected_quadrangulation: bool
    within_size_bound: bool
    first_failure: Optional[str] = None


def make_witness(real_bound, reals, neighborhoods, rotation=None):
    """Builds a witness from the neighbourhoods of its intersection vertices.

    :param real_bound: ids below it are real vertices.
    :param reals: all real vertices (including isolated ones).
    :param neighborhoods: dict intersection id -> iterable of real vertices.
    :param rotation: optional clockwise neighbour lists; computed with a
      planarity test when omitted.
    :return: `EmbeddedGraph`.
    """
    graph = nx.Graph()
    graph.add_nodes_from(reals)
    graph.add_nodes_from(neighborhoods)
    for u, neighbors in neighborhoods.items():
        assert u >= real_bound, "Intersection id %d is too small." % u
        for v in neighbors:
            assert v < real_bound, "Real id %d is too large." % v
            graph.add_edge(v, u)
    if rotation is None:
        planar, embedding = nx.check_planarity(graph)
        if not planar:
            raise EmbeddingError("Witness graph is not planar.")
        rotation = {v: list(embedding.neighbors_cw_order(v))
                    for v in graph.nodes}
    return EmbeddedGraph.from_rotation(real_bound, rotation)


def single_vertex_witness(v, real_bound):
    return EmbeddedGraph(real_bound, [v], {}, {}, {-1 - v: 0})


def neighborhood(witness, u):
    return frozenset(witness.neighbors(u))


def max_intersection_degree(witness):
    return max((witness.degree(u) for u in witness.intersections()),
               default=0)


def size_bound(real_count, hole_free=False):
    return witness_size_bound(real_count, hole_free)


def compactness_violation(witness):
    """First obstruction to compactness, or None.

    :return: an intersection vertex of degree below 2, an inessential
      intersection vertex, or a twin-pair as a sorted tuple.
    """
    neighborhoods = {u: neighborhood(witness, u)
                     for u in sorted(witness.intersections())}
    for u, n in neighborhoods.items():
        if len(n) < 2:
            return u
    for u, n in neighborhoods.items():
        if len(n) == 2 and any(n < m for m in neighborhoods.values()):
            return u
    pairs = twin_pairs(witness)
    return pairs[0] if pairs else None


def twin_pairs(witness):
    """Sorted pairs of degree-2 intersection vertices that lie opposite each
    other on a face bounded by a single walk of four edges."""
    walks = witness.walks()
    intersections = witness.intersections()
    pairs = []
    for face, ws in sorted(witness.faces().items()):
        if witness.face_tags.get(face) == HIDDEN or len(ws) != 1 or \
                len(walks[ws[0]]) != 4:
            continue
        corners = [witness.tail(d) for d in walks[ws[0]]]
        for first in (0, 1):
            u1, u2 = corners[first], corners[first + 2]
            if (u1 != u2 and u1 in intersections and u2 in intersections and
                    witness.degree(u1) == 2 and witness.degree(u2) == 2):
                pairs.append(tuple(sorted((u1, u2))))
    return pairs


def is_compact(witness):
    """:return: (True, None) or (False, offending vertex or twin-pair)."""
    violation = compactness_violation(witness)
    return violation is None, violation


def compactify(witness):
    """Removes low-degree and inessential intersection vertices and one
    member (the larger id) of every twin-pair, until none is left."""
    while True:
        violation = compactness_violation(witness)
        if violation is None:
            return witness
        if isinstance(violation, tuple):
            violation = violation[1]
        witness = witness.remove_vertex(violation)


def check_hole_free(witness):
    """True iff the witness is a biconnected quadrangulation.

    The path a-u-b counts as hole-free: it is the witness of a single edge,
    whose map covers the sphere with two nations.
    """
    reals = witness.reals()
    if len(reals) == 2 and len(witness.intersections()) == 1:
        return witness.edge_count() == 2
    if len(reals) < 3:
        return False
    return witness.is_biconnected() and witness.is_quadrangulation()


def restrict(witness, keep_reals):
    """Witness of the subgraph induced by `keep_reals`."""
    keep_reals = frozenset(keep_reals)
    assert keep_reals <= witness.reals()
    for v in sorted(witness.reals() - keep_reals):
        witness = witness.remove_vertex(v)
    return compactify(witness)


def verify_witness(graph, witness, hole_free=False):
    """Checks that `witness` is a planar witness of `graph`.

    :param graph: `Graph`.
    :param witness: `EmbeddedGraph`.
    :param hole_free: check the tighter size bound of hole-free witnesses.
    :return: `VerificationReport`; failures are reported, never raised.
    """
    failure = None
    try:
        witness.validate()
        abstract = witness.bipartite()
    except EmbeddingError as error:
        failure = str(error)
    if failure is None:
        pairs = [frozenset(ends) for ends in witness.ends.values()]
        if len(set(pairs)) != len(pairs):
            failure = "Witness has parallel edges."
        elif witness.reals() != graph.vertices:
            failure = "Real vertices %s differ from graph vertices %s." % (
                sorted(witness.reals()), sorted(graph.vertices))
        else:
            square = half_square(abstract)
            missing = sorted(graph.edges - square.edges)
            extra = sorted(square.edges - graph.edges)
            if missing or extra:
                failure = "Half-square misses %s and adds %s." % (missing,
                                                                   extra)
    valid = failure is None
    real_count = len(witness.reals())
    return VerificationReport(
        is_witness=valid,
        is_compact=valid and compactness_violation(witness) is None,
        max_intersection_degree=max_intersection_degree(witness),
        is_biconnected_quadrangulation=valid and check_hole_free(witness),
        within_size_bound=(real_count < 3 or len(witness.vertices) <=
                           size_bound(real_count, hole_free)),
        first_failure=failure)


def _fresh_copy(host, other):
    """`other` with intersection ids, edge ids and face ids moved past
    those of `host`."""
    start = host.next_vertex_id()
    mapping = {u: start + i
               for i, u in enumerate(sorted(other.intersections()))}
    other = other.relabel(mapping)
    other = other.shifted(max(host.ends, default=-1) + 1)
    return other.with_faces_renumbered(max(host.face_of.values(),
                                           default=-1) + 1)


def glue_at_vertex(host, block, cut_vertex):
    """Combines two witnesses sharing only the real vertex `cut_vertex`.

    The block is drawn inside the face of `host` at the corner of
    `cut_vertex` just before its first dart.
    """
    assert host.reals() & block.reals() == {cut_vertex}
    if not block.rotation[cut_vertex]:
        return host
    block = _fresh_copy(host, block)
    rotation = dict(host.rotation)
    rotation.update(block.rotation)
    rotation[cut_vertex] = host.rotation[cut_vertex] + \
        block.rotation[cut_vertex]
    merged = EmbeddedGraph(host.real_bound, host.vertices | block.vertices,
                           {**host.ends, **block.ends}, rotation, {})
    host_walk = host.corner_walk(cut_vertex, 0)
    block_walk = block.corner_walk(cut_vertex, 0)
    host_face = host.face_of[host_walk]
    face_of = {}
    for w, darts in merged.walks().items():
        if w != host_walk and host.walks().get(w) == darts:
            face_of[w] = host.face_of[w]
        elif w != block_walk and block.walks().get(w) == darts:
            face_of[w] = block.face_of[w]
        else:
            face_of[w] = host_face
    return merged.copy_with(face_of=face_of)


def disjoint_union(host, other):
    """Draws `other` inside the face of `host` with the smallest id."""
    if not host.vertices:
        return other
    assert not host.reals() & other.reals()
    other = _fresh_copy(host, other)
    face_of = dict(host.face_of)
    face_of.update(other.face_of)
    face_of[min(other.face_of)] = min(host.faces())
    return EmbeddedGraph(host.real_bound, host.vertices | other.vertices,
                         {**host.ends, **other.ends},
                         {**host.rotation, **other.rotation}, face_of)
