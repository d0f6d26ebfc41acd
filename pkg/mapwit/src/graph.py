"""Simple undirected graphs, bipartite witness graphs and the graph-theoretic
helpers the recognizer is built on."""
import itertools
import logging

import networkx as nx

from mapwit.src.errors import GraphFormatError
from mapwit.src.utils import max_clique_size, sorted_pair

logger = logging.getLogger(__name__)


class Graph:
    """Simple undirected graph with integer vertex labels.

    Graphs read from files have the vertices 0, ..., n - 1; blocks and
    restrictions keep the labels of the graph they were taken from.
    """

    def __init__(self, vertices, edges=()):
        if isinstance(vertices, int):
            assert vertices >= 0
            vertices = range(vertices)
        self.vertices = frozenset(vertices)
        normalized = set()
        for u, v in edges:
            if u == v:
                raise ValueError("Self-loop at vertex %d." % u)
            if u not in self.vertices or v not in self.vertices:
                raise ValueError("Edge (%d, %d) has an unknown endpoint." %
                                 (u, v))
            normalized.add(sorted_pair(u, v))
        self.edges = frozenset(normalized)
        self._adjacency = {v: set() for v in self.vertices}
        for u, v in self.edges:
            self._adjacency[u].add(v)
            self._adjacency[v].add(u)

    def __repr__(self):
        return "Graph(%d vertices, %s)" % (self.vertex_count,
                                            sorted(self.edges))

    def __eq__(self, other):
        return (isinstance(other, Graph) and
                self.vertices == other.vertices and self.edges == other.edges)

    def __hash__(self):
        return hash((self.vertices, self.edges))

    @property
    def vertex_count(self):
        return len(self.vertices)

    def neighbors(self, v):
        return frozenset(self._adjacency[v])

    def degree(self, v):
        return len(self._adjacency[v])

    def has_edge(self, u, v):
        return v in self._adjacency.get(u, ())

    def is_clique(self, vertices):
        return all(self.has_edge(u, v)
                   for u, v in itertools.combinations(vertices, 2))

    def induced_subgraph(self, vertices):
        vertices = frozenset(vertices)
        return Graph(vertices, [(u, v) for u, v in self.edges
                                if u in vertices and v in vertices])

    def to_networkx(self):
        graph = nx.Graph()
        graph.add_nodes_from(sorted(self.vertices))
        graph.add_edges_from(sorted(self.edges))
        return graph

    def is_connected(self):
        return self.vertex_count <= 1 or nx.is_connected(self.to_networkx())

    def is_biconnected(self):
        """Blocks of two adjacent vertices count as biconnected."""
        if self.vertex_count < 2:
            return False
        if self.vertex_count == 2:
            return len(self.edges) == 1
        return nx.is_biconnected(self.to_networkx())


class BipartiteWitnessGraph:
    """Abstract witness: real vertices, intersection vertices and the edges
    between them, without an embedding."""

    def __init__(self, reals, intersections, edges):
        self.reals = frozenset(reals)
        self.intersections = frozenset(intersections)
        assert not (self.reals & self.intersections)
        self.edges = frozenset(edges)
        for real, intersection in self.edges:
            assert real in self.reals, "%r is not a real vertex" % real
            assert intersection in self.intersections, \
                "%r is not an intersection vertex" % intersection

    @property
    def real_count(self):
        return len(self.reals)

    @property
    def intersection_count(self):
        return len(self.intersections)

    @property
    def total(self):
        return self.real_count + self.intersection_count

    def neighborhoods(self):
        """Maps every intersection vertex to its set of real neighbours."""
        result = {u: set() for u in self.intersections}
        for real, intersection in self.edges:
            result[intersection].add(real)
        return {u: frozenset(n) for u, n in result.items()}


def half_square(witness):
    """Graph on the real vertices joining those at distance 2 in `witness`."""
    edges = set()
    for neighborhood in witness.neighborhoods().values():
        edges.update(itertools.combinations(sorted(neighborhood), 2))
    return Graph(witness.reals, edges)


def biconnected_components(graph):
    """Block decomposition of `graph`.

    :param graph: `Graph` to decompose.
    :return: list of (block, cut vertices of `graph` lying in the block),
      ordered by the smallest vertex of the block. Isolated vertices are
      returned as single-vertex blocks.
    """
    nx_graph = graph.to_networkx()
    cut_vertices = set(nx.articulation_points(nx_graph))
    blocks = [frozenset(b) for b in nx.biconnected_components(nx_graph)]
    blocks += [frozenset([v]) for v in graph.vertices if graph.degree(v) == 0]
    blocks.sort(key=lambda b: (min(b), sorted(b)))
    return [(graph.induced_subgraph(block), frozenset(block & cut_vertices))
            for block in blocks]


def is_planar(graph):
    """Tests planarity and returns an embedding when there is one.

    :param graph: `Graph` or a `networkx.MultiGraph` (parallel edges allowed,
      self-loops ignored).
    :return: (is_planar, rotation). For a `Graph`, rotation maps every vertex
      to its neighbours in clockwise order; for a multigraph, to the list of
      (neighbour, key) pairs of its incident edges. Rotation is None for
      non-planar input.
    """
    if isinstance(graph, Graph):
        planar, embedding = nx.check_planarity(graph.to_networkx())
        if not planar:
            return False, None
        return True, {v: list(embedding.neighbors_cw_order(v))
                      if v in embedding else []
                      for v in sorted(graph.vertices)}

    # Parallel edges do not affect planarity once every edge is subdivided.
    subdivided = nx.Graph()
    subdivided.add_nodes_from(('v', v) for v in graph.nodes)
    for u, v, key in graph.edges(keys=True):
        if u == v:
            continue
        middle = ('e', sorted_pair(u, v), key)
        subdivided.add_edge(('v', u), middle)
        subdivided.add_edge(('v', v), middle)
    planar, embedding = nx.check_planarity(subdivided)
    if not planar:
        return False, None
    rotation = {}
    for v in graph.nodes:
        order = []
        if ('v', v) in embedding:
            for middle in embedding.neighbors_cw_order(('v', v)):
                _, (a, b), key = middle
                order.append((b if a == v else a, key))
        rotation[v] = order
    return True, rotation


def enumerate_cliques(graph, min_size, max_size):
    """All cliques (not only maximal ones) with size in [min_size, max_size].

    :return: list of frozensets ordered by size, then by sorted members.
    """
    if not 2 <= min_size <= max_size:
        raise ValueError("Clique sizes must satisfy 2 <= min <= max.")
    result = []
    for clique in nx.enumerate_all_cliques(graph.to_networkx()):
        if len(clique) > max_size:
            break
        if len(clique) >= min_size:
            result.append(frozenset(clique))
    result.sort(key=lambda c: (len(c), sorted(c)))
    return result


def clique_number(graph):
    return max((len(c) for c in nx.find_cliques(graph.to_networkx())),
               default=0)


def violates_clique_bound(graph, k):
    """True iff `graph` has a clique larger than a k-map graph can hold."""
    return k is not None and clique_number(graph) > max_clique_size(k)


def parse_graph(text):
    """Reads a graph in PACE `.gr` format (1-indexed vertices).

    :param text: file content.
    :return: `Graph` on the vertices 0, ..., n - 1.
    """
    vertex_count = None
    declared_edges = 0
    edges = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens or tokens[0] == 'c':
            continue
        if tokens[0] == 'p':
            if vertex_count is not None:
                raise GraphFormatError("duplicate header", line_number, line)
            if len(tokens) != 4 or tokens[1] != 'tw':
                raise GraphFormatError("malformed header", line_number, line)
            try:
                vertex_count, declared_edges = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise GraphFormatError("malformed header", line_number, line)
            if vertex_count < 0 or declared_edges < 0:
                raise GraphFormatError("negative count", line_number, line)
            continue
        if vertex_count is None:
            raise GraphFormatError("edge before header", line_number, line)
        if len(tokens) != 2:
            raise GraphFormatError("expected two vertex ids", line_number,
                                   line)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError("non-integer vertex id", line_number, line)
        if not (1 <= u <= vertex_count and 1 <= v <= vertex_count):
            raise GraphFormatError("vertex id out of range", line_number, line)
        if u == v:
            raise GraphFormatError("self-loop", line_number, line)
        edges.append((u - 1, v - 1))
    if vertex_count is None:
        raise GraphFormatError("missing 'p tw' header")
    if len(edges) != declared_edges:
        logger.warning("Header declares %d edges, found %d edge lines.",
                       declared_edges, len(edges))
    return Graph(vertex_count, edges)


def format_graph(graph):
    """Writes a graph on the vertices 0, ..., n - 1 in PACE `.gr` format."""
    assert graph.vertices == frozenset(range(graph.vertex_count))
    lines = ['p tw %d %d' % (graph.vertex_count, len(graph.edges))]
    lines += ['%d %d' % (u + 1, v + 1) for u, v in sorted(graph.edges)]
    return '\n'.join(lines) + '\n'
