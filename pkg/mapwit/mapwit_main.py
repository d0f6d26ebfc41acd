from .src.certificate import parse_certificate, write_certificate
from .src.config import DEFAULT_OPTIONS
from .src.dp_engine import recognize
from .src.graph import Graph, format_graph, parse_graph
from .src.oracle import brute_force_is_hole_free_k_map, brute_force_is_k_map
from .src.render import render_svg
from .src.tree_decomposition import compute_td, parse_td
from .src.witness import verify_witness


def is_k_map_graph(graph, k=None, td=None, hole_free=False,
                   options=DEFAULT_OPTIONS):
    """Decides whether a graph is a (hole-free) k-map graph.

    :param graph: `Graph`, or its text in PACE `.gr` format.
    :param k: largest number of nations meeting at a point; None for any.
    :param td: optional tree-decomposition (`TreeDecomposition` or `.td`
      text); computed when omitted.
    :param hole_free: require a map without holes.
    :return: (decision, witness). The witness is an `EmbeddedGraph` whose
      half-square is the graph, or None on no-instances.
    """
    graph = _as_graph(graph)
    result = recognize(graph, _as_td(td, graph), k=k, hole_free=hole_free,
                       options=options)
    return result.decision, result.witness


def minimum_k(graph, td=None, hole_free=False, options=DEFAULT_OPTIONS):
    """Smallest k for which the graph is a (hole-free) k-map graph.

    :return: (k, witness), or (None, None) if the graph is no such graph.
    """
    graph = _as_graph(graph)
    result = recognize(graph, _as_td(td, graph), minimize=True,
                       hole_free=hole_free, options=options)
    return result.k, result.witness


def brute_force(graph, k=None, hole_free=False, options=DEFAULT_OPTIONS):
    """Same decision as `is_k_map_graph`, by exhaustive search over cliques.

    Only for graphs with at most `options.oracle_vertex_limit` vertices.
    """
    graph = _as_graph(graph)
    if hole_free:
        return brute_force_is_hole_free_k_map(graph, k, options)
    return brute_force_is_k_map(graph, k, options)


def witness_to_certificate(graph, witness, k=None, hole_free=False):
    """JSON certificate of a witness, with its verification report."""
    return write_certificate(_as_graph(graph), witness, k, hole_free)


def certificate_to_witness(text):
    return parse_certificate(text)[0]


def is_valid_witness(graph, witness, k=None, hole_free=False):
    """Checks a witness independently of how it was produced.

    :return: True iff the witness is planar and bipartite, has the graph as
      half-square, respects k and, when asked, is a biconnected
      quadrangulation.
    """
    report = verify_witness(_as_graph(graph), witness, hole_free)
    if not report.is_witness:
        return False
    if k is not None and report.max_intersection_degree > k:
        return False
    return not hole_free or report.is_biconnected_quadrangulation


def witness_to_svg(witness):
    return render_svg(witness)


def _as_graph(graph):
    if isinstance(graph, Graph):
        return graph
    return parse_graph(graph)


def _as_td(td, graph):
    if td is None or not isinstance(td, str):
        return td
    return parse_td(td, graph)


__all__ = ['Graph', 'brute_force', 'certificate_to_witness', 'compute_td',
           'format_graph', 'is_k_map_graph', 'is_valid_witness', 'minimum_k',
           'witness_to_certificate', 'witness_to_svg']
