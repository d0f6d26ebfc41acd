import itertools

import pytest

from mapwit.src.errors import DecompositionError
from mapwit.src.graph import Graph
from mapwit.src.test_utils import (complete_graph, cycle_graph, path_graph,
                                   single_bag_td)
from mapwit.src.tree_decomposition import (FORGET, JOIN, LEAF,
                                           TreeDecomposition, compute_td,
                                           format_td, make_nice, parse_td,
                                           restrict_td)

PATH_TD = "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n"


def grid_graph(rows, columns):
    def index(r, c):
        return r * columns + c
    edges = []
    for r, c in itertools.product(range(rows), range(columns)):
        if r + 1 < rows:
            edges.append((index(r, c), index(r + 1, c)))
        if c + 1 < columns:
            edges.append((index(r, c), index(r, c + 1)))
    return Graph(rows * columns, edges)


def test_parse_td():
    td = parse_td(PATH_TD, path_graph(3))
    assert td.bags == [{0, 1}, {1, 2}]
    assert td.edges == [(0, 1)]
    assert td.width == 1


def test_parse_td_errors():
    with pytest.raises(DecompositionError, match="not covered"):
        parse_td(PATH_TD, complete_graph(3))
    with pytest.raises(DecompositionError, match="Condition \\(ii\\)"):
        parse_td("s td 3 2 3\nb 1 1 2\nb 2 2 3\nb 3 1 3\n1 2\n2 3\n",
                 complete_graph(3))
    with pytest.raises(DecompositionError, match="missing 's td' header"):
        parse_td("c nothing here\n", path_graph(3))
    with pytest.raises(DecompositionError, match="malformed header"):
        parse_td("s td 1 1\n", path_graph(3))
    with pytest.raises(DecompositionError, match="vertex out of range"):
        parse_td("s td 1 2 3\nb 1 1 4\n", path_graph(3))


def test_format_td_round_trip():
    graph = cycle_graph(5)
    td = compute_td(graph)
    again = parse_td(format_td(td), graph)
    assert again.bags == td.bags
    assert sorted(map(sorted, again.edges)) == sorted(map(sorted, td.edges))


def test_make_nice_single_bag():
    graph = complete_graph(3)
    nice = make_nice(single_bag_td(graph))
    nice.validate(graph)
    assert len(nice) == 5
    assert nice.nodes[0].kind == LEAF
    assert nice.nodes[-1].kind == FORGET
    assert nice.root.bag == {0}
    assert nice.width == 2


def test_make_nice_with_join():
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    td = TreeDecomposition([{0, 1}, {0, 2}, {0, 3}], [(0, 1), (0, 2)])
    td.validate(star)
    nice = make_nice(td)
    nice.validate(star)
    assert [n.kind for n in nice.nodes].count(JOIN) == 1
    assert [n.kind for n in nice.nodes].count(LEAF) == 2
    assert nice.width == 1
    nice.to_tree_decomposition().validate(star)


def test_make_nice_empty():
    assert len(make_nice(TreeDecomposition([], []))) == 0


def test_restrict_td():
    td = TreeDecomposition([{0, 1}, {1, 2}, {2, 3}], [(0, 1), (1, 2)])
    restricted = restrict_td(td, {0, 3})
    assert restricted.bags == [{0}, {3}]
    assert len(restricted.edges) == 1
    restricted.validate(Graph([0, 3]))


def test_forest_becomes_tree():
    td = restrict_td(TreeDecomposition([{0}, {1}], []), {0, 1})
    assert len(td.edges) == 1
    make_nice(td).validate(Graph(2))


@pytest.mark.parametrize("graph, width", [
    (cycle_graph(6), 2),
    (complete_graph(5), 4),
    (path_graph(5), 1),
    (Graph(3), 0),
    (grid_graph(3, 3), 3),
])
def test_compute_td(graph, width):
    td = compute_td(graph)
    td.validate(graph)
    assert td.width == width
    make_nice(td).validate(graph)
