import pytest

from mapwit.src.embedding import (ClosedWalk, EmbeddedGraph, WalkEdge,
                                  shortcut, shortcut_all, trace_faces)
from mapwit.src.errors import EmbeddingError
from mapwit.src.test_utils import (cube_witness, k3_cycle_witness,
                                   k3_star_witness)


def square():
    return EmbeddedGraph.from_rotation(
        10, {0: [1, 3], 1: [0, 2], 2: [1, 3], 3: [0, 2]})


def shared_corners(graph, a, b):
    return [(ca, cb) for ca in graph.vertex_corners(a)
            for cb in graph.vertex_corners(b)
            if graph.corner_face(ca) == graph.corner_face(cb)]


def test_from_rotation():
    graph = square()
    graph.validate()
    assert graph.edge_count() == 4
    assert len(graph.walks()) == 2
    assert len(graph.faces()) == 2
    assert graph.neighbors(0) == [1, 3]
    assert graph.reals() == {0, 1, 2, 3}
    assert graph.next_vertex_id() == 10


def test_add_edge_splits_face():
    graph = square()
    corners = shared_corners(graph, 0, 2)
    assert corners
    results = graph.add_edge(*corners[0])
    assert len(results) == 1
    chorded = results[0]
    chorded.validate()
    assert chorded.edge_count() == 5
    assert len(chorded.faces()) == 3


def test_add_vertex_then_edges():
    graph = EmbeddedGraph(5, [0], {}, {}, {-1: 0})
    graph = graph.add_vertex(1, 0)
    assert graph.faces() == {0: (-2, -1)}
    path = graph.add_edge((0, 0), (1, 0))
    assert len(path) == 1
    path = path[0]
    path.validate()
    assert len(path.faces()) == 1
    with pytest.raises(EmbeddingError):
        path.add_vertex(1, 0)


def test_add_edge_distributes_other_walks():
    graph = square().add_vertex(7, 0)
    corners = [(ca, cb) for ca, cb in shared_corners(graph, 0, 2)
               if graph.corner_face(ca) == 0]
    results = graph.add_edge(*corners[0])
    assert len(results) == 2
    for result in results:
        result.validate()


def test_remove_edge_merges_faces():
    graph = square().remove_edge(0)
    graph.validate()
    assert len(graph.faces()) == 1
    assert graph.edge_count() == 3


def test_remove_vertex():
    star = k3_star_witness().remove_vertex(2)
    star.validate()
    assert star.vertices == {0, 1, 3}
    assert star.degree(3) == 2


def test_mirror_and_keys():
    cycle = k3_cycle_witness()
    assert cycle.mirror().mirror().oriented_key() == cycle.oriented_key()
    assert cycle.mirror().canonical_key() == cycle.canonical_key()
    cube = cube_witness()
    assert cube.mirror().canonical_key() == cube.canonical_key()
    assert cube.canonical_key() != cycle.canonical_key()


def test_keys_ignore_intersection_ids():
    cycle = k3_cycle_witness()
    renamed = cycle.relabel({3: 10, 4: 11, 5: 12})
    assert renamed.canonical_key() == cycle.canonical_key()
    assert renamed.canonical_key(label_all=True) != \
        cycle.canonical_key(label_all=True)


def test_keys_see_real_ids():
    star = k3_star_witness()
    swapped = star.relabel({0: 1, 1: 0})
    assert swapped.canonical_key() == star.canonical_key()
    path = EmbeddedGraph.from_rotation(3, {0: [3], 1: [3, 4], 2: [4],
                                           3: [0, 1], 4: [1, 2]})
    other = path.relabel({0: 1, 1: 0})
    assert other.canonical_key() != path.canonical_key()


def test_homotopic_pairs():
    digon = EmbeddedGraph(10, [0, 1], {0: (0, 1), 1: (0, 1)},
                          {0: (0, 2), 1: (1, 3)}, {0: 0, 1: 1})
    digon.validate()
    assert digon.homotopic_pairs() == [(0, 1)]
    assert square().homotopic_pairs() == []


def test_quadrangulation():
    assert cube_witness().is_quadrangulation()
    assert cube_witness().is_biconnected()
    assert not k3_cycle_witness().is_quadrangulation()
    assert not k3_star_witness().is_biconnected()


def test_bipartite():
    abstract = k3_cycle_witness().bipartite()
    assert abstract.real_count == 3
    assert abstract.intersection_count == 3
    with pytest.raises(EmbeddingError):
        square().bipartite()


def test_validate_rejects_bad_position_system():
    graph = square()
    broken = graph.copy_with(face_of={w: 0 for w in graph.walks()})
    with pytest.raises(EmbeddingError, match="twice"):
        broken.validate()


def test_trace_faces():
    faces = trace_faces(k3_cycle_witness())
    assert len(faces) == 2
    for _, walks in faces:
        assert len(walks) == 1
        assert len(walks[0].vertices) == 6


def test_shortcut():
    walk = ClosedWalk((0, 3, 1, 4), tuple(WalkEdge((d,), 1)
                                          for d in range(4)))
    short = shortcut_all(walk, {0, 1}.__contains__)
    assert short.vertices == (0, 1)
    assert [e.counter for e in short.edges] == [2, 2]
    assert short.edges[0].darts == (0, 1)

    loop = ClosedWalk((0, 3, 0, 4), walk.edges)
    assert shortcut_all(loop, {0}.__contains__) == ClosedWalk((0,), ())

    capped = shortcut_all(walk, {0}.__contains__, cap=3)
    assert capped == ClosedWalk((0,), ())

    with pytest.raises(ValueError):
        shortcut(walk, 7)
    assert shortcut(walk, 3).vertices == (0, 1, 4)
