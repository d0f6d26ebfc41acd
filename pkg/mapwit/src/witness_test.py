from mapwit.src.graph import Graph
from mapwit.src.test_utils import (check_witness, complete_graph,
                                   cube_witness, edge_witness, k23_witness,
                                   k3_cycle_witness, k3_star_witness,
                                   path_graph)
from mapwit.src.witness import (check_hole_free, compactify,
                                compactness_violation, disjoint_union,
                                glue_at_vertex, is_compact, make_witness,
                                max_intersection_degree, restrict,
                                single_vertex_witness, size_bound,
                                twin_pairs, verify_witness)


def test_triangle_witnesses():
    triangle = complete_graph(3)
    check_witness(triangle, k3_cycle_witness(), k=2)
    check_witness(triangle, k3_star_witness(), k=3)
    check_witness(triangle, k23_witness(), k=3, hole_free=True)
    assert max_intersection_degree(k3_cycle_witness()) == 2


def test_cube_witness():
    check_witness(complete_graph(4), cube_witness(), k=3, hole_free=True)
    report = verify_witness(complete_graph(4), cube_witness())
    assert report.within_size_bound
    assert report.max_intersection_degree == 3


def test_verify_reports_mismatch():
    path_witness = make_witness(3, range(3), {3: [0, 1], 4: [1, 2]})
    report = verify_witness(complete_graph(3), path_witness)
    assert not report.is_witness
    assert "misses" in report.first_failure
    assert verify_witness(path_graph(3), path_witness).is_witness

    report = verify_witness(complete_graph(3), edge_witness())
    assert not report.is_witness
    assert "differ" in report.first_failure


def test_inessential_vertex():
    witness = make_witness(3, range(3), {3: [0, 1, 2], 4: [0, 1]})
    assert compactness_violation(witness) == 4
    assert is_compact(witness) == (False, 4)
    assert compactify(witness).canonical_key() == \
        k3_star_witness().canonical_key()


def test_twin_pair():
    witness = make_witness(2, range(2), {2: [0, 1], 3: [0, 1]})
    assert compactness_violation(witness) == (2, 3)
    compact = compactify(witness)
    assert compact.intersections() == {2}
    assert compact.canonical_key() == edge_witness().canonical_key()


def test_low_degree_intersection():
    witness = make_witness(2, range(2), {2: [0, 1], 3: [0]})
    assert compactness_violation(witness) == 3
    assert is_compact(compactify(witness)) == (True, None)


def test_check_hole_free():
    assert check_hole_free(edge_witness())
    assert check_hole_free(cube_witness())
    assert check_hole_free(k23_witness())
    assert not check_hole_free(k3_cycle_witness())
    assert not check_hole_free(k3_star_witness())
    assert not check_hole_free(single_vertex_witness(0, 1))


def test_restrict():
    edge = restrict(k23_witness(), {0, 1})
    assert edge.reals() == {0, 1}
    assert edge.canonical_key() == edge_witness().canonical_key()
    assert restrict(cube_witness(), {0, 1, 2}).canonical_key() == \
        k3_star_witness().canonical_key()


def test_glue_at_vertex():
    host = make_witness(3, [0, 1], {3: [0, 1]})
    block = make_witness(3, [1, 2], {3: [1, 2]})
    glued = glue_at_vertex(host, block, 1)
    glued.validate()
    check_witness(path_graph(3), glued, k=2)

    lonely = single_vertex_witness(1, 3)
    assert glue_at_vertex(host, lonely, 1) is host


def test_glue_triangles():
    first = make_witness(5, range(3), {5: [0, 1, 2]})
    second = make_witness(5, [0, 3, 4], {5: [0, 3, 4]})
    glued = glue_at_vertex(first, second, 0)
    glued.validate()
    bowtie = Graph(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])
    check_witness(bowtie, glued, k=3)
    assert not check_hole_free(glued)


def test_disjoint_union():
    host = make_witness(4, [0, 1], {4: [0, 1]})
    other = make_witness(4, [2, 3], {4: [2, 3]})
    union = disjoint_union(host, other)
    union.validate()
    check_witness(Graph(4, [(0, 1), (2, 3)]), union, k=2)
    assert len(union.components()) == 2


def test_size_bound():
    assert size_bound(3) == 8
    assert size_bound(3, hole_free=True) == 5
    assert size_bound(4, hole_free=True) == 8


def test_size_bound_follows_hole_free():
    neighborhoods = {4 + i: [v for v in range(4) if v != i] for i in range(4)}
    neighborhoods[8] = [0, 1]
    padded = make_witness(4, range(4), neighborhoods)
    assert verify_witness(complete_graph(4), padded).within_size_bound
    assert not verify_witness(complete_graph(4), padded,
                              hole_free=True).within_size_bound
    assert verify_witness(complete_graph(4), cube_witness(),
                          hole_free=True).within_size_bound


def test_twin_pairs_skip_marked_vertices():
    witness = make_witness(2, range(2), {2: [0, 1], 3: [0, 1]})
    assert set(twin_pairs(witness)) == {(2, 3)}
    marked = witness.copy_with(marks={3: -3})
    assert marked.intersections() == {2}
    assert twin_pairs(marked) == []
