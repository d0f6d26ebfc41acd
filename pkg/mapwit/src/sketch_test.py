from mapwit.src.embedding import HIDDEN
from mapwit.src.sketch import (PATH_MARK, PIN_MARK, active_faces, anchors,
                               complete_boundaries_ok, compute_sketch,
                               dedup_nonextensible, reduce_state,
                               walk_length)
from mapwit.src.test_utils import (cube_witness, edge_witness, k23_witness,
                                   k3_cycle_witness, k3_star_witness)
from mapwit.src.witness import make_witness, single_vertex_witness


def test_anchors():
    assert anchors(k3_star_witness(), {0, 1}) == {0, 1}
    assert anchors(k3_star_witness(), {0, 1, 2}) == {0, 1, 2, 3}
    assert anchors(k3_cycle_witness(), {0, 1}) == {0, 1, 3}
    assert anchors(cube_witness(), {0, 1, 2}) == {0, 1, 2, 7}


def test_active_faces():
    star = k3_star_witness()
    assert active_faces(star, {0, 1}) == sorted(star.faces())
    assert active_faces(star, {0}) == []
    k23 = k23_witness()
    assert len(k23.faces()) == 3
    assert len(active_faces(k23, {0, 1})) == 1
    assert len(active_faces(k23, {0, 1, 2})) == 3
    lonely = single_vertex_witness(0, 1)
    assert active_faces(lonely, {0}) == [0]


def test_sketch_sizes():
    assert compute_sketch(k3_star_witness(), {0, 1}).vertex_count == 2
    assert compute_sketch(k23_witness(), {0, 1}).vertex_count == 2
    assert compute_sketch(k3_cycle_witness(), {0, 1}).vertex_count == 3
    assert compute_sketch(cube_witness(), range(4)).vertex_count == 8


def test_counters_separate_sketches():
    star = k3_star_witness()
    k23 = k23_witness()
    cycle = k3_cycle_witness()
    assert compute_sketch(star, {0, 1}).key == compute_sketch(k23, {0, 1}).key
    assert compute_sketch(star, {0, 1}, hole_free=True).key != \
        compute_sketch(k23, {0, 1}, hole_free=True).key
    assert compute_sketch(cycle, {0, 1}).key != \
        compute_sketch(star, {0, 1}).key


def test_sketch_keys_differ_by_bag():
    star = k3_star_witness()
    assert compute_sketch(star, {0, 1}).key != \
        compute_sketch(star, {0, 2}).key
    assert compute_sketch(star, {0, 1, 2}).key != \
        compute_sketch(k3_cycle_witness(), {0, 1, 2}).key


def test_dormant():
    sketch = compute_sketch(edge_witness(), {0})
    assert sketch.dormant == {0}
    assert sketch.vertex_count == 0
    assert compute_sketch(edge_witness(), {0, 1}).dormant == set()


def test_single_vertex():
    sketch = compute_sketch(single_vertex_witness(0, 1), {0})
    assert sketch.vertex_count == 1
    assert not sketch.dormant
    assert PIN_MARK not in sketch.graph.marks.values()


def test_complete_boundaries():
    assert complete_boundaries_ok(k23_witness(), {0, 1})
    assert complete_boundaries_ok(cube_witness(), {0, 1})
    assert complete_boundaries_ok(k3_star_witness(), {0, 1})
    assert not complete_boundaries_ok(k3_cycle_witness(), {0})


def test_dedup_keeps_sketch():
    sketch = compute_sketch(k23_witness(), {0, 1}, hole_free=True)
    assert dedup_nonextensible(sketch).key == sketch.key


def path_witness():
    return make_witness(3, range(3), {3: [0, 1], 4: [1, 2]})


def test_reduce_hides_retired_faces():
    reduced = reduce_state(k3_cycle_witness(), {0})
    assert reduced.vertices == {0}
    assert active_faces(reduced, {0}) == []
    assert set(reduced.face_tags.values()) == {HIDDEN}
    assert compute_sketch(reduced, {0}).key == \
        compute_sketch(k3_cycle_witness(), {0}).key


def test_reduce_suppresses_paths():
    cycle = k3_cycle_witness()
    reduced = reduce_state(cycle, {0, 1})
    assert len(reduced.vertices) == 4
    assert reduced.intersections() == {3}
    assert list(reduced.marks.values()) == [PATH_MARK]
    assert compute_sketch(reduced, {0, 1}).key == \
        compute_sketch(cycle, {0, 1}).key


def test_reduce_keeps_walk_lengths():
    path = path_witness()
    reduced = reduce_state(path, {0, 2}, hole_free=True)
    assert len(reduced.vertices) == 3
    walk, = reduced.walks()
    assert walk_length(reduced, walk) == 8
    assert compute_sketch(reduced, {0, 2}, hole_free=True).key == \
        compute_sketch(path, {0, 2}, hole_free=True).key
    assert complete_boundaries_ok(reduce_state(path, {0, 2}), {0, 2})


def test_reduce_keeps_anchors():
    cube = cube_witness()
    assert reduce_state(cube, range(4)).canonical_key() == \
        cube.canonical_key()
    reduced = reduce_state(cube, {0, 1})
    assert anchors(reduced, {0, 1}) == anchors(cube, {0, 1})
