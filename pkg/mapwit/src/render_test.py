import numpy as np

from mapwit.src.render import crossing_pairs, render_svg, tutte_positions
from mapwit.src.test_utils import (cube_witness, k23_witness,
                                   k3_cycle_witness, k3_star_witness)
from mapwit.src.witness import disjoint_union, make_witness


def test_tutte_drawings_are_plane():
    for witness in (cube_witness(), k3_cycle_witness(), k3_star_witness(),
                    k23_witness()):
        positions = tutte_positions(witness)
        assert set(positions) == witness.vertices
        assert crossing_pairs(positions, witness.ends.values()) == []


def test_crossing_pairs():
    positions = {0: (0, 0), 1: (1, 1), 2: (0, 1), 3: (1, 0)}
    assert crossing_pairs(positions, [(0, 1), (2, 3)]) == [((0, 1), (2, 3))]
    assert crossing_pairs(positions, [(0, 2), (1, 3)]) == []


def test_components_side_by_side():
    union = disjoint_union(make_witness(4, [0, 1], {4: [0, 1]}),
                           make_witness(4, [2, 3], {4: [2, 3]}))
    positions = tutte_positions(union)
    assert max(positions[v][0] for v in (0, 1)) < \
        min(positions[v][0] for v in (2, 3))


def test_render_svg():
    svg = render_svg(cube_witness())
    assert svg.startswith('<?xml')
    assert svg.count('<circle') == 4
    assert svg.count('<rect') == 4
    assert svg.count('<line') == 12
    assert '>4</text>' in svg


def test_trees_are_drawn_without_crossings():
    tree = make_witness(6, range(6), {6: [0, 1, 2], 7: [2, 3], 8: [2, 4],
                                      9: [4, 5]})
    positions = tutte_positions(tree)
    assert set(positions) == tree.vertices
    assert crossing_pairs(positions, tree.ends.values()) == []
    points = np.array([positions[v] for v in sorted(tree.vertices)])
    assert len({tuple(np.round(p, 9)) for p in points}) == len(points)


def test_cut_vertices_are_drawn_without_crossings():
    two_squares = make_witness(5, range(5), {5: [0, 1], 6: [1, 2], 7: [0, 2],
                                             8: [0, 3], 9: [3, 4], 10: [0, 4]})
    positions = tutte_positions(two_squares)
    assert crossing_pairs(positions, two_squares.ends.values()) == []
