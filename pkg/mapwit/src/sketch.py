"""Sketches: what the rest of the graph can still see of a partial witness.

The sketch of a witness with respect to a bag keeps the anchors (bag reals
and intersection vertices whose neighbours all lie in the bag) and the faces
with at least two anchors on their boundary. Non-anchor vertices are
shortcut out of the boundary walks of those active faces.

`reduce_state` keeps a little more than the sketch: an embedded graph with
the same active faces, small enough to be carried through the dynamic
programme in place of the witness.
"""
import json
import logging
from collections import defaultdict, namedtuple

from mapwit.src.config import DEFAULT_OPTIONS
from mapwit.src.embedding import (HIDDEN, EmbeddedGraph, isolated_walk_id,
                                  reverse_dart, shortcut_all,
                                  walk_from_darts)

logger = logging.getLogger(__name__)

PIN_MARK = -2
PATH_MARK = -3
BRANCH_MARK = -4

ActiveBoundary = namedtuple('ActiveBoundary', ['face', 'walks'])
ActiveBoundary.__doc__ = """Boundary of an active face after shortcutting:
`walks` is a tuple of (witness walk id, `ClosedWalk`) pairs."""


def anchors(witness, bag):
    bag = frozenset(bag)
    result = {v for v in witness.reals() if v in bag}
    for u in witness.intersections():
        neighbors = witness.neighbors(u)
        if neighbors and all(v in bag for v in neighbors):
            result.add(u)
    return frozenset(result)


def active_faces(witness, bag, anchor_set=None):
    """Ids of the faces with two or more anchors on their boundary.

    A witness made of one anchor vertex has its only face active. Faces
    tagged `HIDDEN` are never active.
    """
    if anchor_set is None:
        anchor_set = anchors(witness, bag)
    faces = [face for face in sorted(witness.faces())
             if witness.face_tags.get(face) != HIDDEN]
    if len(witness.vertices) == 1:
        return faces if witness.vertices <= anchor_set else []
    return [face for face in faces
            if len(witness.face_vertices(face) & anchor_set) >= 2]


def active_boundaries(witness, bag, options=DEFAULT_OPTIONS):
    anchor_set = anchors(witness, bag)
    result = []
    for face in active_faces(witness, bag, anchor_set):
        walks = []
        for w in witness.faces()[face]:
            walk = shortcut_all(walk_from_darts(witness, w),
                                anchor_set.__contains__, options.counter_cap)
            if walk.vertices:
                walks.append((w, walk))
            for i, edge in enumerate(walk.edges):
                ends = (walk.vertices[i],
                        walk.vertices[(i + 1) % len(walk.vertices)])
                assert all(witness.is_real(v) for v in ends) or \
                    len(edge.darts) == 1, \
                    "Shortcut edge at an intersection anchor."
        result.append(ActiveBoundary(face, tuple(walks)))
    return result


def complete_boundaries_ok(witness, bag):
    """True iff every face that is no longer active is bounded by a single
    walk of four edges, as every face of a quadrangulation is.

    Faces tagged `HIDDEN` passed this check when they retired. A dart label
    counts as that many edges.
    """
    active = set(active_faces(witness, bag))
    for face, ws in witness.faces().items():
        if face in active or witness.face_tags.get(face) == HIDDEN:
            continue
        if len(ws) != 1 or walk_length(witness, ws[0]) != 4:
            return False
    return True


def walk_length(witness, walk_id):
    return sum(witness.dart_labels.get(d, 1)
               for d in witness.walks()[walk_id])


def _is_nonextensible(boundary):
    if len(boundary.walks) != 1:
        return False
    _, walk = boundary.walks[0]
    return (len(walk.vertices) == 2 and len(walk.edges) == 2 and
            walk.vertices[0] != walk.vertices[1])


def _dedup_boundaries(boundaries, hole_free):
    seen = set()
    result = []
    for boundary in boundaries:
        if _is_nonextensible(boundary):
            _, walk = boundary.walks[0]
            signature = (frozenset(walk.vertices),
                         tuple(sorted(e.counter for e in walk.edges))
                         if hole_free else ())
            if signature in seen:
                continue
            seen.add(signature)
        result.append(boundary)
    return result


class Sketch:
    """Sketch of `witness` with respect to `bag`.

    `graph` is an `EmbeddedGraph` on the anchors that lie on active
    boundaries; its active faces carry the tag 1 and, in hole-free mode, each
    dart traversed by an active boundary carries the counter of its walk
    edge. A boundary walk that shrinks to a single non-isolated anchor is
    kept as a pendant pin vertex marked `PIN_MARK`. Bag vertices missing from
    every active boundary are listed in `dormant`.
    """

    def __init__(self, witness, bag, hole_free, boundaries):
        self.witness = witness
        self.bag = frozenset(bag)
        self.hole_free = hole_free
        self.boundaries = tuple(boundaries)
        self.graph = _sketch_graph(witness, self.boundaries, hole_free)
        self.dormant = frozenset(v for v in self.bag
                                 if v not in self.graph.vertices)
        self._key = None

    def __repr__(self):
        return "Sketch(bag=%s, %r, dormant=%s)" % (
            sorted(self.bag), self.graph, sorted(self.dormant))

    @property
    def key(self):
        if self._key is None:
            self._key = self.graph.canonical_key() + b'|' + \
                json.dumps(sorted(self.dormant)).encode('ascii')
        return self._key

    def anchor_vertices(self):
        return frozenset(v for v in self.graph.vertices
                         if v not in self.graph.marks)

    @property
    def vertex_count(self):
        return len(self.anchor_vertices())


def compute_sketch(witness, bag, hole_free=False, options=DEFAULT_OPTIONS):
    """Sketch of a compact partial witness with respect to a bag.

    :param witness: compact witness of the graph induced by the vertices
      introduced so far.
    :param bag: current bag.
    :param hole_free: track edge counters.
    :return: `Sketch`.
    """
    boundaries = _dedup_boundaries(active_boundaries(witness, bag, options),
                                   hole_free)
    sketch = Sketch(witness, bag, hole_free, boundaries)
    bound = options.sketch_bound_factor * max(1, len(sketch.bag))
    if sketch.vertex_count > bound:
        logger.warning("Sketch with %d vertices exceeds the soft bound %d.",
                       sketch.vertex_count, bound)
    return sketch


def dedup_nonextensible(sketch):
    """Keeps one boundary made of two homotopic parallel edges per pair of
    end-vertices (per counter signature in hole-free mode)."""
    return Sketch(sketch.witness, sketch.bag, sketch.hole_free,
                  _dedup_boundaries(sketch.boundaries, sketch.hole_free))


def _sketch_graph(witness, boundaries, hole_free):
    ends = {}
    labels = {}
    marks = {}
    by_path = {}
    end_entries = {}
    positions = defaultdict(list)
    vertices = set()
    face_parts = []
    next_pin = witness.next_vertex_id()

    for boundary in boundaries:
        references = []
        for walk_id, walk in boundary.walks:
            vertices.update(walk.vertices)
            if not walk.edges:
                v = walk.vertices[0]
                if not witness.rotation[v]:
                    references.append(isolated_walk_id(v))
                    continue
                gap = min(witness.position(d)
                          for d in witness.walks()[walk_id]
                          if witness.tail(d) == v)
                e = len(ends)
                ends[e] = (v, next_pin)
                marks[next_pin] = PIN_MARK
                positions[v].append([(gap, -2), 2 * e])
                positions[next_pin].append([(0, 0), 2 * e + 1])
                vertices.add(next_pin)
                next_pin += 1
                references.append(2 * e)
                continue
            for i, edge in enumerate(walk.edges):
                x = walk.vertices[i]
                y = walk.vertices[(i + 1) % len(walk.vertices)]
                reverse = tuple(reverse_dart(d) for d in reversed(edge.darts))
                if reverse in by_path:
                    e = by_path[reverse]
                    dart = 2 * e + 1
                    for entry in end_entries[e]:
                        entry[0] = (entry[0][0], 0)
                else:
                    e = len(ends)
                    ends[e] = (x, y)
                    by_path[edge.darts] = e
                    dart = 2 * e
                    start = [(witness.position(edge.darts[0]), -1), 2 * e]
                    stop = [(witness.position(reverse_dart(edge.darts[-1])),
                             1), 2 * e + 1]
                    positions[x].append(start)
                    positions[y].append(stop)
                    end_entries[e] = (start, stop)
                if hole_free:
                    labels[dart] = edge.counter
                if i == 0:
                    references.append(dart)
        face_parts.append((boundary.face, references))

    rotation = {v: tuple(d for _, d in sorted(positions[v]))
                for v in vertices}
    graph = EmbeddedGraph(witness.real_bound, vertices, ends, rotation, {},
                          dart_labels=labels, marks=marks)
    walks = graph.walks()

    # Removed self-loops may glue two active boundaries into one walk.
    parent = {}

    def find(face):
        while parent.get(face, face) != face:
            face = parent[face]
        return face

    owner = {}
    for face, references in face_parts:
        for reference in references:
            walk = (reference if reference < 0
                    else graph.walk_of_dart(reference))
            if walk in owner:
                a, b = find(owner[walk]), find(face)
                if a != b:
                    parent[max(a, b)] = min(a, b)
            else:
                owner[walk] = face
    face_of = {w: find(f) for w, f in owner.items()}
    face_tags = {f: 1 for f in face_of.values()}
    next_face = max(list(witness.face_of.values()) + [-1]) + 1
    for w in sorted(walks):
        if w not in face_of:
            face_of[w] = next_face
            next_face += 1
    return graph.copy_with(face_of=face_of, face_tags=face_tags)


def reduce_state(witness, bag, hole_free=False, options=DEFAULT_OPTIONS):
    """Small embedded graph with the same anchors and active faces as
    `witness`, on which every later transition behaves as on `witness`.

    Faces that are not active are tagged `HIDDEN`, and edges with a hidden
    face on both sides are removed. Non-anchor vertices left isolated or
    pendant are removed, and so are components without anchors. Each
    maximal path of degree-2 non-anchor vertices becomes a single vertex
    marked `PATH_MARK` (two when the path is closed). Remaining non-anchor
    intersection vertices are marked `BRANCH_MARK`. In hole-free mode the
    dart labels keep the number of witness edges each boundary walk has
    lost, so walk lengths are unchanged up to `options.counter_cap`.
    """
    bag = frozenset(bag)
    anchor_set = anchors(witness, bag)
    active = set(active_faces(witness, bag, anchor_set))
    graph = witness.with_face_tags(
        {f: HIDDEN for f in witness.faces() if f not in active})
    for e in sorted(graph.ends):
        if _is_hidden(graph, 2 * e) and _is_hidden(graph, 2 * e + 1):
            graph = graph.remove_edge(e)
    graph = _prune(graph, anchor_set, hole_free, options.counter_cap)
    for component in graph.components():
        if not component & anchor_set:
            for v in sorted(component):
                graph = graph.remove_vertex(v)
    graph = _suppress_paths(graph, anchor_set, hole_free,
                            options.counter_cap)
    marks = dict(graph.marks)
    for v in graph.intersections():
        if v not in anchor_set:
            marks[v] = BRANCH_MARK
    return graph.copy_with(marks=marks)


def _is_hidden(graph, dart):
    return graph.face_tags.get(graph.face_of[graph.walk_of_dart(dart)]) == \
        HIDDEN


def _prune(graph, anchor_set, hole_free, cap):
    """Removes isolated non-anchors and pendant non-anchors whose neighbour
    has other edges, until none is left."""
    while True:
        leaf = next((v for v in sorted(graph.vertices)
                     if v not in anchor_set and graph.degree(v) == 0), None)
        if leaf is not None:
            graph = graph.remove_vertex(leaf)
            continue
        leaf = next((v for v in sorted(graph.vertices)
                     if v not in anchor_set and graph.degree(v) == 1 and
                     graph.degree(graph.neighbors(v)[0]) > 1), None)
        if leaf is None:
            return graph
        out = graph.rotation[leaf][0]
        following = graph.next_dart(out)
        lost = graph.dart_labels.get(out, 1) + \
            graph.dart_labels.get(reverse_dart(out), 1)
        graph = graph.remove_vertex(leaf)
        if hole_free:
            labels = dict(graph.dart_labels)
            labels[following] = min(cap, labels.get(following, 1) + lost)
            graph = graph.copy_with(dart_labels=labels)


def _suppress_paths(graph, anchor_set, hole_free, cap):
    def inner(v):
        return v not in anchor_set and graph.degree(v) == 2

    paths = []
    taken = set()
    for v in sorted(graph.vertices):
        if inner(v):
            continue
        for start in graph.rotation[v]:
            if start in taken or not inner(graph.head(start)):
                continue
            darts = [start]
            while inner(graph.head(darts[-1])):
                back = reverse_dart(darts[-1])
                darts.append(next(d for d in graph.rotation[graph.head(
                    darts[-1])] if d != back))
            taken.update((start, reverse_dart(darts[-1])))
            paths.append(darts)
    if not paths:
        return graph

    dropped = {d >> 1 for darts in paths for d in darts}
    interior = {graph.head(d) for darts in paths for d in darts[:-1]}
    ends = {e: pair for e, pair in graph.ends.items() if e not in dropped}
    rotation = {v: list(r) for v, r in graph.rotation.items()
                if v not in interior}
    labels = {d: l for d, l in graph.dart_labels.items()
              if d >> 1 not in dropped}
    marks = {v: m for v, m in graph.marks.items() if v not in interior}
    source = {}
    next_edge = max(graph.ends) + 1
    next_vertex = graph.next_vertex_id()
    for darts in paths:
        first, last = graph.tail(darts[0]), graph.head(darts[-1])
        middle = list(range(next_vertex, next_vertex + (2 if first == last
                                                         else 1)))
        next_vertex += len(middle)
        stops = [first] + middle + [last]
        new = []
        for a, b in zip(stops, stops[1:]):
            ends[next_edge] = (a, b)
            new.append(2 * next_edge)
            source[2 * next_edge] = darts[0]
            source[2 * next_edge + 1] = reverse_dart(darts[-1])
            next_edge += 1
        rotation[first][rotation[first].index(darts[0])] = new[0]
        rotation[last][rotation[last].index(reverse_dart(darts[-1]))] = \
            reverse_dart(new[-1])
        for i, h in enumerate(middle):
            rotation[h] = [reverse_dart(new[i]), new[i + 1]]
            marks[h] = PATH_MARK
        if hole_free:
            forward = sum(graph.dart_labels.get(d, 1) for d in darts)
            backward = sum(graph.dart_labels.get(reverse_dart(d), 1)
                           for d in darts)
            for d in new:
                labels[d] = 0
                labels[reverse_dart(d)] = 0
            labels[new[0]] = min(cap, forward)
            labels[reverse_dart(new[-1])] = min(cap, backward)

    vertices = (graph.vertices - interior) | set(rotation)
    draft = EmbeddedGraph(graph.real_bound, vertices, ends, rotation, {},
                          dart_labels=labels, marks=marks)
    face_of = {}
    for w, darts in draft.walks().items():
        if w < 0:
            face_of[w] = graph.face_of[w]
        else:
            face_of[w] = graph.face_of[graph.walk_of_dart(
                source.get(darts[0], darts[0]))]
    return draft.copy_with(face_of=face_of, face_tags=graph.face_tags)
