"""Combinatorial embeddings on the sphere.

An embedded graph is a rotation system over darts plus a position system.
Edge ``e`` owns the darts ``2 * e`` (leaving ``ends[e][0]``) and ``2 * e + 1``
(leaving ``ends[e][1]``). The rotation of a vertex is the cyclic order of the
darts leaving it. The boundary walks of one component are the orbits of
`EmbeddedGraph.next_dart`; the position system maps every walk to the face
of the whole drawing it bounds.

Walk ids are the smallest dart of an orbit, or ``-1 - v`` for an isolated
vertex ``v``. The gap ``g`` at a vertex is the angle just before
``rotation[v][g]``; it lies on the walk of that dart.
"""
import itertools
import json
from collections import deque, namedtuple

import networkx as nx

from mapwit.src.errors import EmbeddingError
from mapwit.src.graph import BipartiteWitnessGraph

COUNTER_CAP = 5

# Face tags.
ACTIVE = 1
HIDDEN = 2


def reverse_dart(dart):
    return dart ^ 1


def isolated_walk_id(v):
    return -1 - v


class EmbeddedGraph:
    """Embedded multigraph whose vertices below `real_bound` are real.

    Instances are treated as immutable: every modifying operation returns
    new instances. `face_tags` marks faces (e.g. as active) and is inherited
    by both sides when a face splits; `dart_labels` attaches an integer to a
    dart (sketch counters); `marks` labels special non-real vertices.
    """

    def __init__(self, real_bound, vertices, ends, rotation, face_of,
                 face_tags=None, dart_labels=None, marks=None):
        self.real_bound = real_bound
        self.vertices = frozenset(vertices)
        self.ends = dict(ends)
        self.rotation = {v: tuple(rotation.get(v, ())) for v in self.vertices}
        self.face_of = dict(face_of)
        self.face_tags = dict(face_tags or {})
        self.dart_labels = dict(dart_labels or {})
        self.marks = dict(marks or {})
        self._position = None
        self._walks = None
        self._walk_of_dart = None

    def __repr__(self):
        return "EmbeddedGraph(rotation=%s, faces=%s)" % (
            {v: [self.head(d) for d in r]
             for v, r in sorted(self.rotation.items())},
            sorted(self.faces().items()))

    @staticmethod
    def from_rotation(real_bound, rotation, face_of=None):
        """Builds an embedded simple graph from clockwise neighbour lists.

        Without `face_of`, every component other than the one holding the
        smallest vertex is placed in the first face of that component.
        """
        ends = {}
        dart_of = {}
        for v in sorted(rotation):
            for w in rotation[v]:
                if (v, w) in dart_of:
                    continue
                e = len(ends)
                ends[e] = (v, w)
                dart_of[(v, w)] = 2 * e
                dart_of[(w, v)] = 2 * e + 1
        darts = {v: tuple(dart_of[(v, w)] for w in rotation[v])
                 for v in rotation}
        draft = EmbeddedGraph(real_bound, rotation.keys(), ends, darts, {})
        if face_of is None:
            face_of = draft.default_positions()
        return EmbeddedGraph(real_bound, rotation.keys(), ends, darts,
                             face_of)

    def default_positions(self):
        """Position system that gives each walk of the first component its
        own face and puts one walk of every other component into the first
        face."""
        walks = self.walks()
        components = self.components()
        face_of = {}
        if not components:
            return face_of
        first = components[0]
        for w in sorted(walks):
            if self._walk_vertex(w) in first:
                face_of[w] = len(face_of)
        host = min(face_of.values())
        for component in components[1:]:
            own = [w for w in sorted(walks)
                   if self._walk_vertex(w) in component]
            face_of[own[0]] = host
            for w in own[1:]:
                face_of[w] = max(face_of.values()) + 1
        return face_of

    def _walk_vertex(self, walk_id):
        if walk_id < 0:
            return isolated_walk_id(walk_id)
        return self.tail(walk_id)

    def copy_with(self, **changes):
        fields = dict(real_bound=self.real_bound, vertices=self.vertices,
                      ends=self.ends, rotation=self.rotation,
                      face_of=self.face_of, face_tags=self.face_tags,
                      dart_labels=self.dart_labels, marks=self.marks)
        fields.update(changes)
        return EmbeddedGraph(**fields)

    def is_real(self, v):
        return v < self.real_bound

    def reals(self):
        return frozenset(v for v in self.vertices if self.is_real(v))

    def intersections(self):
        """Non-real vertices that carry no mark."""
        return frozenset(v for v in self.vertices
                         if not self.is_real(v) and v not in self.marks)

    def tail(self, dart):
        return self.ends[dart >> 1][dart & 1]

    def head(self, dart):
        return self.ends[dart >> 1][1 - (dart & 1)]

    def darts(self):
        return sorted(d for r in self.rotation.values() for d in r)

    def position(self, dart):
        if self._position is None:
            self._position = {d: i for r in self.rotation.values()
                              for i, d in enumerate(r)}
        return self._position[dart]

    def next_dart(self, dart):
        """Successor of `dart` on its boundary walk."""
        rotation = self.rotation[self.head(dart)]
        i = self.position(reverse_dart(dart))
        return rotation[(i + 1) % len(rotation)]

    def walks(self):
        """Maps walk ids to the darts of the walk, starting at the smallest."""
        if self._walks is None:
            walks = {}
            walk_of_dart = {}
            for v in self.vertices:
                if not self.rotation[v]:
                    walks[isolated_walk_id(v)] = ()
            for start in self.darts():
                if start in walk_of_dart:
                    continue
                orbit = []
                dart = start
                while dart not in walk_of_dart:
                    walk_of_dart[dart] = start
                    orbit.append(dart)
                    dart = self.next_dart(dart)
                if dart != start:
                    raise EmbeddingError(
                        "Dart %d does not close a boundary walk." % start)
                walks[start] = tuple(orbit)
            self._walks = walks
            self._walk_of_dart = walk_of_dart
        return self._walks

    def walk_of_dart(self, dart):
        self.walks()
        return self._walk_of_dart[dart]

    def corner_walk(self, v, gap):
        rotation = self.rotation[v]
        if not rotation:
            return isolated_walk_id(v)
        return self.walk_of_dart(rotation[gap % len(rotation)])

    def corner_face(self, corner):
        return self.face_of[self.corner_walk(*corner)]

    def faces(self):
        """Maps face ids to the sorted ids of their boundary walks."""
        result = {}
        for walk, face in self.face_of.items():
            result.setdefault(face, []).append(walk)
        return {f: tuple(sorted(w)) for f, w in result.items()}

    def walk_corners(self, walk_id):
        if walk_id < 0:
            return [(isolated_walk_id(walk_id), 0)]
        return [(self.tail(d), self.position(d))
                for d in self.walks()[walk_id]]

    def face_corners(self, face):
        return [c for w in self.faces().get(face, ())
                for c in self.walk_corners(w)]

    def face_vertices(self, face):
        return {v for v, _ in self.face_corners(face)}

    def vertex_corners(self, v):
        return [(v, g) for g in range(max(1, len(self.rotation[v])))]

    def neighbors(self, v):
        return [self.head(d) for d in self.rotation[v]]

    def degree(self, v):
        return len(self.rotation[v])

    def edge_count(self):
        return len(self.ends)

    def next_vertex_id(self):
        return max(max(self.vertices, default=-1) + 1, self.real_bound)

    def components(self):
        """Vertex sets of the connected components, by smallest vertex."""
        seen = set()
        result = []
        for v in sorted(self.vertices):
            if v in seen:
                continue
            component = {v}
            queue = deque([v])
            while queue:
                x = queue.popleft()
                for y in self.neighbors(x):
                    if y not in component:
                        component.add(y)
                        queue.append(y)
            seen |= component
            result.append(frozenset(component))
        return result

    def add_vertex(self, v, face):
        """Returns a copy with the isolated vertex `v` drawn inside `face`."""
        if v in self.vertices:
            raise EmbeddingError("Vertex %d already exists." % v)
        if face is None:
            assert not self.vertices
            face = 0
        face_of = dict(self.face_of)
        face_of[isolated_walk_id(v)] = face
        rotation = dict(self.rotation)
        rotation[v] = ()
        return self.copy_with(vertices=self.vertices | {v}, rotation=rotation,
                              face_of=face_of)

    def add_edge(self, corner_a, corner_b):
        """Returns every embedding obtained by drawing a new edge between two
        corners of the same face.

        When the edge closes a cycle the face splits in two, and the other
        boundary walks of that face are distributed in all possible ways
        between the two sides; one embedding is returned per distribution.
        """
        a, gap_a = corner_a
        b, gap_b = corner_b
        if a == b:
            raise EmbeddingError("Self-loop at vertex %d." % a)
        walk_a = self.corner_walk(a, gap_a)
        walk_b = self.corner_walk(b, gap_b)
        face = self.face_of[walk_a]
        if self.face_of[walk_b] != face:
            raise EmbeddingError("Corners of %d and %d lie in different faces."
                                 % (a, b))
        e = max(self.ends, default=-1) + 1
        ends = dict(self.ends)
        ends[e] = (a, b)
        rotation = dict(self.rotation)
        rotation[a] = _insert(rotation[a], gap_a, 2 * e)
        rotation[b] = _insert(rotation[b], gap_b, 2 * e + 1)
        draft = self.copy_with(ends=ends, rotation=rotation, face_of={})
        walk_one = draft.walk_of_dart(2 * e)
        walk_two = draft.walk_of_dart(2 * e + 1)
        face_of = {w: f for w, f in self.face_of.items()
                   if w != walk_a and w != walk_b}

        if walk_a != walk_b:
            assert walk_one == walk_two
            face_of[walk_one] = face
            return [draft.copy_with(face_of=face_of)]

        assert walk_one != walk_two, "Embedding is not planar."
        others = [w for w in self.faces()[face] if w != walk_a]
        new_face = max(self.face_of.values()) + 1
        face_tags = dict(self.face_tags)
        if face in face_tags:
            face_tags[new_face] = face_tags[face]
        results = []
        for mask in range(2 ** len(others)):
            split = dict(face_of)
            split[walk_one] = face
            split[walk_two] = new_face
            for i, w in enumerate(others):
                if mask >> i & 1:
                    split[w] = new_face
            results.append(draft.copy_with(face_of=split,
                                           face_tags=face_tags))
        return results

    def remove_edge(self, e):
        """Returns a copy without edge `e`; the faces on its sides merge."""
        dart_a, dart_b = 2 * e, 2 * e + 1
        walk_a = self.walk_of_dart(dart_a)
        walk_b = self.walk_of_dart(dart_b)
        face_a = self.face_of[walk_a]
        face_b = self.face_of[walk_b]
        ends = dict(self.ends)
        del ends[e]
        rotation = {v: tuple(d for d in r if d >> 1 != e)
                    for v, r in self.rotation.items()}
        dart_labels = {d: l for d, l in self.dart_labels.items()
                       if d >> 1 != e}
        draft = self.copy_with(ends=ends, rotation=rotation, face_of={},
                               dart_labels=dart_labels)
        old_walks = self.walks()
        face_tags = dict(self.face_tags)
        face_of = {}
        for w, darts in draft.walks().items():
            unchanged = (w not in (walk_a, walk_b) and
                         old_walks.get(w) == darts)
            face = self.face_of[w] if unchanged else face_a
            face_of[w] = face_a if face == face_b else face
        if face_b != face_a:
            face_tags.pop(face_b, None)
        return draft.copy_with(face_of=face_of, face_tags=face_tags)

    def remove_vertex(self, v):
        graph = self
        for e in sorted({d >> 1 for d in self.rotation[v]}):
            graph = graph.remove_edge(e)
        face_of = dict(graph.face_of)
        face = face_of.pop(isolated_walk_id(v))
        face_tags = dict(graph.face_tags)
        if face not in face_of.values():
            face_tags.pop(face, None)
        rotation = dict(graph.rotation)
        del rotation[v]
        marks = {x: m for x, m in graph.marks.items() if x != v}
        return graph.copy_with(vertices=graph.vertices - {v},
                               rotation=rotation, face_of=face_of,
                               face_tags=face_tags, marks=marks)

    def restricted_to(self, vertices, edges=None):
        """Sub-embedding on `vertices` keeping only edges whose endpoint pair
        is in `edges` (all edges between kept vertices when None)."""
        graph = self
        for v in sorted(self.vertices - frozenset(vertices)):
            graph = graph.remove_vertex(v)
        if edges is not None:
            for e, (a, b) in sorted(self.ends.items()):
                if e in graph.ends and (a, b) not in edges and \
                        (b, a) not in edges:
                    graph = graph.remove_edge(e)
        return graph

    def mirror(self):
        """The same embedding seen from the other side of the sphere."""
        rotation = {v: tuple(reversed(r)) for v, r in self.rotation.items()}
        draft = self.copy_with(rotation=rotation, face_of={}, dart_labels={})
        face_of = {}
        for w, darts in self.walks().items():
            if w < 0:
                face_of[w] = self.face_of[w]
            else:
                face_of[draft.walk_of_dart(reverse_dart(darts[0]))] = \
                    self.face_of[w]
        dart_labels = {reverse_dart(d): l for d, l in self.dart_labels.items()}
        return draft.copy_with(face_of=face_of, dart_labels=dart_labels)

    def relabel(self, mapping):
        """Renames vertices; vertices missing from `mapping` keep their id."""
        def name(v):
            return mapping.get(v, v)
        face_of = {}
        for w, f in self.face_of.items():
            face_of[isolated_walk_id(name(isolated_walk_id(w))) if w < 0
                    else w] = f
        return self.copy_with(
            vertices=[name(v) for v in self.vertices],
            ends={e: (name(a), name(b)) for e, (a, b) in self.ends.items()},
            rotation={name(v): r for v, r in self.rotation.items()},
            face_of=face_of,
            marks={name(v): m for v, m in self.marks.items()})

    def shifted(self, offset):
        """Copy whose edge ids (hence darts) are increased by `offset`."""
        def move(d):
            return d + 2 * offset
        return self.copy_with(
            ends={e + offset: ends for e, ends in self.ends.items()},
            rotation={v: tuple(move(d) for d in r)
                      for v, r in self.rotation.items()},
            face_of={(w if w < 0 else move(w)): f
                     for w, f in self.face_of.items()},
            dart_labels={move(d): l for d, l in self.dart_labels.items()})

    def with_face_tags(self, face_tags):
        return self.copy_with(face_tags=face_tags)

    def with_faces_renumbered(self, offset):
        return self.copy_with(
            face_of={w: f + offset for w, f in self.face_of.items()},
            face_tags={f + offset: t for f, t in self.face_tags.items()})

    def validate(self):
        """Raises EmbeddingError unless rotation and position systems are
        consistent and describe a drawing on the sphere."""
        seen = set()
        for v, rotation in self.rotation.items():
            for d in rotation:
                if d in seen or d >> 1 not in self.ends or self.tail(d) != v:
                    raise EmbeddingError("Dart %d misplaced at vertex %d."
                                         % (d, v))
                seen.add(d)
        if len(seen) != 2 * len(self.ends):
            raise EmbeddingError("Some darts are missing from the rotation.")
        walks = self.walks()
        if set(walks) != set(self.face_of):
            raise EmbeddingError("Position system does not match the walks.")
        components = self.components()
        component_of = {v: i for i, c in enumerate(components) for v in c}
        incidence = nx.Graph()
        for i, component in enumerate(components):
            edge_count = len({d >> 1 for v in component
                              for d in self.rotation[v]})
            own = [w for w in walks
                   if component_of[self._walk_vertex(w)] == i]
            if len(component) - edge_count + len(own) != 2:
                raise EmbeddingError("Component %d is not spherical." % i)
            incidence.add_node(('c', i))
            for w in own:
                face = ('f', self.face_of[w])
                if incidence.has_edge(('c', i), face):
                    raise EmbeddingError("Component %d meets face %r twice."
                                         % (i, face[1]))
                incidence.add_edge(('c', i), face)
        if components and not nx.is_tree(incidence):
            raise EmbeddingError("Position system is not a tree.")

    def is_quadrangulation(self):
        """Connected, and every face is a single walk of four darts."""
        if len(self.components()) != 1:
            return False
        walks = self.walks()
        return all(len(ws) == 1 and len(walks[ws[0]]) == 4
                   for ws in self.faces().values())

    def is_biconnected(self):
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.ends.values())
        return len(graph) >= 2 and nx.is_biconnected(graph)

    def homotopic_pairs(self):
        """Pairs of parallel edges forming the whole boundary of a face."""
        pairs = set()
        walks = self.walks()
        for ws in self.faces().values():
            if len(ws) != 1 or len(walks[ws[0]]) != 2:
                continue
            first, second = walks[ws[0]]
            if first >> 1 != second >> 1:
                pairs.add(tuple(sorted((first >> 1, second >> 1))))
        return sorted(pairs)

    def bipartite(self):
        """The abstract witness graph underlying this embedding."""
        edges = set()
        for a, b in self.ends.values():
            if self.is_real(a) == self.is_real(b):
                raise EmbeddingError("Edge (%d, %d) is not bipartite."
                                     % (a, b))
            edges.add((a, b) if self.is_real(a) else (b, a))
        return BipartiteWitnessGraph(self.reals(), self.intersections(),
                                     edges)

    def to_networkx(self):
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.ends.values())
        return graph

    def _vertex_label(self, v, label_all):
        if label_all or self.is_real(v):
            return v
        return self.marks.get(v, -1)

    def _traverse(self, start, first_dart, label_all):
        """BFS numbering from `start`, whose rotation is read from
        `first_dart`. Returns (code, dart numbering)."""
        order = {start: 0}
        first = {start: first_dart}
        sequence = [start]
        queue = deque([start])
        ordered = {}
        numbering = {}
        while queue:
            v = queue.popleft()
            rotation = self.rotation[v]
            if rotation:
                k = rotation.index(first[v])
                rotation = rotation[k:] + rotation[:k]
            ordered[v] = rotation
            for i, d in enumerate(rotation):
                numbering[d] = (order[v], i)
                w = self.head(d)
                if w not in order:
                    order[w] = len(order)
                    first[w] = reverse_dart(d)
                    sequence.append(w)
                    queue.append(w)
        code = tuple(
            (self._vertex_label(v, label_all), tuple(
                (numbering[reverse_dart(d)], self.dart_labels.get(d, 0))
                for d in ordered[v]))
            for v in sequence)
        return code, numbering

    def _encode(self, label_all):
        """Orientation-dependent canonical encoding."""
        entries = []
        for component in self.components():
            labeled = [v for v in component
                       if self._vertex_label(v, label_all) >= 0]
            starts = [min(labeled)] if labeled else sorted(component)
            candidates = [self._traverse(s, d, label_all)
                          for s in starts
                          for d in (self.rotation[s] or (None,))]
            code = min(c for c, _ in candidates)
            sort_key = (0, min(labeled), code) if labeled else (1, 0, code)
            entries.append((sort_key, code,
                            [n for c, n in candidates if c == code],
                            component))
        entries.sort(key=lambda entry: entry[0])
        codes = tuple(entry[1] for entry in entries)
        index = {v: i for i, entry in enumerate(entries) for v in entry[3]}
        walks = self.walks()
        faces = self.faces()
        encodings = []
        for numberings in itertools.product(*(e[2] for e in entries)):
            number = {}
            for i, numbering in enumerate(numberings):
                for d, n in numbering.items():
                    number[d] = (i,) + n
            face_codes = []
            for face, ws in faces.items():
                items = sorted(
                    (index[isolated_walk_id(w)], 0, -1) if w < 0
                    else min(number[d] for d in walks[w]) for w in ws)
                face_codes.append((int(self.face_tags.get(face, 0)),
                                   tuple(items)))
            encodings.append((codes, tuple(sorted(face_codes))))
        return min(encodings)

    def oriented_key(self, label_all=False):
        return _dump(self._encode(label_all))

    def canonical_key(self, label_all=False):
        """Key identifying the embedding up to renaming of non-real vertices
        and up to mirroring; with `label_all`, every vertex id counts."""
        return _dump(min(self._encode(label_all),
                         self.mirror()._encode(label_all)))


def _insert(rotation, gap, dart):
    if not rotation:
        return (dart,)
    gap %= len(rotation)
    return rotation[:gap] + (dart,) + rotation[gap:]


def _dump(encoding):
    return json.dumps(encoding, separators=(',', ':')).encode('ascii')


WalkEdge = namedtuple('WalkEdge', ['darts', 'counter'])
WalkEdge.__doc__ = """Edge of a closed walk: the witness darts it stands for
and its counter (number of witness edges, saturated at COUNTER_CAP)."""

ClosedWalk = namedtuple('ClosedWalk', ['vertices', 'edges'])
ClosedWalk.__doc__ = """Circular walk: edges[i] joins vertices[i] to
vertices[(i + 1) % len(vertices)]. A single vertex without edges is the walk
around an isolated vertex; no vertices at all is the empty walk."""

EMPTY_WALK = ClosedWalk((), ())


def walk_from_darts(graph, walk_id):
    """Closed walk of `walk_id`; a dart label, when present, is the counter
    of its edge."""
    darts = graph.walks()[walk_id]
    if walk_id < 0:
        return ClosedWalk((isolated_walk_id(walk_id),), ())
    return ClosedWalk(tuple(graph.tail(d) for d in darts),
                      tuple(WalkEdge((d,), graph.dart_labels.get(d, 1))
                            for d in darts))


def trace_faces(graph):
    """Boundary walks of every face, ordered by face id.

    :return: list of (face id, list of `ClosedWalk`).
    """
    return [(face, [walk_from_darts(graph, w) for w in ws])
            for face, ws in sorted(graph.faces().items())]


def shortcut(walk, v, cap=COUNTER_CAP):
    """Removes every occurrence of `v` from `walk`, merging the flanking
    walk edges and dropping the self-loops this creates."""
    if v not in walk.vertices:
        raise ValueError("Vertex %d does not occur on the walk." % v)
    return shortcut_all(walk, lambda x: x != v, cap)


def shortcut_all(walk, keep, cap=COUNTER_CAP):
    """Shortcuts every vertex of `walk` for which `keep` is false."""
    vertices, edges = walk
    kept = [i for i, x in enumerate(vertices) if keep(x)]
    if len(kept) == len(vertices):
        return walk
    if not kept:
        return EMPTY_WALK
    n = len(vertices)
    new_vertices = []
    new_edges = []
    for j, i in enumerate(kept):
        following = kept[(j + 1) % len(kept)]
        span = [t % n for t in range(i, i + ((following - i) % n or n))]
        new_vertices.append(vertices[i])
        new_edges.append(WalkEdge(
            tuple(d for t in span for d in edges[t].darts),
            min(cap, sum(edges[t].counter for t in span))))
    return drop_loops(ClosedWalk(tuple(new_vertices), tuple(new_edges)))


def drop_loops(walk):
    vertices, edges = list(walk.vertices), list(walk.edges)
    while len(vertices) > 1:
        for j in range(len(vertices)):
            if vertices[j] == vertices[(j + 1) % len(vertices)]:
                del edges[j]
                del vertices[j + 1 if j + 1 < len(vertices) else j]
                break
        else:
            break
    if len(vertices) == 1:
        edges = []
    return ClosedWalk(tuple(vertices), tuple(edges))
