"""Bottom-up dynamic programme over a nice tree-decomposition.

Every record entry carries an embedded graph the transitions edit: the
compact partial witness of the graph induced by the vertices introduced
below the node in certificate mode, and its reduction (see `reduce_state`)
otherwise. Introduce draws the new vertex and its links into an active face;
join draws one child's graph into the active faces of the other. The
canonical key of the sketch with respect to the bag decides which entries
are duplicates.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from mapwit.src.config import DEFAULT_OPTIONS
from mapwit.src.embedding import (ACTIVE, HIDDEN, EmbeddedGraph,
                                  isolated_walk_id)
from mapwit.src.graph import (biconnected_components, clique_number,
                              violates_clique_bound)
from mapwit.src.records import Mode, Provenance, Record, RecordEntry
from mapwit.src.sketch import (active_faces, complete_boundaries_ok,
                               compute_sketch, reduce_state)
from mapwit.src.tree_decomposition import (FORGET, INTRODUCE, JOIN, LEAF,
                                           compute_td, make_nice,
                                           restrict_td)
from mapwit.src.utils import max_clique_size, partial_matchings, powerset
from mapwit.src.witness import (check_hole_free, compactify,
                                compactness_violation, disjoint_union,
                                glue_at_vertex, max_intersection_degree,
                                neighborhood, single_vertex_witness,
                                twin_pairs, verify_witness)

logger = logging.getLogger(__name__)


def _make_entry(state, bag, mode, options, in_kmap, in_hole_free,
                provenance):
    sketch = compute_sketch(state, bag, mode.hole_free, options)
    in_kmap = in_kmap and mode.admits_degree(max_intersection_degree(state))
    in_hole_free = (mode.hole_free and in_hole_free and in_kmap and
                    complete_boundaries_ok(state, bag))
    if not mode.certificate:
        state = reduce_state(state, bag, mode.hole_free, options)
    return RecordEntry(sketch, in_kmap, in_hole_free, provenance, state,
                       carried=mode.certificate)


def _unique(embeddings, oriented=False):
    """Drops embeddings that coincide (up to mirroring unless `oriented`),
    keeping vertex ids."""
    result = {}
    for embedding in embeddings:
        key = embedding.oriented_key(label_all=True) if oriented \
            else embedding.canonical_key(label_all=True)
        result.setdefault(key, embedding)
    return [result[key] for key in sorted(result)]


def init_leaf(v, mode, real_bound, options=DEFAULT_OPTIONS):
    """Record of a leaf bag {v}: the single-vertex witness."""
    record = Record({v})
    record.add(_make_entry(single_vertex_witness(v, real_bound), {v}, mode,
                           options, True, True,
                           Provenance(LEAF, (), str(v))))
    return record


def op_forget(record, v, bag, mode, options=DEFAULT_OPTIONS):
    """Record of the forget bag `bag` = record.bag - {v}.

    States are unchanged; their sketches lose `v` and the intersection
    vertices adjacent to it, and faces left with fewer than two anchors
    retire (in hole-free mode they must be quadrangles).
    """
    assert v in record.bag and v not in bag
    result = Record(bag)
    for entry in record:
        result.add(_make_entry(entry.state, bag, mode, options,
                               entry.in_kmap, entry.in_hole_free,
                               Provenance(FORGET, (entry.key,), str(v))))
    return result


def _link(embedding, x, y):
    """Every way of drawing an edge x-y through a face they share."""
    result = []
    for corner_x in embedding.vertex_corners(x):
        face = embedding.corner_face(corner_x)
        for corner_y in embedding.vertex_corners(y):
            if embedding.corner_face(corner_y) == face:
                result.extend(embedding.add_edge(corner_x, corner_y))
    return result


def _makes_inessential(final, others):
    """True iff adding the neighbourhood `final` to `others` leaves a
    degree-2 intersection vertex inside a larger neighbourhood."""
    if len(final) == 2 and any(final < m for m in others):
        return True
    return any(len(m) == 2 and m < final for m in others)


def _copy_bound(witness, face, s):
    """Most new intersection vertices with neighbourhood `s` | {v} that one
    introduce step into `face` can leave without twins.

    Three vertices sharing two or more neighbours besides v would span a
    K_{3,3}. Copies joining v to a single neighbour a are separated by
    edges at a or by other boundary walks of the face.
    """
    if len(s) >= 2:
        return 2
    a, = s
    corners = sum(1 for x, _ in witness.face_corners(face) if x == a)
    return corners + len(witness.faces()[face])


def _attachment_patterns(witness, v, face, reused, candidates):
    """Lists of new neighbourhoods (subsets of the bag neighbours of v) that
    keep the abstract witness planar and free of inessential vertices.

    Both conditions only get worse as sets are added, so the search stops
    extending a list as soon as one fails.
    """
    finals = [neighborhood(witness, u) | {v} for u in reused]
    finals += [neighborhood(witness, u) for u in witness.intersections()
               if u not in reused]
    for i, final in enumerate(finals[:len(reused)]):
        if _makes_inessential(final, finals[:i] + finals[i + 1:]):
            return
    graph = nx.Graph(list(witness.ends.values()))
    graph.add_node(v)
    graph.add_edges_from((v, u) for u in reused)
    if not nx.check_planarity(graph)[0]:
        return
    bounds = {s: _copy_bound(witness, face, s) for s in candidates}

    def extend(start, chosen, finals, graph):
        yield list(chosen)
        for i in range(start, len(candidates)):
            s = candidates[i]
            if chosen.count(s) >= bounds[s]:
                continue
            final = s | {v}
            if _makes_inessential(final, finals):
                continue
            grown = graph.copy()
            grown.add_edges_from((('new', len(chosen)), a) for a in final)
            if not nx.check_planarity(grown)[0]:
                continue
            chosen.append(s)
            yield from extend(i, chosen, finals + [final], grown)
            chosen.pop()

    yield from extend(0, [], finals, graph)


def _place(witness, v, face, reused, new_sets):
    """Embeddings of `witness` plus v drawn in `face`, linked to the reused
    intersection vertices and to new intersection vertices.

    A new intersection vertex that ends up twin to another is dropped at
    once: no later link of this step can enter the quadrangle they bound.
    """
    states = [witness.add_vertex(v, face)]
    for u in reused:
        states = _unique(new for state in states
                         for new in _link(state, v, u))
    for s in new_sets:
        following = []
        for state in states:
            y = state.next_vertex_id()
            faces = sorted({state.corner_face(c)
                            for c in state.vertex_corners(v)})
            for f in faces:
                grown = state.add_vertex(y, f)
                partial = []
                for corner in grown.vertex_corners(v):
                    if grown.corner_face(corner) == f:
                        partial.extend(grown.add_edge((y, 0), corner))
                for a in sorted(s):
                    partial = [new for p in partial for new in _link(p, y, a)]
                following.extend(
                    p for p in partial
                    if not any(y in pair for pair in twin_pairs(p)))
        states = _unique(following)
    return states


def _attachments(witness, v, face, neighbors, graph, mode, options):
    on_face = witness.face_vertices(face)
    eligible = [u for u in sorted(witness.intersections())
                if u in on_face and neighborhood(witness, u) <= neighbors]
    new_candidates = [frozenset(s) for s in powerset(sorted(neighbors), 1)
                      if graph.is_clique(s)]
    if options.prune:
        eligible = [u for u in eligible
                    if mode.admits_degree(witness.degree(u) + 1)]
        new_candidates = [s for s in new_candidates
                          if mode.admits_degree(len(s) + 1)]
    results = []
    for reused in powerset(eligible):
        reached = frozenset().union(*(neighborhood(witness, u)
                                      for u in reused))
        for new_sets in _attachment_patterns(witness, v, face, reused,
                                             new_candidates):
            if reached.union(*new_sets) != neighbors:
                continue
            results.extend(embedding for embedding in
                           _place(witness, v, face, reused, new_sets)
                           if compactness_violation(embedding) is None)
    return _unique(results)


def op_introduce(record, v, neighbors, graph, mode, options=DEFAULT_OPTIONS):
    """Record of the introduce bag record.bag | {v}.

    :param neighbors: neighbours of v inside the bag.
    :param graph: the input `Graph`; a new intersection vertex may only join
      v to a clique of it.
    """
    assert v not in record.bag
    neighbors = frozenset(neighbors)
    bag = record.bag | {v}
    result = Record(bag)
    for entry in record:
        state = entry.state
        for face in active_faces(state, record.bag):
            if not neighbors:
                candidates = [state.add_vertex(v, face)]
            elif neighbors <= state.face_vertices(face):
                candidates = _attachments(state, v, face, neighbors, graph,
                                          mode, options)
            else:
                continue
            for candidate in candidates:
                result.add(_make_entry(
                    candidate, bag, mode, options, entry.in_kmap,
                    entry.in_hole_free,
                    Provenance(INTRODUCE, (entry.key,),
                               '%d in face %d' % (v, face))))
    return result


def _allowed_gaps(embedding, guest, x, new_neighbor):
    """Gaps at x where the guest edge x-new_neighbor may be drawn so that
    the guest's rotation at x is respected."""
    rotation = embedding.rotation[x]
    if not rotation:
        return [0]
    present = [embedding.head(d) for d in rotation]
    ring = guest.neighbors(x)
    placed = [w for w in ring if w in present and w != new_neighbor]
    if len(placed) <= 1:
        return list(range(len(rotation)))
    i = ring.index(new_neighbor)
    size = len(ring)
    successor = next(ring[(i + j) % size] for j in range(1, size)
                     if ring[(i + j) % size] in placed)
    predecessor = next(ring[(i - j) % size] for j in range(1, size)
                       if ring[(i - j) % size] in placed)
    stop = present.index(successor)
    gap = (present.index(predecessor) + 1) % len(rotation)
    gaps = [gap]
    while gap != stop:
        gap = (gap + 1) % len(rotation)
        gaps.append(gap)
    return gaps


def _draw_guest_edge(embedding, guest, x, y):
    result = []
    if y not in embedding.vertices:
        for gap in _allowed_gaps(embedding, guest, x, y):
            face = embedding.corner_face((x, gap))
            if embedding.face_tags.get(face) == ACTIVE:
                result.extend(embedding.add_vertex(y, face).add_edge(
                    (x, gap), (y, 0)))
        return result
    gaps_y = _allowed_gaps(embedding, guest, y, x)
    for gap_x in _allowed_gaps(embedding, guest, x, y):
        face = embedding.corner_face((x, gap_x))
        if embedding.face_tags.get(face) != ACTIVE:
            continue
        for gap_y in gaps_y:
            if embedding.corner_face((y, gap_y)) == face:
                result.extend(embedding.add_edge((x, gap_x), (y, gap_y)))
    return result


def _rotations_agree(host, guest, matching):
    for u, _ in matching:
        ring = host.neighbors(u)
        other = guest.neighbors(u)
        k = other.index(ring[0])
        if other[k:] + other[:k] != ring:
            return False
    return True


def _bare(embedding):
    return embedding.copy_with(face_tags={}, dart_labels={})


def _draw_guest(host, guest):
    """Embeddings containing `host` and `guest` (sharing vertex ids), with
    guest drawn only inside faces of host tagged active."""
    host_pairs = {frozenset(ends) for ends in host.ends.values()}
    shared = sorted(v for v in guest.vertices if v in host.vertices)
    present = set(shared)
    scheduled = []
    seen = set()
    queue = deque(shared)
    while queue:
        x = queue.popleft()
        for y in guest.neighbors(x):
            pair = frozenset((x, y))
            if pair in host_pairs or pair in seen:
                continue
            seen.add(pair)
            scheduled.append((x, y))
            if y not in present:
                present.add(y)
                queue.append(y)
    assert present == guest.vertices, "Guest part without bag vertex."
    states = [host]
    for x, y in scheduled:
        states = _unique((new for state in states
                          for new in _draw_guest_edge(state, guest, x, y)),
                         oriented=True)
    guest_pairs = {tuple(ends) for ends in guest.ends.values()}
    target = _bare(guest).oriented_key(label_all=True)
    return [state for state in states
            if _bare(state.restricted_to(guest.vertices, guest_pairs))
            .oriented_key(label_all=True) == target]


def _walk_signature(embedding, walk_id):
    if walk_id < 0:
        v = isolated_walk_id(walk_id)
        return ((v, v),)
    pairs = [(embedding.tail(d), embedding.head(d))
             for d in embedding.walks()[walk_id]]
    return min(tuple(pairs[i:] + pairs[:i]) for i in range(len(pairs)))


def _face_signature(embedding, face):
    return tuple(sorted(_walk_signature(embedding, w)
                        for w in embedding.faces()[face]))


def _seal(merged, blocked):
    """`merged` with the faces the guest had retired tagged hidden, or None
    when one of them did not survive with exactly the same boundary."""
    faces = {_face_signature(merged, f): f for f in merged.faces()}
    tags = {f: HIDDEN for f, tag in merged.face_tags.items() if tag == HIDDEN}
    for signature in blocked:
        face = faces.get(signature)
        if face is None:
            return None
        tags[face] = HIDDEN
    return merged.with_face_tags(tags)


def _copy_labels(merged, host, guest):
    """Gives the edges drawn for `guest` the dart labels they had there."""
    if not guest.dart_labels:
        return merged
    source = {(guest.tail(d), guest.head(d)): d for d in guest.darts()}
    labels = dict(merged.dart_labels)
    for e in merged.ends:
        if e in host.ends:
            continue
        for d in (2 * e, 2 * e + 1):
            label = guest.dart_labels.get(source[(merged.tail(d),
                                                  merged.head(d))])
            if label is not None:
                labels[d] = label
    return merged.copy_with(dart_labels=labels)


def merge_witnesses(first, second, bag, hidden=False):
    """Compact states combining two partial witnesses (or their reductions)
    that share exactly the bag vertices.

    Intersection vertices of both sides with equal neighbourhoods inside the
    bag may be fused; the second state (or its mirror image) is drawn into
    the active faces of the first, and every face the second had retired
    must come out unchanged.

    :param hidden: keep the faces no later step may enter tagged `HIDDEN`,
      as reduced states need; otherwise all face tags are cleared.
    """
    bag = frozenset(bag)
    active = set(active_faces(first, bag))
    host = first.with_face_tags({f: ACTIVE if f in active else HIDDEN
                                 for f in first.faces()})
    start = max(first.next_vertex_id(), second.next_vertex_id())
    guest = second.relabel({u: start + i for i, u in enumerate(
        sorted(v for v in second.vertices if not second.is_real(v)))})
    anchored = {}
    for side, witness in ((0, host), (1, guest)):
        for u in witness.intersections():
            n = neighborhood(witness, u)
            if n <= bag:
                anchored.setdefault(n, ([], []))[side].append(u)
    pairs = [(u1, u2) for ones, twos in anchored.values()
             for u1 in ones for u2 in twos]
    results = []
    for oriented in (guest, guest.mirror()):
        for matching in partial_matchings(pairs):
            fused = oriented.relabel({u2: u1 for u1, u2 in matching})
            if not _rotations_agree(host, fused, matching):
                continue
            retired = set(fused.faces()) - set(active_faces(fused, bag))
            blocked = [_face_signature(fused, f) for f in sorted(retired)]
            for merged in _draw_guest(host, fused):
                merged = _seal(merged, blocked)
                if merged is None:
                    continue
                merged = _copy_labels(merged, host, fused)
                if not hidden:
                    merged = merged.with_face_tags({})
                results.append(compactify(merged))
    unique = {}
    for merged in results:
        unique.setdefault(merged.canonical_key(), merged)
    return [unique[key] for key in sorted(unique)]


def op_join(first, second, mode, options=DEFAULT_OPTIONS):
    """Record of a join bag from the records of its two children."""
    assert first.bag == second.bag
    result = Record(first.bag)
    for one in first:
        for two in second:
            for merged in merge_witnesses(one.state, two.state, first.bag,
                                          hidden=not mode.certificate):
                result.add(_make_entry(
                    merged, first.bag, mode, options,
                    one.in_kmap and two.in_kmap,
                    one.in_hole_free and two.in_hole_free,
                    Provenance(JOIN, (one.key, two.key), '')))
    return result


@dataclass
class RunResult:
    decision: bool
    witness: Optional[EmbeddedGraph] = None
    width: int = -1
    node_count: int = 0
    max_record_size: int = 0
    max_sketch_vertices: int = 0
    max_state_vertices: int = 0
    root_entry: Optional[RecordEntry] = None
    ntd: object = None
    records: Optional[dict] = None

    def absorb(self, other):
        self.node_count += other.node_count
        self.width = max(self.width, other.width)
        self.max_record_size = max(self.max_record_size,
                                   other.max_record_size)
        self.max_sketch_vertices = max(self.max_sketch_vertices,
                                       other.max_sketch_vertices)
        self.max_state_vertices = max(self.max_state_vertices,
                                      other.max_state_vertices)


def _run_block(graph, ntd, mode, options, real_bound):
    result = RunResult(False, width=ntd.width, node_count=len(ntd),
                       ntd=ntd, records={} if options.keep_records else None)
    records = {}
    for node in ntd.nodes:
        children = [records[id(c)] if options.keep_records
                    else records.pop(id(c)) for c in node.children]
        if node.kind == LEAF:
            record = init_leaf(node.vertex, mode, real_bound, options)
        elif node.kind == INTRODUCE:
            child = children[0]
            record = op_introduce(child, node.vertex,
                                  graph.neighbors(node.vertex) & child.bag,
                                  graph, mode, options)
        elif node.kind == FORGET:
            record = op_forget(children[0], node.vertex, node.bag, mode,
                               options)
        else:
            record = op_join(children[0], children[1], mode, options)
        if options.prune:
            record = record.pruned(mode)
        logger.debug("%r: %d entries", node, len(record))
        result.max_record_size = max(result.max_record_size, len(record))
        result.max_sketch_vertices = max(
            [result.max_sketch_vertices] +
            [e.sketch.vertex_count for e in record.entries.values()])
        result.max_state_vertices = max(
            [result.max_state_vertices] +
            [len(e.state.vertices) for e in record.entries.values()])
        records[id(node)] = record
        if not record:
            return result
    if options.keep_records:
        result.records = records
    root = records[id(ntd.root)]
    accepted = root.subrecord(mode)
    if mode.certificate and mode.hole_free:
        accepted = [entry for entry in accepted
                    if check_hole_free(entry.witness)]
    if accepted:
        result.decision = True
        result.root_entry = accepted[0]
        result.witness = accepted[0].witness
        if mode.certificate:
            report = verify_witness(graph, result.witness, mode.hole_free)
            assert report.is_witness and report.is_compact, \
                report.first_failure
    return result


def _ordered_blocks(graph):
    """Blocks ordered so that each one after the first of its component
    shares a cut vertex with an earlier one."""
    remaining = [block for block, _ in biconnected_components(graph)]
    ordered = []
    while remaining:
        covered = set()
        component = [remaining.pop(0)]
        covered |= component[0].vertices
        progress = True
        while progress:
            progress = False
            for block in remaining:
                if block.vertices & covered:
                    component.append(block)
                    covered |= block.vertices
                    remaining.remove(block)
                    progress = True
                    break
        ordered.append(component)
    return ordered


def run(graph, ntd, k, hole_free=False, certificate=True,
        options=DEFAULT_OPTIONS):
    """Decides whether `graph` is a (hole-free) k-map graph.

    :param graph: `Graph`.
    :param ntd: `NiceTreeDecomposition` of `graph`.
    :param k: bound on intersection degrees, or None for any.
    :param hole_free: require a hole-free map.
    :param certificate: return a witness on yes-instances.
    :return: `RunResult`.
    """
    mode = Mode(k, hole_free, certificate)
    if graph.vertex_count == 0:
        return RunResult(not hole_free, EmbeddedGraph(0, [], {}, {}, {}))
    real_bound = max(graph.vertices) + 1
    if hole_free and not graph.is_biconnected():
        logger.info("Graph is not biconnected: no hole-free map.")
        return RunResult(False, width=ntd.width)
    if violates_clique_bound(graph, k):
        logger.info("Clique of size %d exceeds the bound %d for k=%d.",
                    clique_number(graph), max_clique_size(k), k)
        return RunResult(False, width=ntd.width)
    if graph.vertex_count == 1 or graph.is_biconnected():
        return _run_block(graph, ntd, mode, options, real_bound)

    td = ntd.to_tree_decomposition()
    total = RunResult(True, width=ntd.width)
    witness = None
    for component in _ordered_blocks(graph):
        glued = None
        for block in component:
            if block.vertex_count == 1:
                block_witness = single_vertex_witness(min(block.vertices),
                                                      real_bound)
            else:
                block_run = _run_block(
                    block, make_nice(restrict_td(td, block.vertices)), mode,
                    options, real_bound)
                total.absorb(block_run)
                logger.info("Block %s: %s", sorted(block.vertices),
                            "yes" if block_run.decision else "no")
                if not block_run.decision:
                    total.decision = False
                    return total
                block_witness = block_run.witness
            if not certificate:
                continue
            if glued is None:
                glued = block_witness
            else:
                cut, = glued.reals() & block_witness.reals()
                glued = glue_at_vertex(glued, block_witness, cut)
        if certificate:
            witness = glued if witness is None else \
                disjoint_union(witness, glued)
    total.witness = witness
    if certificate:
        report = verify_witness(graph, witness, hole_free)
        assert report.is_witness and report.is_compact, report.first_failure
    return total


def min_k(graph, ntd, hole_free=False, options=DEFAULT_OPTIONS):
    """Smallest k for which `graph` is a (hole-free) k-map graph, or None.

    Binary search over [1, width + 1], then a last try at n - 1.
    """
    def accepts(k):
        return run(graph, ntd, k, hole_free, False, options).decision

    upper = max(1, ntd.width + 1)
    if accepts(upper):
        low, high = 1, upper
    else:
        fallback = graph.vertex_count - 1
        if fallback <= upper or not accepts(fallback):
            return None
        low, high = upper + 1, fallback
    while low < high:
        middle = (low + high) // 2
        if accepts(middle):
            high = middle
        else:
            low = middle + 1
    return low


@dataclass
class RecognitionResult:
    decision: bool
    k: Optional[int]
    witness: Optional[EmbeddedGraph]
    run: Optional[RunResult]


def recognize(graph, td=None, k=None, minimize=False, hole_free=False,
              certificate=True, options=DEFAULT_OPTIONS):
    """Top-level driver: decomposes when needed, searches k on request.

    :param td: optional `TreeDecomposition`; computed when omitted.
    :param k: degree bound; None without `minimize` means any k.
    :param minimize: find the smallest k first.
    :return: `RecognitionResult`.
    """
    if td is None:
        td = compute_td(graph, options)
    ntd = make_nice(td)
    if minimize:
        k = min_k(graph, ntd, hole_free, options)
        if k is None:
            return RecognitionResult(False, None, None, None)
    result = run(graph, ntd, k, hole_free, certificate, options)
    return RecognitionResult(result.decision, k, result.witness, result)


def provenance_chain(result):
    """Operations that produced the accepted root entry, root first.

    Needs a single-block run made with `keep_records`.
    """
    if result.root_entry is None or result.records is None:
        raise ValueError("Run kept no records or did not accept.")
    chain = []
    stack = [(result.ntd.root, result.root_entry)]
    while stack:
        node, entry = stack.pop()
        chain.append((node, entry.provenance))
        for child, key in zip(node.children, entry.provenance.children):
            stack.append((child, result.records[id(child)].entries[key]))
    return chain
