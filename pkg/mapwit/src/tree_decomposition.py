import logging
from collections import deque

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in

from mapwit.src.config import DEFAULT_OPTIONS
from mapwit.src.errors import DecompositionError

logger = logging.getLogger(__name__)

LEAF = 'leaf'
INTRODUCE = 'introduce'
FORGET = 'forget'
JOIN = 'join'


class TreeDecomposition:
    """Bags (indexed from 0) and the tree edges between bag indices."""

    def __init__(self, bags, edges):
        self.bags = [frozenset(b) for b in bags]
        self.edges = [tuple(e) for e in edges]

    def __repr__(self):
        return "TreeDecomposition(bags=%s, edges=%s)" % (
            [sorted(b) for b in self.bags], self.edges)

    @property
    def width(self):
        return max((len(b) for b in self.bags), default=0) - 1

    @property
    def bag_cap(self):
        return self.width + 1

    def tree(self):
        tree = nx.Graph()
        tree.add_nodes_from(range(len(self.bags)))
        tree.add_edges_from(self.edges)
        return tree

    def validate(self, graph):
        """Raises DecompositionError naming the violated condition."""
        tree = self.tree()
        if self.bags and not nx.is_tree(tree):
            raise DecompositionError("Bags do not form a tree.")
        covered = frozenset().union(*self.bags)
        for v in sorted(graph.vertices):
            if v not in covered:
                raise DecompositionError(
                    "Condition (i): vertex %d is in no bag." % v)
        for u, v in sorted(graph.edges):
            if not any(u in b and v in b for b in self.bags):
                raise DecompositionError(
                    "Condition (i): edge (%d, %d) is not covered." % (u, v))
        for v in sorted(covered):
            if v not in graph.vertices:
                raise DecompositionError("Bag vertex %d is not in the graph."
                                         % v)
            holding = [i for i, b in enumerate(self.bags) if v in b]
            if not nx.is_connected(tree.subgraph(holding)):
                raise DecompositionError(
                    "Condition (ii): bags holding vertex %d are not "
                    "connected." % v)


class NiceNode:

    def __init__(self, kind, bag, vertex=None, children=()):
        self.kind = kind
        self.bag = frozenset(bag)
        self.vertex = vertex
        self.children = list(children)

    def __repr__(self):
        if self.vertex is None:
            return "%s%s" % (self.kind, sorted(self.bag))
        return "%s(%d)%s" % (self.kind, self.vertex, sorted(self.bag))


class NiceTreeDecomposition:
    """Rooted nice tree-decomposition; `nodes` lists the nodes children
    first, ending with the root."""

    def __init__(self, root):
        self.root = root
        self.nodes = _post_order(root)

    def __len__(self):
        return len(self.nodes)

    @property
    def width(self):
        return max((len(n.bag) for n in self.nodes), default=0) - 1

    def to_tree_decomposition(self):
        index = {id(node): i for i, node in enumerate(self.nodes)}
        edges = [(index[id(node)], index[id(child)])
                 for node in self.nodes for child in node.children]
        return TreeDecomposition([n.bag for n in self.nodes], edges)

    def validate(self, graph):
        for node in self.nodes:
            child_bags = [c.bag for c in node.children]
            if node.kind == LEAF:
                ok = not child_bags and node.bag == {node.vertex}
            elif node.kind == INTRODUCE:
                ok = (len(child_bags) == 1 and node.vertex not in
                      child_bags[0] and node.bag == child_bags[0] |
                      {node.vertex})
            elif node.kind == FORGET:
                ok = (len(child_bags) == 1 and node.vertex in child_bags[0]
                      and node.bag == child_bags[0] - {node.vertex})
            elif node.kind == JOIN:
                ok = len(child_bags) == 2 and all(b == node.bag
                                                  for b in child_bags)
            else:
                ok = False
            if not ok:
                raise DecompositionError("Malformed nice node %r." % node)
        if self.root is not None and len(self.root.bag) != 1:
            raise DecompositionError("Root bag must hold a single vertex.")
        self.to_tree_decomposition().validate(graph)


def _post_order(root):
    if root is None:
        return []
    order = []
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        stack.append((node, True))
        for child in reversed(node.children):
            stack.append((child, False))
    return order


def parse_td(text, graph):
    """Reads a tree-decomposition in PACE `.td` format.

    :param text: file content (1-indexed bags and vertices).
    :param graph: the decomposed `Graph` (vertices 0, ..., n - 1).
    :return: validated `TreeDecomposition`.
    """
    header = None
    bags = {}
    edges = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens or tokens[0] == 'c':
            continue
        try:
            numbers = [int(t) for t in tokens[2 if tokens[0] == 's' else
                                              1 if tokens[0] == 'b' else 0:]]
        except ValueError:
            raise DecompositionError("line %d (%r): non-integer token" %
                                     (line_number, line))
        if tokens[0] == 's':
            if header is not None or len(tokens) != 5 or tokens[1] != 'td':
                raise DecompositionError("line %d (%r): malformed header" %
                                         (line_number, line))
            header = numbers
        elif header is None:
            raise DecompositionError("line %d (%r): content before header" %
                                     (line_number, line))
        elif tokens[0] == 'b':
            if not numbers or not 1 <= numbers[0] <= header[0]:
                raise DecompositionError("line %d (%r): bad bag id" %
                                         (line_number, line))
            if any(not 1 <= v <= header[2] for v in numbers[1:]):
                raise DecompositionError("line %d (%r): vertex out of range"
                                         % (line_number, line))
            bags[numbers[0] - 1] = frozenset(v - 1 for v in numbers[1:])
        else:
            if len(numbers) != 2 or \
                    not all(1 <= b <= header[0] for b in numbers):
                raise DecompositionError("line %d (%r): bad tree edge" %
                                         (line_number, line))
            edges.append((numbers[0] - 1, numbers[1] - 1))
    if header is None:
        raise DecompositionError("missing 's td' header")
    if header[2] != graph.vertex_count:
        raise DecompositionError("decomposition has %d vertices, graph %d" %
                                 (header[2], graph.vertex_count))
    td = TreeDecomposition([bags.get(i, frozenset())
                            for i in range(header[0])], edges)
    if td.width + 1 > header[1]:
        logger.warning("Header declares bag size %d, largest bag has %d.",
                       header[1], td.width + 1)
    td.validate(graph)
    return td


def format_td(td):
    lines = ['s td %d %d %d' % (len(td.bags), td.bag_cap,
                                max((max(b) + 1 for b in td.bags if b),
                                    default=0))]
    lines += ['b %d %s' % (i + 1, ' '.join(str(v + 1) for v in sorted(b)))
              for i, b in enumerate(td.bags)]
    lines += ['%d %d' % (a + 1, b + 1) for a, b in td.edges]
    return '\n'.join(lines) + '\n'


def _drop_empty_bags(td):
    """Contracts empty bags and joins a forest of bags into one tree."""
    tree = td.tree()
    for i, bag in enumerate(td.bags):
        if bag:
            continue
        neighbors = sorted(tree.neighbors(i))
        tree.remove_node(i)
        for j in neighbors[1:]:
            tree.add_edge(neighbors[0], j)
    components = sorted(sorted(c) for c in nx.connected_components(tree))
    for previous, current in zip(components, components[1:]):
        tree.add_edge(previous[0], current[0])
    kept = sorted(tree.nodes)
    index = {old: new for new, old in enumerate(kept)}
    return TreeDecomposition([td.bags[i] for i in kept],
                             [(index[a], index[b]) for a, b in tree.edges])


def restrict_td(td, vertices):
    """Decomposition of the subgraph induced by `vertices`."""
    vertices = frozenset(vertices)
    return _drop_empty_bags(TreeDecomposition(
        [b & vertices for b in td.bags], td.edges))


def _transition(node, target):
    """Chain of forget nodes, then introduce nodes, from node.bag to
    `target`."""
    for v in sorted(node.bag - target):
        node = NiceNode(FORGET, node.bag - {v}, v, [node])
    for v in sorted(target - node.bag):
        node = NiceNode(INTRODUCE, node.bag | {v}, v, [node])
    return node


def make_nice(td):
    """Converts a tree-decomposition into a nice one of the same width whose
    root bag holds a single vertex.

    :param td: valid `TreeDecomposition`.
    :return: `NiceTreeDecomposition`.
    """
    td = _drop_empty_bags(td)
    if not td.bags:
        return NiceTreeDecomposition(None)
    tree = td.tree()
    parent = {0: None}
    order = []
    queue = deque([0])
    while queue:
        t = queue.popleft()
        order.append(t)
        for s in sorted(tree.neighbors(t)):
            if s not in parent:
                parent[s] = t
                queue.append(s)
    top = {}
    for t in reversed(order):
        bag = td.bags[t]
        children = [_transition(top.pop(s), bag)
                    for s in sorted(tree.neighbors(t)) if parent.get(s) == t]
        if not children:
            first = min(bag)
            children = [_transition(NiceNode(LEAF, {first}, first), bag)]
        node = children[0]
        for other in children[1:]:
            node = NiceNode(JOIN, bag, None, [node, other])
        top[t] = node
    root = top[0]
    root = _transition(root, frozenset([min(root.bag)]))
    return NiceTreeDecomposition(root)


def _from_elimination_order(graph, order):
    position = {v: i for i, v in enumerate(order)}
    adjacency = {v: set(graph.neighbors(v)) for v in graph.vertices}
    bags = []
    bag_of = {}
    for v in order:
        neighbors = set(adjacency[v])
        bag_of[v] = len(bags)
        bags.append(frozenset(neighbors | {v}))
        for a in neighbors:
            adjacency[a] |= neighbors - {a}
            adjacency[a].discard(v)
    edges = []
    for v in order:
        later = bags[bag_of[v]] - {v}
        if later:
            edges.append((bag_of[v], bag_of[min(later, key=position.get)]))
    return _drop_empty_bags(TreeDecomposition(bags, edges))


def _exact_elimination_order(graph, upper):
    """Elimination order of width below `upper`, or None if there is none.

    Dynamic programming over sets of eliminated vertices; states whose width
    already reaches `upper` are discarded.
    """
    vertices = sorted(graph.vertices)
    n = len(vertices)
    index = {v: i for i, v in enumerate(vertices)}
    adjacency = [0] * n
    for u, v in graph.edges:
        adjacency[index[u]] |= 1 << index[v]
        adjacency[index[v]] |= 1 << index[u]

    def degree_after(eliminated, i):
        visited = 1 << i
        frontier = [i]
        reached = 0
        while frontier:
            x = frontier.pop()
            fresh = adjacency[x] & ~visited
            visited |= fresh
            while fresh:
                low = fresh & -fresh
                y = low.bit_length() - 1
                fresh ^= low
                if eliminated >> y & 1:
                    frontier.append(y)
                else:
                    reached |= low
        return bin(reached).count('1')

    layer = {0: -1}
    came_from = {}
    for _ in range(n):
        next_layer = {}
        for eliminated, width in layer.items():
            for i in range(n):
                if eliminated >> i & 1:
                    continue
                value = max(width, degree_after(eliminated, i))
                if value >= upper:
                    continue
                state = eliminated | (1 << i)
                if state not in next_layer or value < next_layer[state]:
                    next_layer[state] = value
                    came_from[state] = (eliminated, i)
        layer = next_layer
    full = (1 << n) - 1
    if full not in layer:
        return None
    order = []
    state = full
    while state:
        state, i = came_from[state]
        order.append(vertices[i])
    return list(reversed(order))


def compute_td(graph, options=DEFAULT_OPTIONS):
    """Tree-decomposition of `graph`: exact width for small graphs, min-fill
    heuristic otherwise.

    :return: valid `TreeDecomposition`.
    """
    if graph.vertex_count == 0:
        return TreeDecomposition([], [])
    nx_graph = graph.to_networkx()
    heuristic_width, decomposition = \
        treewidth_min_fill_in(nx_graph)
    # Degeneracy is a lower bound on treewidth.
    degeneracy = max(nx.core_number(nx_graph).values(), default=0)
    if degeneracy < heuristic_width and \
            graph.vertex_count <= options.exact_treewidth_limit:
        order = _exact_elimination_order(graph, heuristic_width)
        if order is not None:
            td = _from_elimination_order(graph, order)
            logger.debug("Exact treewidth %d improves heuristic width %d.",
                         td.width, heuristic_width)
            return td
    nodes = sorted(decomposition.nodes, key=sorted)
    index = {bag: i for i, bag in enumerate(nodes)}
    td = _drop_empty_bags(TreeDecomposition(
        nodes, [(index[a], index[b]) for a, b in decomposition.edges]))
    # Vertices missing from the heuristic decomposition are isolated.
    missing = graph.vertices - frozenset().union(*td.bags)
    if missing:
        td = _drop_empty_bags(TreeDecomposition(
            td.bags + [frozenset([v]) for v in sorted(missing)], td.edges))
    logger.debug("Decomposition of width %d with %d bags.", td.width,
                 len(td.bags))
    return td
