"""SVG drawings of witnesses.

Each component is drawn with Tutte's barycentric method. Its rotation system
is first completed to a triangulated disk by networkx, keeping the embedding;
the vertices of the largest face go on a circle in face order and every
other vertex sits at the average of its neighbours in the completion.
"""
import logging

import networkx as nx
import numpy as np
from networkx.algorithms.planar_drawing import triangulate_embedding

logger = logging.getLogger(__name__)

SVG_HEADER = """<?xml version="1.0" standalone="no"?>
<svg width="%f" height="%f" version="1.1" xmlns="http://www.w3.org/2000/svg">
"""
SVG_FOOTER = "</svg>\n"

RADIUS = 1.0
GAP = 0.5


def _completion(witness, component):
    """Triangulated disk containing the component, and its outer face."""
    embedding = nx.PlanarEmbedding()
    embedding.set_data({v: witness.neighbors(v) for v in component})
    return triangulate_embedding(embedding, fully_triangulate=False)


def _component_positions(witness, component):
    if len(component) <= 2:
        outer, completion = sorted(component), None
    else:
        completion, outer = _completion(witness, component)
    positions = {}
    for i, v in enumerate(outer):
        angle = 2 * np.pi * i / len(outer)
        positions[v] = np.array([np.cos(angle), np.sin(angle)]) * RADIUS
    inner = sorted(component - set(outer))
    if not inner:
        return positions
    index = {v: i for i, v in enumerate(inner)}
    laplacian = np.zeros((len(inner), len(inner)))
    rhs = np.zeros((len(inner), 2))
    for v in inner:
        i = index[v]
        for w in completion.neighbors(v):
            laplacian[i, i] += 1
            if w in index:
                laplacian[i, index[w]] -= 1
            else:
                rhs[i] += positions[w]
    solution = np.linalg.solve(laplacian, rhs)
    for v in inner:
        positions[v] = solution[index[v]]
    return positions


def tutte_positions(witness):
    """Coordinates of every vertex; components are placed left to right.

    :return: dict vertex -> numpy array of shape (2,).
    """
    positions = {}
    offset = 0.0
    for component in witness.components():
        local = _component_positions(witness, component)
        width = 0.0 if len(component) == 1 else 2 * RADIUS
        for v, point in local.items():
            positions[v] = point + np.array([offset + width / 2, 0.0])
        offset += width + GAP
    return positions


def _orientation(a, b, c):
    return np.sign((b[0] - a[0]) * (c[1] - a[1]) -
                   (b[1] - a[1]) * (c[0] - a[0]))


def crossing_pairs(positions, edges):
    """Pairs of edges (as endpoint pairs) whose segments cross."""
    edges = sorted(set(tuple(sorted(e)) for e in edges))
    result = []
    for i, (a, b) in enumerate(edges):
        for c, d in edges[i + 1:]:
            if {a, b} & {c, d}:
                continue
            p, q, r, s = (positions[v] for v in (a, b, c, d))
            if (_orientation(p, q, r) * _orientation(p, q, s) < 0 and
                    _orientation(r, s, p) * _orientation(r, s, q) < 0):
                result.append(((a, b), (c, d)))
    return result


class SvgCanvas:
    """Accumulates SVG elements in window coordinates."""

    def __init__(self, scale=100.0, margin=20.0):
        self.scale = scale
        self.margin = margin
        self.elements = []

    def window(self, point, low):
        return (self.margin + self.scale * (point[0] - low[0]),
                self.margin + self.scale * (point[1] - low[1]))

    def line(self, a, b, color='grey', width=1.5):
        self.elements.append(
            '  <line x1="%f" y1="%f" x2="%f" y2="%f" '
            'style="stroke:%s;stroke-width:%f"/>\n' %
            (a[0], a[1], b[0], b[1], color, width))

    def disk(self, center, label, radius=9.0):
        self.elements.append(
            '  <circle cx="%f" cy="%f" r="%f" '
            'style="stroke:black;stroke-width:1;fill:white"/>\n' %
            (center[0], center[1], radius))
        self.text(center, label)

    def square(self, center, side=8.0):
        self.elements.append(
            '  <rect x="%f" y="%f" width="%f" height="%f" '
            'style="stroke:black;stroke-width:1;fill:black"/>\n' %
            (center[0] - side / 2, center[1] - side / 2, side, side))

    def text(self, center, label):
        self.elements.append(
            '  <text x="%f" y="%f" text-anchor="middle" '
            'dominant-baseline="central" '
            'style="font-family:Verdana;font-size:10">%s</text>\n' %
            (center[0], center[1], label))

    def render(self, width, height):
        return SVG_HEADER % (width, height) + ''.join(self.elements) + \
            SVG_FOOTER


def render_svg(witness, scale=100.0):
    """SVG drawing of a witness: real vertices as labelled disks,
    intersection vertices as squares.

    :param witness: `EmbeddedGraph` with a valid embedding.
    :return: SVG document as a string.
    """
    canvas = SvgCanvas(scale)
    positions = tutte_positions(witness)
    if not positions:
        return canvas.render(2 * canvas.margin, 2 * canvas.margin)
    points = np.array(list(positions.values()))
    low = points.min(axis=0)
    extent = points.max(axis=0) - low
    crossings = crossing_pairs(positions, witness.ends.values())
    if crossings:
        logger.warning("Drawing has %d crossing edge pairs.", len(crossings))
    window = {v: canvas.window(p, low) for v, p in positions.items()}
    for a, b in sorted(witness.ends.values()):
        canvas.line(window[a], window[b])
    for v in sorted(witness.vertices):
        if witness.is_real(v):
            canvas.disk(window[v], str(v + 1))
        else:
            canvas.square(window[v])
    return canvas.render(scale * extent[0] + 2 * canvas.margin,
                         scale * extent[1] + 2 * canvas.margin)


def write_svg(witness, filename):
    if not filename.endswith('.svg'):
        filename += '.svg'
    with open(filename, 'w') as svg_file:
        svg_file.write(render_svg(witness))
