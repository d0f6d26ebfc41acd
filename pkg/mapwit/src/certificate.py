"""JSON certificates: a witness with its rotation and position systems."""
import dataclasses
import hashlib
import json

from mapwit.src.embedding import EmbeddedGraph
from mapwit.src.errors import EmbeddingError, GraphFormatError
from mapwit.src.graph import format_graph
from mapwit.src.witness import verify_witness


def fingerprint(graph):
    return hashlib.sha256(format_graph(graph).encode('ascii')).hexdigest()[:16]


def _cyclic_min(sequence):
    sequence = list(sequence)
    return min(sequence[i:] + sequence[:i] for i in range(len(sequence)))


def _walk_vertices(witness, walk_id):
    if walk_id < 0:
        return [-1 - walk_id]
    return _cyclic_min(witness.tail(d) for d in witness.walks()[walk_id])


def certificate_document(graph, witness, k, hole_free):
    """Dictionary form of a certificate.

    :param graph: the recognized `Graph` (vertices 0, ..., n - 1).
    :param witness: simple `EmbeddedGraph` witness of `graph`.
    :param k: degree bound the witness was built for, None for map graphs.
    """
    position = []
    for face, walks in sorted(witness.faces().items()):
        position.append({'face': face, 'walks': sorted(
            _walk_vertices(witness, w) for w in walks)})
    report = verify_witness(graph, witness, hole_free)
    return {
        'n': graph.vertex_count,
        'k': k,
        'hole_free': hole_free,
        'fingerprint': fingerprint(graph),
        'intersections': [{'id': u, 'neighbors': sorted(witness.neighbors(u))}
                          for u in sorted(witness.intersections())],
        'rotation': {str(v): witness.neighbors(v)
                     for v in sorted(witness.vertices)},
        'position': position,
        'verification': dataclasses.asdict(report),
    }


def dump_certificate(document):
    return json.dumps(document, indent=2, sort_keys=True) + '\n'


def write_certificate(graph, witness, k, hole_free):
    return dump_certificate(certificate_document(graph, witness, k,
                                                 hole_free))


def parse_certificate(text):
    """Reads a certificate written by `write_certificate`.

    :return: (witness `EmbeddedGraph`, document dict).
    :raises GraphFormatError: on malformed JSON or inconsistent systems.
    """
    try:
        document = json.loads(text)
        n = int(document['n'])
        rotation = {int(v): [int(w) for w in ws]
                    for v, ws in document['rotation'].items()}
        neighborhoods = {int(entry['id']): sorted(entry['neighbors'])
                         for entry in document['intersections']}
        faces = [(int(entry['face']), [tuple(walk) for walk in
                                       entry['walks']])
                 for entry in document['position']]
    except (ValueError, KeyError, TypeError, AttributeError) as error:
        raise GraphFormatError("malformed certificate: %s" % error)
    if any(v not in rotation for v in range(n)):
        raise GraphFormatError("rotation misses a real vertex")
    for u, neighbors in sorted(neighborhoods.items()):
        if u < n:
            raise GraphFormatError("intersection id %d is a real id" % u)
        if sorted(rotation.get(u, ())) != neighbors:
            raise GraphFormatError("neighbors of %d disagree with rotation"
                                   % u)
    for v, ws in rotation.items():
        if len(set(ws)) != len(ws) or \
                any(v not in rotation.get(w, ()) for w in ws):
            raise GraphFormatError("rotation of %d is not symmetric" % v)
    face_of_walk = {}
    for face, walks in faces:
        for walk in walks:
            face_of_walk[tuple(_cyclic_min(walk))] = face
    draft = EmbeddedGraph.from_rotation(n, rotation)
    face_of = {}
    for w in draft.walks():
        key = tuple(_walk_vertices(draft, w))
        if key not in face_of_walk:
            raise GraphFormatError("walk %s has no face" % list(key))
        face_of[w] = face_of_walk[key]
    witness = draft.copy_with(face_of=face_of)
    try:
        witness.validate()
    except EmbeddingError as error:
        raise GraphFormatError("inconsistent embedding: %s" % error)
    return witness, document
