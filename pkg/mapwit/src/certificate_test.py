import json

import pytest

from mapwit.src.certificate import (fingerprint, parse_certificate,
                                    write_certificate)
from mapwit.src.errors import GraphFormatError
from mapwit.src.test_utils import (complete_graph, cube_witness,
                                   k3_cycle_witness)


def test_round_trip():
    graph = complete_graph(4)
    text = write_certificate(graph, cube_witness(), 3, True)
    witness, document = parse_certificate(text)
    assert write_certificate(graph, witness, 3, True) == text
    assert witness.oriented_key(label_all=True) == \
        cube_witness().oriented_key(label_all=True)
    assert document['verification']['is_biconnected_quadrangulation']
    assert document['fingerprint'] == fingerprint(graph)


def test_document_fields():
    text = write_certificate(complete_graph(3), k3_cycle_witness(), 2, False)
    document = json.loads(text)
    assert document['n'] == 3
    assert document['k'] == 2
    assert [entry['neighbors'] for entry in document['intersections']] == \
        [[0, 1], [1, 2], [0, 2]]
    assert len(document['position']) == 2
    assert document['verification']['is_witness']


def test_fingerprint_depends_on_graph():
    assert fingerprint(complete_graph(3)) != fingerprint(complete_graph(4))
    assert len(fingerprint(complete_graph(3))) == 16


def test_malformed():
    with pytest.raises(GraphFormatError, match="malformed"):
        parse_certificate("not json")
    with pytest.raises(GraphFormatError, match="malformed"):
        parse_certificate("{}")

    document = json.loads(write_certificate(complete_graph(3),
                                            k3_cycle_witness(), 2, False))
    document['rotation']['0'] = [3]
    with pytest.raises(GraphFormatError, match="disagree|symmetric"):
        parse_certificate(json.dumps(document))

    document = json.loads(write_certificate(complete_graph(3),
                                            k3_cycle_witness(), 2, False))
    del document['rotation']['1']
    with pytest.raises(GraphFormatError, match="misses a real vertex"):
        parse_certificate(json.dumps(document))

    document = json.loads(write_certificate(complete_graph(3),
                                            k3_cycle_witness(), 2, False))
    document['position'] = document['position'][:1]
    with pytest.raises(GraphFormatError, match="has no face"):
        parse_certificate(json.dumps(document))
