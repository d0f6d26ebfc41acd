import pytest

from mapwit.src.records import Mode, Provenance, Record, RecordEntry
from mapwit.src.sketch import compute_sketch
from mapwit.src.test_utils import edge_witness


def entry(witness, bag, in_kmap, in_hole_free, detail=None, carried=True):
    return RecordEntry(compute_sketch(witness, bag), in_kmap, in_hole_free,
                       Provenance('LEAF', (), detail), witness, carried)


def test_mode():
    with pytest.raises(ValueError):
        Mode(k=0)
    assert Mode().admits_degree(100)
    assert Mode(k=3).admits_degree(3)
    assert not Mode(k=3).admits_degree(4)


def test_add_prefers_flags():
    record = Record({0, 1})
    record.add(entry(edge_witness(), {0, 1}, False, False))
    record.add(entry(edge_witness(), {0, 1}, True, True))
    record.add(entry(edge_witness(), {0, 1}, True, False))
    assert len(record) == 1
    kept = record.sorted_entries()[0]
    assert kept.in_kmap and kept.in_hole_free


def test_pruned():
    record = Record({0, 1})
    record.add(entry(edge_witness(), {0, 1}, True, False))
    kmap = Mode(k=2)
    hole_free = Mode(k=2, hole_free=True)
    assert len(record.pruned(kmap)) == len(record.subrecord(kmap))
    assert len(record.pruned(hole_free)) == 0
    assert record.pruned(kmap).bag == record.bag


def test_hole_free_implies_kmap():
    with pytest.raises(AssertionError):
        entry(edge_witness(), {0, 1}, False, True)


def test_witness_is_carried_in_certificate_mode_only():
    carried = entry(edge_witness(), {0, 1}, True, False)
    assert carried.witness is carried.state
    reduced = entry(edge_witness(), {0, 1}, True, False, carried=False)
    assert reduced.witness is None
    assert reduced.state.edge_count() == 2
