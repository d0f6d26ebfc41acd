"""Records of the dynamic programme: deduplicated sketches of one bag."""
from collections import namedtuple
from dataclasses import dataclass
from typing import Optional

Provenance = namedtuple('Provenance', ['operation', 'children', 'detail'])


@dataclass(frozen=True)
class Mode:
    """What is being recognized.

    k=None means no bound on intersection degrees (plain map graphs).
    """
    k: Optional[int] = None
    hole_free: bool = False
    certificate: bool = False

    def __post_init__(self):
        if self.k is not None and self.k < 1:
            raise ValueError("k must be at least 1, got %d." % self.k)

    def admits_degree(self, degree):
        return self.k is None or degree <= self.k


class RecordEntry:
    """One sketch of a record, with the embedded graph transitions work on.

    `state` is the partial witness itself in certificate mode (`carried`),
    otherwise its reduction by `reduce_state`. `in_kmap` marks membership in
    the k-map subrecord, `in_hole_free` in the hole-free one (which implies
    `in_kmap`).
    """

    def __init__(self, sketch, in_kmap, in_hole_free, provenance, state,
                 carried=False):
        assert in_kmap or not in_hole_free
        self.sketch = sketch
        self.state = state
        self.carried = carried
        self.in_kmap = in_kmap
        self.in_hole_free = in_hole_free
        self.provenance = provenance

    def __repr__(self):
        return "RecordEntry(%s, kmap=%s, hole_free=%s)" % (
            self.provenance.operation, self.in_kmap, self.in_hole_free)

    @property
    def key(self):
        return self.sketch.key

    @property
    def witness(self):
        """The carried partial witness, None outside certificate mode."""
        return self.state if self.carried else None

    def in_target(self, mode):
        return self.in_hole_free if mode.hole_free else self.in_kmap


class Record:
    """Entries of one bag keyed by canonical sketch key.

    When two entries share a key, the one in more subrecords wins, then the
    one with the smaller provenance encoding.
    """

    def __init__(self, bag):
        self.bag = frozenset(bag)
        self.entries = {}

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.sorted_entries())

    def __repr__(self):
        return "Record(bag=%s, %d entries)" % (sorted(self.bag), len(self))

    def keys(self):
        return set(self.entries)

    def add(self, entry):
        assert entry.sketch.bag == self.bag
        current = self.entries.get(entry.key)
        if current is None or _rank(entry) < _rank(current):
            self.entries[entry.key] = entry

    def sorted_entries(self):
        return [self.entries[key] for key in sorted(self.entries)]

    def pruned(self, mode):
        """Sub-record of the entries that can still lead to acceptance."""
        result = Record(self.bag)
        for entry in self.sorted_entries():
            if entry.in_target(mode):
                result.entries[entry.key] = entry
        return result

    def subrecord(self, mode):
        return [entry for entry in self.sorted_entries()
                if entry.in_target(mode)]


def _rank(entry):
    return (not entry.in_hole_free, not entry.in_kmap,
            repr(tuple(entry.provenance)))
