from dataclasses import dataclass


@dataclass(frozen=True)
class Options:
    """Tunable limits of the recognizer.

    `counter_cap` is the saturated value of edge counters; any boundary whose
    counters reach it can never become a face of a quadrangulation.
    `sketch_bound_factor` times the bag size is the sketch size above which
    a warning is logged.
    """
    oracle_vertex_limit: int = 6
    exact_treewidth_limit: int = 20
    sketch_bound_factor: int = 12
    counter_cap: int = 5
    keep_records: bool = False
    prune: bool = True


DEFAULT_OPTIONS = Options()
