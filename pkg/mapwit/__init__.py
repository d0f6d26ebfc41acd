from .mapwit_main import (
    Graph,
    brute_force,
    certificate_to_witness,
    compute_td,
    format_graph,
    is_k_map_graph,
    is_valid_witness,
    minimum_k,
    witness_to_certificate,
    witness_to_svg,
)
