"""Exact dual-rail dyadic arithmetic on simulated spiking circuits."""

from ._core import (
    NotRepresentable,
    VnError,
    __version__,
    add,
    bit_group_response,
    build_netlist,
    complexity_table,
    constant,
    decode,
    encode,
    energy_estimate,
    mean_set_bits,
    negate,
    predecessor,
    run_netlist,
    spike_stats,
    structural_counts,
    successor,
    sum_tree,
    verify,
)

__all__ = [
    "NotRepresentable",
    "VnError",
    "__version__",
    "add",
    "bit_group_response",
    "build_netlist",
    "complexity_table",
    "constant",
    "decode",
    "encode",
    "energy_estimate",
    "mean_set_bits",
    "negate",
    "predecessor",
    "run_netlist",
    "spike_stats",
    "structural_counts",
    "successor",
    "sum_tree",
    "verify",
]
