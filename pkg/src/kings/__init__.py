"""Exact counts of maximum nonattacking-king arrangements on even-sided boards."""

from kings.bounds import BoundsProfile, bounds_profile, p_bound, q_bound
from kings.engine import (
    CountMatrix,
    CountResult,
    count_kings,
    count_kings_rect,
    init_matrix,
    sequence,
    step,
)
from kings.enumerator import BoardAssembly, enumerate_boards, render, successors
from kings.oracle import BoardGrid, OracleResult, oracle_count, oracle_enumerate, oracle_max_size
from kings.strips import StripIndex, StripLayout, compatible_by_grid, decode, encode

__version__ = "0.1.0"

__all__ = [
    "BoardAssembly",
    "BoardGrid",
    "BoundsProfile",
    "CountMatrix",
    "CountResult",
    "OracleResult",
    "StripIndex",
    "StripLayout",
    "bounds_profile",
    "compatible_by_grid",
    "count_kings",
    "count_kings_rect",
    "decode",
    "encode",
    "enumerate_boards",
    "init_matrix",
    "oracle_count",
    "oracle_enumerate",
    "oracle_max_size",
    "p_bound",
    "q_bound",
    "render",
    "sequence",
    "step",
    "successors",
]
