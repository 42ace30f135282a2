"""Exact and randomized algorithms for the Orthogonal Vectors problem."""
from __future__ import annotations

from .core import (BitVector, Family, Instance, PlantedInstance, gen_planted, gen_random,
                   is_orthogonal, parse_bitstring)
from .folklore import count_kov_folklore, decide_kov_folklore, down_closure, superset_counts
from .io import FormatError, read_instance, read_setcover, write_instance, write_setcover
from .kov import KovConfig, decide_setcover_via_ov, reduce_setcover, solve_kov
from .mitm import solve_2ov_mitm
from .oracle import BudgetExceeded, count_brute, decide_brute, decide_setcover_brute
from .params import epsilon_table, exponents, landscape, optimize_lambda
from .representation import ReprConfig, solve_2ov_repr

__version__ = "0.1.0"

__all__ = [
    "BitVector", "Family", "Instance", "PlantedInstance", "gen_planted", "gen_random",
    "is_orthogonal", "parse_bitstring",
    "count_kov_folklore", "decide_kov_folklore", "down_closure", "superset_counts",
    "FormatError", "read_instance", "read_setcover", "write_instance", "write_setcover",
    "KovConfig", "decide_setcover_via_ov", "reduce_setcover", "solve_kov",
    "solve_2ov_mitm",
    "BudgetExceeded", "count_brute", "decide_brute", "decide_setcover_brute",
    "epsilon_table", "exponents", "landscape", "optimize_lambda",
    "ReprConfig", "solve_2ov_repr",
]
