"""Extremality of max-plus supereigenvectors.

Decides whether a solution x of A (x) x >= x is an extremal of the solution
space from its tangent digraph, in O(n^2), and backs every negative verdict
with an explicit decomposition x = x1 (+) x2.
"""

from .core import (
    BOTTOM,
    DimensionError,
    MaxPlusMatrix,
    MaxPlusVector,
    NotASolutionError,
    is_solution,
    mat_vec,
    oplus,
    otimes,
    scalar,
    scale,
    tight_rows,
)
from .extremality import Condition, ExtremalityVerdict, InvariantError, check
from .oracle import extremal_bruteforce, is_feasible_fixed_set
from .tangent import NodeClass, TangentDigraph, build, classify_node, variable_nodes
from .witness import WitnessPair, find_witness, verify_decomposition

__version__ = "0.1.0"

__all__ = [
    "BOTTOM",
    "Condition",
    "DimensionError",
    "ExtremalityVerdict",
    "InvariantError",
    "MaxPlusMatrix",
    "MaxPlusVector",
    "NodeClass",
    "NotASolutionError",
    "TangentDigraph",
    "WitnessPair",
    "build",
    "check",
    "classify_node",
    "extremal_bruteforce",
    "find_witness",
    "is_feasible_fixed_set",
    "is_solution",
    "mat_vec",
    "oplus",
    "otimes",
    "scalar",
    "scale",
    "tight_rows",
    "variable_nodes",
    "verify_decomposition",
]
