"""Explicit decompositions x = x1 (+) x2 certifying non-extremality.

Each constructor lowers a block of coordinates of x by a single positive step
chosen so that every row that loses its support from the block stays
satisfied.  Steps that may be any positive number are pinned to 1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import BOTTOM, MaxPlusMatrix, MaxPlusVector, is_solution, require_solution
from .extremality import Condition, ExtremalityVerdict
from .tangent import TangentDigraph, build, classify_node

__all__ = [
    "WitnessPair",
    "WitnessError",
    "lower_variable",
    "decompose_two_variables",
    "decompose_isolated",
    "decompose_disjoint_cycles",
    "find_witness",
    "verify_decomposition",
]

DEFAULT_STEP = Fraction(1)


class WitnessError(ValueError):
    pass


@dataclass(frozen=True)
class WitnessPair:
    x1: MaxPlusVector
    x2: MaxPlusVector
    provenance: str = ""


def verify_decomposition(A: MaxPlusMatrix, x: MaxPlusVector, pair: WitnessPair) -> bool:
    """Exact check that x1, x2 are solutions below x, both differ from x, and x1 (+) x2 = x."""
    x1, x2 = pair.x1, pair.x2
    if not (len(x1) == len(x2) == len(x) == A.n):
        return False
    return (
        is_solution(A, x1)
        and is_solution(A, x2)
        and x1 <= x
        and x2 <= x
        and x1 != x
        and x2 != x
        and x1.oplus(x2) == x
    )


def _slack(A, x, i, j):
    """a_ij + x_j - x_i, or None when a_ij + x_j is BOTTOM."""
    a, xj = A[i, j], x[j]
    if a is BOTTOM or xj is BOTTOM:
        return None
    return a + xj - x[i]


def lower_variable(A: MaxPlusMatrix, x: MaxPlusVector, i: int, g: TangentDigraph | None = None) -> MaxPlusVector:
    """Lower the variable coordinate i alone while staying a solution.

    Rows j that are satisfied only through x_i, strictly, bound the new value
    from below by max(x_j - a_ji); with no such row the step is 1.
    """
    if g is None:
        g = build(A, x)
    if i not in g.in_degree:
        raise WitnessError(f"node {i} is outside the support")
    if not classify_node(g, i).is_variable:
        raise WitnessError(f"node {i} is invariable; it cannot be lowered alone")
    supp = x.support()
    bounds = []
    for j in supp:
        if j == i:
            continue
        s = _slack(A, x, j, i)
        if s is None or s <= 0:
            continue
        if all((t := _slack(A, x, j, k)) is None or t < 0 for k in supp if k != i):
            bounds.append(x[j] - A[j, i])
    new = max(bounds) if bounds else x[i] - DEFAULT_STEP
    return x.with_entries({i: new})


def decompose_two_variables(A: MaxPlusMatrix, x: MaxPlusVector, i: int, j: int) -> WitnessPair:
    if i == j:
        raise WitnessError("need two distinct variable nodes")
    g = build(A, x)
    return WitnessPair(lower_variable(A, x, i, g), lower_variable(A, x, j, g), "two-variable-nodes")


def _lower_block(A: MaxPlusMatrix, x: MaxPlusVector, block: frozenset, keep_out: frozenset) -> MaxPlusVector:
    """Lower ``block`` uniformly.

    Rows of ``keep_out`` whose only entries reaching x_i come strictly from the
    block cap the step at min_i max_j (a_ij + x_j - x_i), taken over block j.
    """
    n = len(x)
    dependent = []
    for i in keep_out:
        outside = [_slack(A, x, i, k) for k in range(n) if k not in block]
        if all(s is None or s < 0 for s in outside):
            gains = [s for k in block if (s := _slack(A, x, i, k)) is not None and s > 0]
            if not gains:
                raise WitnessError(f"row {i} cannot be satisfied; the block is not a valid lowering set")
            dependent.append(max(gains))
    step = min(dependent) if dependent else DEFAULT_STEP
    return x.with_entries({k: x[k] - step for k in block})


def decompose_isolated(A: MaxPlusMatrix, x: MaxPlusVector, w1: Iterable[int]) -> WitnessPair:
    """Lower an isolated node set and, separately, its complement."""
    g = build(A, x)
    supp = frozenset(x.support())
    w1 = frozenset(w1)
    w2 = supp - w1
    if not w1 or not w2 or not w1 <= supp:
        raise WitnessError("isolated set must be a proper non-empty subset of the support")
    if any((j in w1) != (i in w1) for j, i in g.arcs):
        raise WitnessError("node set is not isolated in the tangent digraph")
    x1 = _lower_block(A, x, w1, w2)
    x2 = _lower_block(A, x, w2, w1)
    return WitnessPair(x1, x2, "isolated-subset")


def _reach_avoiding(g: TangentDigraph, sources: Iterable[int], banned: set) -> set:
    seen = set(sources)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in g.successors(v):
            if w not in seen and w not in banned:
                seen.add(w)
                queue.append(w)
    return seen


def _is_cycle_of(g: TangentDigraph, cycle) -> bool:
    cycle = tuple(cycle)
    if not cycle or len(set(cycle)) != len(cycle):
        return False
    return all(g.has_arc(cycle[k], cycle[(k + 1) % len(cycle)]) for k in range(len(cycle)))


def decompose_disjoint_cycles(A: MaxPlusMatrix, x: MaxPlusVector, sigma1, sigma2) -> WitnessPair:
    """Lower everything each cycle reaches without passing through the other."""
    g = build(A, x)
    c1, c2 = set(sigma1), set(sigma2)
    if c1 & c2:
        raise WitnessError("cycles share a node")
    if not (_is_cycle_of(g, sigma1) and _is_cycle_of(g, sigma2)):
        raise WitnessError("not an elementary cycle of the tangent digraph")
    block1 = frozenset(_reach_avoiding(g, c1, c2))
    # a node outside block1 reachable from sigma2 avoiding sigma1 has such a path avoiding block1 too
    block2 = frozenset(_reach_avoiding(g, c2, c1 | block1))
    rest = frozenset(x.support()) - block1 - block2
    x1 = _lower_block(A, x, block1, rest)
    x2 = _lower_block(A, x, block2, rest)
    return WitnessPair(x1, x2, "disjoint-cycles")


def find_witness(A: MaxPlusMatrix, x: MaxPlusVector, verdict: ExtremalityVerdict) -> WitnessPair:
    if verdict.is_extremal:
        raise WitnessError("an extremal solution has no decomposition")
    require_solution(A, x)
    cond = verdict.violated_condition
    if cond is Condition.ISOLATED_SUBSET:
        pair = decompose_isolated(A, x, verdict.isolated_set)
    elif cond is Condition.DISJOINT_CYCLES:
        pair = decompose_disjoint_cycles(A, x, *verdict.cycles)
    elif cond is Condition.TWO_VARIABLE_NODES:
        pair = decompose_two_variables(A, x, *verdict.variable_pair)
    else:
        raise WitnessError(f"unknown condition {cond!r}")
    if not verify_decomposition(A, x, pair):
        raise WitnessError("constructed pair does not verify; the verdict may be stale")
    return pair
