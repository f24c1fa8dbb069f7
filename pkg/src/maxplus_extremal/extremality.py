"""Linear-time extremality test for solutions of A (x) x >= x.

A solution is extremal iff its tangent digraph is weakly connected, has no
two node-disjoint cycles, and has at most one variable node.  The second
condition is only decided on the graphs where it matters: with one variable
node and all in-degrees at most one it follows from connectivity; otherwise
the reversed digraph is an o-fountain and the cycles are found by walking the
jets out of o and covering what they reach.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .core import MaxPlusMatrix, MaxPlusVector, require_solution
from .tangent import (
    TangentDigraph,
    build,
    components,
    reverse,
    variable_nodes,
)

__all__ = [
    "Condition",
    "ExtremalityVerdict",
    "JetSummary",
    "InvariantError",
    "check",
    "check_digraph",
    "jet_scan",
    "remainder_after_cover",
    "elementary_cycles",
    "has_two_disjoint_cycles_bruteforce",
    "canonical_cycle",
]

BRUTEFORCE_MAX_NODES = 12

Cycle = tuple  # nodes v0, v1, ..., v_{k-1} with arcs v0->v1->...->v0


class InvariantError(RuntimeError):
    """A structural fact guaranteed by the theory failed to hold at runtime."""


class Condition(enum.Enum):
    ISOLATED_SUBSET = "ISOLATED_SUBSET"
    DISJOINT_CYCLES = "DISJOINT_CYCLES"
    TWO_VARIABLE_NODES = "TWO_VARIABLE_NODES"


@dataclass(frozen=True)
class ExtremalityVerdict:
    is_extremal: bool
    violated_condition: Optional[Condition] = None
    isolated_set: Optional[frozenset] = None
    cycles: Optional[tuple[Cycle, Cycle]] = None
    variable_pair: Optional[tuple[int, int]] = None
    branch: str = ""

    def __post_init__(self):
        if self.is_extremal == (self.violated_condition is not None):
            raise ValueError("a verdict is extremal exactly when no condition is violated")

    def __bool__(self):
        return self.is_extremal


def canonical_cycle(cycle) -> Cycle:
    """Rotate a cycle so that its smallest node comes first."""
    cycle = tuple(cycle)
    k = cycle.index(min(cycle))
    return cycle[k:] + cycle[:k]


def _reversed_cycle(cycle: Cycle) -> Cycle:
    return canonical_cycle(tuple(reversed(cycle)))


@dataclass
class JetSummary:
    """Outcome of walking every jet out of o in an o-fountain.

    Cycles are given in the orientation of the scanned graph.
    """

    sigma_cycles: set = field(default_factory=set)
    o_cycle: Optional[Cycle] = None
    jet_traces: list = field(default_factory=list)

    @property
    def has_o_cycle(self) -> bool:
        return self.o_cycle is not None


def _unique_successor(g: TangentDigraph, v: int) -> int:
    return g.successors(v)[0]


def _assert_fountain(g: TangentDigraph, o: int) -> None:
    if o not in g.out_degree:
        raise InvariantError(f"node {o} is not in the digraph")
    if g.out_degree[o] < 2:
        raise InvariantError(f"node {o} has fewer than two outgoing arcs")
    for v in g.nodes:
        if v != o and (g.out_degree[v] != 1 or g.has_loop[v]):
            raise InvariantError(f"not an o-fountain: node {v} lacks a unique non-loop out-arc")


def jet_scan(g: TangentDigraph, o: int, counter: Counter | None = None) -> JetSummary:
    """Follow the unique-successor walk from each arc out of o.

    ``counter`` (optional) records how many times each arc is traversed.
    """
    _assert_fountain(g, o)
    summary = JetSummary()
    # node -> (jet id, position in that jet's path)
    owner: dict[int, tuple[int, int]] = {}
    outcome: list = []  # per jet: ("o", cycle) or ("sigma", cycle)
    paths: list[list[int]] = []

    def step(u, v):
        if counter is not None:
            counter[(u, v)] += 1

    for jid, first in enumerate(g.successors(o)):
        step(o, first)
        path = [o]
        cur = first
        while True:
            if cur == o:
                kind, cyc = "o", canonical_cycle(path)
                break
            if cur in owner:
                other, pos = owner[cur]
                if other == jid:
                    kind, cyc = "sigma", canonical_cycle(path[pos:])
                    break
                kind, cyc = outcome[other]
                if kind == "o" and summary.o_cycle is None:
                    tail = paths[other][pos:]
                    cyc = canonical_cycle(path + tail)
                break
            owner[cur] = (jid, len(path))
            path.append(cur)
            nxt = _unique_successor(g, cur)
            step(cur, nxt)
            cur = nxt
        outcome.append((kind, cyc))
        paths.append(path)
        if kind == "o":
            if summary.o_cycle is None:
                summary.o_cycle = cyc
        else:
            summary.sigma_cycles.add(cyc)
        summary.jet_traces.append({"first": first, "kind": kind, "cycle": cyc, "length": len(path)})
    return summary


def _cover(g: TangentDigraph, o: int, counter: Counter | None):
    reach = {o}
    stack = [o]
    while stack:
        v = stack.pop()
        for w in g.successors(v):
            if counter is not None:
                counter[(v, w)] += 1
            if w not in reach:
                reach.add(w)
                stack.append(w)
    covered = set(reach)
    stack = list(reach)
    while stack:
        v = stack.pop()
        for u in g.predecessors(v):
            if counter is not None:
                counter[(u, v)] += 1
            if u not in covered:
                covered.add(u)
                stack.append(u)
    return covered


def remainder_after_cover(g: TangentDigraph, o: int, counter: Counter | None = None) -> frozenset[int]:
    """Nodes that neither are reachable from o nor can reach such a node."""
    _assert_fountain(g, o)
    covered = _cover(g, o, counter)
    return frozenset(v for v in g.nodes if v not in covered)


def _functional_cycle(g: TangentDigraph, start: int, counter: Counter | None = None) -> Cycle:
    seen: dict[int, int] = {}
    path = []
    v = start
    while v not in seen:
        seen[v] = len(path)
        path.append(v)
        w = _unique_successor(g, v)
        if counter is not None:
            counter[(v, w)] += 1
        v = w
    return canonical_cycle(path[seen[v]:])


def check(A: MaxPlusMatrix, x: MaxPlusVector, counter: Counter | None = None) -> ExtremalityVerdict:
    """Decide whether the solution x is an extremal of the solution space.

    ``counter`` collects arc traversals of the jet and cover phases, keyed by
    arcs of the reversed tangent digraph.
    """
    require_solution(A, x)
    if len(x.support()) == 1:
        return ExtremalityVerdict(True, branch="single-support")
    return check_digraph(build(A, x), counter)


def check_digraph(g: TangentDigraph, counter: Counter | None = None) -> ExtremalityVerdict:
    """Run the decision procedure on an already built tangent digraph."""
    if len(g.nodes) == 1:
        return ExtremalityVerdict(True, branch="single-support")

    var = sorted(variable_nodes(g))
    if len(var) > 1:
        return ExtremalityVerdict(
            False, Condition.TWO_VARIABLE_NODES, variable_pair=(var[0], var[1]), branch="variable-count"
        )

    if all(d <= 1 for d in g.in_degree.values()):
        comps = components(g)
        if len(comps) > 1:
            return ExtremalityVerdict(
                False, Condition.ISOLATED_SUBSET, isolated_set=comps[0], branch="unique-in-arcs"
            )
        return ExtremalityVerdict(True, branch="unique-in-arcs")

    # exactly one variable node here; all-invariable graphs have in-degrees 1
    if len(var) != 1:
        raise InvariantError("a node with two incoming arcs but no variable node")
    heavy = [v for v in g.nodes if g.in_degree[v] >= 2]
    if len(heavy) != 1:
        raise InvariantError(f"expected one node with in-degree >= 2, found {len(heavy)}")
    o = heavy[0]
    rev = reverse(g)
    jets = jet_scan(rev, o, counter)
    sigmas = sorted(jets.sigma_cycles)
    if jets.has_o_cycle and sigmas:
        pair = (_reversed_cycle(jets.o_cycle), _reversed_cycle(sigmas[0]))
        return ExtremalityVerdict(False, Condition.DISJOINT_CYCLES, cycles=pair, branch="jets")
    if len(sigmas) >= 2:
        pair = (_reversed_cycle(sigmas[0]), _reversed_cycle(sigmas[1]))
        return ExtremalityVerdict(False, Condition.DISJOINT_CYCLES, cycles=pair, branch="jets")

    rest = remainder_after_cover(rev, o, counter)
    if rest:
        inner = jets.o_cycle if jets.has_o_cycle else sigmas[0]
        outer = _functional_cycle(rev, min(rest), counter)
        pair = (_reversed_cycle(inner), _reversed_cycle(outer))
        return ExtremalityVerdict(False, Condition.DISJOINT_CYCLES, cycles=pair, branch="cover")
    return ExtremalityVerdict(True, branch="cover")


def elementary_cycles(g: TangentDigraph) -> list[Cycle]:
    """All elementary cycles (loops included), each rooted at its smallest node.

    Plain DFS from each root through larger nodes only; exponential, meant
    for small test graphs.
    """
    out = []
    for root in g.nodes:
        if g.has_loop[root]:
            out.append((root,))
        stack = [(root, [root], {root})]
        while stack:
            v, path, on_path = stack.pop()
            for w in g.successors(v):
                if w == root and len(path) > 1:
                    out.append(tuple(path))
                elif w > root and w not in on_path:
                    stack.append((w, path + [w], on_path | {w}))
    return out


def has_two_disjoint_cycles_bruteforce(g: TangentDigraph) -> bool:
    if len(g.nodes) > BRUTEFORCE_MAX_NODES:
        raise ValueError(f"brute-force cycle search is capped at {BRUTEFORCE_MAX_NODES} nodes")
    cycles = [frozenset(c) for c in elementary_cycles(g)]
    return any(not (c1 & c2) for c1, c2 in combinations(cycles, 2))
