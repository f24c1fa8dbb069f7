"""Tangent digraph of a solution and the variable/invariable node classes.

The tangent digraph at x has node set Supp(x) and an arc (j, i) whenever row
i is tight, ``max_k(a_ik + x_k) = x_i``, and the maximum is attained at j.
Nodes are 0-based indices into x.
"""

from __future__ import annotations

import enum
from typing import Iterable

import numpy as np

from .core import MaxPlusMatrix, MaxPlusVector, _row_maxima, require_solution

__all__ = [
    "NodeClass",
    "TangentDigraph",
    "build",
    "classify_node",
    "node_classes",
    "variable_nodes",
    "components",
    "is_weakly_connected",
    "reverse",
    "to_dot",
]


class NodeClass(enum.Enum):
    I_VARIABLE = "I-variable"
    II_VARIABLE = "II-variable"
    INVARIABLE = "invariable"

    @property
    def is_variable(self) -> bool:
        return self is not NodeClass.INVARIABLE


class TangentDigraph:
    """Digraph with adjacency lists and cached degrees.

    ``arcs`` holds pairs ``(tail, head)``.  Loops count towards both degrees.
    """

    __slots__ = ("nodes", "arcs", "_succ", "_pred", "in_degree", "out_degree", "has_loop")

    def __init__(self, nodes: Iterable[int], arcs: Iterable[tuple[int, int]]):
        self.nodes = tuple(sorted(set(nodes)))
        self.arcs = frozenset((int(j), int(i)) for j, i in arcs)
        node_set = set(self.nodes)
        succ = {v: [] for v in self.nodes}
        pred = {v: [] for v in self.nodes}
        for j, i in self.arcs:
            if j not in node_set or i not in node_set:
                raise ValueError(f"arc ({j}, {i}) leaves the node set")
            succ[j].append(i)
            pred[i].append(j)
        self._succ = {v: tuple(sorted(s)) for v, s in succ.items()}
        self._pred = {v: tuple(sorted(p)) for v, p in pred.items()}
        self.in_degree = {v: len(p) for v, p in self._pred.items()}
        self.out_degree = {v: len(s) for v, s in self._succ.items()}
        self.has_loop = {v: v in self._succ[v] for v in self.nodes}

    def successors(self, v: int) -> tuple[int, ...]:
        return self._succ[v]

    def predecessors(self, v: int) -> tuple[int, ...]:
        return self._pred[v]

    def has_arc(self, j: int, i: int) -> bool:
        return (j, i) in self.arcs

    def __len__(self):
        return len(self.nodes)

    def __eq__(self, other):
        if not isinstance(other, TangentDigraph):
            return NotImplemented
        return self.nodes == other.nodes and self.arcs == other.arcs

    def __hash__(self):
        return hash((self.nodes, self.arcs))

    def __repr__(self):
        return f"TangentDigraph(nodes={list(self.nodes)}, arcs={sorted(self.arcs)})"


def build(A: MaxPlusMatrix, x: MaxPlusVector) -> TangentDigraph:
    """Tangent digraph of the solution x, in one vectorised pass over A."""
    require_solution(A, x)
    vals, fin, rowmax, has_any, xn, xf, _ = _row_maxima(A, x)
    tight = xf & has_any & (rowmax == xn)
    attained = fin & tight[:, None] & (vals == rowmax[:, None])
    heads, tails = np.nonzero(attained)
    return TangentDigraph(x.support(), zip(tails.tolist(), heads.tolist()))


def classify_node(g: TangentDigraph, i: int) -> NodeClass:
    if i not in g.in_degree:
        raise KeyError(f"node {i} is not in the tangent digraph")
    proper = [j for j in g.successors(i) if j != i]
    if not proper:
        return NodeClass.I_VARIABLE
    if any(g.in_degree[j] == 1 for j in proper):
        return NodeClass.INVARIABLE
    return NodeClass.II_VARIABLE


def node_classes(g: TangentDigraph) -> dict[int, NodeClass]:
    return {v: classify_node(g, v) for v in g.nodes}


def variable_nodes(g: TangentDigraph) -> frozenset[int]:
    return frozenset(v for v in g.nodes if classify_node(g, v).is_variable)


def components(g: TangentDigraph) -> list[frozenset[int]]:
    """Weakly connected components, ordered by their smallest node."""
    seen: set[int] = set()
    out = []
    for root in g.nodes:
        if root in seen:
            continue
        seen.add(root)
        stack = [root]
        comp = [root]
        while stack:
            v = stack.pop()
            for w in g.successors(v) + g.predecessors(v):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        out.append(frozenset(comp))
    return out


def is_weakly_connected(g: TangentDigraph) -> bool:
    """True iff no proper non-empty node subset is isolated."""
    if not g.nodes:
        raise ValueError("empty digraph")
    return len(components(g)) == 1


def reverse(g: TangentDigraph) -> TangentDigraph:
    return TangentDigraph(g.nodes, ((i, j) for j, i in g.arcs))


def to_dot(g: TangentDigraph, classes: dict[int, NodeClass] | None = None, name: str = "tangent") -> str:
    """Graphviz text; nodes are labelled 1-based as ``i [class]``."""
    if classes is None:
        classes = node_classes(g)
    lines = [f"digraph {name} {{"]
    for v in g.nodes:
        lines.append(f'  {v + 1} [label="{v + 1} [{classes[v].value}]"];')
    for j, i in sorted(g.arcs):
        lines.append(f"  {j + 1} -> {i + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"
