"""
Deciding extremality on a small example
=======================================

A 5x5 max-plus matrix with two solutions of A (x) x >= x: one extremal,
one that splits into two smaller solutions.
"""

from maxplus_extremal import BOTTOM, MaxPlusMatrix, MaxPlusVector, build, check, find_witness, verify_decomposition
from maxplus_extremal.tangent import node_classes, to_dot

B = BOTTOM
A = MaxPlusMatrix([
    [-5, 0, B, B, B],
    [0, B, B, B, B],
    [0, B, B, B, B],
    [B, B, -3, B, 0],
    [B, B, B, 0, B],
])

###############################################################################
# The tangent digraph at x1 has an arc (j, i) whenever row i is tight and the
# maximum is attained at column j.  Node labels below are 1-based.

x1 = MaxPlusVector([0, 0, 0, -3, B])
g1 = build(A, x1)
print("arcs at x1:", sorted((j + 1, i + 1) for j, i in g1.arcs))
for v, c in node_classes(g1).items():
    print(f"  node {v + 1}: {c.value}")

verdict = check(A, x1)
print("x1 extremal:", verdict.is_extremal, "| decided by", verdict.branch)

###############################################################################
# At the all-zero vector the digraph falls apart into two pieces, so x2 is
# the max of two solutions supported on each piece.

x2 = MaxPlusVector([0] * 5)
verdict = check(A, x2)
print("x2 extremal:", verdict.is_extremal, "| violated:", verdict.violated_condition.value)
print("isolated set:", sorted(v + 1 for v in verdict.isolated_set))

pair = find_witness(A, x2, verdict)
print("x2 =", pair.x1.tokens(), "(+)", pair.x2.tokens())
print("verified:", verify_decomposition(A, x2, pair))

###############################################################################
# Graphviz rendering of the second digraph (pipe into ``dot -Tpng``).

print(to_dot(build(A, x2)))
