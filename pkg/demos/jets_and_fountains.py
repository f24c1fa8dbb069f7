"""
The fountain branch: jets and disjoint cycles
=============================================

When every node of the tangent digraph but one (o) has a single incoming arc,
the reversed digraph is an o-fountain.  Following unique successors from o
traces "jets"; a jet ending in a cycle away from o, or nodes left over after
covering everything reachable from o, expose two node-disjoint cycles.
"""

from collections import Counter

import numpy as np

from maxplus_extremal import MaxPlusMatrix, MaxPlusVector, build, check
from maxplus_extremal.extremality import has_two_disjoint_cycles_bruteforce, jet_scan
from maxplus_extremal.tangent import reverse


def realise(n, arcs, seed=0):
    """Matrix whose tangent digraph at a random integer x is exactly ``arcs``."""
    rng = np.random.default_rng(seed)
    x = rng.integers(-5, 6, size=n)
    vals = x[:, None] - x[None, :] - rng.integers(1, 4, size=(n, n))
    finite = rng.random((n, n)) < 0.3
    for j, i in arcs:
        vals[i, j] = x[i] - x[j]
        finite[i, j] = True
    return MaxPlusMatrix.from_integers(vals, finite), MaxPlusVector(x.tolist())


###############################################################################
# Node 0 receives arcs from two cycles {1,2,3} and {4,5}.  Node 0 itself has
# no out-arc, so it is the only variable node and the verdict hinges on the
# cycle structure.

arcs = {(1, 2), (2, 3), (3, 1), (4, 5), (5, 4), (1, 0), (4, 0)}
A, x = realise(6, arcs)
g = build(A, x)
jets = jet_scan(reverse(g), 0)
print("sigma-cycles found by the jets:", jets.sigma_cycles)

counter = Counter()
verdict = check(A, x, counter)
print("extremal:", verdict.is_extremal, "| violated:", verdict.violated_condition.value)
print("cycles:", verdict.cycles)
print("brute force agrees:", has_two_disjoint_cycles_bruteforce(g) == (verdict.cycles is not None))
print("max traversals of one arc:", max(counter.values()))

###############################################################################
# Merge the two cycles into one and the same shape becomes extremal.

arcs = {(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 0), (4, 0)}
A, x = realise(6, arcs, seed=1)
print("single cycle, extremal:", check(A, x).is_extremal)
