"""
Cross-checking the graph test against brute force
=================================================

For small supports, extremality can be decided straight from the
definition: x is not extremal iff two solutions below x, each touching x on
a proper subset of the support, together cover the support.  This script
compares that oracle with the linear-time graph test on seeded instances.
"""

from collections import Counter

from maxplus_extremal import check, extremal_bruteforce, find_witness, verify_decomposition
from maxplus_extremal.instance import random_instance

tally = Counter()
for seed in range(300):
    n = 2 + seed % 5
    A, x = random_instance(n, (0.3, 0.6, 1.0)[seed % 3], (-5, 5), seed)
    fast = check(A, x)
    slow = extremal_bruteforce(A, x)
    tally["agree" if fast.is_extremal == slow.is_extremal else "DISAGREE"] += 1
    if not fast.is_extremal:
        tally[fast.violated_condition.value] += 1
        tally["witness ok"] += verify_decomposition(A, x, find_witness(A, x, fast))

###############################################################################
# Most dense random instances carry several variable nodes, so the
# TWO_VARIABLE_NODES condition dominates the tally.

for key, count in sorted(tally.items()):
    print(f"{key:>20}: {count}")
