from collections import Counter

import pytest

from conftest import one_based
from generators import fountain_instance, tight_instance
from maxplus_extremal.core import BOTTOM, MaxPlusMatrix, MaxPlusVector, NotASolutionError
from maxplus_extremal.extremality import (
    Condition,
    ExtremalityVerdict,
    InvariantError,
    check,
    check_digraph,
    elementary_cycles,
    has_two_disjoint_cycles_bruteforce,
    jet_scan,
    remainder_after_cover,
)
from maxplus_extremal.tangent import (
    TangentDigraph,
    build,
    components,
    is_weakly_connected,
    reverse,
    variable_nodes,
)


def small_instances():
    for n in range(2, 7):
        for seed in range(60):
            yield tight_instance(n, seed)
            yield fountain_instance(n, seed)


def test_example_verdicts(example_A, x_one, x_two):
    assert check(example_A, x_one).is_extremal
    v = check(example_A, x_two)
    assert not v.is_extremal
    assert v.violated_condition is Condition.ISOLATED_SUBSET
    assert v.isolated_set in (frozenset(one_based({1, 2, 3})), frozenset(one_based({4, 5})))


def test_single_support_is_extremal():
    A = MaxPlusMatrix([[BOTTOM, 3], [0, 1]])
    assert check(A, MaxPlusVector([BOTTOM, 0])).is_extremal


def test_check_rejects_bad_input(example_A):
    with pytest.raises(NotASolutionError):
        check(example_A, MaxPlusVector.bottom(5))
    with pytest.raises(NotASolutionError):
        check(MaxPlusMatrix([[-1]]), MaxPlusVector([0]))


def test_verdict_consistency_guard():
    with pytest.raises(ValueError):
        ExtremalityVerdict(True, Condition.ISOLATED_SUBSET)
    with pytest.raises(ValueError):
        ExtremalityVerdict(False)


# fountains are given directly in scanning orientation
def test_jets_merge_into_one_sigma():
    # o=0 -> 1 -> 3, o -> 2 -> 3, 3 -> 4 -> 3
    g = TangentDigraph(range(5), [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (4, 3)])
    s = jet_scan(g, 0)
    assert s.sigma_cycles == {(3, 4)}
    assert not s.has_o_cycle


def test_o_loop_and_sigma_coexist():
    g = TangentDigraph(range(3), [(0, 0), (0, 1), (1, 2), (2, 1)])
    s = jet_scan(g, 0)
    assert s.has_o_cycle and s.o_cycle == (0,)
    assert s.sigma_cycles == {(1, 2)}


def test_star_walk():
    # o -> p -> q -> p, and o -> q
    g = TangentDigraph(range(3), [(0, 1), (0, 2), (1, 2), (2, 1)])
    s = jet_scan(g, 0)
    assert s.sigma_cycles == {(1, 2)}
    assert not s.has_o_cycle


def test_jet_through_earlier_o_cycle():
    # o -> 1 -> 2 -> o, and o -> 3 -> 2: the second jet joins the o-cycle
    g = TangentDigraph(range(4), [(0, 1), (1, 2), (2, 0), (0, 3), (3, 2)])
    s = jet_scan(g, 0)
    assert s.has_o_cycle and not s.sigma_cycles
    assert [t["kind"] for t in s.jet_traces] == ["o", "o"]


def test_jet_scan_requires_fountain():
    with pytest.raises(InvariantError):
        jet_scan(TangentDigraph(range(2), [(0, 1), (1, 0)]), 0)
    with pytest.raises(InvariantError):
        jet_scan(TangentDigraph(range(3), [(0, 1), (0, 2), (1, 1), (2, 0)]), 0)


def test_remainder():
    covered = TangentDigraph(range(4), [(0, 1), (0, 2), (1, 0), (2, 1), (3, 2)])
    assert remainder_after_cover(covered, 0) == set()
    split = TangentDigraph(range(5), [(0, 1), (0, 0), (1, 0), (2, 3), (3, 2), (4, 3)])
    assert remainder_after_cover(split, 0) == {2, 3, 4}
    one_cycle = TangentDigraph(range(3), [(0, 1), (0, 0), (1, 2), (2, 0)])
    assert remainder_after_cover(one_cycle, 0) == set()


def test_bruteforce_cycles(example_A, x_one, x_two):
    assert has_two_disjoint_cycles_bruteforce(build(example_A, x_two))
    assert not has_two_disjoint_cycles_bruteforce(build(example_A, x_one))
    assert not has_two_disjoint_cycles_bruteforce(TangentDigraph([0], [(0, 0)]))
    assert sorted(elementary_cycles(build(example_A, x_two))) == [(0, 1), (3, 4)]
    with pytest.raises(ValueError):
        has_two_disjoint_cycles_bruteforce(TangentDigraph(range(13), []))


def test_elementary_cycles_complete_digraph():
    # K3 with loops: 3 loops, 3 two-cycles, 2 three-cycles
    g = TangentDigraph(range(3), [(i, j) for i in range(3) for j in range(3)])
    assert len(elementary_cycles(g)) == 8


def _evidence_ok(g, v):
    if v.violated_condition is Condition.ISOLATED_SUBSET:
        w = v.isolated_set
        return 0 < len(w) < len(g.nodes) and all((a in w) == (b in w) for a, b in g.arcs)
    if v.violated_condition is Condition.DISJOINT_CYCLES:
        c1, c2 = v.cycles
        if set(c1) & set(c2):
            return False
        return all(g.has_arc(c[k], c[(k + 1) % len(c)]) for c in (c1, c2) for k in range(len(c)))
    i, j = v.variable_pair
    return i != j and {i, j} <= variable_nodes(g)


def test_verdicts_match_the_three_conditions():
    for A, x in small_instances():
        v = check(A, x)
        g = build(A, x)
        if v.is_extremal:
            assert is_weakly_connected(g)
            assert len(variable_nodes(g)) <= 1
            assert not has_two_disjoint_cycles_bruteforce(g)
        else:
            assert _evidence_ok(g, v), (A, x, v)


def test_no_variable_nodes_means_unique_in_arcs():
    for A, x in small_instances():
        g = build(A, x)
        if len(g.nodes) > 1 and not variable_nodes(g):
            assert all(d == 1 for d in g.in_degree.values())


def test_scaling_invariance():
    for k, (A, x) in enumerate(small_instances()):
        assert check(A, x) == check(A, x.shift(k % 13 - 6))


def test_arc_budget():
    for A, x in small_instances():
        counter = Counter()
        v = check(A, x, counter)
        if counter:
            assert v.branch in ("jets", "cover")
            rev = reverse(build(A, x))
            assert set(counter) <= rev.arcs
            assert max(counter.values()) <= 3


def test_check_digraph_handles_components_with_cycles():
    # two 2-cycles joined by nothing: isolated sets
    g = TangentDigraph(range(4), [(0, 1), (1, 0), (2, 3), (3, 2)])
    v = check_digraph(g)
    assert v.violated_condition is Condition.ISOLATED_SUBSET
    assert v.isolated_set == components(g)[0]
