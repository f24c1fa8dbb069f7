"""Definition-level extremality oracle for small instances.

x fails to be extremal iff it is the max of two solutions below it, each
different from x.  Sorting candidates by the set E on which they still equal
x, that happens iff two feasible equality sets cover Supp(x).  A set E is
feasible iff the greatest solution under the cap "x on E, x - eps elsewhere"
keeps x on E.  The cap is handled symbolically: values are pairs
(integer, eps coefficient) compared lexicographically, which agrees with
every real eps in (0, 1) on integer data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import BOTTOM, MaxPlusMatrix, MaxPlusVector, require_solution
from .witness import WitnessPair

__all__ = [
    "PerturbedValue",
    "greatest_capped_solution",
    "feasible_fixed_set_solution",
    "is_feasible_fixed_set",
    "feasible_equality_sets",
    "extremal_bruteforce",
    "OracleResult",
    "MAX_SUPPORT",
]

MAX_SUPPORT = 12
EPS_INSTANCE = Fraction(1, 2)


@dataclass(frozen=True)
class PerturbedValue:
    """``base - eps_coeff * eps`` for an infinitesimal eps > 0."""

    base: int
    eps_coeff: int = 0

    def __post_init__(self):
        if self.eps_coeff not in (0, 1):
            raise ValueError("eps coefficient must be 0 or 1")

    @property
    def key(self) -> tuple[int, int]:
        return (self.base, -self.eps_coeff)

    def __lt__(self, other):
        return self.key < other.key

    def __le__(self, other):
        return self.key <= other.key

    def __gt__(self, other):
        return self.key > other.key

    def __ge__(self, other):
        return self.key >= other.key

    def plus(self, a: int) -> "PerturbedValue":
        return PerturbedValue(self.base + a, self.eps_coeff)

    def instantiate(self, eps: Fraction = EPS_INSTANCE) -> Fraction:
        return Fraction(self.base) - self.eps_coeff * eps


def _integer_matrix(A: MaxPlusMatrix) -> list[list[Optional[int]]]:
    if not A.is_integer():
        raise ValueError("the oracle needs integer matrix entries")
    return [[None if a is BOTTOM else int(a) for a in A.row(i)] for i in range(A.n)]


def greatest_capped_solution(A: MaxPlusMatrix, cap: Sequence) -> list:
    """Greatest y with y <= cap and y <= A (x) y, entries PerturbedValue or BOTTOM.

    Iterates y <- min(cap, A (x) y) from y = cap.  A coordinate that drops below
    min finite cap base - n*W - 1 (W the largest |a_ij|) is set to BOTTOM.
    """
    a = _integer_matrix(A)
    n = A.n
    if len(cap) != n:
        raise ValueError("cap length must match the matrix")
    y = [BOTTOM if c is BOTTOM else c for c in cap]
    finite_caps = [c.base for c in y if c is not BOTTOM]
    if not finite_caps:
        return y
    w = max((abs(v) for row in a for v in row if v is not None), default=0)
    floor = min(finite_caps) - n * w - 1
    while True:
        changed = False
        nxt = []
        for i in range(n):
            if y[i] is BOTTOM:
                nxt.append(BOTTOM)
                continue
            best = BOTTOM
            for k in range(n):
                if a[i][k] is None or y[k] is BOTTOM:
                    continue
                cand = y[k].plus(a[i][k])
                if best is BOTTOM or cand > best:
                    best = cand
            new = best if best is BOTTOM or best < y[i] else y[i]
            if new is not BOTTOM and new.base < floor:
                new = BOTTOM
            if new != y[i]:
                changed = True
            nxt.append(new)
        y = nxt
        if not changed:
            return y


def _integer_data(A: MaxPlusMatrix, x: MaxPlusVector):
    """Scale A and x by their common denominator; return (A_int, x_int, den)."""
    den = 1
    for v in list(x) + [a for r in A.rows() for a in r]:
        if v is not BOTTOM:
            den = math.lcm(den, v.denominator)
    Ai = MaxPlusMatrix([[a if a is BOTTOM else a * den for a in r] for r in A.rows()])
    xi = [None if v is BOTTOM else int(v * den) for v in x]
    return Ai, xi, den


def _feasible(Ai: MaxPlusMatrix, xi: list, support: Sequence[int], equal: frozenset):
    cap = [BOTTOM] * len(xi)
    for k in support:
        cap[k] = PerturbedValue(xi[k], 0 if k in equal else 1)
    y = greatest_capped_solution(Ai, cap)
    for v in y:
        if v is not BOTTOM and v.eps_coeff not in (0, 1):
            raise AssertionError("eps coefficient left {0, 1}")
    ok = all(y[k] is not BOTTOM and y[k] == PerturbedValue(xi[k], 0) for k in equal)
    return ok, y


def _instantiate(y: list, den: int) -> MaxPlusVector:
    return MaxPlusVector([BOTTOM if v is BOTTOM else v.instantiate() / den for v in y])


def _validate_pattern(x: MaxPlusVector, S: Iterable[int]) -> tuple[tuple[int, ...], frozenset]:
    supp = x.support()
    S = frozenset(S)
    if not S:
        raise ValueError("equality set must be non-empty")
    if not S <= set(supp):
        raise ValueError("equality set leaves the support")
    if len(S) == len(supp):
        raise ValueError("equality set must be a proper subset of the support")
    return supp, S


def feasible_fixed_set_solution(A: MaxPlusMatrix, x: MaxPlusVector, S: Iterable[int]) -> Optional[MaxPlusVector]:
    """A solution equal to x on S and strictly below x elsewhere, or None."""
    require_solution(A, x)
    supp, S = _validate_pattern(x, S)
    Ai, xi, den = _integer_data(A, x)
    ok, y = _feasible(Ai, xi, supp, S)
    return _instantiate(y, den) if ok else None


def is_feasible_fixed_set(A: MaxPlusMatrix, x: MaxPlusVector, S: Iterable[int]) -> bool:
    return feasible_fixed_set_solution(A, x, S) is not None


def feasible_equality_sets(A: MaxPlusMatrix, x: MaxPlusVector) -> dict[frozenset, MaxPlusVector]:
    """Every non-empty proper S of Supp(x) that is an exact equality set of some solution."""
    require_solution(A, x)
    supp = x.support()
    if len(supp) > MAX_SUPPORT:
        raise ValueError(f"oracle is capped at support size {MAX_SUPPORT}")
    Ai, xi, den = _integer_data(A, x)
    s = len(supp)
    out = {}
    for mask in range(1, (1 << s) - 1):
        S = frozenset(supp[b] for b in range(s) if mask >> b & 1)
        ok, y = _feasible(Ai, xi, supp, S)
        if ok:
            out[S] = _instantiate(y, den)
    return out


@dataclass(frozen=True)
class OracleResult:
    is_extremal: bool
    witness: Optional[WitnessPair] = None
    feasible_sets: int = 0

    def __bool__(self):
        return self.is_extremal


def extremal_bruteforce(A: MaxPlusMatrix, x: MaxPlusVector) -> OracleResult:
    """Exact extremality by subset enumeration; returns a witness pair when not extremal."""
    feas = feasible_equality_sets(A, x)
    supp = x.support()
    if len(supp) == 1:
        return OracleResult(True)
    bit = {v: b for b, v in enumerate(supp)}
    s = len(supp)
    full = (1 << s) - 1
    masks = {sum(1 << bit[v] for v in S): S for S in feas}
    # superset[m] = some feasible mask containing m, or -1
    superset = [-1] * (1 << s)
    for m in masks:
        superset[m] = m
    for b in range(s):
        for m in range(full, -1, -1):
            if not m >> b & 1 and superset[m] < 0 and superset[m | 1 << b] >= 0:
                superset[m] = superset[m | 1 << b]
    for m in sorted(masks):
        other = superset[full & ~m]
        if other >= 0:
            pair = WitnessPair(feas[masks[m]], feas[masks[other]], "oracle")
            return OracleResult(False, pair, len(feas))
    return OracleResult(True, None, len(feas))
