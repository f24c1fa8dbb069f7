"""Instance text format, verdict JSON, and seeded random instances.

File grammar (ASCII)::

    n
    <n lines of n tokens>
    <optional blank line>
    <optional line of n tokens: the vector x>

A token is an integer, a rational ``p/q`` or ``-inf`` (any case).  Node
indices in JSON documents are 1-based, matching row numbers in the file.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Optional

import numpy as np

from .core import MaxPlusMatrix, MaxPlusVector, format_scalar, is_solution, mat_vec, scalar
from .extremality import ExtremalityVerdict
from .witness import WitnessPair

__all__ = [
    "InstanceFormatError",
    "parse_instance",
    "parse_vector",
    "write_instance",
    "write_vector",
    "verdict_to_json",
    "verdict_schema",
    "random_instance",
]


class InstanceFormatError(ValueError):
    pass


def _tokens(line: str, n: int, what: str):
    parts = line.split()
    if len(parts) != n:
        raise InstanceFormatError(f"{what}: expected {n} tokens, got {len(parts)}")
    try:
        return [scalar(t) for t in parts]
    except (ValueError, TypeError) as exc:
        raise InstanceFormatError(f"{what}: {exc}") from None


def parse_instance(text: str) -> tuple[MaxPlusMatrix, Optional[MaxPlusVector]]:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise InstanceFormatError("empty instance")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise InstanceFormatError(f"first line must be the dimension, got {lines[0]!r}") from None
    if n < 1:
        raise InstanceFormatError("dimension must be positive")
    if len(lines) < 1 + n:
        raise InstanceFormatError(f"expected {n} matrix rows")
    rows = [_tokens(lines[1 + i], n, f"row {i + 1}") for i in range(n)]
    rest = lines[1 + n:]
    if rest and not rest[0].strip():
        rest = rest[1:]
    x = None
    if rest:
        if len(rest) != 1:
            raise InstanceFormatError("trailing content after the vector line")
        x = MaxPlusVector(_tokens(rest[0], n, "vector"))
    return MaxPlusMatrix(rows), x


def parse_vector(text: str, n: Optional[int] = None) -> MaxPlusVector:
    """A vector file holds one line of tokens."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise InstanceFormatError("vector file must hold exactly one non-empty line")
    count = len(lines[0].split()) if n is None else n
    return MaxPlusVector(_tokens(lines[0], count, "vector"))


def write_vector(x: MaxPlusVector) -> str:
    return " ".join(x.tokens()) + "\n"


def write_instance(A: MaxPlusMatrix, x: Optional[MaxPlusVector] = None) -> str:
    out = [str(A.n)]
    out += [" ".join(format_scalar(a) for a in row) for row in A.rows()]
    if x is not None:
        out += ["", " ".join(x.tokens())]
    return "\n".join(out) + "\n"


def _nodes(vs) -> list[int]:
    return sorted(v + 1 for v in vs)


def verdict_to_json(
    verdict: ExtremalityVerdict,
    witness: Optional[WitnessPair] = None,
    support: Optional[tuple[int, ...]] = None,
) -> dict:
    evidence: dict = {"branch": verdict.branch}
    if verdict.isolated_set is not None:
        evidence["isolated_set"] = _nodes(verdict.isolated_set)
        if support is not None:
            evidence["complement"] = _nodes(set(support) - verdict.isolated_set)
    if verdict.cycles is not None:
        evidence["cycles"] = [[v + 1 for v in c] for c in verdict.cycles]
    if verdict.variable_pair is not None:
        evidence["variable_nodes"] = [v + 1 for v in verdict.variable_pair]
    doc = {
        "extremal": verdict.is_extremal,
        "condition": None if verdict.violated_condition is None else verdict.violated_condition.value,
        "evidence": evidence,
        "witness": None,
    }
    if witness is not None:
        doc["witness"] = {"x1": witness.x1.tokens(), "x2": witness.x2.tokens(), "provenance": witness.provenance}
    return doc


def verdict_schema() -> dict:
    text = resources.files("maxplus_extremal").joinpath("verdict.schema.json").read_text()
    return json.loads(text)


def random_instance(
    n: int,
    density: float,
    entry_range: tuple[int, int] = (-5, 5),
    seed: int = 0,
) -> tuple[MaxPlusMatrix, MaxPlusVector]:
    """Seeded instance whose full-support vector x solves A (x) x >= x.

    Rows left unsatisfied by the random draw get one entry a_ij := x_i - x_j
    for a uniformly chosen column j.
    """
    lo, hi = entry_range
    if n < 1 or not 0 < density <= 1 or lo > hi:
        raise ValueError("need n >= 1, density in (0, 1] and lo <= hi")
    rng = np.random.default_rng(seed % 2**64)
    x = rng.integers(lo, hi + 1, size=n)
    finite = rng.random((n, n)) < density
    vals = rng.integers(lo, hi + 1, size=(n, n))
    masked = np.where(finite, vals + x[None, :], np.iinfo(np.int64).min)
    for i in np.flatnonzero(masked.max(axis=1) < x):
        j = rng.integers(n)
        vals[i, j] = x[i] - x[j]
        finite[i, j] = True
    A = MaxPlusMatrix.from_integers(vals, finite)
    xv = MaxPlusVector(x.tolist())
    assert is_solution(A, xv), mat_vec(A, xv)
    return A, xv
