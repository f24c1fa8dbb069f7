"""Exact max-plus scalars, vectors and matrices.

Finite values are :class:`fractions.Fraction`; minus infinity is the
:data:`BOTTOM` singleton.  Vectors and matrices store their finite entries as
integer numerators over one shared positive denominator together with a
finiteness mask, so every comparison is exact and the O(n^2) row scans can run
on numpy integer arrays.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "BOTTOM",
    "Bottom",
    "Scalar",
    "DimensionError",
    "NotASolutionError",
    "scalar",
    "oplus",
    "otimes",
    "MaxPlusVector",
    "MaxPlusMatrix",
    "mat_vec",
    "is_solution",
    "first_violated_row",
    "scale",
    "tight_rows",
]

# numerators beyond this magnitude switch the arrays to Python-int objects
_INT64_SAFE = 2**60


class Bottom:
    """The max-plus zero, minus infinity.  Compares below every number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BOTTOM"

    def __str__(self):
        return "-inf"

    def __reduce__(self):
        return (Bottom, ())

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("maxplus-bottom")

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self


BOTTOM = Bottom()

Scalar = Union[Fraction, Bottom]

_RATIONAL = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


class DimensionError(ValueError):
    pass


class NotASolutionError(ValueError):
    """Raised when x does not satisfy A (x) x >= x or is all BOTTOM.

    ``row`` is the 0-based index of the first violated inequality, or None
    when the vector has empty support.
    """

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message)
        self.row = row


def scalar(value) -> Scalar:
    """Coerce ``value`` to an exact max-plus scalar.

    Accepts BOTTOM, ints, Fractions, ``float('-inf')``, finite floats (converted
    exactly) and strings in the instance-file grammar (``3``, ``-7/2``, ``-inf``).
    """
    if value is BOTTOM or value is None:
        return BOTTOM
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("booleans are not max-plus scalars")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        if value == -math.inf:
            return BOTTOM
        if not math.isfinite(value):
            raise ValueError(f"{value!r} is not a max-plus scalar")
        return Fraction(float(value))
    if isinstance(value, str):
        token = value.strip()
        if token.lower() == "-inf":
            return BOTTOM
        m = _RATIONAL.match(token)
        if m is None:
            raise ValueError(f"malformed scalar token {value!r}")
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(int(m.group(1)), den)
    raise TypeError(f"cannot interpret {value!r} as a max-plus scalar")


def oplus(a: Scalar, b: Scalar) -> Scalar:
    if a is BOTTOM:
        return b
    if b is BOTTOM:
        return a
    return a if a >= b else b


def otimes(a: Scalar, b: Scalar) -> Scalar:
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    return a + b


def format_scalar(a: Scalar) -> str:
    if a is BOTTOM:
        return "-inf"
    if a.denominator == 1:
        return str(a.numerator)
    return f"{a.numerator}/{a.denominator}"


def _int_array(values) -> np.ndarray:
    arr = np.asarray(values, dtype=object)
    if arr.size and max(abs(int(v)) for v in arr.flat) >= _INT64_SAFE:
        return arr
    return arr.astype(np.int64)


def _encode(entries: Sequence[Scalar], shape) -> tuple[np.ndarray, np.ndarray, int]:
    den = 1
    for a in entries:
        if a is not BOTTOM:
            den = math.lcm(den, a.denominator)
    nums = [0 if a is BOTTOM else a.numerator * (den // a.denominator) for a in entries]
    fin = np.array([a is not BOTTOM for a in entries], dtype=bool).reshape(shape)
    num = _int_array(nums).reshape(shape)
    return num, fin, den


def _rescale(num: np.ndarray, den: int, target: int) -> np.ndarray:
    if den == target:
        return num
    factor = target // den
    if num.dtype != object and (num.size == 0 or int(np.abs(num).max()) * factor < _INT64_SAFE):
        return num * factor
    return num.astype(object) * factor


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


class MaxPlusVector:
    """Immutable vector over the max-plus semiring."""

    __slots__ = ("_num", "_fin", "_den", "_hash")

    def __init__(self, entries: Iterable):
        vals = [scalar(v) for v in entries]
        if not vals:
            raise DimensionError("a max-plus vector needs at least one entry")
        num, fin, den = _encode(vals, (len(vals),))
        self._set(num, fin, den)

    def _set(self, num, fin, den):
        self._num = _freeze(num)
        self._fin = _freeze(fin)
        self._den = den
        self._hash = None

    @classmethod
    def _from_arrays(cls, num: np.ndarray, fin: np.ndarray, den: int) -> "MaxPlusVector":
        num = np.where(fin, num, 0)
        if num.dtype == object:
            num = _int_array(list(num))
        else:
            num = num.astype(np.int64, copy=True)
        # reduce the shared denominator so equal vectors share a representation
        g = den
        for v in (num[fin].tolist() if fin.any() else []):
            g = math.gcd(g, int(v))
            if g == 1:
                break
        if g > 1:
            num = num // g if num.dtype != object else np.array([v // g for v in num], dtype=object)
            den //= g
        obj = cls.__new__(cls)
        obj._set(num, fin.copy(), den)
        return obj

    @classmethod
    def bottom(cls, n: int) -> "MaxPlusVector":
        return cls([BOTTOM] * n)

    def __len__(self):
        return len(self._fin)

    def is_integer(self) -> bool:
        return self._den == 1

    @property
    def n(self) -> int:
        return len(self._fin)

    def __getitem__(self, i: int) -> Scalar:
        if not self._fin[i]:
            return BOTTOM
        return Fraction(int(self._num[i]), self._den)

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    @property
    def entries(self) -> tuple[Scalar, ...]:
        return tuple(self)

    def support(self) -> tuple[int, ...]:
        """Indices of the finite entries, ascending."""
        return tuple(int(i) for i in np.flatnonzero(self._fin))

    def is_proper(self) -> bool:
        return bool(self._fin.any())

    def norm(self) -> Scalar:
        """Largest entry (BOTTOM for the all-BOTTOM vector)."""
        if not self.is_proper():
            return BOTTOM
        return Fraction(int(self._num[self._fin].max()), self._den)

    def shift(self, alpha) -> "MaxPlusVector":
        """Return alpha (x) x for a finite scalar alpha."""
        alpha = scalar(alpha)
        if alpha is BOTTOM:
            return MaxPlusVector.bottom(len(self))
        return MaxPlusVector([otimes(alpha, a) for a in self])

    def oplus(self, other: "MaxPlusVector") -> "MaxPlusVector":
        _check_same_length(self, other)
        return MaxPlusVector([oplus(a, b) for a, b in zip(self, other)])

    def with_entries(self, updates: dict) -> "MaxPlusVector":
        vals = list(self)
        for i, v in updates.items():
            vals[i] = scalar(v)
        return MaxPlusVector(vals)

    def __le__(self, other: "MaxPlusVector") -> bool:
        _check_same_length(self, other)
        return all(a <= b for a, b in zip(self, other))

    def __ge__(self, other: "MaxPlusVector") -> bool:
        return other <= self

    def __eq__(self, other):
        if not isinstance(other, MaxPlusVector):
            return NotImplemented
        return len(self) == len(other) and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.entries)
        return self._hash

    def tokens(self) -> list[str]:
        return [format_scalar(a) for a in self]

    def __repr__(self):
        return f"MaxPlusVector([{', '.join(self.tokens())}])"


def _check_same_length(u: MaxPlusVector, v: MaxPlusVector) -> None:
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")


class MaxPlusMatrix:
    """Immutable dense square matrix over the max-plus semiring."""

    __slots__ = ("_num", "_fin", "_den")

    def __init__(self, rows: Iterable[Iterable]):
        grid = [[scalar(v) for v in row] for row in rows]
        n = len(grid)
        if n == 0:
            raise DimensionError("a max-plus matrix needs at least one row")
        if any(len(row) != n for row in grid):
            raise DimensionError("max-plus matrix must be square")
        num, fin, den = _encode([a for row in grid for a in row], (n, n))
        self._num = _freeze(num)
        self._fin = _freeze(fin)
        self._den = den

    @classmethod
    def from_integers(cls, values, finite=None) -> "MaxPlusMatrix":
        """Fast constructor from an integer array and an optional finiteness mask."""
        num = np.asarray(values)
        if num.ndim != 2 or num.shape[0] != num.shape[1] or num.shape[0] == 0:
            raise DimensionError("max-plus matrix must be square and non-empty")
        if not np.issubdtype(num.dtype, np.integer):
            raise TypeError("from_integers needs an integer array")
        fin = np.ones(num.shape, dtype=bool) if finite is None else np.asarray(finite, dtype=bool)
        if fin.shape != num.shape:
            raise DimensionError("finiteness mask must match the value array")
        obj = cls.__new__(cls)
        obj._num = _freeze(np.where(fin, num, 0).astype(np.int64))
        obj._fin = _freeze(fin.copy())
        obj._den = 1
        return obj

    @classmethod
    def identity(cls, n: int) -> "MaxPlusMatrix":
        return cls.from_integers(np.zeros((n, n), dtype=np.int64), np.eye(n, dtype=bool))

    @classmethod
    def bottom(cls, n: int) -> "MaxPlusMatrix":
        return cls.from_integers(np.zeros((n, n), dtype=np.int64), np.zeros((n, n), dtype=bool))

    @property
    def n(self) -> int:
        return self._fin.shape[0]

    def __len__(self):
        return self.n

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        if not self._fin[i, j]:
            return BOTTOM
        return Fraction(int(self._num[i, j]), self._den)

    def row(self, i: int) -> tuple[Scalar, ...]:
        return tuple(self[i, j] for j in range(self.n))

    def rows(self) -> list[tuple[Scalar, ...]]:
        return [self.row(i) for i in range(self.n)]

    def is_integer(self) -> bool:
        return self._den == 1

    def __eq__(self, other):
        if not isinstance(other, MaxPlusMatrix):
            return NotImplemented
        return self.n == other.n and self.rows() == other.rows()

    def __hash__(self):
        return hash(tuple(self.rows()))

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(a) for a in r) for r in self.rows())
        return f"MaxPlusMatrix([{body}])"


def _aligned(A: MaxPlusMatrix, x: MaxPlusVector):
    """Integer numerators of A and x over a common denominator."""
    if A.n != len(x):
        raise DimensionError(f"matrix is {A.n}x{A.n} but vector has length {len(x)}")
    den = math.lcm(A._den, x._den)
    return _rescale(A._num, A._den, den), A._fin, _rescale(x._num, x._den, den), x._fin, den


def _row_maxima(A: MaxPlusMatrix, x: MaxPlusVector):
    """Return (vals, fin, rowmax, has_any, xnum, xfin, den) for the product A (x) x.

    ``vals[i, j] = a_ij + x_j`` is meaningful only where ``fin[i, j]``;
    ``rowmax[i]`` only where ``has_any[i]``.
    """
    An, Af, xn, xf, den = _aligned(A, x)
    fin = Af & xf[None, :]
    if An.dtype == object or xn.dtype == object:
        vals = An.astype(object) + xn.astype(object)[None, :]
    else:
        vals = An + xn[None, :]
    has_any = fin.any(axis=1)
    if fin.any():
        floor = vals[fin].min() - 1
        rowmax = np.where(fin, vals, floor).max(axis=1)
    else:
        rowmax = np.zeros(A.n, dtype=vals.dtype)
    return vals, fin, rowmax, has_any, xn, xf, den


def mat_vec(A: MaxPlusMatrix, x: MaxPlusVector) -> MaxPlusVector:
    """(A (x) x)_i = max_k (a_ik + x_k)."""
    _, _, rowmax, has_any, _, _, den = _row_maxima(A, x)
    return MaxPlusVector._from_arrays(rowmax, has_any, den)


def first_violated_row(A: MaxPlusMatrix, x: MaxPlusVector) -> int | None:
    """Smallest i with (A (x) x)_i < x_i, or None if every inequality holds."""
    _, _, rowmax, has_any, xn, xf, _ = _row_maxima(A, x)
    bad = xf & (~has_any | (rowmax < xn))
    hits = np.flatnonzero(bad)
    return int(hits[0]) if hits.size else None


def is_solution(A: MaxPlusMatrix, x: MaxPlusVector) -> bool:
    """Membership in the solution set: A (x) x >= x and x is not all BOTTOM."""
    return x.is_proper() and first_violated_row(A, x) is None


def require_solution(A: MaxPlusMatrix, x: MaxPlusVector) -> None:
    if not x.is_proper():
        raise NotASolutionError("x is the all-BOTTOM vector", row=None)
    row = first_violated_row(A, x)
    if row is not None:
        raise NotASolutionError(f"inequality {row + 1} of A (x) x >= x is violated", row=row)


def scale(x: MaxPlusVector) -> MaxPlusVector:
    """Return (-||x||) (x) x, whose largest entry is 0."""
    if not x.is_proper():
        raise ValueError("cannot scale the all-BOTTOM vector")
    return x.shift(-x.norm())


def tight_rows(A: MaxPlusMatrix, x: MaxPlusVector) -> frozenset[int]:
    """Support indices i with (A (x) x)_i = x_i."""
    require_solution(A, x)
    _, _, rowmax, has_any, xn, xf, _ = _row_maxima(A, x)
    return frozenset(int(i) for i in np.flatnonzero(xf & has_any & (rowmax == xn)))
