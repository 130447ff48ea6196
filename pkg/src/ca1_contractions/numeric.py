"""Exact arithmetic helpers shared by every other module.

Rationals are plain :class:`fractions.Fraction` values, which are always
stored reduced with a positive denominator.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Rat = Fraction

__all__ = [
    "Rat",
    "smallest_residue",
    "mod_inverse",
    "lcm_all",
    "dot",
    "format_rat",
    "parse_rat",
    "solve_linear",
    "rank",
]


def smallest_residue(j: int, r: int) -> int:
    """Return ``j - floor(j / r) * r``, the residue of ``j`` in ``[0, r)``.

    Negative ``j`` rounds down, so ``smallest_residue(-1, 5) == 4``.
    """
    if r <= 0:
        raise ValueError(f"modulus must be positive, got {r}")
    return j - (j // r) * r


def mod_inverse(a: int, r: int) -> Optional[int]:
    """Inverse of ``a`` modulo ``r`` in ``[1, r)``, or ``None`` if gcd(a, r) > 1.

    For ``r == 1`` the congruence is vacuous and 0 is returned.
    """
    if r <= 0:
        raise ValueError(f"modulus must be positive, got {r}")
    if r == 1:
        return 0
    if gcd(a, r) != 1:
        return None
    return pow(a, -1, r)


def lcm_all(values: Iterable[int]) -> int:
    """lcm of the values; 1 for an empty iterable."""
    return reduce(lcm, values, 1)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError("length mismatch")
    return sum(a * b for a, b in zip(u, v))


def format_rat(q) -> str:
    """Serialize an exact rational as ``"p/q"`` (the denominator is always written)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rat(text: str) -> Fraction:
    return Fraction(text.strip())


def solve_linear(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve a square linear system exactly by Gauss-Jordan elimination.

    Raises ``ValueError`` if the matrix is singular.
    """
    n = len(matrix)
    rows = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    if any(len(row) != n + 1 for row in rows):
        raise ValueError("matrix must be square and match rhs")
    for col in range(n):
        pivot = next((k for k in range(col, n) if rows[k][col] != 0), None)
        if pivot is None:
            raise ValueError("singular system")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        p = rows[col][col]
        rows[col] = [x / p for x in rows[col]]
        for k in range(n):
            if k != col and rows[k][col] != 0:
                factor = rows[k][col]
                rows[k] = [x - factor * y for x, y in zip(rows[k], rows[col])]
    return [row[n] for row in rows]


def rank(matrix: Sequence[Sequence]) -> int:
    """Rank of a rational matrix, computed exactly."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    rk = 0
    for col in range(ncols):
        pivot = next((k for k in range(rk, len(rows)) if rows[k][col] != 0), None)
        if pivot is None:
            continue
        rows[rk], rows[pivot] = rows[pivot], rows[rk]
        for k in range(rk + 1, len(rows)):
            if rows[k][col] != 0:
                factor = rows[k][col] / rows[rk][col]
                rows[k] = [x - factor * y for x, y in zip(rows[k], rows[rk])]
        rk += 1
    return rk
