"""Monomial weight filtration on the coordinate ring of ``xy + z^2 + w^N``.

Using ``xy = -(z^2 + w^N)`` every element is a sum ``v1(x, z, w) + v2(y, z, w)``,
so monomials not divisible by ``xy`` form a basis. When the relation's
lowest-weight part contains ``xy`` (true for every weight vector with
``wt(xy) <= wt(z^2), wt(w^N)``) this basis is compatible with the weight
filtration, and counting basis monomials of weight ``< i`` gives
``dim O / I_i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .wblowup import WeightVec4

__all__ = [
    "CA1Ring",
    "ReducedMonomial",
    "WPoly",
    "reduced_monomials",
    "filtration_dims",
    "graded_counts",
    "ord_w",
    "special_surface_type",
    "INFINITY",
]

INFINITY = math.inf


@dataclass(frozen=True)
class CA1Ring:
    N: int

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("N must be >= 2")


@dataclass(frozen=True)
class ReducedMonomial:
    """``x^k z^j w^c`` (x-side, k >= 0) or ``y^k z^j w^c`` (y-side, k >= 1)."""

    branch: str
    k: int
    j: int
    c: int

    def exponent(self) -> tuple[int, int, int, int]:
        if self.branch == "x":
            return (self.k, 0, self.j, self.c)
        return (0, self.k, self.j, self.c)

    def weight(self, w: WeightVec4) -> int:
        return sum(a * b for a, b in zip(self.exponent(), w.w))


def reduced_monomials(w, bound: int) -> Iterator[ReducedMonomial]:
    """Basis monomials of weight ``< bound``, x-side first, in lexicographic order."""
    w = WeightVec4.coerce(w)
    wx, wy, wz, ww = w.w
    for branch, wk, start in (("x", wx, 0), ("y", wy, 1)):
        k = start
        while k * wk < bound:
            j = 0
            while k * wk + j * wz < bound:
                c = 0
                while k * wk + j * wz + c * ww < bound:
                    yield ReducedMonomial(branch, k, j, c)
                    c += 1
                j += 1
            k += 1


def _check_compatible(ring: CA1Ring, w: WeightVec4):
    wx, wy, wz, ww = w.w
    if wx + wy > min(2 * wz, ring.N * ww):
        raise ValueError(
            f"weights {w} put xy above the lowest-weight part of the relation; "
            "the xy-free basis does not compute the filtration")


def filtration_dims(ring: CA1Ring, w, i_max: int) -> list[int]:
    """``dim O / I_i`` for ``i = 1..i_max``, ``I_i`` spanned by weight ``>= i``."""
    w = WeightVec4.coerce(w)
    _check_compatible(ring, w)
    counts = [0] * (i_max + 1)
    for mono in reduced_monomials(w, i_max):
        counts[mono.weight(w)] += 1
    out, total = [], 0
    for i in range(1, i_max + 1):
        total += counts[i - 1]
        out.append(total)
    return out


def graded_counts(ring: CA1Ring, w, i_max: int) -> list[int]:
    """Number of basis monomials of weight exactly ``i`` for ``i = 0..i_max-1``.

    For ``w = (s, 2t - s, t, 1)`` the entries below ``t`` must be
    ``floor(i/s) + 1``; anything else raises AssertionError.
    """
    w = WeightVec4.coerce(w)
    dims = filtration_dims(ring, w, i_max)
    out = [dims[0]] + [b - a for a, b in zip(dims, dims[1:])]
    s, y, t, one = w.w
    if one == 1 and y == 2 * t - s:
        for i, n in enumerate(out[:t]):
            if n != i // s + 1:
                raise AssertionError(f"N_{i} = {n}, expected {i // s + 1} for weights {w}")
    return out


class WPoly:
    """Polynomial in ``w`` given by its coefficients from ``w^0`` upward."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    def __add__(self, other: "WPoly") -> "WPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return WPoly([x + y for x, y in zip(a, b)])

    def __mul__(self, other: "WPoly") -> "WPoly":
        if not self.coeffs or not other.coeffs:
            return WPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return WPoly(out)

    def __eq__(self, other):
        return isinstance(other, WPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "WPoly":
        return cls([0] * k + [c])

    def __repr__(self):
        return f"WPoly({list(self.coeffs)})"


def ord_w(p: WPoly):
    """Largest ``i`` with ``w^i | p``; ``math.inf`` for the zero polynomial."""
    for i, c in enumerate(p.coeffs):
        if c:
            return i
    return INFINITY


def special_surface_type(a: int, p: WPoly, N: int) -> int:
    """Type ``s`` of the A_s point of ``xy + (p + c w^a)^2 + w^N`` for general ``c``:
    ``min(2a, a + ord p, ord(p^2 + w^N)) - 1``."""
    if a < 2:
        raise ValueError("a must be >= 2")
    if N < 2:
        raise ValueError("N must be >= 2")
    if p.coeffs and p.coeffs[0]:
        raise ValueError("p must have zero constant term")
    m = min(2 * a, a + ord_w(p), ord_w(p * p + WPoly.monomial(N)))
    return int(m) - 1
