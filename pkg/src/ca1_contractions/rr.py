"""Singular Riemann-Roch bookkeeping for a divisorial contraction to a Gorenstein point.

Setting: ``f: (Y > E) -> (X, P)`` with ``K_Y = f^*K_X + aE``. The
non-Gorenstein points of ``Y`` deform to a basket of cyclic quotient points
of type ``1/r(1, -1, b)``; with ``e`` an inverse of ``a`` modulo the global
index, each point contributes the pair ``(r, v)`` where ``v`` is the residue
of ``e*b`` normalized to ``v <= r/2``.

Everything here is exact; "is an integer" is tested on Fractions, never by
rounding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Optional

from .numeric import lcm_all, mod_inverse, smallest_residue

__all__ = [
    "InconsistentBasketError",
    "FictitiousPoint",
    "Basket",
    "RRContext",
    "a_e3",
    "dim_quotient",
    "colength_in_maximal_ideal",
    "sum_v",
    "dim_m_mod_second",
    "a_i_correction",
    "polynomial_part",
    "graded_dim",
    "C2Verdict",
    "exclude_by_c2",
    "index_two_closed_form",
    "ClosedFormComparison",
    "compare_index_two_closed_form",
]


class InconsistentBasketError(ValueError):
    """A Riemann-Roch quantity that must be a nonnegative integer is not."""


@dataclass(frozen=True, order=True)
class FictitiousPoint:
    r: int
    v: int
    b: Optional[int] = None

    def __post_init__(self):
        if self.r < 2:
            raise ValueError(f"local index must be >= 2, got {self.r}")
        if not 1 <= self.v or 2 * self.v > self.r:
            raise ValueError(f"need 1 <= v <= r/2, got (r, v) = ({self.r}, {self.v})")
        if gcd(self.v, self.r) != 1:
            raise ValueError(f"v = {self.v} is not coprime to r = {self.r}")
        if self.b is not None:
            if not 1 <= self.b < self.r or gcd(self.b, self.r) != 1:
                raise ValueError(f"b = {self.b} must be a unit modulo {self.r}")

    @property
    def pair(self) -> tuple[int, int]:
        return (self.r, self.v)

    def __str__(self):
        if self.b is None:
            return f"({self.r},{self.v})"
        return f"({self.r},{self.v},b={self.b})"


def _sort_key(p: FictitiousPoint):
    return (p.r, p.v, -1 if p.b is None else p.b)


@dataclass(frozen=True)
class Basket:
    """Multiset of fictitious points, kept in canonical (r, v, b) order."""

    points: tuple[FictitiousPoint, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(sorted(self.points, key=_sort_key)))

    @classmethod
    def of(cls, *items) -> "Basket":
        """Build from ``(r, v)`` / ``(r, v, b)`` tuples or FictitiousPoints."""
        pts = []
        for item in items:
            if isinstance(item, FictitiousPoint):
                pts.append(item)
            else:
                pts.append(FictitiousPoint(*item))
        return cls(tuple(pts))

    def __iter__(self) -> Iterator[FictitiousPoint]:
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    @property
    def index(self) -> int:
        """Global Gorenstein index: lcm of local indices, 1 when empty."""
        return lcm_all(p.r for p in self.points)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(p.pair for p in self.points)

    @property
    def has_b(self) -> bool:
        return all(p.b is not None for p in self.points)

    def without_b(self) -> "Basket":
        return Basket(tuple(FictitiousPoint(p.r, p.v) for p in self.points))

    def __str__(self):
        return "{" + ", ".join(str(p) for p in self.points) + "}"


@dataclass(frozen=True)
class RRContext:
    a: int
    r: int
    e: int
    E3: Fraction
    Ec2: Optional[Fraction] = None

    @classmethod
    def from_basket(cls, J: Basket, a: int, Ec2=None) -> "RRContext":
        r = J.index
        for p in J:
            if gcd(a, p.r) != 1:
                raise InconsistentBasketError(f"a = {a} is not coprime to r_Q = {p.r}")
        e = mod_inverse(a, r)
        E3 = a_e3(J) / a
        if E3 <= 0 or (r * E3).denominator != 1:
            raise InconsistentBasketError(f"r*E^3 = {r * E3} is not a positive integer")
        return cls(a, r, e, E3, None if Ec2 is None else Fraction(Ec2))


def a_e3(J: Basket) -> Fraction:
    """The product ``a * E^3 = 2 - sum v(r - v)/r``; may be <= 0 for junk input."""
    return 2 - sum((Fraction(p.v * (p.r - p.v), p.r) for p in J), Fraction(0))


def _quotient_raw(i: int, J: Basket) -> Fraction:
    total = 0
    for p in J:
        total += min((1 + j) * j * p.r + i * (i - 1 - 2 * j) * p.v for j in range(i))
    return Fraction(i * i) - Fraction(total, 2)


def dim_quotient(i: int, a: int, J: Basket) -> int:
    """``dim O_X / f_*O_Y(-iE)`` for ``1 <= i <= a``.

    Raises InconsistentBasketError when the formula does not produce a
    nonnegative integer.
    """
    if not 1 <= i <= a:
        raise ValueError(f"formula holds for 1 <= i <= a, got i={i}, a={a}")
    value = _quotient_raw(i, J)
    if value.denominator != 1 or value < 0:
        raise InconsistentBasketError(f"dim O/f_*O(-{i}E) evaluates to {value} for {J}")
    return int(value)


def colength_in_maximal_ideal(i: int, a: int, J: Basket) -> int:
    """``dim m_P / f_*O_Y(-iE)``, i.e. :func:`dim_quotient` minus one."""
    return dim_quotient(i, a, J) - 1


def sum_v(J: Basket) -> int:
    return sum(p.v for p in J)


def dim_m_mod_second(J: Basket) -> int:
    """``d = dim m_P / f_*O_Y(-2E)`` forced by ``sum v = 3 - d`` (valid for a >= 2)."""
    d = 3 - sum_v(J)
    if not 0 <= d <= 3:
        raise InconsistentBasketError(f"sum of v_Q = {sum_v(J)} > 3 admits no dimension")
    return d


def a_i_correction(i: int, e: int, J: Basket) -> Fraction:
    """The local correction term ``A_i`` of the plurigenus-type formula.

    Residues ``ie`` and ``jb`` are taken modulo each local index separately.
    Every point must carry ``b``.
    """
    total = Fraction(0)
    for p in J:
        if p.b is None:
            raise ValueError(f"point {p} lacks b_Q")
        r = p.r
        k = smallest_residue(i * e, r)
        total -= Fraction(k * (r * r - 1), 12 * r)
        for j in range(1, k):
            jb = smallest_residue(j * p.b, r)
            total += Fraction(jb * (r - jb), 2 * r)
    return total


def polynomial_part(i: int, a: int, E3) -> Fraction:
    """The ``E^3`` term: ``(2(3i^2 - 3i + 1) - 3(2i - 1)a + a^2) E^3 / 12``."""
    return Fraction(2 * (3 * i * i - 3 * i + 1) - 3 * (2 * i - 1) * a + a * a, 12) * Fraction(E3)


def graded_dim(i: int, ctx: RRContext, J: Basket) -> Fraction:
    """``dim f_*O_Y(iE) / f_*O_Y((i-1)E)`` from the singular Riemann-Roch formula."""
    if ctx.Ec2 is None:
        raise ValueError("graded_dim needs E.c2 in the context")
    if i > ctx.a:
        raise ValueError(f"formula holds for i <= a = {ctx.a}")
    return (
        polynomial_part(i, ctx.a, ctx.E3)
        + ctx.Ec2 / 12
        + a_i_correction(i, ctx.e, J)
        - a_i_correction(i - 1, ctx.e, J)
    )


def _solve_ec2(i: int, a: int, e: int, E3, J: Basket) -> Fraction:
    # graded_dim(i) = 0 solved for E.c2
    return -12 * (
        polynomial_part(i, a, E3) + a_i_correction(i, e, J) - a_i_correction(i - 1, e, J)
    )


@dataclass(frozen=True)
class C2Verdict:
    consistent: bool
    solves: dict  # i -> E.c2 value forced by graded_dim(i) = 0
    A: dict  # i -> A_i, for i = 0..a

    @property
    def ec2_i1(self) -> Optional[Fraction]:
        return self.solves.get(1)

    @property
    def ec2_i2(self) -> Optional[Fraction]:
        return self.solves.get(2)


def exclude_by_c2(J: Basket, a: int, e: int, E3) -> C2Verdict:
    """Test whether one value of ``E.c2(Y)`` makes the first two graded pieces vanish.

    Assumes ``graded_dim(i) = 0`` for ``1 <= i <= a``: E is exceptional and
    effective, so ``f_*O_Y(iE) = O_X`` for all ``i >= 0``. The equations at
    ``i = 1`` and ``i = 2`` each pin ``E.c2``; the basket is ruled out when
    the two values differ. Solves for the remaining ``i <= a`` are reported
    but do not enter the verdict.
    """
    solves = {i: _solve_ec2(i, a, e, E3, J) for i in range(1, a + 1)}
    A = {i: a_i_correction(i, e, J) for i in range(0, a + 1)}
    consistent = a < 2 or solves[1] == solves[2]
    return C2Verdict(consistent=consistent, solves=solves, A=A)


def index_two_closed_form(i: int, r: int) -> int:
    """Closed forms ``3 + max(0, 6 - r)`` (i = 3) and ``4 + max(0, 8 - r)`` (i = 4)
    quoted for the basket ``{(r, 2)}`` with ``a = 4``."""
    if i == 3:
        return 3 + max(0, 6 - r)
    if i == 4:
        return 4 + max(0, 8 - r)
    raise ValueError("closed form is stated only for i = 3, 4")


@dataclass(frozen=True)
class ClosedFormComparison:
    i: int
    r: int
    closed_form: int
    colength_in_O: int  # dim O_X / f_*O_Y(-iE)
    colength_in_m: int  # dim m_P / f_*O_Y(-iE)

    @property
    def matches_O_reading(self) -> bool:
        return self.closed_form == self.colength_in_O

    @property
    def matches_m_reading(self) -> bool:
        return self.closed_form == self.colength_in_m


def compare_index_two_closed_form(i: int, r: int) -> ClosedFormComparison:
    """Evaluate the quoted closed form next to the general formula.

    The closed form is stated as a colength in ``m_P``; the general formula
    gives a colength in ``O_X``. Both readings are returned and neither is
    preferred here.
    """
    J = Basket.of((r, 2))
    in_O = dim_quotient(i, 4, J)
    return ClosedFormComparison(i, r, index_two_closed_form(i, r), in_O, in_O - 1)
