"""The numerical game: which (basket, discrepancy) pairs survive the
Riemann-Roch constraints for a contraction with ``a >= 2``.

``d = dim m_P / f_*O_Y(-2E)`` fixes ``sum v_Q = 3 - d``. Positivity of
``a E^3`` bounds the local indices except along a few one-parameter
families, which are reported parametrically and materialized up to
``r_bound``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .numeric import lcm_all, mod_inverse, smallest_residue
from .rr import Basket, C2Verdict, FictitiousPoint, a_e3, exclude_by_c2

__all__ = [
    "CASE_LABELS",
    "Candidate",
    "Family",
    "TableRow",
    "ExclusionRecord",
    "EnumerationReport",
    "enumerate_baskets",
    "proof_table",
    "admissible_discrepancies",
    "case_label",
    "b_assignments",
    "run_enumeration",
    "enumerate_candidates",
    "SpecialSurfaceBounds",
    "case_212_bounds",
    "DEFAULT_R_BOUND",
]

DEFAULT_R_BOUND = 64
CASE_LABELS = ("2.0", "2.1.1", "2.1.2", "2.2", "2.3")


def _t(r: int, v: int) -> Fraction:
    return Fraction(v * (r - v), r)


def _min_r(v: int) -> int:
    r = 2 * v
    while gcd(v, r) != 1:
        r += 1
    return r


def _v_partitions(total: int, largest: Optional[int] = None):
    """Partitions of ``total`` into nonincreasing positive parts."""
    if largest is None:
        largest = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 0, -1):
        for rest in _v_partitions(total - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class Family:
    """Baskets ``prefix + {(R, v)}`` for every admissible ``R >= r_min``.

    Every member has ``a E^3 > 0``. ``tight`` means the positivity budget left
    for the tail equals ``v``, so ``a E^3 = v^2 / R`` along the family.
    """

    prefix: tuple[tuple[int, int], ...]
    v: int
    r_min: int
    tight: bool

    def member(self, R: int) -> Basket:
        return Basket.of(*self.prefix, (R, self.v))

    def members(self, r_bound: int):
        for R in range(self.r_min, r_bound + 1):
            if gcd(R, self.v) == 1:
                yield self.member(R)

    def label(self) -> str:
        parts = [str(r) for r, _ in self.prefix] + ["R"]
        return "(" + ", ".join(parts) + ")"

    def a_e3_formula(self) -> str:
        if self.tight:
            return f"{self.v * self.v}/R" if self.v > 1 else "1/R"
        return "2 - ... (non-tight)"


def enumerate_baskets(total_v: int, r_bound: int = DEFAULT_R_BOUND):
    """All baskets with ``sum v = total_v`` and ``a E^3 > 0``.

    Returns ``(finite, families, truncated)``: ``finite`` are the baskets
    found by the bounded search; ``families`` are tail families (last index
    unbounded, not materialized); ``truncated`` is True if some search level
    was unbounded with further points after it and had to stop at
    ``r_bound``.
    """
    finite: list[Basket] = []
    families: list[Family] = []
    truncated = False

    def rec(vs, idx, chosen, budget):
        nonlocal truncated
        if idx == len(vs):
            finite.append(Basket.of(*chosen))
            return
        v = vs[idx]
        rest = vs[idx + 1:]
        same = sum(1 for u in rest if u == v)
        other_min = sum((_t(_min_r(u), u) for u in rest if u != v), Fraction(0))
        r = _min_r(v)
        if idx > 0 and vs[idx - 1] == v:
            r = max(r, chosen[-1][0])
        limit = v * (1 + same) + other_min
        unbounded = limit <= budget
        if unbounded and idx == len(vs) - 1:
            families.append(Family(tuple(chosen), v, r, tight=(budget == v)))
            return
        while True:
            if gcd(v, r) == 1:
                t = _t(r, v)
                if t + same * t + other_min >= budget:
                    break
                rec(vs, idx + 1, chosen + [(r, v)], budget - t)
            r += 1
            if unbounded and r > r_bound:
                truncated = True
                break

    for vs in _v_partitions(total_v):
        rec(vs, 0, [], Fraction(2))
    finite = sorted(set(finite), key=lambda J: (len(J), J.pairs))
    return finite, families, truncated


@dataclass(frozen=True)
class TableRow:
    shape: str
    J: Optional[Basket]
    a_e3: Optional[Fraction]
    family: Optional[Family] = None

    @property
    def a_e3_text(self) -> str:
        if self.family is not None:
            return self.family.a_e3_formula()
        return f"{self.a_e3.numerator}/{self.a_e3.denominator}"

    @property
    def indices_text(self) -> str:
        if self.family is not None:
            return self.family.label()
        return "(" + ", ".join(str(r) for r, _ in self.J.pairs) + ")"


def _shape(vs) -> str:
    if len(vs) == 1:
        return f"{{(r, {vs[0]})}}"
    return "{" + ", ".join(f"(r_{k + 1}, {v})" for k, v in enumerate(vs)) + "}"


def proof_table() -> list[TableRow]:
    """Every basket with ``sum v = 3`` and ``a E^3 > 0``, grouped by shape."""
    finite, families, truncated = enumerate_baskets(3)
    assert not truncated
    rows = []
    for J in finite:
        vs = tuple(sorted((p.v for p in J)))
        rows.append(TableRow(_shape(vs), J, a_e3(J)))
    for fam in families:
        vs = tuple(sorted([v for _, v in fam.prefix] + [fam.v]))
        rows.append(TableRow(_shape(vs), None, None, fam))

    def key(row):
        vs = row.shape
        order = {"{(r, 3)}": 0, "{(r_1, 1), (r_2, 2)}": 1, "{(r_1, 1), (r_2, 1), (r_3, 1)}": 2}
        if row.family is not None:
            return (order.get(vs, 9), 0, ())
        return (order.get(vs, 9), 1, tuple(reversed(row.J.pairs)))

    return sorted(rows, key=key)


def admissible_discrepancies(J: Basket) -> list[int]:
    """All ``a >= 2`` coprime to every ``r_Q`` with ``r E^3 = r a E^3 / a`` a positive integer."""
    q = a_e3(J)
    if q <= 0:
        return []
    n = J.index * q
    assert n.denominator == 1
    n = int(n)
    return [a for a in range(2, n + 1)
            if n % a == 0 and all(gcd(a, p.r) == 1 for p in J)]


def case_label(J: Basket) -> str:
    d = 3 - sum(p.v for p in J)
    if d == 1:
        return "2.1.1" if len(J) == 1 else "2.1.2"
    return {0: "2.0", 2: "2.2", 3: "2.3"}[d]


@dataclass(frozen=True)
class Candidate:
    J: Basket
    a: int
    E3: Fraction
    r: int
    e: int
    case_label: str

    @classmethod
    def make(cls, J: Basket, a: int) -> "Candidate":
        r = J.index
        return cls(J, a, a_e3(J) / a, r, mod_inverse(a, r), case_label(J))

    def sort_key(self):
        return (len(self.J), self.J.pairs, self.a)

    def __str__(self):
        return f"J={self.J} a={self.a} E3={self.E3}"


def b_assignments(J: Basket, a: int) -> list[Basket]:
    """All ways to attach ``b_Q`` with ``e*b_Q = v_Q`` or ``r_Q - v_Q`` modulo ``r_Q``.

    ``b`` and ``r - b`` describe the same quotient type; both are listed.
    """
    e = mod_inverse(a, J.index)
    options = []
    for p in J:
        bs = [b for b in range(1, p.r)
              if gcd(b, p.r) == 1 and smallest_residue(e * b, p.r) in (p.v, p.r - p.v)]
        options.append([FictitiousPoint(p.r, p.v, b) for b in bs])
    out = [Basket(())]
    for opts in options:
        out = [Basket(B.points + (pt,)) for B in out for pt in opts]
    return sorted(set(out), key=lambda B: tuple((p.r, p.v, p.b) for p in B))


@dataclass(frozen=True)
class ExclusionRecord:
    candidate: Candidate
    assignments: tuple[tuple[Basket, C2Verdict], ...]

    @property
    def excluded(self) -> bool:
        return all(not verdict.consistent for _, verdict in self.assignments)


@dataclass
class EnumerationReport:
    d: int
    r_bound: int
    pre_exclusion: list[Candidate]
    exclusions: list[ExclusionRecord]
    candidates: list[Candidate]
    families: list[Family] = field(default_factory=list)
    family_notes: list[str] = field(default_factory=list)
    truncated: bool = False


def _family_candidates(fam: Family, r_bound: int):
    """Candidates along a tail family; returns (candidates, closed, note)."""
    L = lcm_all(r for r, _ in fam.prefix)
    if fam.tight:
        # a E^3 = v^2/R and r a E^3 = v^2 lcm(L,R)/R; an a coprime to L divides v^2
        v2 = fam.v * fam.v
        possible = [a for a in range(2, v2 + 1) if v2 % a == 0 and gcd(a, L) == 1]
        if not possible:
            note = (f"family {fam.label()}: a E^3 = {fam.a_e3_formula()}; an admissible a must "
                    f"divide {v2} and be coprime to {L}, none >= 2 exists")
            return [], True, note
    out = []
    for J in fam.members(r_bound):
        out.extend(Candidate.make(J, a) for a in admissible_discrepancies(J))
    note = f"family {fam.label()} materialized for R <= {r_bound}"
    return out, False, note


def run_enumeration(d: int, r_bound: int = DEFAULT_R_BOUND) -> EnumerationReport:
    """Full case analysis for ``d = dim m_P / f_*O_Y(-2E)``."""
    if d not in (0, 1, 2, 3):
        raise ValueError("d must be in {0, 1, 2, 3}")
    finite, families, truncated = enumerate_baskets(3 - d, r_bound)
    pre = []
    for J in finite:
        pre.extend(Candidate.make(J, a) for a in admissible_discrepancies(J))
    notes = []
    for fam in families:
        cands, closed, note = _family_candidates(fam, r_bound)
        pre.extend(cands)
        notes.append(note)
        truncated = truncated or not closed
    pre = sorted(set(pre), key=Candidate.sort_key)

    exclusions = []
    final = pre
    if d == 0:
        final = []
        for c in pre:
            rec = ExclusionRecord(c, tuple(
                (B, exclude_by_c2(B, c.a, c.e, c.E3)) for B in b_assignments(c.J, c.a)))
            exclusions.append(rec)
            if not rec.excluded:
                final.append(c)
    return EnumerationReport(d, r_bound, pre, exclusions, final, families, notes, truncated)


def enumerate_candidates(d: int, r_bound: int = DEFAULT_R_BOUND) -> list[Candidate]:
    return run_enumeration(d, r_bound).candidates


@dataclass(frozen=True)
class SpecialSurfaceBounds:
    r1: int
    r2: int
    min_special_type: int
    a_max: int

    def admits(self, a: int) -> bool:
        """``2a <= r1 + r2`` (equivalently ``a`` divides ``r1 + r2`` properly)."""
        return 2 * a <= self.r1 + self.r2 and a != self.r1 + self.r2


def case_212_bounds(r1: int, r2: int) -> SpecialSurfaceBounds:
    """Bounds for the two-point (or ``(1, r)``) baskets: any special surface has
    type ``>= r1 + r2 - 1`` and ``2a <= r1 + r2``."""
    if r1 < 1 or r2 < 1:
        raise ValueError("indices must be positive")
    r1, r2 = sorted((r1, r2))
    return SpecialSurfaceBounds(r1, r2, r1 + r2 - 1, (r1 + r2) // 2)
