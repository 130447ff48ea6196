"""Weighted blow-ups of hypersurface germs ``{f = 0} in C^4``.

The engine is written for ``f = xy + z^2 + w^N`` and the polynomials its
charts produce. For a weight vector ``w``, chart ``i`` of the ambient
blow-up is ``C^4 / mu_{w_i}`` with coordinates ``u_1..u_4``, substitution
``x_j = u_j u_i^{w_j}`` (``j != i``), ``x_i = u_i^{w_i}``, and the group acting
with weights ``-w_j`` on ``u_j`` and ``1`` on ``u_i``.

Singularities are searched for at chart origins, along the fixed loci of
the subgroups of ``mu_{w_i}``, and on the singular locus of the strict
transform. The last search is exact for "separated" polynomials (every
variable in at most one monomial), which covers every strict transform of
the supported family; anything else yields an explicit ``unknown``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import Optional, Sequence

from .numeric import lcm_all, mod_inverse, rank, smallest_residue
from .rr import Basket, FictitiousPoint

__all__ = [
    "MonoPoly",
    "WeightVec4",
    "CyclicAction",
    "Chart",
    "Certificate",
    "SingularityReport",
    "BlowupAnalysis",
    "ReidTai",
    "ca1_polynomial",
    "weighted_multiplicity",
    "discrepancy",
    "e_cubed",
    "charts",
    "exceptional_part",
    "quadratic_rank",
    "reid_tai",
    "normalize_quotient",
    "canonical_weights",
    "same_type",
    "discrepancy_certificate",
    "singular_locus",
    "analyze",
    "basket_of",
    "DEFAULT_CERT_BOUND",
    "TERMINAL",
    "NON_TERMINAL",
    "UNKNOWN",
]

TERMINAL = "terminal"
NON_TERMINAL = "non-terminal"
UNKNOWN = "unknown"

DEFAULT_CERT_BOUND = 4

BASE_NAMES = ("x", "y", "z", "w")
CHART_NAMES = ("u1", "u2", "u3", "u4")


class MonoPoly:
    """Sparse polynomial in four variables with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != 4 or min(exp) < 0:
                raise ValueError(f"bad exponent {exp}")
            if c:
                clean[exp] = clean.get(exp, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def monomial(cls, exp, coeff=1) -> "MonoPoly":
        return cls({tuple(exp): coeff})

    def __add__(self, other: "MonoPoly") -> "MonoPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MonoPoly(out)

    def __eq__(self, other):
        return isinstance(other, MonoPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), reverse=True))

    @property
    def constant(self) -> int:
        return self.terms.get((0, 0, 0, 0), 0)

    def degree_part(self, deg: int) -> "MonoPoly":
        return MonoPoly({e: c for e, c in self.terms.items() if sum(e) == deg})

    def variables(self) -> set[int]:
        return {j for e in self.terms for j in range(4) if e[j]}

    def linear_variables(self) -> list[int]:
        return sorted(e.index(1) for e in self.terms if sum(e) == 1)

    def swap(self, i: int, j: int) -> "MonoPoly":
        """Exchange two variables."""
        out = {}
        for e, c in self.terms.items():
            e = list(e)
            e[i], e[j] = e[j], e[i]
            out[tuple(e)] = c
        return MonoPoly(out)

    def restrict(self, keep: Sequence[int]) -> "MonoPoly":
        """Set every variable outside ``keep`` to zero."""
        keep = set(keep)
        return MonoPoly({e: c for e, c in self.terms.items()
                         if all(e[j] == 0 for j in range(4) if j not in keep)})

    def weight(self, weights) -> Fraction:
        """Smallest weighted degree over the terms."""
        if not self.terms:
            raise ValueError("the zero polynomial has no weighted multiplicity")
        return min(sum(Fraction(a) * b for a, b in zip(weights, e)) for e in self.terms)

    def initial_part(self, weights) -> "MonoPoly":
        m = self.weight(weights)
        return MonoPoly({e: c for e, c in self.terms.items()
                         if sum(Fraction(a) * b for a, b in zip(weights, e)) == m})

    def to_str(self, names=BASE_NAMES) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self:
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MonoPoly({self.to_str(CHART_NAMES)})"


def ca1_polynomial(N: int) -> MonoPoly:
    """``xy + z^2 + w^N``."""
    if N < 1:
        raise ValueError("N must be positive")
    return MonoPoly({(1, 1, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, N): 1})


@dataclass(frozen=True)
class WeightVec4:
    w: tuple[int, int, int, int]

    def __post_init__(self):
        w = tuple(int(x) for x in self.w)
        if len(w) != 4 or min(w) < 1:
            raise ValueError(f"weights must be four positive integers, got {self.w}")
        object.__setattr__(self, "w", w)

    @classmethod
    def coerce(cls, w) -> "WeightVec4":
        return w if isinstance(w, WeightVec4) else cls(tuple(w))

    def __iter__(self):
        return iter(self.w)

    def __getitem__(self, k):
        return self.w[k]

    def swap_xy(self) -> "WeightVec4":
        return WeightVec4((self.w[1], self.w[0], self.w[2], self.w[3]))

    def __str__(self):
        return "(" + ",".join(map(str, self.w)) + ")"


@dataclass(frozen=True)
class CyclicAction:
    """``mu_r`` acting diagonally with the given residue weights."""

    r: int
    weights: tuple[int, ...]

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("order must be positive")
        object.__setattr__(
            self, "weights", tuple(smallest_residue(a, self.r) for a in self.weights))

    @property
    def is_trivial(self) -> bool:
        return self.r == 1 or all(a == 0 for a in self.weights)

    def drop(self, k: int) -> "CyclicAction":
        return CyclicAction(self.r, self.weights[:k] + self.weights[k + 1:])

    def character(self, exp) -> int:
        return smallest_residue(sum(a * e for a, e in zip(self.weights, exp)), self.r)

    def display(self) -> str:
        shown = [a - self.r if a == self.r - 1 and self.r > 2 else a for a in self.weights]
        return f"1/{self.r}(" + ",".join(map(str, shown)) + ")"

    def __str__(self):
        return self.display()


def weighted_multiplicity(w, f: MonoPoly) -> int:
    """Weighted order of ``f``: minimum of ``w . exponent`` over its terms."""
    w = WeightVec4.coerce(w)
    return int(f.weight(w.w))


def discrepancy(w, f: MonoPoly) -> int:
    """``sum(w) - wt(f) - 1``: the coefficient of E in ``K_Y - f^*K_X``."""
    w = WeightVec4.coerce(w)
    return sum(w.w) - weighted_multiplicity(w, f) - 1


def e_cubed(w, f: MonoPoly) -> Fraction:
    """Self-intersection ``E^3 = wt(f) / (w1 w2 w3 w4)``."""
    w = WeightVec4.coerce(w)
    return Fraction(weighted_multiplicity(w, f), prod(w.w))


@dataclass(frozen=True)
class Chart:
    index: int  # 1..4
    strict_transform: MonoPoly
    action: CyclicAction

    @property
    def exceptional_coordinate(self) -> int:
        """0-based position of the chart coordinate cutting out E."""
        return self.index - 1

    def describe(self) -> str:
        return f"chart {self.index}: {self.strict_transform.to_str(CHART_NAMES)} / {self.action}"


def _pullback_exponent(exp, w, i):
    out = list(exp)
    out[i] = sum(a * b for a, b in zip(exp, w))
    return tuple(out)


def charts(w, f: MonoPoly) -> list[Chart]:
    w = WeightVec4.coerce(w)
    m = weighted_multiplicity(w, f)
    out = []
    for i in range(4):
        terms = {}
        for exp, c in f.terms.items():
            e = list(_pullback_exponent(exp, w.w, i))
            e[i] -= m
            if e[i] < 0:
                raise ArithmeticError("pulled-back polynomial not divisible by u_i^wt(f)")
            terms[tuple(e)] = terms.get(tuple(e), 0) + c
        action = CyclicAction(w[i], tuple(1 if j == i else -w[j] for j in range(4)))
        g = MonoPoly(terms)
        chars = {action.character(e) for e in g.terms}
        if len(chars) > 1:
            raise ArithmeticError("strict transform is not semi-invariant")
        out.append(Chart(i + 1, g, action))
    return out


def quadratic_rank(g: MonoPoly) -> int:
    """Rank of the degree-2 part of ``g`` as a symmetric form."""
    M = [[Fraction(0)] * 4 for _ in range(4)]
    for e, c in g.degree_part(2).terms.items():
        idx = [j for j in range(4) for _ in range(e[j])]
        j, k = idx
        if j == k:
            M[j][j] += c
        else:
            M[j][k] += Fraction(c, 2)
            M[k][j] += Fraction(c, 2)
    return rank(M)


def exceptional_part(w, f: MonoPoly) -> tuple[MonoPoly, str]:
    """Minimal-weight part of ``f`` and an irreducibility verdict.

    A weighted homogeneous polynomial without constant term is irreducible
    when its lowest-degree part is linear, or quadratic of rank >= 3; also
    when that quadratic part has rank 2 and the rest is a single power of a
    variable absent from it. Otherwise the verdict is ``"unknown"``.
    """
    h = f.initial_part(WeightVec4.coerce(w).w)
    if h.constant:
        return h, UNKNOWN
    if h.degree_part(1):
        return h, "irreducible"
    q = h.degree_part(2)
    rk = quadratic_rank(h)
    if rk >= 3:
        return h, "irreducible"
    if rk == 2:
        rest = MonoPoly({e: -c for e, c in q.terms.items()}) + h
        if len(rest) == 1:
            (e, _), = rest.terms.items()
            support = [j for j in range(4) if e[j]]
            if len(support) == 1 and support[0] not in q.variables():
                return h, "irreducible"
    return h, UNKNOWN


@dataclass(frozen=True)
class ReidTai:
    terminal: bool
    k: Optional[int] = None  # first group element with age sum <= r
    age_sum: Optional[int] = None


def reid_tai(q: CyclicAction) -> ReidTai:
    """Terminality of ``C^3 / mu_r``: every ``k`` in ``1..r-1`` must have
    ``sum_i (k a_i mod r) > r``."""
    if len(q.weights) != 3:
        raise ValueError("expects an action on three coordinates")
    r = q.r
    a1, a2, a3 = q.weights
    for k in range(1, r):
        # weights are already reduced, so Python's % is the smallest residue
        s = k * a1 % r + k * a2 % r + k * a3 % r
        if s <= r:
            return ReidTai(False, k, s)
    return ReidTai(True)


def normalize_quotient(q: CyclicAction) -> Optional[tuple[int, int]]:
    """Write ``q`` as ``1/r(1, -1, b)`` with ``gcd(b, r) = 1``, if possible.

    Multipliers are tried in increasing order. Representations keeping the
    ``1`` on an earlier coordinate than the ``-1`` are preferred; only if
    none exists is the other order accepted. ``b`` and ``r - b`` give the
    same quotient. Returns ``(1, 0)`` for the trivial group.
    """
    r = q.r
    if len(q.weights) != 3:
        raise ValueError("expects an action on three coordinates")
    if r == 1:
        return (1, 0)
    a = q.weights
    best = None
    for i, j in itertools.permutations(range(3), 2):
        l = 3 - i - j
        # multiplier k = a_i^{-1} sends a_i to 1; a_j must then go to -1
        if gcd(a[i], r) != 1 or gcd(a[l], r) != 1 or (a[i] + a[j]) % r:
            continue
        k = pow(a[i], -1, r)
        key = (i > j, k, i, j)
        if best is None or key < best[0]:
            best = (key, smallest_residue(k * a[l], r))
    return None if best is None else (r, best[1])


def canonical_weights(q: CyclicAction) -> tuple[int, tuple[int, ...]]:
    """Representative of ``q`` up to change of generator and reordering."""
    best = None
    for k in range(1, q.r + 1):
        if gcd(k, q.r) != 1:
            continue
        cand = tuple(sorted(smallest_residue(k * a, q.r) for a in q.weights))
        if best is None or cand < best:
            best = cand
    return (q.r, best)


def same_type(q1: CyclicAction, q2: CyclicAction) -> bool:
    return canonical_weights(q1) == canonical_weights(q2)


# ---------------------------------------------------------------- certificates


def _lattice_member(n, q: CyclicAction) -> bool:
    return any(all((nj - k * a) % q.r == 0 for nj, a in zip(n, q.weights))
               for k in range(q.r))


def _primitive(n, q: CyclicAction) -> bool:
    g = 0
    for x in n:
        g = gcd(g, x)
    for m in range(2, g + 1):
        if g % m == 0 and _lattice_member([x // m for x in n], q):
            return False
    return True


def _center_inside(g: MonoPoly, n) -> bool:
    # the center {u_j = 0 : v_j > 0} must lie on the hypersurface
    return not g.restrict([j for j in range(4) if n[j] == 0])


def _valuation_discrepancy(g: MonoPoly, v) -> Fraction:
    return sum(v, Fraction(0)) - g.weight(v) - 1


@dataclass(frozen=True)
class Certificate:
    """Re-checkable evidence that a point is not terminal.

    kinds: ``reid-tai`` (a group element of small age), ``discrepancy`` (a
    monomial valuation with discrepancy <= 0), ``fixed-locus`` (a subgroup
    fixing a curve), ``singular-locus`` (non-isolated singularities).
    """

    kind: str
    germ: Optional[MonoPoly]
    action: Optional[CyclicAction]
    data: tuple = ()

    def info(self) -> dict:
        return dict(self.data)

    def verify(self) -> bool:
        d = self.info()
        if self.kind == "reid-tai":
            q, k = self.action, d["k"]
            s = sum(smallest_residue(k * a, q.r) for a in q.weights)
            return 0 < k < q.r and s == d["age_sum"] and s <= q.r
        if self.kind == "discrepancy":
            n = d["numerators"]
            v = tuple(Fraction(x, self.action.r) for x in n)
            return (
                v == d["v"]
                and _lattice_member(n, self.action)
                and _primitive(n, self.action)
                and sum(1 for x in n if x > 0) >= 3
                and _center_inside(self.germ, n)
                and _valuation_discrepancy(self.germ, v) == d["d"] <= 0
            )
        if self.kind == "fixed-locus":
            dim, _ = _fixed_locus(self.germ, self.action, d["coordinates"])
            order = gcd(self.action.r, *[self.action.weights[j] for j in d["coordinates"]])
            return dim == d["dimension"] >= 1 and order == d["order"] > 1
        if self.kind == "singular-locus":
            return singular_locus(self.germ) == "positive-dimensional"
        return False

    def summary(self) -> str:
        d = self.info()
        if self.kind == "reid-tai":
            return f"k={d['k']} has age sum {d['age_sum']} <= {self.action.r}"
        if self.kind == "discrepancy":
            v = ",".join(str(x) for x in d["v"])
            return f"valuation v=({v}) has discrepancy {d['d']}"
        if self.kind == "fixed-locus":
            return (f"mu_{d['order']} fixes a {d['dimension']}-dimensional locus "
                    f"(coordinates {[CHART_NAMES[j] for j in d['coordinates']]})")
        return "singular along a positive-dimensional locus"


def discrepancy_certificate(g: MonoPoly, q: Optional[CyclicAction] = None,
                            search_bound: int = DEFAULT_CERT_BOUND) -> Optional[Certificate]:
    """Search monomial valuations for one with discrepancy ``<= 0``.

    Candidates are primitive vectors ``v`` of ``Z^4 + Z a/r`` with entries in
    ``[0, search_bound]``, at least three of them positive, whose center
    lies on ``{g = 0}``. The discrepancy is ``sum(v) - v(g) - 1``. A hit is a
    sound non-terminality certificate; a miss proves nothing.
    """
    if q is None:
        q = CyclicAction(1, (0, 0, 0, 0))
    if g.constant:
        return None
    r = q.r
    found = set()
    for k in range(r):
        base = [smallest_residue(k * a, r) for a in q.weights]
        for ms in itertools.product(range(search_bound + 1), repeat=4):
            n = tuple(b + r * m for b, m in zip(base, ms))
            if max(n) <= search_bound * r:
                found.add(n)
    for n in sorted(found, key=lambda n: (sum(n), n)):
        if sum(1 for x in n if x > 0) < 3 or not _center_inside(g, n):
            continue
        if not _primitive(n, q):
            continue
        v = tuple(Fraction(x, r) for x in n)
        d = _valuation_discrepancy(g, v)
        if d <= 0:
            return Certificate("discrepancy", g, q,
                               (("numerators", n), ("v", v), ("d", d)))
    return None


# ------------------------------------------------------------- singular loci


def singular_locus(g: MonoPoly) -> Optional[str]:
    """Singular locus of ``{g = 0} in C^4`` for separated ``g``.

    Returns ``"empty"``, ``"origin"``, ``"positive-dimensional"``, or None
    when some variable occurs in two monomials (unsupported).

    For a separated polynomial every partial derivative involves one
    monomial only, so at a singular point every non-constant monomial is
    critical and hence zero; singular points exist only when the constant
    term vanishes and no monomial is linear.
    """
    seen: set[int] = set()
    for e in g.terms:
        vs = {j for j in range(4) if e[j]}
        if vs & seen:
            return None
        seen |= vs
    if g.constant != 0 or any(sum(e) == 1 for e in g.terms):
        return "empty"
    if len(seen) < 4:
        return "positive-dimensional"
    for e in g.terms:
        support = [j for j in range(4) if e[j]]
        # critical locus of a monomial inside its own variables
        if len(support) == 1 and e[support[0]] >= 2:
            continue
        if len(support) == 2 and all(e[j] == 1 for j in support):
            continue
        return "positive-dimensional"
    return "origin"


def _fixed_locus(g: MonoPoly, q: CyclicAction, coords) -> tuple[int, MonoPoly]:
    """Dimension of ``{g = 0}`` inside the coordinate subspace ``coords``
    (-1 when empty), with the restricted polynomial."""
    h = g.restrict(coords)
    if not h:
        return len(coords), h
    if h.variables() == set() and h.constant:
        return -1, h
    return len(coords) - 1, h


# ------------------------------------------------------------------ analysis


@dataclass(frozen=True)
class SingularityReport:
    chart: int
    location: str  # chart-origin | axis-curve | off-origin-locus
    kind: str  # smooth | quotient | cA | hypersurface-quotient | fixed-locus | singular-locus
    verdict: str
    action: Optional[CyclicAction] = None
    germ: Optional[MonoPoly] = None
    certificate: Optional[Certificate] = None
    detail: str = ""

    def __post_init__(self):
        if (self.certificate is not None) != (self.verdict == NON_TERMINAL):
            raise ValueError("a certificate accompanies exactly the non-terminal verdicts")

    def signature(self):
        """Chart-independent description, used to compare analyses."""
        act = canonical_weights(self.action) if self.action is not None else None
        germ = None
        if self.kind == "cA":
            # u1 <-> u2 mirrors the x <-> y symmetry of the germ
            germ = min(self.germ.to_str(CHART_NAMES), self.germ.swap(0, 1).to_str(CHART_NAMES))
        return (self.location, self.kind, self.verdict, act, germ)

    def describe(self) -> str:
        bits = [f"chart {self.chart}", self.location, self.kind]
        if self.action is not None:
            bits.append(str(self.action))
        if self.germ is not None and self.kind in ("cA", "hypersurface-quotient", "singular-locus"):
            bits.append(self.germ.to_str(CHART_NAMES))
        bits.append(self.verdict)
        if self.certificate is not None:
            bits.append(f"[{self.certificate.kind}: {self.certificate.summary()}]")
        if self.detail:
            bits.append(f"({self.detail})")
        return " | ".join(bits)


@dataclass
class BlowupAnalysis:
    weights: WeightVec4
    N: int
    f: MonoPoly
    charts: list[Chart]
    reports: list[SingularityReport]
    exceptional: MonoPoly
    exceptional_verdict: str
    verdict: str
    a: int
    E3: Fraction
    notes: list[str] = field(default_factory=list)

    @property
    def quotient_reports(self) -> list[SingularityReport]:
        return [rep for rep in self.reports if rep.kind == "quotient"]

    def report_signatures(self) -> Counter:
        return Counter(rep.signature() for rep in self.reports)


def _origin_report(ch: Chart, cert_bound: int) -> Optional[SingularityReport]:
    g, q = ch.strict_transform, ch.action
    if g.constant != 0:
        return None
    lin = g.linear_variables()
    if lin:
        if q.is_trivial:
            return SingularityReport(ch.index, "chart-origin", "smooth", TERMINAL)
        residual = q.drop(lin[0])
        rt = reid_tai(residual)
        if rt.terminal:
            return SingularityReport(ch.index, "chart-origin", "quotient", TERMINAL, residual)
        cert = Certificate("reid-tai", None, residual, (("k", rt.k), ("age_sum", rt.age_sum)))
        return SingularityReport(ch.index, "chart-origin", "quotient", NON_TERMINAL,
                                 residual, certificate=cert)
    sing = singular_locus(g)
    if q.is_trivial:
        if sing == "origin" and quadratic_rank(g) >= 2:
            return SingularityReport(ch.index, "chart-origin", "cA", TERMINAL, germ=g,
                                     detail="isolated cA point")
        if sing == "positive-dimensional":
            cert = discrepancy_certificate(g, None, cert_bound) or Certificate(
                "singular-locus", g, None)
            return SingularityReport(ch.index, "chart-origin", "cA", NON_TERMINAL, germ=g,
                                     certificate=cert, detail="non-isolated")
        return SingularityReport(ch.index, "chart-origin", "cA", UNKNOWN, germ=g,
                                 detail="hypersurface germ outside the supported shapes")
    cert = discrepancy_certificate(g, q, cert_bound)
    if cert is not None:
        return SingularityReport(ch.index, "chart-origin", "hypersurface-quotient",
                                 NON_TERMINAL, q, g, cert)
    return SingularityReport(ch.index, "chart-origin", "hypersurface-quotient", UNKNOWN, q, g,
                             detail=f"no certificate within bound {cert_bound}")


def _locus_reports(ch: Chart) -> list[SingularityReport]:
    g, q = ch.strict_transform, ch.action
    reports = []
    # a positive-dimensional singular locus through the origin is handled there
    if singular_locus(g) is None:
        reports.append(SingularityReport(
            ch.index, "off-origin-locus", "singular-locus", UNKNOWN, germ=g,
            detail="strict transform not separated; singular locus not computed"))
    if q.r == 1:
        return reports
    subsets = set()
    for d in range(2, q.r + 1):
        if q.r % d == 0:
            coords = tuple(j for j in range(4) if q.weights[j] % d == 0)
            if coords:
                subsets.add(coords)
    for coords in sorted(subsets):
        order = gcd(q.r, *[q.weights[j] for j in coords])
        dim, h = _fixed_locus(g, q, coords)
        where = "axis-curve" if len(coords) == 1 else "off-origin-locus"
        if dim >= 2:
            reports.append(SingularityReport(
                ch.index, where, "fixed-locus", UNKNOWN, q, h,
                detail=f"mu_{order} fixes a divisor (weights not well formed)"))
        elif dim == 1:
            cert = Certificate("fixed-locus", g, q, (
                ("coordinates", coords), ("order", order), ("dimension", 1)))
            reports.append(SingularityReport(ch.index, where, "fixed-locus", NON_TERMINAL,
                                             q, h, cert))
        elif dim == 0 and len(h) > 1:
            reports.append(SingularityReport(
                ch.index, where, "fixed-locus", UNKNOWN, q, h,
                detail=f"isolated mu_{order}-fixed points off the origin"))
    return reports


def analyze(w, N: int, cert_bound: int = DEFAULT_CERT_BOUND) -> BlowupAnalysis:
    """Classify the singularities of the weighted blow-up of ``xy + z^2 + w^N``."""
    if N < 2:
        raise ValueError("N must be >= 2")
    w = WeightVec4.coerce(w)
    f = ca1_polynomial(N)
    chs = charts(w, f)
    reports = []
    for ch in chs:
        rep = _origin_report(ch, cert_bound)
        if rep is not None:
            reports.append(rep)
        reports.extend(_locus_reports(ch))
    h, irr = exceptional_part(w, f)
    verdicts = {rep.verdict for rep in reports}
    if NON_TERMINAL in verdicts:
        verdict = NON_TERMINAL
    elif UNKNOWN in verdicts or irr != "irreducible":
        verdict = UNKNOWN
    else:
        verdict = TERMINAL
    return BlowupAnalysis(w, N, f, chs, reports, h, irr, verdict,
                          discrepancy(w, f), e_cubed(w, f))


def basket_of(w, N: int, analysis: Optional[BlowupAnalysis] = None):
    """Basket ``(J, a, e, r)`` of a terminal weighted blow-up.

    Each terminal quotient point ``1/r(1, -1, b)`` contributes ``(r, v, b)``
    with ``v = e*b mod r``, flipping ``b -> r - b`` so that ``v <= r/2``.
    """
    if analysis is None:
        analysis = analyze(w, N)
    if analysis.verdict != TERMINAL:
        raise ValueError(f"blow-up {analysis.weights} of N={N} is not verified terminal")
    a = analysis.a
    normal = []
    for rep in analysis.quotient_reports:
        rb = normalize_quotient(rep.action)
        if rb is None:
            raise AssertionError(f"terminal quotient {rep.action} has no (1,-1,b) form")
        if rb[0] > 1:
            normal.append(rb)
    r = lcm_all(rq for rq, _ in normal)
    e = mod_inverse(a, r)
    if e is None:
        raise AssertionError(f"discrepancy {a} not coprime to index {r}")
    pts = []
    for rq, b in normal:
        v = smallest_residue(e * b, rq)
        if 2 * v > rq:
            b, v = rq - b, rq - v
        pts.append(FictitiousPoint(rq, v, b))
    return Basket(tuple(pts)), a, e, r
