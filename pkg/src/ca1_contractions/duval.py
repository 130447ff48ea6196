"""Partial resolutions of an A_s Du Val point.

The minimal resolution has a chain ``F_1, ..., F_s`` of (-2)-curves; a
partial resolution contracts some of them. A curve ``C`` through the point
has strict transform meeting ``F_1`` and ``F_s`` transversally once each.
Everything is computed from the chain's intersection matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

__all__ = [
    "ChainConfig",
    "intersection_matrix",
    "solve_chain",
    "pullback_coeffs",
    "PartialResolutionProfile",
    "partial_resolution_profile",
    "IndexMatch",
    "match_indices",
    "all_configs",
]


@dataclass(frozen=True)
class ChainConfig:
    """``contracted[k]`` is True when ``F_{k+1}`` is contracted."""

    s: int
    contracted: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "contracted", tuple(bool(c) for c in self.contracted))
        if self.s < 1 or len(self.contracted) != self.s:
            raise ValueError("need s >= 1 and one flag per curve")
        if all(self.contracted):
            raise ValueError("at least one curve must survive")

    @classmethod
    def from_set(cls, s: int, contracted: Sequence[int]) -> "ChainConfig":
        """From 1-based indices of contracted curves."""
        chosen = set(contracted)
        if not chosen <= set(range(1, s + 1)):
            raise ValueError(f"indices must lie in 1..{s}")
        return cls(s, tuple(k in chosen for k in range(1, s + 1)))

    @classmethod
    def from_bitmask(cls, s: int, mask: int) -> "ChainConfig":
        """Bit ``k - 1`` of ``mask`` set means ``F_k`` is contracted."""
        if mask < 0 or mask >= 1 << s:
            raise ValueError(f"bitmask must lie in [0, 2^{s})")
        return cls(s, tuple(bool(mask >> k & 1) for k in range(s)))

    @property
    def contracted_indices(self) -> list[int]:
        return [k + 1 for k, c in enumerate(self.contracted) if c]

    @property
    def kept_indices(self) -> list[int]:
        return [k + 1 for k, c in enumerate(self.contracted) if not c]


def intersection_matrix(s: int) -> list[list[int]]:
    """``F_i . F_j`` on the chain: -2 on the diagonal, 1 for neighbours."""
    return [[-2 if i == j else (1 if abs(i - j) == 1 else 0) for j in range(s)]
            for i in range(s)]


def _contracted_runs(cfg: ChainConfig) -> list[list[int]]:
    runs, cur = [], []
    for k, c in enumerate(cfg.contracted, start=1):
        if c:
            cur.append(k)
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return runs


def solve_chain(n: int, rhs) -> list[Fraction]:
    """Solve ``T c = rhs`` exactly for the ``n x n`` (-2)-chain matrix ``T``
    by forward elimination and back substitution on its three diagonals."""
    diag = [Fraction(-2)] * n
    b = [Fraction(x) for x in rhs]
    for i in range(1, n):
        m = Fraction(1) / diag[i - 1]
        diag[i] -= m
        b[i] -= m * b[i - 1]
    c = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        nxt = c[i + 1] if i + 1 < n else 0
        c[i] = (b[i] - nxt) / diag[i]
    return c


def pullback_coeffs(cfg: ChainConfig, k: int) -> dict[int, Fraction]:
    """Coefficients ``c_j`` of ``g^*F_k = F_k + sum c_j F_j`` over contracted ``j``.

    Determined by ``g^*F_k . F_j = 0`` for every contracted ``j``. The system
    splits along runs of consecutive contracted curves; runs not touching
    ``F_k`` have zero right-hand side and hence zero solution.
    """
    if not 1 <= k <= cfg.s or cfg.contracted[k - 1]:
        raise ValueError(f"F_{k} must be a surviving curve")
    M = intersection_matrix(cfg.s)
    out = {}
    for run in _contracted_runs(cfg):
        if run[0] - 1 != k and run[-1] + 1 != k:
            out.update((j, Fraction(0)) for j in run)
            continue
        rhs = [-M[i - 1][k - 1] for i in run]
        out.update(zip(run, solve_chain(len(run), rhs)))
    return dict(sorted(out.items()))


def _pullback_vector(cfg: ChainConfig, k: int) -> list[Fraction]:
    vec = [Fraction(0)] * cfg.s
    vec[k - 1] = Fraction(1)
    for j, c in pullback_coeffs(cfg, k).items():
        vec[j - 1] = c
    return vec


@dataclass(frozen=True)
class PartialResolutionProfile:
    s: int
    s1: int
    s2: int
    intersections: tuple[Fraction, Fraction]
    mult: int


def _end_run(flags) -> int:
    n = 0
    for c in flags:
        if not c:
            break
        n += 1
    return n


def partial_resolution_profile(cfg: ChainConfig) -> PartialResolutionProfile:
    """Singularities at the ends and the local intersections of ``C`` with ``E``.

    ``s1`` / ``s2`` count the contracted curves at the ``F_1`` / ``F_s`` end;
    those form A_{s1} / A_{s2} points on the partial resolution. Locally
    ``E`` is the first / last surviving curve, and its intersection with the
    strict transform of ``C`` at the singular point is the coefficient of
    ``F_1`` / ``F_s`` in the pull-back of that curve. ``mult`` is the
    multiplicity of the fundamental cycle, the minimal ``Z > 0`` with
    ``Z . F_j <= 0`` for all ``j``.
    """
    s = cfg.s
    s1 = _end_run(cfg.contracted)
    s2 = _end_run(reversed(cfg.contracted))
    kept = cfg.kept_indices
    left = _pullback_vector(cfg, kept[0])[0]
    right = _pullback_vector(cfg, kept[-1])[s - 1]
    return PartialResolutionProfile(s, s1, s2, (left, right), max(fundamental_cycle(s)))


@lru_cache(maxsize=None)
def _fundamental_cycle(s: int) -> tuple[int, ...]:
    M = intersection_matrix(s)
    Z = [1] * s
    while True:
        for j in range(s):
            if sum(M[j][i] * Z[i] for i in range(s)) > 0:
                Z[j] += 1
                break
        else:
            return tuple(Z)


def fundamental_cycle(s: int) -> list[int]:
    """Laufer's algorithm on the chain; ``[1] * s`` for type A."""
    return list(_fundamental_cycle(s))


@dataclass(frozen=True)
class IndexMatch:
    r1: int
    r2: int
    s_min: int
    local_types: tuple[str, str]


def match_indices(r1: int, r2: int) -> IndexMatch:
    """Matching ``1/(s_i + 1) = 1/r_i`` gives ``s_i = r_i - 1`` and, since
    ``s1 + s2 < s``, the bound ``s >= r1 + r2 - 1``."""
    if not 1 <= r1 <= r2:
        raise ValueError("need 1 <= r1 <= r2")
    return IndexMatch(r1, r2, r1 + r2 - 1, (f"A_{r1 - 1}", f"A_{r2 - 1}"))


def all_configs(s: int):
    for mask in range((1 << s) - 1):
        yield ChainConfig.from_bitmask(s, mask)
