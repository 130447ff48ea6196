from fractions import Fraction
from math import gcd

import pytest

from ca1_contractions.catalog import (
    ConsistencyError, catalog_entries, enumerate_contractions, verify_weights,
)
from ca1_contractions.wblowup import NON_TERMINAL, TERMINAL, WeightVec4


def coprime_pairs(N):
    return [(s, t) for t in range(1, N // 2 + 1) for s in range(1, t + 1) if gcd(s, t) == 1]


def test_small_catalogs():
    two = enumerate_contractions(2)
    assert [(c.st, c.weights.w, c.a) for c in two] == [((1, 1), (1, 1, 1, 1), 1)]
    three = enumerate_contractions(3)
    assert [(c.kind, c.a) for c in three] == [("family", 1), ("exceptional-1532", 4)]
    assert [c.st for c in enumerate_contractions(7)] == [(1, 1), (1, 2), (1, 3), (2, 3)]


@pytest.mark.parametrize("N", range(2, 13))
def test_catalog_size_and_cases(N):
    cs = enumerate_contractions(N)
    assert len(cs) == len(coprime_pairs(N)) + (1 if N == 3 else 0)
    for c in cs:
        assert c.verified and c.report.consistent
        label = c.report.case_label
        if c.a == 1:
            assert label is None
        elif c.kind == "family":
            assert label in ("2.1.2", "2.2")
        else:
            assert label == "2.1.1" and (c.basket.index, c.a) == (5, 4)


def test_verify_examples():
    rep = verify_weights(8, (2, 4, 3, 1))
    assert (rep.verdict, rep.a, rep.E3, rep.basket.pairs) == (TERMINAL, 3, Fraction(1, 4), ((2, 1), (4, 1)))
    neg = verify_weights(4, (1, 5, 3, 2))
    assert neg.verdict == NON_TERMINAL and neg.consistent
    assert any(c.name.startswith("certificate") for c in neg.checks)
    nc = verify_weights(8, (2, 6, 4, 1))
    assert nc.verdict == NON_TERMINAL
    assert {sr.certificate.kind for sr in nc.analysis.reports if sr.kind == "quotient"} == {"reid-tai"}


def test_bad_catalog_input():
    with pytest.raises(ValueError):
        catalog_entries(1)


def test_consistency_error_is_raised(monkeypatch):
    import ca1_contractions.catalog as cat
    monkeypatch.setattr(cat, "catalog_entries",
                        lambda N: [("family", (2, 4), WeightVec4((2, 6, 4, 1)))])
    with pytest.raises(ConsistencyError):
        cat.enumerate_contractions(8)
