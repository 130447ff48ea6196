from fractions import Fraction
from math import gcd

import pytest
import sympy
from hypothesis import given, strategies as st

from ca1_contractions.rr import a_e3
from ca1_contractions.wblowup import (
    NON_TERMINAL, TERMINAL, UNKNOWN, CyclicAction, MonoPoly, WeightVec4, analyze, basket_of,
    ca1_polynomial, canonical_weights, charts, discrepancy, discrepancy_certificate, e_cubed,
    exceptional_part, normalize_quotient, reid_tai, same_type, singular_locus,
    weighted_multiplicity,
)

U = sympy.symbols("u1:5")
X = sympy.symbols("x y z w")


def to_sympy(f: MonoPoly, gens):
    return sum(c * sympy.prod(g ** k for g, k in zip(gens, e)) for e, c in f.terms.items())


def quotient_types(analysis):
    return sorted(canonical_weights(rep.action) for rep in analysis.quotient_reports)


# ---------------------------------------------------------------- numerics

@pytest.mark.parametrize("w, N, wt, a, E3", [
    ((1, 5, 3, 2), 3, 6, 4, Fraction(1, 5)),
    ((1, 5, 3, 2), 7, 6, 4, Fraction(1, 5)),
    ((2, 4, 3, 1), 6, 6, 3, Fraction(1, 4)),
    ((1, 1, 1, 1), 2, 2, 1, Fraction(2)),
    ((3, 5, 4, 1), 9, 8, 4, Fraction(2, 15)),
])
def test_weighted_numerics(w, N, wt, a, E3):
    f = ca1_polynomial(N)
    assert weighted_multiplicity(w, f) == wt
    assert discrepancy(w, f) == a
    assert e_cubed(w, f) == E3


def test_multiplicity_of_w_and_zero():
    assert weighted_multiplicity((1, 1, 1, 1), MonoPoly.monomial((0, 0, 0, 1))) == 1
    with pytest.raises(ValueError):
        weighted_multiplicity((1, 1, 1, 1), MonoPoly())


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 6))
def test_family_discrepancy_is_t(s, t, extra):
    if s > t:
        s, t = t, s
    N = 2 * t + extra
    w = (s, 2 * t - s, t, 1)
    f = ca1_polynomial(N)
    assert weighted_multiplicity(w, f) == 2 * t
    assert discrepancy(w, f) == t


# ------------------------------------------------------------------- charts

@pytest.mark.parametrize("w, N", [((1, 5, 3, 2), 5), ((2, 4, 3, 1), 8), ((3, 5, 4, 1), 9), ((2, 3, 3, 1), 6)])
def test_chart_factorization_matches_substitution(w, N):
    f = ca1_polynomial(N)
    fx = to_sympy(f, X)
    m = weighted_multiplicity(w, f)
    for ch in charts(w, f):
        i = ch.index - 1
        sub = {X[j]: U[j] * U[i] ** w[j] for j in range(4) if j != i}
        sub[X[i]] = U[i] ** w[i]
        pulled = sympy.expand(fx.subs(sub, simultaneous=True))
        assert sympy.expand(pulled - U[i] ** m * to_sympy(ch.strict_transform, U)) == 0
        assert ch.action.r == w[i]
        assert ch.action.weights[i] == 1 % w[i]


@pytest.mark.parametrize("m, n, N", [(1, 2, 6), (2, 3, 9), (3, 4, 12), (2, 4, 11)])
def test_chart4_is_ca_germ(m, n, N):
    ch = charts((m, 2 * n - m, n, 1), ca1_polynomial(N))[3]
    assert ch.strict_transform == MonoPoly({(1, 1, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, N - 2 * n): 1})
    assert ch.action.is_trivial


@pytest.mark.parametrize("N", [4, 5, 8])
def test_1532_charts(N):
    chs = charts((1, 5, 3, 2), ca1_polynomial(N))
    an = analyze((1, 5, 3, 2), N)
    q2 = [rep for rep in an.reports if rep.chart == 2 and rep.location == "chart-origin"][0]
    assert q2.kind == "quotient"
    assert same_type(q2.action, CyclicAction(5, (-1, 3, 2)))
    assert chs[1].strict_transform.linear_variables() == [0]
    g4 = chs[3].strict_transform
    assert g4 == MonoPoly({(1, 1, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, 2 * N - 6): 1})
    assert chs[3].action == CyclicAction(2, (1, 1, 1, -1))


# ------------------------------------------------------- exceptional divisor

@pytest.mark.parametrize("w, N, terms", [
    ((2, 4, 3, 1), 8, {(1, 1, 0, 0): 1, (0, 0, 2, 0): 1}),
    ((1, 5, 3, 2), 4, {(1, 1, 0, 0): 1, (0, 0, 2, 0): 1}),
    ((2, 4, 3, 1), 6, {(1, 1, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, 6): 1}),
])
def test_exceptional_part(w, N, terms):
    h, verdict = exceptional_part(w, ca1_polynomial(N))
    assert h == MonoPoly(terms)
    assert verdict == "irreducible"


def test_exceptional_part_unknown_for_reducible_looking_form():
    # xy alone has rank 2 and nothing else: reducible, so no verdict
    f = MonoPoly({(1, 1, 0, 0): 1, (0, 0, 0, 5): 1})
    assert exceptional_part((1, 1, 3, 1), f)[1] == UNKNOWN


# ------------------------------------------------------------- quotients

@pytest.mark.parametrize("q, terminal", [
    (CyclicAction(5, (4, 3, 2)), True),
    (CyclicAction(4, (3, 2, 1)), False),
    (CyclicAction(2, (1, 1, 1)), True),
    (CyclicAction(1, (0, 0, 0)), True),
])
def test_reid_tai_examples(q, terminal):
    assert reid_tai(q).terminal is terminal


def test_reid_tai_certificate():
    rt = reid_tai(CyclicAction(4, (3, 2, 1)))
    assert (rt.terminal, rt.k, rt.age_sum) == (False, 2, 4)


def test_normalize_examples():
    assert normalize_quotient(CyclicAction(5, (4, 3, 2))) == (5, 3)
    assert normalize_quotient(CyclicAction(4, (3, 2, 1))) is None
    assert normalize_quotient(CyclicAction(1, (0, 0, 0))) == (1, 0)
    for s in range(2, 15):
        for t in range(1, 3 * s):
            if gcd(s, t) == 1:
                assert normalize_quotient(CyclicAction(s, (-1, t, 1))) == (s, (-t) % s)


def test_terminal_normal_form_is_terminal():
    for r in range(2, 201):
        for b in range(1, r):
            if gcd(b, r) == 1:
                assert reid_tai(CyclicAction(r, (1, -1, b))).terminal


def test_normal_form_iff_reid_tai_small_r():
    for r in range(1, 21):
        for a in range(r):
            for b in range(r):
                for c in range(r):
                    q = CyclicAction(r, (a, b, c))
                    assert reid_tai(q).terminal == (normalize_quotient(q) is not None)


@given(st.integers(2, 40), st.data())
def test_normalized_form_has_same_type(r, data):
    b = data.draw(st.integers(1, r - 1).filter(lambda b: gcd(b, r) == 1))
    k = data.draw(st.integers(1, r - 1).filter(lambda k: gcd(k, r) == 1))
    perm = data.draw(st.permutations([1, -1, b]))
    q = CyclicAction(r, tuple(k * x for x in perm))
    rr, bb = normalize_quotient(q)
    assert rr == r and bb in (b % r, (-b) % r)
    assert same_type(q, CyclicAction(r, (1, -1, bb)))


# ------------------------------------------------------------ certificates

def test_certificate_for_z2_point():
    g = MonoPoly({(1, 1, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, 2): 1})
    cert = discrepancy_certificate(g, CyclicAction(2, (1, 1, 1, 1)))
    assert cert.info()["v"] == (Fraction(1, 2),) * 4
    assert cert.info()["d"] == 0
    assert cert.verify()


@pytest.mark.parametrize("K", [2, 3, 5])
def test_no_certificate_for_ca_germ(K):
    g = MonoPoly({(1, 1, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, K): 1})
    assert discrepancy_certificate(g, None, 6) is None


def test_no_certificate_for_smooth_germ():
    g = MonoPoly({(1, 0, 0, 0): 1, (0, 0, 2, 0): 1})
    assert discrepancy_certificate(g, None, 4) is None


def test_certificate_for_non_isolated_germ():
    g = MonoPoly({(1, 1, 0, 0): 1, (0, 0, 2, 0): 1})
    cert = discrepancy_certificate(g)
    assert cert is not None and cert.verify() and cert.info()["d"] <= 0


def test_tampered_certificate_fails():
    g = MonoPoly({(1, 1, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, 2): 1})
    cert = discrepancy_certificate(g, CyclicAction(2, (1, 1, 1, 1)))
    bad = type(cert)(cert.kind, MonoPoly({(1, 1, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, 1): 1}),
                     cert.action, cert.data)
    assert not bad.verify()


# -------------------------------------------------------- singular locus

@pytest.mark.parametrize("terms, want", [
    ({(1, 1, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, 3): 1}, "origin"),
    ({(1, 1, 0, 0): 1, (0, 0, 2, 0): 1}, "positive-dimensional"),
    ({(1, 0, 0, 0): 1, (0, 0, 2, 0): 1}, "empty"),
    ({(1, 1, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, 0): 1}, "empty"),
    ({(1, 1, 0, 0): 1, (0, 0, 2, 1): 1}, "positive-dimensional"),
    ({(1, 1, 0, 0): 1, (1, 0, 2, 0): 1}, None),
])
def test_singular_locus(terms, want):
    assert singular_locus(MonoPoly(terms)) == want


# ----------------------------------------------------------------- analyze

@pytest.mark.parametrize("s, t, N", [(1, 1, 2), (1, 2, 5), (2, 3, 6), (2, 3, 9), (3, 4, 8), (3, 5, 12)])
def test_family_is_terminal(s, t, N):
    an = analyze((s, 2 * t - s, t, 1), N)
    assert an.verdict == TERMINAL
    want = sorted(canonical_weights(CyclicAction(r, (-1, t, 1))) for r in (s, 2 * t - s) if r > 1)
    assert quotient_types(an) == want
    ca = [rep for rep in an.reports if rep.kind == "cA"]
    if N >= 2 * t + 2:
        assert [rep.germ for rep in ca] == [
            MonoPoly({(1, 1, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, N - 2 * t): 1})]
    else:
        assert ca == []


@pytest.mark.parametrize("m, n, N", [(2, 2, 4), (2, 4, 8), (3, 3, 9), (4, 4, 10), (2, 4, 12)])
def test_non_coprime_family_is_not_terminal(m, n, N):
    an = analyze((m, 2 * n - m, n, 1), N)
    assert an.verdict == NON_TERMINAL
    origin_q = [rep for rep in an.reports if rep.kind == "quotient"]
    assert len(origin_q) == 2
    for rep, r in zip(origin_q, (m, 2 * n - m)):
        assert rep.verdict == NON_TERMINAL and rep.certificate.kind == "reid-tai"
        assert rep.certificate.verify()
        assert same_type(rep.action, CyclicAction(r, (-1, n, 1)))


def test_1532():
    assert analyze((1, 5, 3, 2), 3).verdict == TERMINAL
    only = analyze((1, 5, 3, 2), 3).quotient_reports
    assert len(only) == 1 and same_type(only[0].action, CyclicAction(5, (-1, 3, 2)))
    for N in range(4, 11):
        an = analyze((1, 5, 3, 2), N)
        assert an.verdict == NON_TERMINAL
        certs = [rep.certificate for rep in an.reports if rep.certificate is not None]
        assert [c.kind for c in certs] == ["discrepancy"]
        assert certs[0].verify()


def test_reports_carry_certificates_exactly_when_non_terminal():
    an = analyze((2, 3, 3, 1), 6)
    for rep in an.reports:
        assert (rep.certificate is not None) == (rep.verdict == NON_TERMINAL)


@pytest.mark.parametrize("w, N, pairs, a, e, r", [
    ((2, 4, 3, 1), 6, ((2, 1), (4, 1)), 3, 3, 4),
    ((1, 5, 3, 2), 3, ((5, 2),), 4, 4, 5),
    ((1, 1, 1, 1), 2, (), 1, 0, 1),
])
def test_basket_of(w, N, pairs, a, e, r):
    J, aa, ee, rr = basket_of(w, N)
    assert (J.pairs, aa, ee, rr) == (pairs, a, e, r)
    assert aa * e_cubed(w, ca1_polynomial(N)) == a_e3(J)


def test_basket_of_rejects_non_terminal():
    with pytest.raises(ValueError):
        basket_of((1, 5, 3, 2), 4)


weights = st.tuples(*[st.integers(1, 7)] * 3, st.integers(1, 3))


@given(weights, st.integers(2, 12))
def test_analyze_symmetric_in_x_and_y(w, N):
    a1 = analyze(w, N)
    a2 = analyze(WeightVec4(w).swap_xy(), N)
    assert a1.verdict == a2.verdict
    assert a1.report_signatures() == a2.report_signatures()


@given(weights, st.integers(2, 12))
def test_terminal_analyses_round_trip_through_rr(w, N):
    an = analyze(w, N)
    for rep in an.reports:
        if rep.certificate is not None:
            assert rep.certificate.verify()
    if an.verdict == TERMINAL:
        J, a, _, r = basket_of(w, N, an)
        assert a * an.E3 == a_e3(J)
