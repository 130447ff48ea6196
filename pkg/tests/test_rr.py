from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from ca1_contractions.baskets import enumerate_baskets
from ca1_contractions.rr import (
    Basket, FictitiousPoint, InconsistentBasketError, RRContext, a_e3, a_i_correction,
    colength_in_maximal_ideal, compare_index_two_closed_form, dim_m_mod_second, dim_quotient,
    exclude_by_c2, graded_dim, index_two_closed_form, polynomial_part, sum_v,
)

EXCLUDED = Basket.of((2, 1, 1), (5, 2, 1))


# independent evaluations written directly with sympy

def oracle_A(i, e, pts):
    total = sympy.Integer(0)
    for r, b in pts:
        k = (i * e) % r
        total += -sympy.Rational(k * (r * r - 1), 12 * r)
        for j in range(1, k):
            jb = (j * b) % r
            total += sympy.Rational(jb * (r - jb), 2 * r)
    return Fraction(int(total.p), int(total.q))


def oracle_ec2(i, a, e, E3, pts):
    c = sympy.Symbol("c")
    poly = sympy.Rational(2 * (3 * i * i - 3 * i + 1) - 3 * (2 * i - 1) * a + a * a, 12) \
        * sympy.Rational(E3.numerator, E3.denominator)
    eq = poly + c / 12 + (sympy.Rational(str(oracle_A(i, e, pts))) - sympy.Rational(str(oracle_A(i - 1, e, pts))))
    (sol,) = sympy.solve(eq, c)
    return Fraction(int(sol.p), int(sol.q))


def test_point_invariants():
    with pytest.raises(ValueError):
        FictitiousPoint(4, 2)
    with pytest.raises(ValueError):
        FictitiousPoint(5, 3)
    with pytest.raises(ValueError):
        FictitiousPoint(6, 1, 3)
    assert Basket.of((5, 2), (3, 1)).pairs == ((3, 1), (5, 2))


@pytest.mark.parametrize("J, want", [
    (Basket(), Fraction(2)),
    (Basket.of((7, 3)), Fraction(2, 7)),
    (Basket.of((2, 1), (5, 2)), Fraction(3, 10)),
])
def test_a_e3(J, want):
    assert a_e3(J) == want


@pytest.mark.parametrize("i, a, J, want", [
    (1, 3, Basket.of((2, 1), (4, 1)), 1),
    (2, 3, Basket.of((2, 1), (4, 1)), 2),
    (3, 3, Basket.of((2, 1), (4, 1)), 4),
    (1, 4, Basket.of((5, 2)), 1),
])
def test_dim_quotient(i, a, J, want):
    assert dim_quotient(i, a, J) == want


def test_dim_quotient_range_and_integrality():
    with pytest.raises(ValueError):
        dim_quotient(3, 2, Basket())
    # sum v = 6 pushes the value below zero
    with pytest.raises(InconsistentBasketError):
        dim_quotient(2, 2, Basket.of((3, 1), (5, 2), (7, 3)))


@pytest.mark.parametrize("J, v, d", [
    (Basket(), 0, 3), (Basket.of((9, 2)), 2, 1), (Basket.of((3, 1), (5, 2)), 3, 0),
])
def test_sum_v_and_d(J, v, d):
    assert sum_v(J) == v
    assert dim_m_mod_second(J) == d


def test_sum_v_too_large():
    with pytest.raises(InconsistentBasketError):
        dim_m_mod_second(Basket.of((2, 1), (3, 1), (5, 1), (7, 1)))


def test_a_i_values_for_excluded_case():
    assert a_i_correction(1, 7, EXCLUDED) == Fraction(-21, 40)
    assert a_i_correction(2, 7, EXCLUDED) == 0
    assert a_i_correction(0, 7, EXCLUDED) == 0
    for i in range(6):
        assert a_i_correction(i, 7, EXCLUDED) == oracle_A(i, 7, [(2, 1), (5, 1)])


def test_a_i_needs_b():
    with pytest.raises(ValueError):
        a_i_correction(1, 1, Basket.of((5, 2)))


def test_polynomial_parts():
    assert polynomial_part(1, 3, Fraction(1, 10)) == Fraction(1, 60)
    assert polynomial_part(2, 3, Fraction(1, 10)) == Fraction(-1, 30)


def test_graded_dim_vanishes_at_solved_c2():
    ctx = RRContext(a=3, r=10, e=7, E3=Fraction(1, 10), Ec2=Fraction(61, 10))
    assert graded_dim(1, ctx, EXCLUDED) == 0
    assert graded_dim(2, ctx, EXCLUDED) != 0


def test_context_validation():
    ctx = RRContext.from_basket(Basket.of((5, 2)), 4)
    assert (ctx.r, ctx.e, ctx.E3) == (5, 4, Fraction(1, 5))
    with pytest.raises(InconsistentBasketError):
        RRContext.from_basket(Basket.of((5, 2)), 5)
    with pytest.raises(InconsistentBasketError):
        RRContext.from_basket(Basket.of((5, 2)), 3)


def test_exclusion_contradiction():
    verdict = exclude_by_c2(EXCLUDED, 3, 7, Fraction(1, 10))
    assert not verdict.consistent
    assert (verdict.ec2_i1, verdict.ec2_i2) == (Fraction(61, 10), Fraction(-59, 10))
    pts = [(2, 1), (5, 1)]
    assert verdict.ec2_i1 == oracle_ec2(1, 3, 7, Fraction(1, 10), pts)
    assert verdict.ec2_i2 == oracle_ec2(2, 3, 7, Fraction(1, 10), pts)


def test_exclusion_consistent_cases():
    assert exclude_by_c2(Basket(), 1, 0, Fraction(1)).consistent
    for b in (2, 3):
        verdict = exclude_by_c2(Basket.of((5, 2, b)), 4, 4, Fraction(1, 5))
        assert verdict.consistent
        assert len(set(verdict.solves.values())) == 1


small_baskets = st.lists(
    st.tuples(st.integers(2, 30), st.integers(1, 15), st.integers(1, 29)), max_size=3)


def _basket(raw):
    from math import gcd
    pts = []
    for r, v, b in raw:
        v = v % r or 1
        v = min(v, r - v)
        b = b % r or 1
        if v >= 1 and gcd(v, r) == 1 and gcd(b, r) == 1:
            pts.append(FictitiousPoint(r, v, b))
    return Basket(tuple(pts))


@given(small_baskets, st.integers(2, 9), st.integers(0, 60), st.fractions(0, 5, max_denominator=60))
def test_exclusion_difference_identity(raw, a, e, E3):
    J = _basket(raw)
    verdict = exclude_by_c2(J, a, e, E3)
    A = verdict.A
    diff = verdict.solves[1] - verdict.solves[2]
    assert diff == 12 * ((polynomial_part(2, a, E3) - polynomial_part(1, a, E3)) + (A[2] - 2 * A[1]))
    assert verdict.consistent == (diff == 0)


@given(small_baskets, st.integers(0, 50), st.integers(0, 50))
def test_a_i_local_vanishing(raw, i, e):
    J = _basket(raw)
    assert a_i_correction(0, e, J) == 0
    for p in J:
        if (i * e) % p.r == 0:
            assert a_i_correction(i, e, Basket((p,))) == 0


@given(st.integers(1, 40))
def test_gorenstein_specialization(i):
    assert dim_quotient(i, i, Basket()) == i * i


def test_dim_quotient_integral_and_monotone_on_enumerated_baskets():
    for total in range(4):
        finite, _, _ = enumerate_baskets(total, 40)
        for J in finite:
            for a in range(2, 9):
                dims = [dim_quotient(i, a, J) for i in range(1, a + 1)]
                assert dims == sorted(dims)
                assert dims[0] == 1 and dims[1] == 4 - sum_v(J)


# open question: the quoted closed form for {(r, 2)}, a = 4 is stated as a
# colength in m_P, but it agrees with the colength in O_X instead
@pytest.mark.parametrize("r", [5, 7, 9, 11])
def test_closed_form_vs_general_formula_is_off_by_one(r):
    for i in (3, 4):
        cmp = compare_index_two_closed_form(i, r)
        assert cmp.matches_O_reading
        assert not cmp.matches_m_reading
        assert cmp.colength_in_m == colength_in_maximal_ideal(i, 4, Basket.of((r, 2)))
    assert index_two_closed_form(3, 5) == 4
    assert dim_quotient(3, 4, Basket.of((5, 2))) - 1 == 3
