from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logklab.errors import (
    DimensionTooSmallError,
    MultiplicityUnsupportedError,
    NotBelowThresholdError,
    ParameterOutOfRangeError,
)
from logklab.normalcone import (
    coefficients,
    critical_c,
    curve,
    df_closed,
    df_from_coefficients,
    find_destabilizer,
    g_factor,
    instability_threshold,
    jna_normal_cone,
)
from logklab.pairmodel import CATALOG, PolarisedPair

C_GRID = [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4)]
BETA_GRID = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]
open_unit_fractions = st.fractions(min_value=0, max_value=1, max_denominator=10**4).filter(
    lambda q: 0 < q < 1
)


# ----------------------------- coefficients -----------------------------


def test_coefficients_p2_at_half(p2):
    co = coefficients(p2, Fraction(1, 2))
    assert (co.a0, co.a1, co.b0, co.b1) == (
        Fraction(1, 2), Fraction(3, 2), Fraction(-5, 48), Fraction(-3, 8))
    assert (co.a0_tilde, co.b0_tilde) == (Fraction(1), Fraction(-1, 2))


def test_coefficients_p1xp1_at_three_quarters(p1xp1):
    co = coefficients(p1xp1, Fraction(3, 4))
    assert co.a0 == 1
    assert co.a0_tilde == 2
    assert co.b0_tilde == Fraction(-3, 2)
    assert co.b0 == Fraction(63, 64) / 3 - Fraction(3, 4)  # = -27/64
    assert co.b0 == Fraction(-27, 64)


def test_coefficients_structural_identities():
    for name in ("P2-line", "P3-hyperplane", "P4-hyperplane", "P1xP1-diag"):
        pair = CATALOG[name].pair
        for c in C_GRID:
            co = coefficients(pair, c)
            assert co.a0 > 0
            assert co.b0 < 0
            assert co.a0_tilde == pair.dimension * co.a0
            assert co.b0_tilde == -c * pair.dimension * co.a0
            assert df_closed(pair, c, Fraction(0)).positive_prefactor > 0


def test_coefficients_guards(p2):
    with pytest.raises(ParameterOutOfRangeError):
        coefficients(p2, Fraction(0))
    with pytest.raises(ParameterOutOfRangeError):
        coefficients(p2, Fraction(1))
    with pytest.raises(ParameterOutOfRangeError):
        coefficients(p2, Fraction(3, 2))
    with pytest.raises(MultiplicityUnsupportedError):
        coefficients(p2, Fraction(1, 2), m=2)
    curve_pair = PolarisedPair("curve", 1, Fraction(2), Fraction(2))
    with pytest.raises(DimensionTooSmallError):
        coefficients(curve_pair, Fraction(1, 2))


# ----------------------------- DF evaluation -----------------------------


def test_df_closed_worked_example(p2):
    rep = df_closed(p2, Fraction(1, 2), Fraction(1, 2))
    assert rep.df == Fraction(-1, 48)
    assert rep.inner_factor == Fraction(-1, 14)
    assert rep.positive_prefactor == Fraction(7, 24)
    assert rep.df == rep.positive_prefactor * rep.inner_factor


def test_df_closed_p1xp1(p1xp1):
    rep = df_closed(p1xp1, Fraction(3, 4), Fraction(1, 4))
    assert rep.df == Fraction(-15, 128)
    assert rep.inner_factor == Fraction(-5, 28)
    assert rep.positive_prefactor == Fraction(21, 32)


def test_df_zero_at_constructed_root(p2):
    # beta chosen as -(S_D/(n-1)) * g(1/2) = 2 * 2/7
    assert df_closed(p2, Fraction(1, 2), Fraction(4, 7)).df == 0


def test_df_from_coefficients_examples(p2):
    co = coefficients(p2, Fraction(1, 2))
    assert df_from_coefficients(co, Fraction(1, 2)) == Fraction(-1, 48)
    assert df_from_coefficients(co, Fraction(1)) == Fraction(1, 8)


def test_cross_path_identity_on_grid():
    for name in ("P2-line", "P3-hyperplane", "P4-hyperplane", "P1xP1-diag"):
        pair = CATALOG[name].pair
        for c in C_GRID:
            co = coefficients(pair, c)
            for beta in BETA_GRID:
                assert df_from_coefficients(co, beta) == df_closed(pair, c, beta).df


@settings(deadline=None)
@given(
    st.fractions(min_value=-4, max_value=4, max_denominator=64),
    st.fractions(min_value=-4, max_value=4, max_denominator=64),
)
def test_df_affine_in_beta(beta1, beta2):
    pair = CATALOG["P3-hyperplane"].pair
    c = Fraction(2, 3)
    mid = (beta1 + beta2) / 2
    assert 2 * df_closed(pair, c, mid).df == (
        df_closed(pair, c, beta1).df + df_closed(pair, c, beta2).df)


def test_df_slope_in_beta_is_prefactor(p2):
    c = Fraction(1, 3)
    rep0 = df_closed(p2, c, Fraction(0))
    rep1 = df_closed(p2, c, Fraction(1))
    assert rep1.df - rep0.df == rep0.positive_prefactor


# ----------------------------- g factor -----------------------------


def test_g_range_on_seeded_random_rationals():
    import random

    rng = random.Random(20260809)
    for n in range(2, 7):
        for _ in range(200):
            den = rng.randint(2, 10**6)
            num = rng.randint(1, den - 1)
            g = g_factor(n, Fraction(num, den))
            assert Fraction(-1, n) < g < 0


def test_g_strictly_decreasing():
    for n in (2, 3, 5):
        values = [g_factor(n, Fraction(i, 64)) for i in range(1, 64)]
        assert all(a > b for a, b in zip(values, values[1:]))


# ----------------------------- J^NA -----------------------------


def test_jna_known_values(p2, p1xp1):
    assert jna_normal_cone(p2, Fraction(1, 2)) == Fraction(5, 24)
    assert jna_normal_cone(p1xp1, Fraction(3, 4)) == Fraction(27, 64)


def test_jna_small_c_positive_and_small(p2):
    value = jna_normal_cone(p2, Fraction(1, 1000))
    assert 0 < value < Fraction(1, 1000)


@settings(deadline=None)
@given(open_unit_fractions)
def test_jna_positive_on_open_interval(c):
    pair = CATALOG["P3-hyperplane"].pair
    assert jna_normal_cone(pair, c) > 0


def test_jna_equals_minus_b0_over_a0():
    for name in ("P2-line", "P3-hyperplane", "P1xP1-diag"):
        pair = CATALOG[name].pair
        for c in C_GRID:
            co = coefficients(pair, c)
            assert jna_normal_cone(pair, c) == -co.b0 / co.a0


# ----------------------------- threshold and search -----------------------------


def test_instability_threshold_examples(p2, p3, p1xp1):
    assert instability_threshold(p2) == 1
    assert instability_threshold(p3) == 1
    assert instability_threshold(p1xp1) == Fraction(1, 2)


def test_find_destabilizer_examples(p2, p1xp1):
    c, df = find_destabilizer(p1xp1, Fraction(1, 4))
    assert 0 < c < 1 and df < 0
    c, df = find_destabilizer(p2, Fraction(1, 2))
    assert df_closed(p2, c, Fraction(1, 2)).df == df < 0
    # c = 1/2 itself qualifies; the dyadic schedule finds it immediately
    assert c == Fraction(1, 2)


def test_find_destabilizer_at_threshold_refuses(p2):
    with pytest.raises(NotBelowThresholdError):
        find_destabilizer(p2, Fraction(1))


def test_positive_df_at_and_above_threshold(p2, p1xp1):
    for pair in (p2, p1xp1):
        thr = instability_threshold(pair)
        for c in C_GRID:
            assert df_closed(pair, c, thr).df > 0
            assert df_closed(pair, c, thr + Fraction(1, 7)).df > 0


def test_find_destabilizer_guards(p2):
    with pytest.raises(ParameterOutOfRangeError):
        find_destabilizer(p2, Fraction(1, 2), tol=Fraction(0))


# ----------------------------- critical c -----------------------------


def test_critical_c_p2(p2):
    tol = Fraction(1, 1024)
    bracket = critical_c(p2, Fraction(1, 2), tol)
    assert not bracket.all_destabilizing
    assert bracket.hi - bracket.lo <= tol
    assert df_closed(p2, bracket.lo, Fraction(1, 2)).inner_factor > 0
    assert df_closed(p2, bracket.hi, Fraction(1, 2)).inner_factor < 0


def test_critical_c_p1xp1_sign_change(p1xp1):
    bracket = critical_c(p1xp1, Fraction(1, 4), Fraction(1, 4096))
    assert df_closed(p1xp1, bracket.lo, Fraction(1, 4)).df > 0
    assert df_closed(p1xp1, bracket.hi, Fraction(1, 4)).df < 0


def test_critical_c_loose_tolerance(p2):
    bracket = critical_c(p2, Fraction(1, 2), Fraction(1))
    assert 0 < bracket.lo <= bracket.hi < 1
    assert bracket.hi - bracket.lo <= 1


def test_critical_c_exact_rational_root(p2):
    bracket = critical_c(p2, Fraction(4, 7), Fraction(1, 10**9))
    assert bracket.lo == bracket.hi == Fraction(1, 2)


def test_critical_c_sentinel_for_nonpositive_beta(p2):
    bracket = critical_c(p2, Fraction(0), Fraction(1, 8))
    assert bracket.all_destabilizing
    assert (bracket.lo, bracket.hi) == (0, 0)
    bracket = critical_c(p2, Fraction(-3), Fraction(1, 8))
    assert bracket.all_destabilizing


def test_critical_c_refuses_at_threshold(p2):
    with pytest.raises(NotBelowThresholdError):
        critical_c(p2, Fraction(1), Fraction(1, 8))


# ----------------------------- curve -----------------------------


def test_curve_grid(p2):
    rows = curve(p2, Fraction(1, 2), 7)
    assert [c for c, _ in rows] == [Fraction(i, 8) for i in range(1, 8)]
    for c, rep in rows:
        assert rep.df == df_closed(p2, c, Fraction(1, 2)).df


def test_curve_order_independent_of_map(p2):
    sequential = curve(p2, Fraction(1, 4), 5)
    shuffled = curve(p2, Fraction(1, 4), 5,
                     map_fn=lambda f, xs: list(reversed(list(map(f, reversed(list(xs)))))))
    assert sequential == shuffled
