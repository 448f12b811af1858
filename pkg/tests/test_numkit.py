import math
import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hqkoebe.errors import DivisionByZeroConstantTerm, MaxSubdivisionsExceeded, OrderOverflow
from hqkoebe.numkit import (ORDER_CAP, QuadSpec, Series, polar_area_integral, quad_interval,
                            segment_integral, segment_integrals, series_binpow, series_combine,
                            weighted_sup)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)


def test_series_mul_binomial():
    assert series_combine("mul", Series((1, 1)), Series((1, 1)), 2).coeffs == (1, 2, 1)


def test_series_div_geometric():
    assert series_combine("div", Series((1,)), Series((1, -1)), 3).coeffs == (1, 1, 1, 1)


def test_series_integ_koebe_derivative():
    assert series_combine("integ", Series((1, 4, 9, 16))).coeffs == (0, 1, 2, 3, 4)


def test_series_diff_inverts_integ():
    s = Series((Fraction(1), Fraction(2, 3), Fraction(-5, 7)), exact=True)
    back = series_combine("diff", series_combine("integ", s))
    assert back.coeffs == s.coeffs


def test_series_div_zero_constant_term():
    with pytest.raises(DivisionByZeroConstantTerm):
        series_combine("div", Series((1,)), Series((0, 1)), 3)


def test_series_order_cap():
    with pytest.raises(OrderOverflow):
        series_binpow(1, 2, ORDER_CAP + 1)


def test_exact_series_rejects_irrational():
    with pytest.raises((TypeError, ValueError)):
        Series((1, math.pi), exact=True)


@pytest.mark.parametrize("c, alpha, n, expected", [
    (1, 2, 3, [1, 2, 1, 0]),
    (-1, -3, 2, [1, 3, 6]),
    (1, Fraction(1, 2), 2, [1, Fraction(1, 2), Fraction(-1, 8)]),
])
def test_binpow_examples(c, alpha, n, expected):
    assert list(series_binpow(c, alpha, n, exact=True).coeffs) == expected


@given(st.lists(rationals, min_size=1, max_size=6), st.lists(rationals, min_size=1, max_size=6))
def test_mul_then_div_roundtrip(a, b):
    if b[0] == 0:
        b[0] = Fraction(1)
    A, B = Series(tuple(a), exact=True), Series(tuple(b), exact=True)
    n = 8
    prod = series_combine("mul", A, B, n)
    back = series_combine("div", prod, B, n)
    assert back.coeffs[:len(a)] == tuple(A.padded(n)[:len(a)])


@given(rationals, st.integers(0, 12))
def test_binpow_additive_in_exponent(alpha, n):
    s = series_combine("mul", series_binpow(1, alpha, n, exact=True), series_binpow(1, 1 - alpha, n, exact=True), n)
    assert s.coeffs == tuple([1, 1] + [0] * (n - 1))[: n + 1]


def test_series_horner_matches_closed_form():
    s = series_combine("div", Series((1.0,)), Series((1.0, -1.0)), 60)
    assert abs(s(0.3 + 0.2j) - 1 / (0.7 - 0.2j)) < 1e-14


def test_segment_integral_constant():
    v, err = segment_integral(lambda x: np.ones_like(x), 0.3 + 0.4j)
    assert abs(v - (0.3 + 0.4j)) < 1e-15


def test_segment_integral_koebe():
    v, _ = segment_integral(lambda x: (1 + x) / (1 - x) ** 3, 0.5)
    assert abs(v - 2) < 1e-12


def test_segment_integral_log():
    v, err = segment_integral(lambda x: 1 / (1 - x), 0.9)
    assert abs(v - math.log(10)) < 1e-10
    assert err < 1e-8


def test_segment_integrals_batched_match_single(rng):
    from conftest import disk_points
    z = disk_points(rng, 50, 0.9)
    vals, errs, conv = segment_integrals(lambda x: (1 / (1 - x) ** 2)[None, :], z)
    assert conv.all()
    assert np.max(np.abs(vals[0] - z / (1 - z))) < 1e-12


def test_quad_cap_sets_flag_and_warns():
    spec = QuadSpec(rel_tol=1e-15, abs_tol=1e-300, max_subdivisions=2)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        v, err = segment_integral(lambda x: 1 / np.sqrt(np.abs(x - 0.5) + 1e-12), 0.99, spec)
    assert any(issubclass(w.category, MaxSubdivisionsExceeded) for w in caught)
    assert np.isfinite(v)


def test_quad_interval_polynomial():
    v, _ = quad_interval(lambda s: s ** 5, 0.0, 2.0)
    assert abs(v - 64 / 6) < 1e-12


@pytest.mark.parametrize("F, expected", [
    (lambda x: np.ones(np.shape(x)), math.pi / 4),
    (lambda x: np.abs(x) ** 2, math.pi / 32),
    (lambda x: np.abs(1 / (1 - x * x)) ** 2, math.pi * math.atanh(0.25)),
])
def test_polar_area_examples(F, expected):
    v, err = polar_area_integral(F, 0.5)
    assert abs(v - expected) < 1e-9


def test_weighted_sup_constant():
    sup, arg = weighted_sup(lambda z: np.full(np.shape(z), 3 + 0j), 1)
    assert abs(sup - 3) < 1e-14
    assert abs(arg) < 1e-14


def test_weighted_sup_koebe_pre_schwarzian():
    r = 1 - 1e-4
    sup, arg = weighted_sup(lambda z: 2 * (z + 2) / (1 - z * z), 1, r)
    assert abs(sup - (6 - 2e-4)) < 1e-9
    assert abs(arg - r) < 1e-6


def test_weighted_sup_koebe_schwarzian():
    sup, _ = weighted_sup(lambda z: -6 / (1 - z * z) ** 2, 2)
    assert abs(sup - 6) < 1e-12


def test_weighted_sup_never_exceeds_analytic_max():
    # |z^3| (1 - |z|^2) peaks at |z|^2 = 3/5
    sup, _ = weighted_sup(lambda z: z ** 3, 1)
    exact = 0.6 ** 1.5 * 0.4
    assert sup <= exact + 1e-15
    assert exact - sup < 1e-9
