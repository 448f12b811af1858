import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hqkoebe.analytic_maps import koebe_generalized, lens_map
from hqkoebe.errors import DilatationOutOfRange
from hqkoebe.shear import (Params, dilatation, eval_f, eval_f_many, eval_f_path, f_lambda_explicit,
                           general_shear, harmonic_koebe_eval, harmonic_koebe_many, hg_series, jacobian,
                           shear_derivatives)

from conftest import disk_points


def test_params_validation():
    with pytest.raises(ValueError):
        Params(1.0, 1.0)
    with pytest.raises(ValueError):
        Params(1.0, -0.1)


def test_shear_derivative_examples():
    hp, gp = shear_derivatives(Params(2, 0), 0.5)
    assert abs(hp - 12) < 1e-12 and gp == 0
    hp, gp = shear_derivatives(Params(-0.7, 0.4), 0)
    assert hp == 1 and gp == 0
    hp, gp = shear_derivatives(Params(2, 0.5), 0.5)
    assert abs(hp - 16) < 1e-12 and abs(gp - 4) < 1e-12


def test_eval_examples():
    assert abs(eval_f(Params(2, 0), 0.5).f - 2) < 1e-12
    assert abs(eval_f(Params(0, 0), 0.5).f - 0.5 * math.log(3)) < 1e-12
    assert abs(eval_f(Params(2, 0.5), 0.3).f - f_lambda_explicit(0.5, 0.3).f) < 1e-9


def test_eval_at_origin_is_zero():
    v = eval_f(Params(1.3, 0.6), 0)
    assert v.h == 0 and v.g == 0 and v.f == 0


def test_shear_identity_and_dilatation(rng):
    z = disk_points(rng, 200, 0.95)
    for a, lam in ((-2, 0.75), (0.5, 0.25), (2, 0.5)):
        p = Params(a, lam)
        h, g, _, _, conv = eval_f_many(p, z)
        assert conv.all()
        assert np.max(np.abs(h - g - koebe_generalized(a, z))) < 1e-10 * max(1, np.max(np.abs(h)))
        assert np.max(np.abs(dilatation(p, z) - lam * z)) < 1e-14


def test_path_evaluation_matches_direct():
    p = Params(1.5, 0.5)
    verts = [0, 0.5, 0.5 + 0.5j, 0.2 + 0.6j]
    path = eval_f_path(p, verts)
    direct = eval_f(p, verts[-1])
    assert abs(path.f - direct.f) < 1e-10


@given(st.fractions(min_value=-2, max_value=2, max_denominator=4),
       st.sampled_from([Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]))
def test_series_matches_quadrature(a, lam):
    p = Params(float(a), float(lam))
    z = 0.35 - 0.25j
    s = hg_series(float(a), float(lam), 120)(z)
    q = eval_f(p, z)
    assert abs(s.f - q.f) < 1e-10


def test_series_examples():
    pair = hg_series(2, 0, 8, exact=True)
    assert list(pair.a_coeffs.coeffs) == list(range(9))
    assert all(b == 0 for b in pair.b_coeffs.coeffs)
    pair = hg_series(2, Fraction(1, 2), 4, exact=True)
    assert pair.a_coeffs.coeffs[2:] == (Fraction(9, 4), Fraction(15, 4), Fraction(173, 32))
    assert pair.b_coeffs.coeffs[2:4] == (Fraction(1, 4), Fraction(3, 4))


def test_harmonic_koebe_limit_coefficients():
    pair = hg_series(2, 1, 6, exact=True)
    for n in range(1, 7):
        assert pair.a_coeffs.coeffs[n] == Fraction((n + 1) * (2 * n + 1), 6)
        assert pair.b_coeffs.coeffs[n] == Fraction((n - 1) * (2 * n - 1), 6)
    # a_3 of the harmonic Koebe function is 14/3
    assert pair.a_coeffs.coeffs[3] == Fraction(14, 3)


def test_harmonic_koebe_values():
    v = harmonic_koebe_eval(0)
    assert (v.h, v.g, v.f) == (0, 0, 0)
    assert abs(harmonic_koebe_eval(0.5).h - 19 / 6) < 1e-14
    z = 0.4 + 0.3j
    s = hg_series(2, 1, 200)(z)
    hk = harmonic_koebe_eval(z)
    assert abs(s.h - hk.h) < 1e-12 and abs(s.g - hk.g) < 1e-12
    h, g, f = harmonic_koebe_many(np.array([z]))
    assert abs(f[0] - hk.f) < 1e-15


def test_lambda_explicit_examples(rng):
    z = 0.3 + 0.1j
    v0 = f_lambda_explicit(0, z)
    assert abs(v0.h - z / (1 - z) ** 2) < 1e-15 and v0.g == 0
    v = f_lambda_explicit(0.5, 0)
    assert (v.h, v.g, v.f) == (0, 0, 0)
    zs = disk_points(rng, 50, 0.9)
    for lam in (0.25, 0.5, 0.75):
        _, _, f, _, _ = eval_f_many(Params(2, lam), zs)
        ex = np.array([f_lambda_explicit(lam, zk).f for zk in zs])
        assert np.max(np.abs(f - ex)) < 1e-9


def test_jacobian_examples():
    assert abs(jacobian(Params(0.3, 0.7), 0) - 1) < 1e-15
    assert abs(jacobian(Params(2, 0), 0.5) - 144) < 1e-10
    assert abs(jacobian(Params(2, 0.5), 0.5) - 240) < 1e-10


def test_jacobian_positive(rng):
    z = disk_points(rng, 500, 0.99)
    assert np.all(jacobian(Params(-1.5, 0.9), z) > 0)


def test_general_shear_specializations():
    a, lam, z = 1.5, 0.5, 0.3 - 0.4j
    v = general_shear(lambda x: koebe_generalized(a, x, 1), lambda x: lam * x, 1, z)
    assert abs(v.f - eval_f(Params(a, lam), z).f) < 1e-12
    v = general_shear(lambda x: koebe_generalized(2, x, 1), lambda x: x, 1, 0.5)
    assert abs(v.h - harmonic_koebe_eval(0.5).h) < 1e-9
    v = general_shear(lambda x: koebe_generalized(0, x, 1), lambda x: lens_map(0.5, x), 1, 0)
    assert (v.h, v.g, v.f) == (0, 0, 0)


def test_general_shear_rejects_bad_dilatation():
    with pytest.raises(DilatationOutOfRange):
        general_shear(lambda x: np.ones_like(x), lambda x: 1.5 + 0 * x, 1, 0.3)
    with pytest.raises(ValueError):
        general_shear(lambda x: np.ones_like(x), lambda x: 0 * x, 2, 0.3)
