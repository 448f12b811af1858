import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from hqkoebe.errors import DegenerateParameters, NonConvergence
from hqkoebe.hyp2f1 import (closed_form_hg, hyp_E, hyp_E_inverse, hyp_E_pfaff, hyp_E_series,
                            hyp_general)
from hqkoebe.shear import Params, eval_f

from conftest import disk_points


def brute_E(a, x, terms=2000):
    return -a * sum(x ** n / (n - a) for n in range(terms))


def test_E_examples():
    assert hyp_E(0.5, 0) == 1
    assert abs(hyp_E(0.5, 0.1) - brute_E(0.5, 0.1)) < 1e-12
    # integral representation 1 - a x int_0^1 s^-a / (1 - s x) ds at a = 1/2, x = -3
    assert abs(hyp_E(0.5, -3) - (1 + math.pi / math.sqrt(3))) < 1e-12


def test_general_examples():
    assert hyp_general(0.3, -1.2, 2.5, 0) == 1
    a = 0.5
    x = 0.25
    brute = 0.0
    t = 1.0
    for n in range(200):
        brute += t
        t *= (1 - a + n) ** 2 / ((2 - a + n) * (n + 1)) * x
    assert abs(hyp_general(1 - a, 1 - a, 2 - a, x) - brute) < 1e-10
    a = -0.5
    assert abs(hyp_general(-a, -a, 1 - a, 0.5) - complex(mpmath.hyp2f1(-a, -a, 1 - a, 0.5))) < 1e-12


def test_general_refuses_outside_disk():
    with pytest.raises(NonConvergence):
        hyp_general(1, 1, 2, 1.2)
    with pytest.raises(DegenerateParameters):
        hyp_general(1, 1, -2, 0.3)


def test_E_refuses_nonnegative_integer():
    with pytest.raises(DegenerateParameters):
        hyp_E(2, 0.3)


def test_series_and_pfaff_agree_on_overlap():
    worst = 0.0
    for rad in np.linspace(0.6, 0.8, 5):
        for th in np.linspace(0.5 * math.pi, 1.5 * math.pi, 21):
            x = rad * np.exp(1j * th)
            for a in (-1.5, -0.5, 0.5, 1.5):
                worst = max(worst, abs(hyp_E_series(a, x) - hyp_E_pfaff(a, x)))
    assert worst < 1e-9


@given(st.sampled_from([-1.5, -0.3, 0.5, 1.5, 2.5]), st.floats(1.3, 200), st.floats(0.05, math.pi),
       st.booleans())
def test_continuation_matches_reference(a, rad, th, lower):
    # angles stay off the cut [1, inf), where the two sides differ
    x = rad * complex(math.cos(th), -math.sin(th) if lower else math.sin(th))
    ref = complex(mpmath.hyp2f1(1, -a, 1 - a, x))
    assert abs(hyp_E(a, x) - ref) < 1e-10 * max(1, abs(ref))


def test_inverse_formula_matches_pfaff():
    for x in (-3.0, -1.5 + 0.5j, -2 - 4j):
        assert abs(hyp_E_inverse(0.5, x) - hyp_E_pfaff(0.5, x)) < 1e-12


def test_closed_form_examples():
    p = Params(1.5, 0.5)
    v = closed_form_hg(p, 0)
    assert abs(v.h) < 1e-14 and abs(v.g) < 1e-14
    assert abs(closed_form_hg(p, 0.4).f - eval_f(p, 0.4).f) < 1e-6
    p = Params(-1.5, 0.5)
    assert abs(closed_form_hg(p, 0.4 + 0.2j).f - eval_f(p, 0.4 + 0.2j).f) < 1e-6


@pytest.mark.parametrize("a", [0, 1, 2, 3])
def test_closed_form_refuses_nonnegative_integer(a):
    with pytest.raises(DegenerateParameters):
        closed_form_hg(Params(a, 0.5), 0.3)


@pytest.mark.parametrize("a", [-1, -2, -3])
def test_closed_form_negative_integer(a):
    p = Params(a, 0.5)
    assert abs(closed_form_hg(p, 0.4 + 0.2j).f - eval_f(p, 0.4 + 0.2j).f) < 1e-10


def test_closed_form_strong_dilatation(rng):
    p = Params(0.5, 0.9)
    for z in disk_points(rng, 20, 0.9):
        assert abs(closed_form_hg(p, z).f - eval_f(p, z).f) < 1e-6
