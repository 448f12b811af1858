"""Closed-form h and g through Gauss hypergeometric functions.

Only the argument/parameter patterns needed for the closed forms are
supported:

* ``2F1(1, -a; 1-a; x)`` for x anywhere off [1, inf): direct series on
  |x| <= 0.8, the Pfaff transform ``(1-x)^-1 2F1(1, 1; 1-a; x/(x-1))``
  while its argument stays well inside the disk, and for large |x| the
  1/x connection formula
  ``a/(a+1) (-x)^-1 2F1(1, 1+a; 2+a; 1/x) + pi a / sin(pi a) (-x)^a``;
* generic ``2F1(A, B; C; x)`` with |x| < 1 by direct summation.
"""

from __future__ import annotations

import warnings

import numpy as np

from .analytic_maps import _disk_point
from .errors import DegenerateParameters, NonConvergence, SlowConvergence
from .shear import HarmonicValue, Params

SERIES_RADIUS = 0.8
PFAFF_RADIUS = 0.995
DEFAULT_TOL = 1e-16
_RUN = 20          # consecutive negligible terms required before stopping
_CHUNK = 256
_MAX_TERMS = 400_000


def _sum_terms(term_chunk, tol: float) -> complex:
    """Sum a series given chunk-wise; stop after _RUN consecutive tiny terms."""
    total = 0j
    start = 0
    run = 0
    while start < _MAX_TERMS:
        t = term_chunk(start, _CHUNK)
        if not np.all(np.isfinite(t)):
            raise NonConvergence("hypergeometric series overflowed")
        partial = total + np.cumsum(t)
        small = np.abs(t) <= tol * np.maximum(np.abs(partial), 1e-300)
        for k in range(t.size):
            run = run + 1 if small[k] else 0
            if run >= _RUN:
                return complex(partial[k])
        total = complex(partial[-1])
        start += _CHUNK
    raise NonConvergence("hypergeometric series did not converge")


def _is_nonpositive_int(c) -> bool:
    c = complex(c)
    return c.imag == 0 and c.real <= 0 and float(c.real).is_integer()


def hyp_general(A, B, C, x, tol: float = DEFAULT_TOL) -> complex:
    """2F1(A, B; C; x) by its power series, |x| < 1."""
    x = complex(x)
    if _is_nonpositive_int(C):
        raise DegenerateParameters("lower parameter is a nonpositive integer")
    if abs(x) >= 1:
        raise NonConvergence("direct series needs |x| < 1")
    if abs(x) > 0.95:
        warnings.warn("series argument |x| = %.4f converges slowly" % abs(x), SlowConvergence)
    if x == 0:
        return 1 + 0j
    A, B, C = complex(A), complex(B), complex(C)
    # term_n / term_{n-1} = (A+n-1)(B+n-1) / ((C+n-1) n) * x
    state = {"last": 1 + 0j}

    def chunk(start, size):
        n = np.arange(start, start + size, dtype=float)
        ratio = np.where(n == 0, 1.0, (A + n - 1) * (B + n - 1) / ((C + n - 1) * np.maximum(n, 1)) * x)
        if start == 0:
            t = np.cumprod(ratio)
        else:
            t = state["last"] * np.cumprod(ratio)
        state["last"] = t[-1]
        return t

    return _sum_terms(chunk, tol)


def _check_a(a: float):
    if float(a) >= 0 and float(a).is_integer():
        raise DegenerateParameters("2F1(1,-a;1-a;.) needs a not a nonnegative integer")


def hyp_E_series(a: float, x, tol: float = DEFAULT_TOL) -> complex:
    """-a * sum x^n / (n - a), valid for |x| < 1."""
    _check_a(a)
    x = complex(x)
    if abs(x) >= 1:
        raise NonConvergence("direct series needs |x| < 1")
    a = float(a)
    state = {"pow": 1 + 0j}

    def chunk(start, size):
        n = np.arange(start, start + size, dtype=float)
        pw = state["pow"] * np.cumprod(np.full(size, x))
        pw = np.concatenate([[state["pow"]], pw[:-1]])
        state["pow"] = pw[-1] * x
        return -a * pw / (n - a)

    return _sum_terms(chunk, tol)


def hyp_E_pfaff(a: float, x, tol: float = DEFAULT_TOL) -> complex:
    """(1-x)^-1 2F1(1, 1; 1-a; x/(x-1)), valid while |x/(x-1)| < 1."""
    _check_a(a)
    x = complex(x)
    y = x / (x - 1)
    if abs(y) >= 1:
        raise NonConvergence("Pfaff argument outside the unit disk")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SlowConvergence)
        return hyp_general(1, 1, 1 - float(a), y, tol) / (1 - x)


def hyp_E_inverse(a: float, x, tol: float = DEFAULT_TOL) -> complex:
    """Large-|x| form through 2F1(1, 1+a; 2+a; 1/x); needs |x| > 1 and a not an integer."""
    _check_a(a)
    a = float(a)
    if a.is_integer():
        raise DegenerateParameters("1/x connection formula needs a non-integer a")
    x = complex(x)
    if abs(x) <= 1:
        raise NonConvergence("1/x connection formula needs |x| > 1")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SlowConvergence)
        tail = hyp_general(1, 1 + a, 2 + a, 1 / x, tol)
    return a / (a + 1) * tail / (-x) + np.pi * a / np.sin(np.pi * a) * _cpow(-x, a)


def hyp_E(a: float, x, tol: float = DEFAULT_TOL) -> complex:
    """2F1(1, -a; 1-a; x) with analytic continuation off the cut [1, inf)."""
    _check_a(a)
    x = complex(x)
    if x == 1:
        raise NonConvergence("x = 1 is a branch point")
    if abs(x) <= SERIES_RADIUS:
        return hyp_E_series(a, x, tol)
    y = abs(x / (x - 1))
    if y <= 0.9:
        return hyp_E_pfaff(a, x, tol)
    if abs(x) >= 1 / SERIES_RADIUS and not float(a).is_integer():
        return hyp_E_inverse(a, x, tol)
    if y <= PFAFF_RADIUS:
        return hyp_E_pfaff(a, x, tol)
    raise NonConvergence("argument %r outside both the series and Pfaff regions" % (x,))


def _cpow(base, expo):
    """Principal power base**expo for complex base."""
    base = complex(base)
    if base == 0:
        return 0j
    return complex(np.exp(expo * np.log(base)))


def closed_form_hg(p: Params, z) -> HarmonicValue:
    """h and g from the hypergeometric closed forms (principal branches).

    Nonnegative integer ``a`` is refused with :class:`DegenerateParameters`
    (a vanishing prefactor at 0 and 1, a nonpositive lower parameter from 2
    on); callers fall back to :func:`hqkoebe.shear.eval_f` there.
    """
    a, lam = float(p.a), float(p.lam)
    if a >= 0 and a.is_integer():
        raise DegenerateParameters("closed form degenerate for nonnegative integer a")
    z = complex(_disk_point(z))

    x_const = (lam + 1) / (lam - 1)
    x_z = -(z - 1) * (lam + 1) / ((z + 1) * (lam - 1))
    e_const = hyp_E(a, x_const)
    e_z = hyp_E(a, x_z) if z != 0 else e_const
    half = (1 - z) / 2
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SlowConvergence)
        f_a = hyp_general(1 - a, 1 - a, 2 - a, half)
        f_b = hyp_general(-a, -a, 1 - a, half)

    psi = _cpow(1 / (1 - z), a) * (
        4 * (a - 1) * lam * _cpow(z + 1, a) * e_z
        + 2 ** a * (lam - 1) * (a * (z - 1) * f_a - 2 * (a - 1) * f_b)
    )
    h = (-(-2 * lam * e_const + lam - 1) / (2 * a * (lam ** 2 - 1))
         - psi / (4 * (a - 1) * a * (lam - 1) * (lam + 1)))

    cayley_pow = _cpow((1 + z) / (1 - z), a)
    varpi = lam * (2 * e_const - cayley_pow * (2 * e_z + lam - 1) + lam - 1)
    g = varpi / (2 * a * (lam ** 2 - 1))
    return HarmonicValue.build(h, g)
