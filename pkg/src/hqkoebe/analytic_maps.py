"""Generalized Koebe function k_a, its derivatives, the lens map, and series.

All powers of the Cayley image (1+z)/(1-z) use the principal branch, which is
single valued on the disk because the image is the right half-plane.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import DomainError
from .numkit import Series, _check_order, series_binpow, series_combine


def _disk_point(z):
    z = np.asarray(z, dtype=complex)
    if np.any(~np.isfinite(z)) or np.any(np.abs(z) >= 1.0):
        raise DomainError("evaluation point must lie in the open unit disk")
    return z


def _out(w):
    return complex(w) if np.ndim(w) == 0 else w


def cexpm1(w):
    """exp(w) - 1 without cancellation for small complex w."""
    w = np.asarray(w, dtype=complex)
    x, y = w.real, w.imag
    re = np.expm1(x) * np.cos(y) - 2.0 * np.sin(0.5 * y) ** 2
    im = np.exp(x) * np.sin(y)
    return re + 1j * im


def cayley_log(z):
    """Principal Log((1+z)/(1-z)) = 2 artanh z."""
    z = np.asarray(z, dtype=complex)
    return np.log1p(z) - np.log1p(-z)


def koebe(z):
    z = _disk_point(z)
    return _out(z / (1 - z) ** 2)


def koebe_generalized(a: float, z, order: int = 0):
    """k_a(z) for order 0, otherwise its order-th derivative (order <= 3).

    a = 0 gives the logarithmic limit 1/2 log((1+z)/(1-z)).
    """
    z = _disk_point(z)
    a = float(a)
    if order == 0:
        L = cayley_log(z)
        w = 0.5 * L if a == 0 else cexpm1(a * L) / (2 * a)
    elif order == 1:
        w = np.exp((a - 1) * np.log1p(z) - (a + 1) * np.log1p(-z))
    elif order == 2:
        w = 2 * (a + z) / (1 - z) ** 4 * np.exp((a - 2) * cayley_log(z))
    elif order == 3:
        w = (2 * np.exp((a - 3) * np.log1p(z) - (a + 3) * np.log1p(-z))
             * (3 * z ** 2 + 6 * a * z + 2 * a * a + 1))
    else:
        raise ValueError("order must be 0, 1, 2 or 3")
    return _out(w)


def lens_map(R: float, z):
    """Lens map ((w^R - 1)/(w^R + 1)) with w = (1+z)/(1-z); equals tanh(R artanh z)."""
    if not 0 <= R <= 1:
        raise ValueError("lens parameter R must lie in [0, 1]")
    z = _disk_point(z)
    return _out(np.tanh(0.5 * R * cayley_log(z)))


def ka_prime_series(a, N: int, exact: bool = False) -> Series:
    """Taylor coefficients of k_a' to order N.

    Uses (1 - z^2) u' = 2 (z + a) u, i.e. c_{n+1} = 2 a c_n / (n+1) + c_{n-1}.
    """
    _check_order(N)
    if exact:
        a = Fraction(a)
        one, zero = Fraction(1), Fraction(0)
    else:
        a = float(a)
        one, zero = 1.0, 0.0
    c = [one]
    prev = zero
    for n in range(N):
        nxt = 2 * a * c[n] / (n + 1) + prev
        prev = c[n]
        c.append(nxt)
    return Series(tuple(c), exact)


def ka_prime_series_binomial(a, N: int, exact: bool = False) -> Series:
    """Same coefficients built as the product (1+z)^(a-1) * (1-z)^(-(a+1))."""
    if exact:
        a = Fraction(a)
        left = series_binpow(Fraction(1), a - 1, N, exact=True)
        right = series_binpow(Fraction(-1), -(a + 1), N, exact=True)
    else:
        a = float(a)
        left = series_binpow(1.0, a - 1, N, exact=False)
        right = series_binpow(-1.0, -(a + 1), N, exact=False)
    return series_combine("mul", left, right, N)


def ka_series(a, N: int, exact: bool = False) -> Series:
    """Taylor coefficients of k_a itself (k_a(0) = 0)."""
    return series_combine("integ", ka_prime_series(a, max(N - 1, 0), exact), None, N)
