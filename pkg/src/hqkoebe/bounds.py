"""Two-sided envelopes for |h'|, the growth of |f| and the area of f(|z| < r).

Three regimes in the exponent a: a >= 1, -1 < a < 1 and a <= -1.  At
a = +-1 the adjacent formulas coincide, so the boundary values are assigned
to the outer regimes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numkit import polar_area_integral, quad_interval
from .shear import Params

UPPER, MIDDLE, LOWER = "a>=1", "-1<a<1", "a<=-1"


@dataclass(frozen=True)
class BoundsInterval:
    lo: float
    hi: float
    lo_err: float = 0.0
    hi_err: float = 0.0
    regime: str = MIDDLE

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= x <= self.hi + tol


def regime(a: float) -> str:
    if a >= 1:
        return UPPER
    if a <= -1:
        return LOWER
    return MIDDLE


def _envelope_pair(a: float, lam: float, rho, reg: str | None = None):
    """(lower, upper) bounds of |h'| on |xi| = rho."""
    rho = np.asarray(rho, dtype=float)
    reg = reg or regime(a)
    lo_lam, hi_lam = 1 / (1 + lam * rho), 1 / (1 - lam * rho)
    if reg == UPPER:
        lo = (1 - rho) ** (a - 1) / (1 + rho) ** (a + 1)
        hi = (1 + rho) ** (a - 1) / (1 - rho) ** (a + 1)
    elif reg == MIDDLE:
        lo = 1 / (1 + rho) ** 2
        hi = 1 / (1 - rho) ** 2
    elif reg == LOWER:
        lo = (1 + rho) ** (a - 1) / (1 - rho) ** (a + 1)
        hi = (1 - rho) ** (a - 1) / (1 + rho) ** (a + 1)
    else:
        raise ValueError(f"unknown regime {reg!r}")
    return lo * lo_lam, hi * hi_lam


def _check_r(r):
    if not 0 < r < 1:
        raise ValueError("radius must lie in (0, 1)")


def derivative_envelope(p: Params, r: float, reg: str | None = None) -> BoundsInterval:
    _check_r(r)
    reg = reg or regime(p.a)
    lo, hi = _envelope_pair(p.a, p.lam, r, reg)
    return BoundsInterval(float(lo), float(hi), 0.0, 0.0, reg)


def growth_bounds(p: Params, r: float, reg: str | None = None) -> BoundsInterval:
    """Integrals over [0, r] of (1 -+ lam rho) times the |h'| envelopes."""
    _check_r(r)
    reg = reg or regime(p.a)
    lam = p.lam
    lo, lo_err = quad_interval(lambda s: (1 - lam * s) * _envelope_pair(p.a, lam, s, reg)[0], 0.0, r, p.quad)
    hi, hi_err = quad_interval(lambda s: (1 + lam * s) * _envelope_pair(p.a, lam, s, reg)[1], 0.0, r, p.quad)
    return BoundsInterval(float(np.real(lo)), float(np.real(hi)), lo_err, hi_err, reg)


def area_bounds(p: Params, r: float, reg: str | None = None) -> BoundsInterval:
    """2 pi times integrals over [0, r] of (rho - lam^2 rho^3) times squared envelopes."""
    _check_r(r)
    reg = reg or regime(p.a)
    lam = p.lam

    def lower(s):
        return (s - lam ** 2 * s ** 3) * _envelope_pair(p.a, lam, s, reg)[0] ** 2

    def upper(s):
        return (s - lam ** 2 * s ** 3) * _envelope_pair(p.a, lam, s, reg)[1] ** 2

    lo, lo_err = quad_interval(lower, 0.0, r, p.quad)
    hi, hi_err = quad_interval(upper, 0.0, r, p.quad)
    tau = 2 * math.pi
    return BoundsInterval(tau * float(np.real(lo)), tau * float(np.real(hi)), tau * lo_err, tau * hi_err, reg)


def area_integrand(p: Params):
    """Jacobian (1 - lam^2 |xi|^2) |h'(xi)|^2 as a vectorized function."""
    def J(xi):
        hp = np.exp((p.a - 1) * np.log1p(xi) - (p.a + 1) * np.log1p(-xi)) / (1 - p.lam * xi)
        return (1 - p.lam ** 2 * np.abs(xi) ** 2) * np.abs(hp) ** 2
    return J


def area_empirical(p: Params, r: float, with_error: bool = False):
    """Area of f(|z| < r) as the disk integral of the Jacobian."""
    _check_r(r)
    value, err = polar_area_integral(area_integrand(p), r, p.quad)
    return (value, err) if with_error else value


def area_series(a_coeffs, b_coeffs, r: float) -> float:
    """pi * sum n (|a_n|^2 - |b_n|^2) r^(2n) from truncated coefficient lists."""
    total = 0.0
    for n in range(1, max(len(a_coeffs), len(b_coeffs))):
        an = complex(a_coeffs[n]) if n < len(a_coeffs) else 0
        bn = complex(b_coeffs[n]) if n < len(b_coeffs) else 0
        total += n * (abs(an) ** 2 - abs(bn) ** 2) * r ** (2 * n)
    return math.pi * total
