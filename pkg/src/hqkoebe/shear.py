"""Construction of f = h + conj(g) from h - g = k_a, g'/h' = lambda z.

The primary evaluation path integrates the closed-form derivatives h', g'
along the segment [0, z].  Both derivatives are integrated on one shared
subdivision, so h - g inherits the accuracy of the integral of k_a' itself.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .analytic_maps import _disk_point, _out, ka_prime_series, koebe_generalized
from .errors import DilatationOutOfRange, MaxSubdivisionsExceeded
from .numkit import DEFAULT_QUAD, QuadSpec, Series, _check_order, segment_integrals


@dataclass(frozen=True)
class Params:
    """A member of the family: exponent ``a`` and dilatation scale ``lam``."""

    a: float
    lam: float
    quad: QuadSpec = field(default=DEFAULT_QUAD)

    def __post_init__(self):
        if not np.isfinite(float(self.a)):
            raise ValueError("a must be finite")
        if not 0 <= float(self.lam) < 1:
            raise ValueError("lambda must satisfy 0 <= lambda < 1")


@dataclass(frozen=True)
class HarmonicValue:
    h: complex
    g: complex
    f: complex
    err: float = 0.0
    converged: bool = True

    @classmethod
    def build(cls, h, g, err=0.0, converged=True):
        h, g = complex(h), complex(g)
        return cls(h, g, h + g.conjugate(), float(err), bool(converged))


@dataclass(frozen=True)
class TaylorPair:
    """Coefficients a_n of h and b_n of g (a_0 = b_0 = b_1 = 0, a_1 = 1)."""

    a_coeffs: Series
    b_coeffs: Series

    def __call__(self, z) -> HarmonicValue:
        h = self.a_coeffs(z)
        g = self.b_coeffs(z)
        return HarmonicValue.build(h, g)


def shear_derivatives(p: Params, z):
    """Return ``(h'(z), g'(z))`` with h' = k_a'/(1 - lam z) and g' = lam z h'."""
    z = _disk_point(z)
    hp = np.asarray(koebe_generalized(p.a, z, 1)) / (1 - p.lam * z)
    gp = p.lam * z * hp
    return _out(hp), _out(gp)


def _hg_integrand(p: Params):
    def F(x):
        hp = np.exp((p.a - 1) * np.log1p(x) - (p.a + 1) * np.log1p(-x)) / (1 - p.lam * x)
        return np.stack([hp, p.lam * x * hp])
    return F


def _warn_cap(conv):
    if not np.all(conv):
        warnings.warn("quadrature subdivision cap reached", MaxSubdivisionsExceeded)


def eval_f_many(p: Params, z, z_start=0.0, start_values=None):
    """Vectorized evaluation.  Returns arrays ``(h, g, f, err, converged)``.

    With ``z_start`` the integral runs from ``z_start`` and ``start_values``
    (a pair of arrays h, g at ``z_start``) is added.
    """
    z = _disk_point(z)
    shape = z.shape
    _disk_point(z_start)
    vals, errs, conv = segment_integrals(_hg_integrand(p), z.ravel(), p.quad, z_start=z_start, ncomp=2)
    h, g = vals[0], vals[1]
    if start_values is not None:
        h = h + np.asarray(start_values[0]).ravel()
        g = g + np.asarray(start_values[1]).ravel()
    _warn_cap(conv)
    f = h + np.conj(g)
    return (h.reshape(shape), g.reshape(shape), f.reshape(shape),
            errs.reshape(shape), conv.reshape(shape))


def eval_f(p: Params, z) -> HarmonicValue:
    """h, g and f at one point by quadrature along the segment [0, z]."""
    h, g, _, err, conv = eval_f_many(p, np.array([complex(z)]))
    return HarmonicValue.build(h[0], g[0], err[0], conv[0])


def eval_f_path(p: Params, vertices: Sequence[complex]) -> HarmonicValue:
    """Evaluate along the polyline 0 -> vertices[0] -> ... -> vertices[-1]."""
    h = g = 0j
    err = 0.0
    conv = True
    start = 0j
    for v in vertices:
        vals, errs, c = segment_integrals(_hg_integrand(p), [v], p.quad, z_start=start, ncomp=2)
        _disk_point(v)
        h += vals[0, 0]
        g += vals[1, 0]
        err += float(errs[0])
        conv = conv and bool(c[0])
        start = complex(v)
    return HarmonicValue.build(h, g, err, conv)


def hg_series(a, lam, N: int, exact: bool = False) -> TaylorPair:
    """Coefficients of h and g to order N from the shear recurrences.

    ``lam`` may equal 1 here; that formal limit reproduces the harmonic
    Koebe coefficients.
    """
    if N < 1:
        raise ValueError("order must be at least 1")
    _check_order(N)
    if exact:
        lam = Fraction(lam)
        zero = Fraction(0)
    else:
        lam = float(lam)
        zero = 0.0
    if not 0 <= lam <= 1:
        raise ValueError("lambda must lie in [0, 1]")
    c = ka_prime_series(a, N, exact)
    d = [c[0]]
    for n in range(1, N):
        d.append(c[n] + lam * d[n - 1])
    acoef = [zero] + [d[n - 1] / n for n in range(1, N + 1)]
    bcoef = [zero, zero] + [lam * n * acoef[n] / (n + 1) for n in range(1, N)]
    return TaylorPair(Series(tuple(acoef), exact), Series(tuple(bcoef), exact))


def harmonic_koebe_eval(z) -> HarmonicValue:
    z = complex(_disk_point(z))
    d = (1 - z) ** 3
    H = (z - z * z / 2 + z ** 3 / 6) / d
    G = (z * z / 2 + z ** 3 / 6) / d
    return HarmonicValue.build(H, G)


def harmonic_koebe_many(z):
    z = _disk_point(z)
    d = (1 - z) ** 3
    H = (z - z * z / 2 + z ** 3 / 6) / d
    G = (z * z / 2 + z ** 3 / 6) / d
    return H, G, H + np.conj(G)


def f_lambda_parts(lam: float, z):
    """Analytic and co-analytic parts of the explicit a = 2 family member."""
    if not 0 <= lam < 1:
        raise ValueError("lambda must satisfy 0 <= lambda < 1")
    z = _disk_point(z)
    lg = np.log1p(-z) - np.log1p(-lam * z)
    c = 1.0 / (lam - 1) ** 3
    h = c * ((lam - 1) * (1 - 3 * lam + 2 * lam * z) * z / (1 - z) ** 2 + lam * (lam + 1) * lg)
    g = lam * c * ((1 - lam) * (1 + lam - 2 * z) * z / (1 - z) ** 2 + (lam + 1) * lg)
    return h, g


def f_lambda_explicit(lam: float, z) -> HarmonicValue:
    h, g = f_lambda_parts(lam, complex(z))
    return HarmonicValue.build(h, g)


def jacobian(p: Params, z):
    """|h'|^2 - |g'|^2, computed as (1 - lam^2 |z|^2) |h'|^2."""
    z = _disk_point(z)
    hp, _ = shear_derivatives(p, z)
    J = (1 - p.lam ** 2 * np.abs(z) ** 2) * np.abs(hp) ** 2
    return float(J) if np.ndim(J) == 0 else J


def dilatation(p: Params, z):
    z = _disk_point(z)
    return _out(p.lam * z)


def general_shear(phi_prime: Callable, omega: Callable, nu: complex, z,
                  quad: QuadSpec = DEFAULT_QUAD) -> HarmonicValue:
    """Shear h - nu g = phi with dilatation g'/h' = omega, evaluated at z.

    ``phi_prime`` and ``omega`` must accept complex arrays.
    """
    if abs(abs(complex(nu)) - 1) > 1e-12:
        raise ValueError("nu must be unimodular")
    z = complex(_disk_point(z))

    def F(x):
        w = np.asarray(omega(x), dtype=complex)
        if np.any(np.abs(w) >= 1):
            raise DilatationOutOfRange("|omega| >= 1 on the integration segment")
        hp = np.asarray(phi_prime(x), dtype=complex) / (1 - nu * w)
        return np.stack([hp, w * hp])

    vals, errs, conv = segment_integrals(F, [z], quad, ncomp=2)
    _warn_cap(conv)
    return HarmonicValue.build(vals[0, 0], vals[1, 0], errs[0], conv[0])
