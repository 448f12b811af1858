"""Numeric substrate: truncated power series, adaptive quadrature, sup search.

The quadrature routines are batched: many independent integrals (one per
"task") are refined together so that every round is a single vectorized
evaluation of the integrand.  All reductions run in a fixed order, so
repeated calls with identical inputs give bit-identical results.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable

import numpy as np

from .errors import DivisionByZeroConstantTerm, MaxSubdivisionsExceeded, OrderOverflow

ORDER_CAP = 10_000
R_MAX_DEFAULT = 1.0 - 1e-4

# Gauss-Kronrod 7/15 pair (QUADPACK qk15 constants).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss nodes are the odd-indexed Kronrod nodes (1, 3, 5 from each side, plus center).
_GAUSS_IDX = np.array([1, 3, 5, 7, 9, 11, 13])
GAUSS_WEIGHTS = np.array([_WG[0], _WG[1], _WG[2], _WG[3], _WG[2], _WG[1], _WG[0]])


@dataclass(frozen=True)
class QuadSpec:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 10_000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if int(self.max_subdivisions) < 1:
            raise ValueError("max_subdivisions must be a positive integer")


DEFAULT_QUAD = QuadSpec()


def adaptive_gk(fun: Callable[[np.ndarray, np.ndarray], np.ndarray],
                lo: np.ndarray, hi: np.ndarray, spec: QuadSpec = DEFAULT_QUAD,
                ncomp: int = 1):
    """Integrate ``fun(task, x)`` over ``[lo[task], hi[task]]`` for every task.

    ``fun`` receives flat arrays of task indices and abscissae and returns an
    array of shape ``(ncomp, len(x))`` (or ``(len(x),)`` when ``ncomp == 1``).
    An interval is accepted once its Kronrod-Gauss difference is below its
    length-proportional share of ``max(abs_tol, rel_tol * |estimate|)``.

    Returns ``(values, errors, converged)`` with shapes ``(ncomp, m)``,
    ``(m,)`` and ``(m,)``.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    m = lo.size
    length = hi - lo
    splits = np.zeros(m, dtype=np.int64)
    converged = np.ones(m, dtype=bool)

    acc_task, acc_x0, acc_val, acc_err = [], [], [], []
    accepted_sum = np.zeros((ncomp, m), dtype=complex)

    task = np.arange(m)
    x0 = lo.copy()
    x1 = hi.copy()
    while task.size:
        half = 0.5 * (x1 - x0)
        mid = 0.5 * (x1 + x0)
        xs = mid[:, None] + half[:, None] * NODES[None, :]
        vals = np.asarray(fun(np.repeat(task, NODES.size), xs.ravel()))
        vals = vals.reshape(ncomp, task.size, NODES.size)
        kron = half * (vals @ KRONROD_WEIGHTS)
        gauss = half * (vals[:, :, _GAUSS_IDX] @ GAUSS_WEIGHTS)
        err = np.max(np.abs(kron - gauss), axis=0)
        if not np.all(np.isfinite(kron)):
            raise FloatingPointError("integrand produced a non-finite value")

        running = accepted_sum.copy()
        for c in range(ncomp):
            np.add.at(running[c], task, kron[c])
        mag = np.max(np.abs(running), axis=0)
        share = np.where(length[task] > 0, (x1 - x0) / np.where(length[task] > 0, length[task], 1.0), 1.0)
        allowed = np.maximum(spec.abs_tol, spec.rel_tol * mag[task]) * share

        exhausted = splits[task] >= spec.max_subdivisions
        tiny = (x1 - x0) <= 1e-15 * np.maximum(np.abs(length[task]), 1e-300)
        ok = (err <= allowed) | exhausted | tiny
        converged[task[exhausted & ~(err <= allowed)]] = False

        if np.any(ok):
            acc_task.append(task[ok])
            acc_x0.append(x0[ok])
            acc_val.append(kron[:, ok])
            acc_err.append(err[ok])
            for c in range(ncomp):
                np.add.at(accepted_sum[c], task[ok], kron[c, ok])

        bad = ~ok
        t_bad = task[bad]
        np.add.at(splits, t_bad, 1)
        m0, m1, mm = x0[bad], x1[bad], mid[bad]
        task = np.concatenate([t_bad, t_bad])
        x0 = np.concatenate([m0, mm])
        x1 = np.concatenate([mm, m1])

    tasks = np.concatenate(acc_task)
    starts = np.concatenate(acc_x0)
    vals = np.concatenate(acc_val, axis=1)
    errs = np.concatenate(acc_err)
    order = np.lexsort((starts, tasks))
    values = np.zeros((ncomp, m), dtype=complex)
    errors = np.zeros(m)
    for c in range(ncomp):
        np.add.at(values[c], tasks[order], vals[c, order])
    np.add.at(errors, tasks[order], errs[order])
    return values, errors, converged


def quad_interval(f: Callable[[np.ndarray], np.ndarray], a: float, b: float,
                  spec: QuadSpec = DEFAULT_QUAD):
    """Adaptive integral of a vectorized real/complex ``f`` over ``[a, b]``."""
    values, errors, conv = adaptive_gk(lambda _t, x: f(x), np.array([a]), np.array([b]), spec)
    if not conv[0]:
        warnings.warn("subdivision cap reached on [%g, %g]" % (a, b), MaxSubdivisionsExceeded)
    v = values[0, 0]
    return (v.real if v.imag == 0 else v), float(errors[0])


def segment_integrals(F: Callable[[np.ndarray], np.ndarray], z_end, spec: QuadSpec = DEFAULT_QUAD,
                      z_start=0.0, ncomp: int = 1):
    """Integrate ``F`` along straight segments ``[z_start, z_end]`` (arrays broadcast).

    ``F`` maps a flat complex array of points to an array of shape
    ``(ncomp, n)`` (or ``(n,)``).  Returns ``(values, errors, converged)``
    with ``values`` of shape ``(ncomp, n)``.
    """
    z1 = np.atleast_1d(np.asarray(z_end, dtype=complex)).ravel()
    z0 = np.broadcast_to(np.asarray(z_start, dtype=complex), z1.shape).ravel()
    dz = z1 - z0

    def fun(task, t):
        pts = z0[task] + t * dz[task]
        out = np.asarray(F(pts), dtype=complex).reshape(ncomp, -1)
        return out * dz[task]

    n = z1.size
    return adaptive_gk(fun, np.zeros(n), np.ones(n), spec, ncomp=ncomp)


def segment_integral(F, z_end, spec: QuadSpec = DEFAULT_QUAD, z_start=0.0):
    """Adaptive estimate of the integral of ``F`` from ``z_start`` to ``z_end``.

    Returns ``(value, err)``.  If the subdivision cap is hit the best estimate
    is still returned and a :class:`MaxSubdivisionsExceeded` warning is issued.
    """
    values, errors, conv = segment_integrals(F, [z_end], spec, z_start)
    if not conv[0]:
        warnings.warn("subdivision cap reached on segment to %r" % (z_end,), MaxSubdivisionsExceeded)
    return complex(values[0, 0]), float(errors[0])


def polar_area_integral(F: Callable[[np.ndarray], np.ndarray], r: float,
                        spec: QuadSpec = DEFAULT_QUAD):
    """Integral of a real ``F`` over the disk ``|xi| <= r`` in polar coordinates.

    Outer adaptive rule in the radius, inner adaptive rule in the angle; the
    inner integrals for all outer nodes of a round are refined as one batch.
    """
    if not 0 < r:
        raise ValueError("radius must be positive")
    inner_spec = QuadSpec(spec.rel_tol * 0.1, spec.abs_tol * 0.1, spec.max_subdivisions)
    inner_err = [0.0]
    inner_ok = [True]

    def radial(rho):
        rho = np.asarray(rho, dtype=float)

        def ang(task, th):
            return F(rho[task] * np.exp(1j * th)).real

        vals, errs, conv = adaptive_gk(ang, np.zeros(rho.size), np.full(rho.size, 2 * math.pi), inner_spec)
        inner_err[0] = max(inner_err[0], float(np.max(errs)) if errs.size else 0.0)
        inner_ok[0] &= bool(np.all(conv))
        return rho * vals[0].real

    value, err = quad_interval(radial, 0.0, float(r), spec)
    if not inner_ok[0]:
        warnings.warn("angular subdivision cap reached", MaxSubdivisionsExceeded)
    return float(np.real(value)), float(err + r * inner_err[0])


def weighted_sup(F: Callable[[np.ndarray], np.ndarray], p: int, r_max: float = R_MAX_DEFAULT, *,
                 n_radial: int = 256, n_angular: int = 512, rounds: int = 6, keep: int = 8):
    """Estimate ``sup |F(z)| (1 - |z|^2)^p`` over ``|z| <= r_max``.

    Coarse polar grid, then ``rounds`` of local 9x9 refinement around the
    ``keep`` best grid cells.  The result is a value actually attained at the
    returned argmax, hence never above the true supremum.
    """
    if p not in (1, 2):
        raise ValueError("weight power must be 1 or 2")
    if not 0 <= r_max < 1:
        raise ValueError("r_max must lie in [0, 1)")

    def weight(z):
        w = np.abs(F(z)) * (1.0 - np.abs(z) ** 2) ** p
        if not np.all(np.isfinite(w)):
            raise FloatingPointError("weighted function is not finite on the search grid")
        return w

    rho = np.linspace(0.0, r_max, n_radial)
    th = 2 * math.pi * np.arange(n_angular) / n_angular
    grid = rho[:, None] * np.exp(1j * th[None, :])
    W = weight(grid)
    flat = W.ravel()
    best = int(np.argmax(flat))
    sup, arg = float(flat[best]), complex(grid.ravel()[best])

    keep = min(keep, flat.size)
    top = np.argsort(-flat, kind="stable")[:keep]
    c_rho = rho[top // n_angular]
    c_th = th[top % n_angular]
    h_rho = r_max / max(n_radial - 1, 1)
    h_th = 2 * math.pi / n_angular
    offs = np.linspace(-1.0, 1.0, 9)
    for _ in range(rounds):
        lr = np.clip(c_rho[:, None, None] + h_rho * offs[None, :, None], 0.0, r_max)
        lt = c_th[:, None, None] + h_th * offs[None, None, :]
        LR = np.broadcast_to(lr, (keep, 9, 9)).reshape(keep, -1)
        LT = np.broadcast_to(lt, (keep, 9, 9)).reshape(keep, -1)
        pts = LR * np.exp(1j * LT)
        Wl = weight(pts)
        rows = np.arange(keep)
        k = np.argmax(Wl, axis=1)
        c_rho, c_th = LR[rows, k], LT[rows, k]
        h_rho /= 4.0
        h_th /= 4.0
        i = int(np.argmax(Wl[rows, k]))
        if Wl[i, k[i]] > sup:
            sup = float(Wl[i, k[i]])
            arg = complex(pts[i, k[i]])
    return sup, arg


# --------------------------------------------------------------------------
# truncated power series


def _is_exact(x) -> bool:
    return isinstance(x, Rational)


@dataclass(frozen=True)
class Series:
    """Coefficients ``c_0..c_N`` of a power series truncated at order N."""

    coeffs: tuple
    exact: bool = False

    def __post_init__(self):
        cs = tuple(self.coeffs)
        if self.exact:
            if not all(_is_exact(c) for c in cs):
                raise TypeError("exact-rational series needs int/Fraction coefficients")
            cs = tuple(Fraction(c) for c in cs)
        object.__setattr__(self, "coeffs", cs)
        if len(cs) - 1 > ORDER_CAP:
            raise OrderOverflow(f"order {len(cs) - 1} exceeds cap {ORDER_CAP}")

    @classmethod
    def of(cls, coeffs: Iterable, exact: bool | None = None) -> "Series":
        cs = tuple(coeffs)
        if exact is None:
            exact = all(_is_exact(c) for c in cs)
        return cls(cs, exact)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def padded(self, N: int) -> list:
        zero = Fraction(0) if self.exact else 0.0
        cs = list(self.coeffs[: N + 1])
        return cs + [zero] * (N + 1 - len(cs))

    def __call__(self, z):
        """Horner evaluation of the partial sum (float arithmetic)."""
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for c in reversed(self.coeffs):
            acc = acc * z + complex(c)
        return acc if acc.ndim else complex(acc)


def _check_order(N: int):
    if N < 0:
        raise ValueError("order must be nonnegative")
    if N > ORDER_CAP:
        raise OrderOverflow(f"order {N} exceeds cap {ORDER_CAP}")


def series_combine(kind: str, A: Series, B: Series | None = None, N: int | None = None) -> Series:
    """Truncated product, quotient, derivative or antiderivative to order N.

    The default order keeps every known coefficient: A's order for mul/div,
    one less for diff, one more for integ.
    """
    if N is None:
        N = {"diff": max(A.order - 1, 0), "integ": A.order + 1}.get(kind, A.order)
    _check_order(N)
    if kind in ("diff", "integ"):
        if B is not None:
            raise ValueError(f"{kind} takes a single series")
        exact = A.exact
        a = A.padded(N + 1)
        zero = a[0] * 0
        if kind == "diff":
            out = [(n + 1) * a[n + 1] for n in range(N + 1)]
        else:
            out = [zero] + [a[n - 1] / n if exact else a[n - 1] / float(n) for n in range(1, N + 1)]
        return Series(tuple(out), exact)

    if B is None:
        raise ValueError(f"{kind} needs two series")
    exact = A.exact and B.exact
    a = A.padded(N)
    b = B.padded(N)
    if not exact:
        a = [complex(x) if isinstance(x, complex) else float(x) for x in a]
        b = [complex(x) if isinstance(x, complex) else float(x) for x in b]
    if kind == "mul":
        out = [sum(a[k] * b[n - k] for k in range(n + 1)) for n in range(N + 1)]
    elif kind == "div":
        if b[0] == 0:
            raise DivisionByZeroConstantTerm("divisor has zero constant term")
        out = []
        for n in range(N + 1):
            s = a[n] - sum(b[k] * out[n - k] for k in range(1, n + 1))
            out.append(s / b[0])
    else:
        raise ValueError(f"unknown series operation {kind!r}")
    return Series(tuple(out), exact)


def series_binpow(c, alpha, N: int, exact: bool | None = None) -> Series:
    """Coefficients ``binomial(alpha, k) c**k`` of ``(1 + c z)**alpha``."""
    _check_order(N)
    if exact is None:
        exact = _is_exact(c) and _is_exact(alpha)
    if exact:
        c, alpha = Fraction(c), Fraction(alpha)
        t = Fraction(1)
    else:
        t = 1.0
        c = complex(c) if isinstance(c, complex) else float(c)
        alpha = float(alpha)
    out = [t]
    for k in range(1, N + 1):
        t = t * (alpha - k + 1) / k * c
        out.append(t)
    return Series(tuple(out), exact)
