"""Pre-Schwarzian and Schwarzian derivatives of family members, and their norms.

For f = h + conj(g) with dilatation w = g'/h' the operators are

    P_f = h''/h' - w' conj(w) / (1 - |w|^2)
    S_f = h'''/h' - 3/2 (h''/h')^2 + conj(w)/(1 - |w|^2) (h''/h' w' - w'')
          - 3/2 (w' conj(w) / (1 - |w|^2))^2

Within the family w = lam z, which gives the closed forms below.  Note the
minus sign on the conj(z) term of P_f and the -3/2 coefficient on the last
term of S_f; both follow from the operator definitions above.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic_maps import _disk_point, _out, koebe_generalized
from .errors import DegenerateJet
from .numkit import R_MAX_DEFAULT, weighted_sup
from .shear import Params


@dataclass(frozen=True)
class NormReport:
    kind: str
    estimate: float
    argmax: complex
    bound: float
    r_max: float

    @property
    def gap(self) -> float:
        return self.bound - self.estimate


def pre_schwarzian_closed(p: Params, z):
    z = _disk_point(z)
    a, lam = p.a, p.lam
    P = (2 * (z + a) / (1 - z * z) + lam / (1 - lam * z)
         - lam * lam * np.conj(z) / (1 - lam * lam * np.abs(z) ** 2))
    return _out(P)


def schwarzian_closed(p: Params, z):
    z = _disk_point(z)
    a, lam = p.a, p.lam
    zb = np.conj(z)
    q = 1 - lam * lam * np.abs(z) ** 2
    S = (2 * (1 - a * a) / (1 - z * z) ** 2
         + lam * lam / (2 * (1 - lam * z) ** 2)
         - 2 * lam * (z + a) / ((1 - z * z) * (1 - lam * z))
         + lam * lam * zb * (-3 * lam * z * z + 2 * (1 - a * lam) * z + 2 * a + lam)
         / (q * (1 - z * z) * (1 - lam * z))
         - 1.5 * lam ** 4 * zb ** 2 / q ** 2)
    return _out(S)


def generic_operators(hp, hpp, hppp, w, wp, wpp):
    """Harmonic pre-Schwarzian and Schwarzian from the jets of h and w."""
    hp = np.asarray(hp, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if np.any(hp == 0) or np.any(np.abs(w) >= 1):
        raise DegenerateJet("need h' != 0 and |w| < 1")
    q = np.conj(w) / (1 - np.abs(w) ** 2)
    pre = hpp / hp
    P = pre - wp * q
    S = hppp / hp - 1.5 * pre ** 2 + q * (pre * wp - wpp) - 1.5 * (wp * q) ** 2
    return _out(P), _out(S)


def family_jets(p: Params, z):
    """(h', h'', h''', w, w', w'') for a family member.

    h'' is h' times the logarithmic derivative 2(z+a)/(1-z^2) + lam/(1-lam z);
    h''' is assembled from k_a', k_a'', k_a''' without differencing.
    """
    z = _disk_point(z)
    lam = p.lam
    k1 = np.asarray(koebe_generalized(p.a, z, 1))
    k2 = np.asarray(koebe_generalized(p.a, z, 2))
    k3 = np.asarray(koebe_generalized(p.a, z, 3))
    m = 1 - lam * z
    hp = k1 / m
    hpp = hp * (2 * (z + p.a) / (1 - z * z) + lam / m)
    hppp = (k3 * m * m + 2 * lam * (k2 * m + lam * k1)) / m ** 3
    w = lam * z
    return hp, hpp, hppp, w, np.full_like(w, lam), np.zeros_like(w)


def pre_schwarzian_bound(a: float, lam: float) -> float:
    return 2 * (1 + abs(a)) + 2 * lam * lam + lam


def schwarzian_bound(a: float, lam: float) -> float:
    a = abs(a)
    return (lam ** 4 + 2 * lam ** 3 * (a + 1) + lam ** 2 * (4 * a + 6.5)
            + 2 * lam * (a + 2) + 2 * abs(1 - a * a))


def norm_estimate(kind: str, p: Params, r_max: float = R_MAX_DEFAULT, **grid) -> NormReport:
    """Grid-and-refine estimate of the weighted sup norm; a lower bound on the true norm."""
    if kind == "pre_schwarzian":
        F, power, bound = (lambda z: pre_schwarzian_closed(p, z)), 1, pre_schwarzian_bound(p.a, p.lam)
    elif kind == "schwarzian":
        F, power, bound = (lambda z: schwarzian_closed(p, z)), 2, schwarzian_bound(p.a, p.lam)
    else:
        raise ValueError(f"unknown norm kind {kind!r}")
    est, arg = weighted_sup(F, power, r_max, **grid)
    return NormReport(kind, est, arg, bound, r_max)
