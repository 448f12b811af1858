"""Initial Taylor coefficients a_2..a_4, b_2..b_4 in closed form, with their moduli bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

NAMES = ("a2", "a3", "a4", "b2", "b3", "b4")


@dataclass(frozen=True)
class CoeffTable:
    a2: object
    a3: object
    a4: object
    b2: object
    b3: object
    b4: object
    bounds: dict

    def values(self) -> dict:
        return {k: getattr(self, k) for k in NAMES}


def coeff_closed_forms(a, lam) -> CoeffTable:
    """Closed forms for the first coefficients.

    Exact ``Fraction`` arithmetic is used when both inputs are rational
    (ints or Fractions); ``lam = 1`` is accepted as the formal limit.
    """
    if isinstance(a, Rational) and isinstance(lam, Rational):
        a, lam = Fraction(a), Fraction(lam)
        third, quarter, two_thirds = Fraction(1, 3), Fraction(1, 4), Fraction(2, 3)
    else:
        a, lam = float(a), float(lam)
        third, quarter, two_thirds = 1 / 3, 0.25, 2 / 3
    if not 0 <= lam <= 1:
        raise ValueError("lambda must lie in [0, 1]")

    def quad(x):  # lam^2 + 2 x lam + 2 x^2 + 1
        return lam * lam + 2 * x * lam + 2 * x * x + 1

    vals = dict(
        a2=a + lam / 2,
        a3=third * quad(a),
        a4=third * a ** 3 + two_thirds * a + quarter * lam * quad(a),
        b2=lam / 2,
        b3=third * lam * lam + two_thirds * a * lam,
        b4=quarter * lam * quad(a),
    )
    m = abs(a)
    bounds = dict(
        a2=m + lam / 2,
        a3=third * quad(m),
        a4=third * m ** 3 + two_thirds * m + quarter * lam * quad(m),
        b2=lam / 2,
        b3=third * lam * lam + two_thirds * m * lam,
        b4=quarter * lam * quad(m),
    )
    return CoeffTable(bounds=bounds, **vals)


def defining_relations(a, lam, table: CoeffTable) -> dict:
    """Residuals of the coefficient relations from h - g = k_a and g' = lam z h'.

    Every entry is zero (exactly, in rational mode) for a correct table.
    """
    t = table
    if isinstance(t.a2, Fraction):
        a, lam = Fraction(a), Fraction(lam)
    return {
        "a2-b2": t.a2 - t.b2 - a,
        "a3-b3": t.a3 - t.b3 - (2 * a * a + 1) / 3,
        "a4-b4": t.a4 - t.b4 - (a ** 3 / 3 + 2 * a / 3),
        "2b2": 2 * t.b2 - lam,
        "3b3": 3 * t.b3 - 2 * lam * t.a2,
        "4b4": 4 * t.b4 - 3 * lam * t.a3,
    }
