"""q-numbers and the bracket variants used by the matrix-element formulas.

All functions accept either a :class:`QParam` or a bare positive float for
``q``.  A :class:`QParam` built with ``dps`` evaluates everything in mpmath
at that many decimal digits; the interface is otherwise identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Union

import mpmath

Real = Union[int, float, Fraction]


class ZeroDenominatorError(ArithmeticError):
    """A formula denominator vanished."""


@dataclass(frozen=True)
class QParam:
    """Deformation parameter ``q`` (real, positive, not 1).

    ``dps`` switches on extended precision (mpmath, ``dps`` decimal digits).
    """

    q: float
    dps: int | None = None
    _ctx: Any = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.q, complex):
            raise ValueError("q must be real")
        if not self.q > 0:
            raise ValueError(f"q must be positive, got {self.q}")
        if self.q == 1:
            raise ValueError("q = 1 is excluded (nonclassical values diverge)")
        if self.dps is not None:
            ctx = mpmath.MPContext()
            ctx.dps = self.dps
            object.__setattr__(self, "_ctx", ctx)

    @property
    def value(self):
        """``q`` as a float, or as an mpf in extended-precision mode."""
        if self._ctx is None:
            return float(self.q)
        return self._ctx.mpf(self.q)

    @property
    def h(self) -> float:
        """``h`` with ``q = exp(h)``; metadata only."""
        return math.log(self.q)

    def number(self, a: Real):
        """Convert an exponent to the working scalar type."""
        if self._ctx is None:
            return float(a)
        if isinstance(a, Fraction):
            return self._ctx.mpf(a.numerator) / a.denominator
        return self._ctx.mpf(a)


def as_qparam(q: QParam | float) -> QParam:
    return q if isinstance(q, QParam) else QParam(float(q))


def _pm(a: Real, q: QParam):
    qv = q.value
    x = q.number(a)
    return qv**x, qv ** (-x)


def qnumber(a: Real, q: QParam | float):
    """``[a] = (q^a - q^-a) / (q - q^-1)``.

    >>> qnumber(2, 2.0)
    2.5
    """
    q = as_qparam(q)
    if a == 0:
        return q.number(0)
    up, down = _pm(a, q)
    qv = q.value
    return (up - down) / (qv - 1 / qv)


def qnumber_plus(a: Real, q: QParam | float):
    """``[a]_+ = (q^a + q^-a) / (q - q^-1)``; never zero for admissible q."""
    q = as_qparam(q)
    up, down = _pm(a, q)
    qv = q.value
    return (up + down) / (qv - 1 / qv)


def denom_even(l: Real, q: QParam | float, flavor: str):
    """Denominator of the raising/lowering terms of ``I_{2p+1,2p}``.

    ``q^l + q^-l`` for the classical flavor, ``q^l - q^-l`` otherwise.
    """
    q = as_qparam(q)
    flavor = str(getattr(flavor, "value", flavor))
    if flavor == "classical":
        up, down = _pm(l, q)
        return up + down
    if flavor != "nonclassical":
        raise ValueError(f"unknown flavor {flavor!r}")
    if l == 0:
        raise ZeroDenominatorError("q^l - q^-l vanishes at l = 0")
    up, down = _pm(l, q)
    return up - down


def half_inverse_gap(q: QParam | float):
    """``1 / (q^{1/2} - q^{-1/2})``, the scale of the one-dimensional representations."""
    q = as_qparam(q)
    up, down = _pm(Fraction(1, 2), q)
    return 1 / (up - down)
