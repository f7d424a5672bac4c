"""Deformed (nonextensive) arithmetic.

The q-sum and q-difference are closed over the rationals and are computed
exactly with :class:`fractions.Fraction`.  The q-exponential, q-logarithm,
q-product and q-division involve real powers and are evaluated in binary64,
with the factor ``1 - q`` kept exact until the last step.

Every operation has an exact ``q == 1`` branch that returns the classical
result instead of approaching it as a limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

from .errors import DomainError, SingularOperand

Rational = Fraction
Number = Union[Fraction, int, float]

# pow() is only used for integral exponents up to this size; beyond it the
# relative error of the rounded base is amplified too much.
_MAX_EXACT_POWER = 64


def as_rational(value) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Strings may be ``"p/s"`` literals or finite decimals (``"0.25"``,
    ``"1e-9"``); they never pass through binary floating point.  Floats are
    converted exactly by their binary value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, _RationalABC, Decimal)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"{value!r} is not a finite number")
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


@dataclass(frozen=True)
class QParam:
    """Exact rational deformation parameter ``q <= 1``.

    ``lam`` is the left end of the q-domain ``(lam, +inf)``, i.e.
    ``-1/(1-q)``; it is ``None`` in the classical case ``q == 1``.
    """

    q: Fraction

    def __post_init__(self):
        if isinstance(self.q, float):
            raise TypeError("q must be an exact rational, not a float")
        q = as_rational(self.q)
        if q > 1:
            raise DomainError(f"q must be <= 1, got {q}")
        object.__setattr__(self, "q", q)

    @classmethod
    def of(cls, value) -> "QParam":
        return value if isinstance(value, cls) else cls(value)

    @property
    def classical(self) -> bool:
        return self.q == 1

    @property
    def one_minus_q(self) -> Fraction:
        return 1 - self.q

    @property
    def lam(self) -> Fraction | None:
        if self.classical:
            return None
        return -1 / (1 - self.q)

    def in_domain(self, x) -> bool:
        """True when ``x`` lies strictly inside ``(lam, +inf)``."""
        return self.classical or x > self.lam

    def __str__(self) -> str:
        return str(self.q)


def _qp(q) -> QParam:
    return QParam.of(q)


def _shift(y, q: QParam):
    """Return ``1 + (1 - q) y``; exact for rational ``y``."""
    return 1 + q.one_minus_q * y


# -- exact, rational-closed operations --------------------------------------


def q_sum(x, y, q):
    """``x (+)_q y = x + y + (1-q) x y``.

    Exact when ``x`` and ``y`` are rationals; float inputs give a float.
    """
    q = _qp(q)
    if q.classical:
        return x + y
    return x + y + q.one_minus_q * x * y


def q_diff(x, y, q):
    """``x (-)_q y = (x - y) / (1 + (1-q) y)``, the inverse of :func:`q_sum`."""
    q = _qp(q)
    if q.classical:
        return x - y
    d = _shift(y, q)
    if d == 0:
        raise SingularOperand(f"1 + (1-q)*y vanishes at y = {y}, q = {q}")
    return (x - y) / d


def q_neg(r, q):
    """The q-additive inverse ``-r / (1 + (1-q) r)``."""
    return q_diff(0, r, q)


# -- real-valued q-functions -------------------------------------------------


def _power_exponent(q: QParam) -> int | None:
    e = 1 / q.one_minus_q
    if e.denominator == 1 and 0 < e <= _MAX_EXACT_POWER:
        return int(e)
    return None


def q_exp(x: float, q) -> float:
    """``e_q(x) = [1 + (1-q) x]_+^(1/(1-q))``; zero past the cutoff."""
    q = _qp(q)
    if q.classical:
        return math.exp(x)
    if isinstance(x, float) and math.isinf(x):
        return math.inf if x > 0 else 0.0
    t = q.one_minus_q * as_rational(x)
    if 1 + t <= 0:
        return 0.0
    n = _power_exponent(q)
    if n is not None:
        return float(1 + t) ** n
    return math.exp(math.log1p(float(t)) / float(q.one_minus_q))


def q_log(x: float, q) -> float:
    """``ln_q(x) = (x^(1-q) - 1) / (1-q)`` for ``x > 0``."""
    q = _qp(q)
    if not x > 0:
        raise DomainError(f"q_log requires x > 0, got {x}")
    if q.classical:
        return math.log(x)
    a = float(q.one_minus_q)
    p = a * math.log(x)
    if abs(p) < 0.5:
        return math.expm1(p) / a
    return (x**a - 1.0) / a


def q_prod(x: float, y: float, q) -> float:
    """``x (x)_q y = [x^(1-q) + y^(1-q) - 1]_+^(1/(1-q))`` for positive operands.

    Evaluated as ``e_q(ln_q x + ln_q y)``, which is the same expression.
    """
    q = _qp(q)
    if not (x > 0 and y > 0):
        raise DomainError(f"q_prod requires x, y > 0, got {x}, {y}")
    if q.classical:
        return x * y
    return q_exp(q_log(x, q) + q_log(y, q), q)


def q_div(x: float, y: float, q) -> float:
    """``x (/)_q y = [x^(1-q) - y^(1-q) + 1]_+^(1/(1-q))`` for positive operands."""
    q = _qp(q)
    if not (x > 0 and y > 0):
        raise DomainError(f"q_div requires x, y > 0, got {x}, {y}")
    if q.classical:
        return x / y
    return q_exp(q_log(x, q) - q_log(y, q), q)


def cutoff_active(x: float, y: float, q, op: str = "prod") -> bool:
    """Whether the ``[.]_+`` cutoff clips ``q_prod`` / ``q_div`` to zero."""
    q = _qp(q)
    if q.classical:
        return False
    a = float(q.one_minus_q)
    sign = 1.0 if op == "prod" else -1.0
    return x**a + sign * y**a - sign <= 0.0


# -- deformed numbers --------------------------------------------------------


def log_ratio(u: Fraction) -> float:
    """``ln(u)`` for an exact positive rational, accurate near ``u == 1``."""
    t = u - 1
    if abs(t) < Fraction(1, 2):
        return math.log1p(float(t))
    if u.numerator.bit_length() < 1000 and u.denominator.bit_length() < 1000:
        return math.log(float(u))
    return math.log(u.numerator) - math.log(u.denominator)


def deformed(x, q) -> float:
    """Deformed number ``x_q = ln(1 + (1-q) x) / (1-q)``.

    ``1 + (1-q) x`` is formed exactly, so the result keeps full relative
    precision near ``q == 1`` and near the domain edge.
    """
    q = _qp(q)
    if isinstance(x, float) and math.isinf(x) and x > 0:
        return math.inf
    xr = as_rational(x)
    if q.classical:
        return float(xr)
    if xr <= q.lam:
        raise DomainError(f"x = {x} is not in the q-domain ({q.lam}, inf)")
    return log_ratio(_shift(xr, q)) / float(q.one_minus_q)


def deformed_inv(u: float, q) -> float:
    """Inverse of :func:`deformed`: ``(exp((1-q) u) - 1) / (1-q)``."""
    q = _qp(q)
    if q.classical:
        return float(u)
    a = float(q.one_minus_q)
    return math.expm1(a * u) / a
