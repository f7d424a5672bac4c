"""Numerical q-calculus: the q-derivative and an adaptive q-integral.

The q-integral here is deliberately a plain quadrature of
``f(x) / (1 + (1-q) x)``; it shares no code with the closed-form measure in
:mod:`qvitali.qmeasure` and serves as its independent oracle.
"""

from __future__ import annotations

import math
import sys
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import ConvergenceWarning, DomainError
from .qalgebra import QParam

# lower endpoints this close to the domain edge are rejected, not regularized
EDGE_GUARD = 1e-12
# a refinement whose correction is this small relative to the panel is noise
_ROUNDOFF = 64 * sys.float_info.epsilon


@dataclass(frozen=True)
class Quadrature:
    abs_tol: float = 1e-10
    max_depth: int = 40

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be a positive integer")


DEFAULT_QUADRATURE = Quadrature()


def q_derivative(f: Callable[[float], float], x: float, q, h: float = 1e-6) -> float:
    """``(D_q f)(x) = (1 + (1-q) x) f'(x)`` with a central difference for ``f'``."""
    q = QParam.of(q)
    if not h > 0:
        raise ValueError("step h must be positive")
    if not q.in_domain(x):
        raise DomainError(f"x = {x} is not in the q-domain ({q.lam}, inf)")
    slope = (f(x + h) - f(x - h)) / (2.0 * h)
    return (1.0 + float(q.one_minus_q) * x) * slope


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    quad: Quadrature = DEFAULT_QUADRATURE,
) -> float:
    """Adaptive Simpson's rule on ``[a, b]`` with interval-halving error control.

    Emits :class:`ConvergenceWarning` if any branch hits ``quad.max_depth``
    before its share of ``quad.abs_tol``.
    """
    if a == b:
        return 0.0
    hit_limit = False

    def simpson(fa, fm, fb, width):
        return width / 6.0 * (fa + 4.0 * fm + fb)

    def refine(a, m, b, fa, fm, fb, whole, tol, depth):
        nonlocal hit_limit
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, m - a)
        right = simpson(fm, frm, fb, b - m)
        delta = left + right - whole
        if abs(delta) <= max(15.0 * tol, _ROUNDOFF * abs(whole)):
            return left + right + delta / 15.0
        if depth >= quad.max_depth:
            hit_limit = True
            return left + right + delta / 15.0
        return refine(a, lm, m, fa, flm, fm, left, tol / 2.0, depth + 1) + refine(
            m, rm, b, fm, frm, fb, right, tol / 2.0, depth + 1
        )

    m = 0.5 * (a + b)
    fa, fm, fb = f(a), f(m), f(b)
    result = refine(a, m, b, fa, fm, fb, simpson(fa, fm, fb, b - a), quad.abs_tol, 1)
    if hit_limit:
        warnings.warn(
            f"adaptive Simpson reached max_depth={quad.max_depth} on [{a}, {b}]",
            ConvergenceWarning,
            stacklevel=2,
        )
    return result


def q_integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    q,
    quad: Quadrature = DEFAULT_QUADRATURE,
) -> float:
    """Integral of ``f`` over ``[a, b]`` against ``d_q x = dx / (1 + (1-q) x)``."""
    q = QParam.of(q)
    a, b = float(a), float(b)
    if a > b:
        raise ValueError(f"require a <= b, got [{a}, {b}]")
    if q.classical:
        return adaptive_simpson(f, a, b, quad)
    lam = float(q.lam)
    if a <= lam or a - lam < EDGE_GUARD:
        raise DomainError(f"lower limit {a} is not inside the q-domain ({lam}, inf)")
    c = float(q.one_minus_q)
    # kernel anchored at the lower limit; x - a is exact near a
    base = float(1 + q.one_minus_q * Fraction(a))
    g = lambda x: f(x) / (base + c * (x - a))
    cuts = _graded_cuts(a, b, lam)
    if len(cuts) == 2:
        return adaptive_simpson(g, a, b, quad)
    share = Quadrature(quad.abs_tol / (len(cuts) - 1), quad.max_depth)
    return math.fsum(adaptive_simpson(g, lo, hi, share) for lo, hi in zip(cuts, cuts[1:]))


def _graded_cuts(a: float, b: float, lam: float, ratio: float = 4.0) -> list[float]:
    """Panel edges whose distances to ``lam`` grow geometrically from ``a``.

    The kernel ``1/(1+(1-q)x)`` varies by at most ``ratio`` on each panel, so
    bisection depth stays bounded however close ``a`` is to the edge.
    """
    cuts = [a]
    gap = a - lam
    while lam + gap * ratio < b:
        gap *= ratio
        cuts.append(lam + gap)
    cuts.append(b)
    return cuts
