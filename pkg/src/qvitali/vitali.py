"""Computable content of the generalized Vitali construction.

The Vitali set itself needs the Axiom of Choice and is never built.  What
is implemented is the witness algebra the argument runs on: explicit
rational translations showing ``~_q`` is an equivalence relation, the
containment and injectivity facts about q-translates by an enumeration of
``Q & [-1, 1]``, and the lower/upper measure bounds together with their
behaviour as ``q -> 1`` and ``q -> 1/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from math import gcd
from typing import Iterator

from .errors import PreconditionViolation
from .qalgebra import QParam, as_rational, log_ratio, q_diff, q_neg, q_sum
from .qmeasure import Interval, measure_interval

HALF = Fraction(1, 2)
UNIT = Interval(0, 1)
HULL = Interval(-2, 3)

# Commonly quoted q -> 1/2 limit of the lower bound. It is the bound's value
# at q = 2/3; the actual limit is 2 ln(3/2).
REPORTED_HALF_LIMIT = 3 * math.log(4 / 3)


@dataclass(frozen=True)
class EquivWitness:
    """``r`` with ``x == y (+)_q r``."""

    r: Fraction


def equiv_witness(x, y, q) -> EquivWitness:
    """The unique ``r`` with ``x == y (+)_q r``; rational whenever x, y, q are."""
    q = QParam.of(q)
    x, y = as_rational(x), as_rational(y)
    return EquivWitness(q_diff(x, y, q))


def symmetry_witness(r, q) -> Fraction:
    """``r'`` such that ``x == y (+) r`` implies ``y == x (+) r'``."""
    return q_neg(as_rational(r), q)


def transitivity_witness(r1, r2, q) -> Fraction:
    """Composite of ``x = y (+) r1`` and ``y = z (+) r2``: ``x = z (+) (r2 (+) r1)``."""
    return q_sum(as_rational(r2), as_rational(r1), q)


def iter_rationals() -> Iterator[Fraction]:
    """Enumerate ``Q & [-1, 1]`` without repetition.

    Denominator-major: ``0``, ``1``, ``-1``, then for ``s = 2, 3, ...`` every
    reduced ``p/s`` as ``+p/s, -p/s`` with ``p`` ascending.
    """
    yield Fraction(0)
    yield Fraction(1)
    yield Fraction(-1)
    s = 2
    while True:
        for p in range(1, s):
            if gcd(p, s) == 1:
                yield Fraction(p, s)
                yield Fraction(-p, s)
        s += 1


def enumerate_rationals(n: int) -> list[Fraction]:
    if n < 1:
        raise ValueError("n must be >= 1")
    return list(islice(iter_rationals(), n))


@dataclass(frozen=True)
class Lemma1Report:
    witness: Fraction
    witness_in_range: bool
    translate_k: Fraction
    translate_l: Fraction
    containment: bool
    above_domain_edge: bool
    injective: bool

    @property
    def ok(self) -> bool:
        return self.witness_in_range and self.containment and self.above_domain_edge and self.injective


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise PreconditionViolation(message)


def lemma1_checks(v, x, r_k, r_l, q) -> Lemma1Report:
    """Exact checks behind the covering and disjointness of the q-translates.

    * the witness ``(x - v) / (1 + (1-q) v)`` lies in ``[-1, 1]``;
    * ``v (+)_q r_k`` lies in ``[-2, 3]`` and not left of the domain edge;
    * distinct ``r_k != r_l`` give distinct translates of ``v``.
    """
    v, x, r_k, r_l = map(as_rational, (v, x, r_k, r_l))
    q = QParam.of(q)
    _require(0 <= v <= 1 and 0 <= x <= 1, f"v, x must lie in [0, 1], got {v}, {x}")
    _require(-1 <= r_k <= 1 and -1 <= r_l <= 1, f"r_k, r_l must lie in [-1, 1], got {r_k}, {r_l}")
    _require(0 <= q.q <= 1, f"q must lie in [0, 1], got {q}")

    w = q_diff(x, v, q)
    zk, zl = q_sum(v, r_k, q), q_sum(v, r_l, q)
    return Lemma1Report(
        witness=w,
        witness_in_range=-1 <= w <= 1,
        translate_k=zk,
        translate_l=zl,
        containment=-2 <= zk <= 3,
        above_domain_edge=q.classical or zk >= q.lam,
        injective=(r_k == r_l) == (zk == zl),
    )


@dataclass(frozen=True)
class BoundsRow:
    q: Fraction
    lower: float
    upper: float


def lower_bound_formula(q) -> float:
    """``ln(2-q) / (1-q)``, with its limit 1 at ``q == 1``."""
    q = QParam.of(q)
    if q.classical:
        return 1.0
    return log_ratio(2 - q.q) / float(q.one_minus_q)


def upper_bound_formula(q) -> float:
    """``ln((4-3q)/(2q-1)) / (1-q)``, with its limit 5 at ``q == 1`` and ``inf`` at 1/2."""
    q = QParam.of(q)
    if q.classical:
        return 5.0
    if q.q == HALF:
        return math.inf
    return log_ratio((4 - 3 * q.q) / (2 * q.q - 1)) / float(q.one_minus_q)


def theorem_bounds(q) -> BoundsRow:
    """``(mu_q([0,1]), mu_q([-2,3]))`` for ``1/2 <= q <= 1``."""
    q = QParam.of(q)
    if q.q < HALF:
        raise PreconditionViolation(f"bounds are stated for 1/2 <= q <= 1, got q = {q}")
    return BoundsRow(q.q, measure_interval(UNIT, q), measure_interval(HULL, q))


def divergence_scan(eps_list) -> list[BoundsRow]:
    """Bounds rows at ``q = 1/2 + eps`` for each ``eps``."""
    rows = []
    for eps in eps_list:
        eps = as_rational(eps)
        if not (eps > 0 and HALF + eps <= 1):
            raise PreconditionViolation(f"need 0 < eps <= 1/2, got {eps}")
        rows.append(theorem_bounds(HALF + eps))
    return rows


def half_limit_discrepancy() -> dict:
    """Computed ``q -> 1/2`` lower-bound limit versus the reported ``3 ln(4/3)``."""
    computed = 2 * math.log(1.5)
    return {
        "computed": computed,
        "reported": REPORTED_HALF_LIMIT,
        "difference": REPORTED_HALF_LIMIT - computed,
        "reported_matches_q": Fraction(2, 3),
        "agrees": math.isclose(computed, REPORTED_HALF_LIMIT, rel_tol=1e-12),
    }
