"""Seeded generators of exact rationals, q values, sets and expression trees."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .qalgebra import QParam
from .qexpr import Binary, Call, Literal
from .qmeasure import Interval, IntervalSet

MAX_DEN = 10_000


def make_rng(seed: int, label: str = "") -> random.Random:
    """Independent stream per ``(seed, label)`` so suites can run in any order."""
    return random.Random(f"{seed}:{label}")


def rational(rng: random.Random, lo, hi, max_den: int = MAX_DEN) -> Fraction:
    """Rational in ``[lo, hi]`` with denominator at most ``max_den``."""
    lo, hi = Fraction(lo), Fraction(hi)
    while True:
        den = rng.randint(1, max_den)
        a, b = math.ceil(lo * den), math.floor(hi * den)
        if a <= b:
            return Fraction(rng.randint(a, b), den)


def open_rational(rng: random.Random, lo, hi, max_den: int = MAX_DEN) -> Fraction:
    """Rational strictly inside ``(lo, hi)``."""
    while True:
        x = rational(rng, lo, hi, max_den)
        if lo < x < hi:
            return x


def grid_q(rng: random.Random) -> QParam:
    """q drawn uniformly from ``{0, 1/10, ..., 1}``."""
    return QParam(Fraction(rng.randint(0, 10), 10))


def unit_q(rng: random.Random, max_den: int = MAX_DEN) -> QParam:
    return QParam(rational(rng, 0, 1, max_den))


def domain_floor(q: QParam, span) -> Fraction:
    """Left reference point for sampling: ``lam`` or ``-span`` when ``q == 1``."""
    return Fraction(-span) if q.classical else q.lam


def domain_point(rng: random.Random, q: QParam, upper, max_den: int = MAX_DEN) -> Fraction:
    """Point strictly inside ``(lam, upper)``."""
    return open_rational(rng, domain_floor(q, upper), upper, max_den)


def interval_in_domain(rng: random.Random, q: QParam, upper=1000) -> Interval:
    """Nondegenerate interval with ``lam < lo < hi <= upper``."""
    while True:
        a, b = domain_point(rng, q, upper), domain_point(rng, q, upper)
        if a != b:
            return Interval(min(a, b), max(a, b))


def sorted_points(rng: random.Random, q: QParam, k: int, span=50) -> list[Fraction]:
    """``k`` distinct sorted points strictly inside the q-domain."""
    base = domain_floor(q, span)
    pts: set[Fraction] = set()
    while len(pts) < k:
        pts.add(base + open_rational(rng, 0, 2 * span, 1000))
    return sorted(pts)


def disjoint_sets(rng: random.Random, q: QParam, pieces: int = 3) -> tuple[IntervalSet, IntervalSet]:
    """Two disjoint sets built from alternating gaps of one sorted point list."""
    pts = sorted_points(rng, q, 4 * pieces)
    ivs = [Interval(pts[i], pts[i + 1]) for i in range(0, len(pts), 2)]
    mine = [rng.random() < 0.5 for _ in ivs]
    return (
        IntervalSet(iv for iv, m in zip(ivs, mine) if m),
        IntervalSet(iv for iv, m in zip(ivs, mine) if not m),
    )


def interval_set(rng: random.Random, q: QParam, max_pieces: int = 4) -> IntervalSet:
    pieces = rng.randint(1, max_pieces)
    pts = sorted_points(rng, q, 2 * pieces)
    return IntervalSet(Interval(pts[i], pts[i + 1]) for i in range(0, len(pts), 2))


_OPS = ("qplus", "qminus", "qtimes", "qdiv")


def expr_tree(rng: random.Random, depth: int = 4):
    """Random well-formed tree over all operators and functions."""
    roll = rng.random()
    if depth == 0 or roll < 0.3:
        return Literal(rational(rng, -5, 5, 100))
    if roll < 0.4:
        return Call(rng.choice(("qexp", "qlog", "dn")), expr_tree(rng, depth - 1))
    return Binary(rng.choice(_OPS), expr_tree(rng, depth - 1), expr_tree(rng, depth - 1))


def additive_tree(rng: random.Random, depth: int = 3):
    """Tree using only ``o+``/``o-`` with small positive leaves."""
    if depth == 0 or rng.random() < 0.3:
        return Literal(rational(rng, 0, 1, 100))
    return Binary(rng.choice(("qplus", "qminus")), additive_tree(rng, depth - 1), additive_tree(rng, depth - 1))
