"""The nonextensive measure ``mu_q(A) = int_A dx / (1 + (1-q) x)``.

Sets are finite unions of closed intervals with exact rational endpoints,
kept in a normal form (sorted, disjoint, non-touching).  Measures are
binary64 floats with ``math.inf`` for the divergent case ``lo == lam``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import DomainError
from .qalgebra import QParam, as_rational, log_ratio, q_sum

MeasureValue = float


@dataclass(frozen=True, order=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = as_rational(self.lo), as_rational(self.hi)
        if lo > hi:
            raise ValueError(f"interval endpoints out of order: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}]"


class IntervalSet:
    """Finite union of closed intervals in normal form.

    Overlapping or touching inputs are merged on construction, so two sets
    are equal iff their interval tuples are equal.
    """

    __slots__ = ("_intervals",)

    def __init__(self, intervals: Iterable[Interval | tuple] = ()):
        items = sorted(iv if isinstance(iv, Interval) else Interval(*iv) for iv in intervals)
        merged: list[Interval] = []
        for iv in items:
            if merged and iv.lo <= merged[-1].hi:
                last = merged[-1]
                if iv.hi > last.hi:
                    merged[-1] = Interval(last.lo, iv.hi)
            else:
                merged.append(iv)
        self._intervals = tuple(merged)

    @property
    def intervals(self) -> tuple[Interval, ...]:
        return self._intervals

    def __iter__(self) -> Iterator[Interval]:
        return iter(self._intervals)

    def __len__(self) -> int:
        return len(self._intervals)

    def __bool__(self) -> bool:
        return bool(self._intervals)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._intervals == other._intervals

    def __hash__(self) -> int:
        return hash(self._intervals)

    def __repr__(self) -> str:
        return f"IntervalSet({str(self)!r})"

    def __str__(self) -> str:
        return format_interval_set(self)

    def __contains__(self, x) -> bool:
        return any(x in iv for iv in self._intervals)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self._intervals + other._intervals)

    __or__ = union

    def intersection(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        for a in self._intervals:
            for b in other._intervals:
                lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
                if lo <= hi:
                    out.append(Interval(lo, hi))
        return IntervalSet(out)

    __and__ = intersection

    def isdisjoint(self, other: "IntervalSet") -> bool:
        return not self.intersection(other)

    def issubset(self, other: "IntervalSet") -> bool:
        return all(
            any(b.lo <= a.lo and a.hi <= b.hi for b in other._intervals)
            for a in self._intervals
        )

    def scaled(self, alpha) -> "IntervalSet":
        alpha = as_rational(alpha)
        if alpha <= 0:
            raise ValueError("scale factor must be positive")
        return IntervalSet(Interval(alpha * iv.lo, alpha * iv.hi) for iv in self._intervals)


_ITEM = re.compile(r"\s*\[\s*([^,\[\]]+?)\s*,\s*([^,\[\]]+?)\s*\]\s*")


def parse_interval_set(text: str) -> IntervalSet:
    """Parse ``"[0,1],[3/2,2]"``; endpoints are exact rational or decimal literals."""
    intervals = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _ITEM.match(text, pos)
        if not m:
            raise ValueError(f"malformed interval set near column {pos + 1}: {text[pos:]!r}")
        lo, hi = (as_rational(g) for g in m.groups())
        if lo > hi:
            raise ValueError(f"interval {m.group(0).strip()} has lo > hi")
        intervals.append(Interval(lo, hi))
        pos = m.end()
        if pos < len(text):
            if text[pos] != ",":
                raise ValueError(f"expected ',' at column {pos + 1}")
            pos += 1
            if pos == len(text):
                raise ValueError("trailing ',' in interval set")
    return IntervalSet(intervals)


def format_interval_set(s: IntervalSet) -> str:
    return ",".join(str(iv) for iv in s)


def check_interval(iv: Interval, q) -> None:
    q = QParam.of(q)
    if not q.classical and iv.lo < q.lam:
        raise DomainError(f"interval {iv} leaves the q-domain [{q.lam}, inf) for q = {q}")


def check_set(s: IntervalSet, q) -> None:
    for iv in s:
        check_interval(iv, q)


def measure_interval(iv: Interval, q) -> MeasureValue:
    """``mu_q([lo, hi]) = hi_q - lo_q``; ``inf`` when ``lo`` is the domain edge.

    The difference of deformed numbers is taken as a single logarithm of the
    exact ratio ``(1 + (1-q) hi) / (1 + (1-q) lo)``, so short intervals lose
    no digits to cancellation.
    """
    q = QParam.of(q)
    check_interval(iv, q)
    if iv.lo == iv.hi:
        return 0.0
    if q.classical:
        return float(iv.hi - iv.lo)
    if iv.lo == q.lam:
        return math.inf
    c = q.one_minus_q
    return log_ratio(1 + c * (iv.hi - iv.lo) / (1 + c * iv.lo)) / float(c)


def measure_set(s: IntervalSet, q) -> MeasureValue:
    parts = [measure_interval(iv, q) for iv in s]
    if any(math.isinf(p) for p in parts):
        return math.inf
    return math.fsum(parts)


def translate_set(s: IntervalSet, v, q) -> IntervalSet:
    """q-translate every interval: ``[a, b] -> [a (+)_q v, b (+)_q v]``."""
    q = QParam.of(q)
    v = as_rational(v)
    if not q.in_domain(v):
        raise DomainError(f"translation v = {v} is not in the q-domain ({q.lam}, inf)")
    check_set(s, q)
    return IntervalSet(Interval(q_sum(iv.lo, v, q), q_sum(iv.hi, v, q)) for iv in s)


def scaled_q(q, alpha) -> QParam:
    """``q' = 1 - (1-q) alpha``, the parameter that absorbs a dilation by ``alpha``."""
    q = QParam.of(q)
    return QParam(1 - q.one_minus_q * as_rational(alpha))


def scale_set(s: IntervalSet, alpha, q) -> tuple[IntervalSet, QParam]:
    """Return ``(alpha * s, q')`` such that ``mu_q(alpha s) == alpha * mu_q'(s)``."""
    q = QParam.of(q)
    alpha = as_rational(alpha)
    if alpha <= 0:
        raise DomainError(f"scale factor must be positive, got {alpha}")
    scaled = s.scaled(alpha)
    check_set(scaled, q)
    return scaled, scaled_q(q, alpha)


def sigma_finite_partition(q, n_cells: int) -> list[Interval]:
    """First cells of a countable finite-measure cover of the q-domain.

    For ``q < 1`` returns ``A_1..A_n`` then ``B_1..B_n`` with
    ``A_i = [lam + 1/(i+1), lam + 1/i)`` and ``B_k = [lam + k, lam + k + 1)``.
    For ``q == 1`` returns the unit cells ``[k, k+1)`` for ``-n <= k < n``.
    Cells are half-open; :func:`cells_disjoint` checks them as such.
    """
    q = QParam.of(q)
    if n_cells < 1:
        raise ValueError("n_cells must be a positive integer")
    if q.classical:
        return [Interval(k, k + 1) for k in range(-n_cells, n_cells)]
    lam = q.lam
    a_cells = [Interval(lam + Fraction(1, i + 1), lam + Fraction(1, i)) for i in range(1, n_cells + 1)]
    b_cells = [Interval(lam + k, lam + k + 1) for k in range(1, n_cells + 1)]
    return a_cells + b_cells


def partition_cell_index(x, q) -> tuple[str, int]:
    """Label of the partition cell containing ``x`` (``("A", n)`` or ``("B", k)``)."""
    q = QParam.of(q)
    x = as_rational(x)
    if q.classical:
        return "U", math.floor(x)
    gap = x - q.lam
    if gap <= 0:
        raise DomainError(f"x = {x} is not in the q-domain ({q.lam}, inf)")
    if gap >= 1:
        return "B", math.floor(gap)
    # lam + 1/(n+1) <= x < lam + 1/n  <=>  n < 1/gap <= n + 1
    return "A", math.ceil(1 / gap) - 1


def cells_disjoint(cells: list[Interval]) -> bool:
    """Pairwise disjointness of half-open cells ``[lo, hi)``."""
    ordered = sorted(cells)
    return all(a.hi <= b.lo for a, b in zip(ordered, ordered[1:]))


def cell_measure(i: int, q) -> float:
    """Measure of ``A_i`` and of ``B_i``: ``ln((i+1)/i) / (1-q)``."""
    q = QParam.of(q)
    return log_ratio(Fraction(i + 1, i)) / float(q.one_minus_q)


def stated_cell_measure(i: int, q) -> float:
    """The alternative closed form ``ln(1 + (1-q)/i) / (1-q)``.

    This is ``mu_q([0, 1/i])``, i.e. the cell value with the ``lam`` offset
    dropped; it agrees with :func:`cell_measure` only at ``q == 0``.
    """
    q = QParam.of(q)
    return log_ratio(1 + q.one_minus_q / i) / float(q.one_minus_q)
