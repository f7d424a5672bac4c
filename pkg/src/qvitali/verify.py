"""Seeded property suites behind ``qvitali verify``.

Each property draws ``cases`` random inputs from its own stream (derived
from the run seed and the property name), so a property's outcome does not
depend on which other suites run.  The first failing input is kept so the
run can be replayed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import sampling as S
from .qalgebra import (
    QParam,
    cutoff_active,
    deformed,
    deformed_inv,
    q_diff,
    q_div,
    q_exp,
    q_log,
    q_prod,
    q_sum,
)
from .qcalculus import q_derivative, q_integrate
from .qexpr import Binary, Literal, evaluate, parse, to_source, tokenize
from .qmeasure import (
    Interval,
    IntervalSet,
    cell_measure,
    cells_disjoint,
    measure_interval,
    measure_set,
    scale_set,
    sigma_finite_partition,
    translate_set,
)
from .vitali import (
    equiv_witness,
    iter_rationals,
    lemma1_checks,
    lower_bound_formula,
    symmetry_witness,
    theorem_bounds,
    transitivity_witness,
    upper_bound_formula,
)

ONE = lambda x: 1.0  # noqa: E731


@dataclass
class PropertyResult:
    suite: str
    name: str
    cases: int = 0
    failures: int = 0
    counterexample: dict | None = None
    max_error: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass
class Report:
    seed: int
    results: list[PropertyResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def _run(suite: str, name: str, seed: int, cases: int, case: Callable) -> PropertyResult:
    """Run ``case(rng)`` ``cases`` times; it returns ``(ok, error, inputs)``."""
    rng = S.make_rng(seed, f"{suite}.{name}")
    res = PropertyResult(suite, name)
    for _ in range(cases):
        ok, err, inputs = case(rng)
        res.cases += 1
        if math.isfinite(err):
            res.max_error = max(res.max_error, err)
        if not ok:
            res.failures += 1
            if res.counterexample is None:
                res.counterexample = {k: str(v) for k, v in inputs.items()}
    return res


def _rel(a: float, b: float) -> float:
    return abs(a - b) / (1.0 + abs(b))


# -- algebra -----------------------------------------------------------------


def _exactness(rng):
    q = S.unit_q(rng)
    x, y, z = (S.rational(rng, -10, 10) for _ in range(3))
    ok = (
        isinstance(q_sum(x, y, q), Fraction)
        and q_sum(q_sum(x, y, q), z, q) == q_sum(x, q_sum(y, z, q), q)
        and q_sum(x, y, q) == q_sum(y, x, q)
        and q_diff(q_sum(x, y, q), y, q) == x
    )
    return ok, 0.0, dict(x=x, y=y, z=z, q=q)


def _homomorphism(rng):
    q = S.unit_q(rng)
    x, y = S.domain_point(rng, q, 100), S.domain_point(rng, q, 100)
    dx, dy = deformed(x, q), deformed(y, q)
    err = abs(deformed(q_sum(x, y, q), q) - (dx + dy)) / (1 + abs(dx) + abs(dy))
    return err <= 1e-12, err, dict(x=x, y=y, q=q)


def _log_product(rng):
    q = S.unit_q(rng)
    x, y = (float(S.open_rational(rng, 0, 100)) for _ in range(2))
    lx, ly = q_log(x, q), q_log(y, q)
    rhs = lx + ly + float(q.one_minus_q) * lx * ly
    err = _rel(q_log(x * y, q), rhs)
    return err <= 1e-10, err, dict(x=x, y=y, q=q)


def _exp_factorization(rng):
    q = S.unit_q(rng, 100)
    x, y = (float(S.domain_point(rng, q, 5)) for _ in range(2))
    err = _rel(q_exp(x, q) * q_exp(y, q), q_exp(q_sum(x, y, q), q))
    return err <= 1e-10, err, dict(x=x, y=y, q=q)


def _round_trips(rng):
    q = S.unit_q(rng, 100)
    x = float(S.domain_point(rng, q, 5))
    p = float(S.open_rational(rng, 0, 50))
    y = float(S.open_rational(rng, 0, 50))
    errs = [_rel(q_log(q_exp(x, q), q), x), _rel(q_exp(q_log(p, q), q), p)]
    errs.append(_rel(deformed(deformed_inv(x, q), q), x))
    prod = q_prod(p, y, q)
    if cutoff_active(p, y, q):
        cut_ok = prod == 0.0
    else:
        cut_ok = True
        errs.append(_rel(q_div(prod, y, q), p))
    err = max(errs)
    return cut_ok and err <= 1e-10, err, dict(x=x, p=p, y=y, q=q)


def _degeneration(rng):
    x, y = S.rational(rng, -10, 10), S.rational(rng, -10, 10)
    fx, fy = float(x), float(abs(y) + 1)
    one = QParam(1)
    ok = (
        q_sum(x, y, one) == x + y
        and q_diff(x, y, one) == x - y
        and q_exp(fx, one) == math.exp(fx)
        and q_log(fy, one) == math.log(fy)
        and q_prod(fy, fy, one) == fy * fy
        and q_div(fy, fy + 1, one) == fy / (fy + 1)
        and deformed(x, one) == float(x)
        and deformed_inv(fx, one) == fx
    )
    return ok, 0.0, dict(x=x, y=y)


# -- calculus ----------------------------------------------------------------


def domain_edge(q: QParam) -> Fraction:
    return Fraction(-10) if q.classical else q.lam


def _oracle_consistency(rng):
    q = S.grid_q(rng)
    iv = S.interval_in_domain(rng, q)
    num = q_integrate(ONE, float(iv.lo), float(iv.hi), q)
    ref = deformed(iv.hi, q) - deformed(iv.lo, q)
    err = abs(num - ref) / (1 + abs(num))
    return err <= 1e-8, err, dict(q=q, lo=iv.lo, hi=iv.hi)


def _derivative_order(rng):
    q = S.unit_q(rng, 100)
    x = float(S.rational(rng, max(-1, domain_edge(q) + Fraction(1, 2)), 3, 100))
    f = lambda t: deformed(t, q)  # noqa: E731
    errs = [abs(q_derivative(f, x, q, h) - 1.0) for h in (1e-3, 1e-4, 1e-5)]
    # truncation error of a central difference is f'''(x) h^2 / 6 times the q-factor
    c = float(q.one_minus_q) ** 2 / (1 + float(q.one_minus_q) * x) ** 2 / 3.0
    ok = all(e <= 2 * c * h * h + 1e-10 for e, h in zip(errs, (1e-3, 1e-4, 1e-5)))
    if errs[0] > 1e-8:
        ok = ok and errs[0] / max(errs[1], 1e-300) > 50
    return ok, max(errs), dict(q=q, x=x)


def _eigenfunction(rng):
    q = S.unit_q(rng, 100)
    x = float(S.rational(rng, max(-1, domain_edge(q) + Fraction(1, 2)), 3, 100))
    f = lambda t: q_exp(t, q)  # noqa: E731
    e = q_exp(x, q)
    err = abs(q_derivative(f, x, q, 1e-6) - e) / (1 + e)
    return err <= 1e-5, err, dict(q=q, x=x)


# -- measure -----------------------------------------------------------------


def _monotonicity(rng):
    q = S.grid_q(rng)
    s = S.interval_set(rng, q)
    t = s | S.interval_set(rng, q)
    ms, mt = measure_set(s, q), measure_set(t, q)
    return s.issubset(t) and ms <= mt + 1e-12, max(0.0, ms - mt), dict(q=q, s=s, t=t)


def _additivity(rng):
    q = S.grid_q(rng)
    s, t = S.disjoint_sets(rng, q)
    m = measure_set(s | t, q)
    err = abs(m - (measure_set(s, q) + measure_set(t, q))) / (1 + m)
    return s.isdisjoint(t) and err <= 1e-10, err, dict(q=q, s=s, t=t)


def _translation(rng):
    q = S.unit_q(rng, 1000)
    s = S.interval_set(rng, q)
    v = S.domain_point(rng, q, 10)
    m = measure_set(s, q)
    moved = translate_set(s, v, q)
    # telescoped through deformed numbers, independently of measure_interval
    telescoped = math.fsum(deformed(iv.hi, q) - deformed(iv.lo, q) for iv in moved)
    err = max(abs(measure_set(moved, q) - m), abs(telescoped - m)) / (1 + m)
    return err <= 1e-10, err, dict(q=q, s=s, v=v)


def scaling_case(rng):
    """Inputs for the scaling law: ``(A, alpha, q)`` with ``alpha A`` in the q-domain."""
    q = S.unit_q(rng, 100)
    alpha = S.open_rational(rng, 0, 5, 100)
    while True:
        lo = S.rational(rng, domain_edge(q) / alpha, 20, 1000)
        hi = S.rational(rng, lo, 40, 1000)
        if domain_edge(q) / alpha < lo < hi:
            return Interval(lo, hi), alpha, q


def _scaling(rng):
    iv, alpha, q = scaling_case(rng)
    (scaled_iv,), q2 = scale_set(IntervalSet([iv]), alpha, q)
    lhs = measure_interval(scaled_iv, q)
    rhs = float(alpha) * measure_interval(iv, q2)
    err = abs(lhs - rhs) / (1 + lhs)
    quad_l = q_integrate(ONE, float(scaled_iv.lo), float(scaled_iv.hi), q)
    quad_r = float(alpha) * q_integrate(ONE, float(iv.lo), float(iv.hi), q2)
    qerr = max(abs(quad_l - lhs), abs(quad_r - rhs)) / (1 + lhs)
    return err <= 1e-9 and qerr <= 1e-8, err, dict(q=q, alpha=alpha, interval=iv)


def _divergence(rng):
    q = QParam(S.rational(rng, 0, Fraction(99, 100), 100))
    b = q.lam + S.open_rational(rng, 0, 100)
    return measure_interval(Interval(q.lam, b), q) == math.inf, 0.0, dict(q=q, b=b)


def _partition(rng):
    q = QParam(S.rational(rng, 0, Fraction(99, 100), 100))
    n = rng.randint(1, 20)
    cells = sigma_finite_partition(q, n)
    errs = [
        abs(measure_interval(c, q) - cell_measure(i, q))
        for i, c in zip(list(range(1, n + 1)) * 2, cells)
    ]
    ok = cells_disjoint(cells) and all(math.isfinite(measure_interval(c, q)) for c in cells)
    return ok and max(errs) <= 1e-10, max(errs), dict(q=q, n=n)


# -- vitali ------------------------------------------------------------------


def _equivalence(rng):
    q = S.unit_q(rng)
    x, y, z = (S.rational(rng, 0, 1) for _ in range(3))
    refl = equiv_witness(x, x, q).r == 0 and q_sum(x, 0, q) == x
    r = equiv_witness(x, y, q).r
    sym = q_sum(y, r, q) == x and q_sum(x, symmetry_witness(r, q), q) == y
    r1, r2 = r, equiv_witness(y, z, q).r
    trans = q_sum(z, transitivity_witness(r1, r2, q), q) == x
    return refl and sym and trans, 0.0, dict(x=x, y=y, z=z, q=q)


def _lemma1(rng):
    q = S.unit_q(rng)
    v, x = S.rational(rng, 0, 1), S.rational(rng, 0, 1)
    rk, rl = S.rational(rng, -1, 1), S.rational(rng, -1, 1)
    rep = lemma1_checks(v, x, rk, rl, q)
    return rep.ok, 0.0, dict(v=v, x=x, r_k=rk, r_l=rl, q=q)


def _bounds_consistency(rng):
    q = QParam(rng.choice([Fraction(51, 100), Fraction(3, 5), Fraction(3, 4), Fraction(9, 10), Fraction(1)]))
    row = theorem_bounds(q)
    ql = q_integrate(ONE, 0.0, 1.0, q)
    qu = q_integrate(ONE, -2.0, 3.0, q)
    err = max(
        _rel(row.lower, ql),
        _rel(row.upper, qu),
        _rel(row.lower, lower_bound_formula(q)),
        _rel(row.upper, upper_bound_formula(q)),
    )
    return err <= 1e-8, err, dict(q=q)


def _enumerator(cases: int) -> Callable:
    seen: set[Fraction] = set()
    it = iter_rationals()

    def case(rng):
        r = next(it)
        fresh = r not in seen
        seen.add(r)
        return fresh and -1 <= r <= 1, 0.0, dict(index=len(seen), r=r)

    return case


# -- parser ------------------------------------------------------------------


def _round_trip(rng):
    tree = S.expr_tree(rng)
    text = to_source(tree)
    return parse(tokenize(text)) == tree, 0.0, dict(source=text)


def _exact_float(rng):
    q = S.unit_q(rng, 100)
    tree = S.additive_tree(rng)
    exact = evaluate(tree, q, "exact")
    approx = evaluate(tree, q, "float")
    err = abs(float(exact) - approx) / (1 + abs(approx))
    return err <= 1e-12, err, dict(q=q, source=to_source(tree))


def _precedence(rng):
    q = S.unit_q(rng, 100)
    a, b, c = (S.open_rational(rng, 0, 5, 100) for _ in range(3))
    flat = evaluate(parse(f"{a} o+ {b} o* {c}"), q, "float")
    grouped = evaluate(parse(f"{a} o+ ({b} o* {c})"), q, "float")
    tree_ok = parse(f"{a} o+ {b} o* {c}") == Binary("qplus", Literal(a), Binary("qtimes", Literal(b), Literal(c)))
    return tree_ok and flat == grouped, abs(flat - grouped), dict(a=a, b=b, c=c, q=q)


SUITES: dict[str, list[tuple[str, Callable]]] = {
    "algebra": [
        ("exact_group_laws", _exactness),
        ("homomorphism", _homomorphism),
        ("log_product_identity", _log_product),
        ("exp_factorization", _exp_factorization),
        ("round_trips", _round_trips),
        ("classical_degeneration", _degeneration),
    ],
    "calculus": [
        ("oracle_consistency", _oracle_consistency),
        ("derivative_second_order", _derivative_order),
        ("exp_eigenfunction", _eigenfunction),
    ],
    "measure": [
        ("monotonicity", _monotonicity),
        ("sigma_additivity", _additivity),
        ("q_translation_invariance", _translation),
        ("corrected_scaling", _scaling),
        ("edge_divergence", _divergence),
        ("sigma_finite_partition", _partition),
    ],
    "vitali": [
        ("equivalence_axioms", _equivalence),
        ("lemma1_containment_injectivity", _lemma1),
        ("bounds_consistency", _bounds_consistency),
        ("enumerator_distinct", None),
    ],
    "parser": [
        ("round_trip", _round_trip),
        ("exact_float_agreement", _exact_float),
        ("precedence", _precedence),
    ],
}


def suite_names() -> list[str]:
    return list(SUITES)


def run_suites(names: Iterable[str], seed: int = 42, cases: int = 1000) -> Report:
    if cases < 1:
        raise ValueError("cases must be >= 1")
    report = Report(seed)
    for suite in names:
        for name, case in SUITES[suite]:
            if case is None:
                case = _enumerator(cases)
            report.results.append(_run(suite, name, seed, cases, case))
    return report
