import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qvitali import PreconditionViolation, SingularOperand
from qvitali.qalgebra import q_sum
from qvitali.qcalculus import q_integrate
from qvitali.vitali import (
    REPORTED_HALF_LIMIT,
    divergence_scan,
    enumerate_rationals,
    equiv_witness,
    half_limit_discrepancy,
    iter_rationals,
    lemma1_checks,
    lower_bound_formula,
    symmetry_witness,
    theorem_bounds,
    transitivity_witness,
    upper_bound_formula,
)

HALF = F(1, 2)
unit = st.fractions(0, 1, max_denominator=10**4)
signed_unit = st.fractions(-1, 1, max_denominator=10**4)


class TestWitnesses:
    def test_equiv_witness_examples(self):
        assert equiv_witness(F(11, 12), HALF, HALF).r == F(1, 3)
        assert q_sum(HALF, F(1, 3), HALF) == F(11, 12)
        assert equiv_witness(F(2, 9), F(2, 9), F(1, 7)).r == 0
        assert equiv_witness(7, 3, 1).r == 4

    def test_equiv_witness_singular(self):
        with pytest.raises(SingularOperand):
            equiv_witness(0, -2, HALF)

    def test_symmetry_examples(self):
        r = symmetry_witness(F(1, 3), HALF)
        assert r == F(-2, 7)
        assert q_sum(F(11, 12), r, HALF) == HALF
        assert symmetry_witness(0, F(1, 3)) == 0
        assert symmetry_witness(4, 1) == -4

    def test_transitivity_examples(self):
        r = transitivity_witness(F(1, 3), F(1, 4), HALF)
        assert r == F(5, 8)
        z = F(1, 5)
        assert q_sum(q_sum(z, F(1, 4), HALF), F(1, 3), HALF) == q_sum(z, r, HALF)
        assert transitivity_witness(0, F(3, 7), F(1, 2)) == F(3, 7)
        assert transitivity_witness(2, 3, 1) == 5

    @given(unit, unit, unit, unit)
    def test_equivalence_axioms(self, x, y, z, q):
        assert equiv_witness(x, x, q).r == 0
        r = equiv_witness(x, y, q).r
        assert q_sum(y, r, q) == x
        assert q_sum(x, symmetry_witness(r, q), q) == y
        r2 = equiv_witness(y, z, q).r
        assert q_sum(z, transitivity_witness(r, r2, q), q) == x


class TestEnumerator:
    def test_prefix(self):
        assert enumerate_rationals(5) == [0, 1, -1, HALF, -HALF]
        assert enumerate_rationals(9)[5:] == [F(1, 3), F(-1, 3), F(2, 3), F(-2, 3)]

    def test_distinct_and_bounded(self):
        rs = enumerate_rationals(10**4)
        assert len(set(rs)) == len(rs)
        assert all(-1 <= r <= 1 for r in rs)

    def test_generator_matches_list(self):
        it = iter_rationals()
        assert [next(it) for _ in range(50)] == enumerate_rationals(50)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            enumerate_rationals(0)


class TestContainmentChecks:
    def test_witness_example(self):
        rep = lemma1_checks(HALF, 0, 0, 0, HALF)
        assert rep.witness == F(-2, 5)
        assert rep.witness_in_range

    def test_containment_boundary_attained(self):
        rep = lemma1_checks(1, 1, 1, 0, 0)
        assert rep.translate_k == 3
        assert rep.containment

    def test_domain_edge_touched_at_q_zero(self):
        rep = lemma1_checks(F(1, 3), 0, -1, 0, 0)
        assert rep.translate_k == -1 and rep.above_domain_edge

    def test_same_translation_coincides(self):
        rep = lemma1_checks(F(3, 7), F(1, 2), F(1, 5), F(1, 5), F(2, 3))
        assert rep.translate_k == rep.translate_l and rep.injective

    @pytest.mark.parametrize(
        "args",
        [(2, 0, 0, 0, HALF), (0, -1, 0, 0, HALF), (0, 0, 2, 0, HALF), (0, 0, 0, 0, F(-1, 2))],
    )
    def test_preconditions(self, args):
        with pytest.raises(PreconditionViolation):
            lemma1_checks(*args)

    @given(unit, unit, signed_unit, signed_unit, unit)
    def test_all_hold(self, v, x, rk, rl, q):
        assert lemma1_checks(v, x, rk, rl, q).ok


class TestBounds:
    def test_classical(self):
        row = theorem_bounds(1)
        assert (row.lower, row.upper) == (1.0, 5.0)
        assert (lower_bound_formula(1), upper_bound_formula(1)) == (1.0, 5.0)

    def test_three_quarters(self):
        row = theorem_bounds(F(3, 4))
        # 4 ln(5/4), 4 ln(7/2) at 40 digits
        assert row.lower == pytest.approx(0.89257420525683902307, rel=1e-15)
        assert row.upper == pytest.approx(5.0110518739814719828, rel=1e-15)
        assert row.lower == pytest.approx(q_integrate(lambda x: 1.0, 0, 1, F(3, 4)), rel=1e-10)
        assert row.upper == pytest.approx(q_integrate(lambda x: 1.0, -2, 3, F(3, 4)), rel=1e-10)

    def test_half(self):
        row = theorem_bounds(HALF)
        assert row.lower == pytest.approx(0.81093021621632876396, rel=1e-15)
        assert row.upper == math.inf
        assert upper_bound_formula(HALF) == math.inf

    def test_below_half_rejected(self):
        with pytest.raises(PreconditionViolation):
            theorem_bounds(F(2, 5))

    @pytest.mark.parametrize("q", [F(51, 100), F(3, 5), F(3, 4), F(9, 10)])
    def test_formulas_match_measure(self, q):
        row = theorem_bounds(q)
        assert row.lower == pytest.approx(lower_bound_formula(q), rel=1e-14)
        assert row.upper == pytest.approx(upper_bound_formula(q), rel=1e-14)

    def test_divergence_scan(self):
        rows = divergence_scan([F(1, 100), F(1, 10**4), F(1, 10**6), F(1, 10**9)])
        uppers = [r.upper for r in rows]
        assert all(a < b for a, b in zip(uppers, uppers[1:]))
        assert uppers[0] == pytest.approx(9.8290635838123099727, rel=1e-14)
        assert uppers[-1] == pytest.approx(41.892818857906879538, rel=1e-12)
        assert rows[-1].lower == pytest.approx(2 * math.log(1.5), rel=1e-8)

    def test_divergence_scan_rejects(self):
        with pytest.raises(PreconditionViolation):
            divergence_scan([0])
        with pytest.raises(PreconditionViolation):
            divergence_scan([F(3, 4)])

    def test_half_limit_discrepancy(self):
        d = half_limit_discrepancy()
        assert not d["agrees"]
        assert d["reported"] == pytest.approx(0.86304621735534278232, rel=1e-15)
        assert lower_bound_formula(F(2, 3)) == pytest.approx(REPORTED_HALF_LIMIT, rel=1e-14)
