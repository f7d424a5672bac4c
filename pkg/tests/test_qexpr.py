from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qvitali import DomainError, LexError, ModeError, ParseError, SingularOperand
from qvitali.qalgebra import q_diff, q_exp, q_sum
from qvitali.qexpr import Binary, Call, Literal, evaluate, is_exact, parse, to_source, tokenize

HALF = F(1, 2)


def kinds(text):
    return [t.kind for t in tokenize(text)]


class TestTokenize:
    def test_q_sum(self):
        toks = tokenize("1/2 o+ 1/3")
        assert [(t.kind, t.lexeme) for t in toks] == [("number", "1/2"), ("qplus", "o+"), ("number", "1/3")]
        assert [t.position for t in toks] == [1, 5, 8]

    def test_call(self):
        assert kinds("qexp(2)") == ["funcname", "lparen", "number", "rparen"]

    def test_bad_character(self):
        with pytest.raises(LexError) as exc:
            tokenize("1 $ 2")
        assert exc.value.column == 3

    def test_unicode_aliases(self):
        assert kinds("1 ⊕ 2 ⊖ 3 ⊗ 4 ⊘ 5")[1::2] == ["qplus", "qminus", "qtimes", "qdiv"]

    def test_whitespace_insensitive(self):
        assert kinds("1o+2") == kinds("  1   o+   2 ")

    def test_signed_and_decimal_literals(self):
        assert [t.lexeme for t in tokenize("-2 o- +0.25 o* 1e-3")][::2] == ["-2", "+0.25", "1e-3"]

    def test_unknown_name_and_zero_denominator(self):
        with pytest.raises(LexError):
            tokenize("sin(1)")
        with pytest.raises(LexError):
            tokenize("1/0")


class TestParse:
    def test_precedence(self):
        assert parse(tokenize("1 o+ 2 o* 3")) == Binary(
            "qplus", Literal(F(1)), Binary("qtimes", Literal(F(2)), Literal(F(3)))
        )

    def test_grouping(self):
        assert parse(tokenize("(1 o+ 2) o* 3")) == Binary(
            "qtimes", Binary("qplus", Literal(F(1)), Literal(F(2))), Literal(F(3))
        )

    def test_left_associative(self):
        assert parse("1 o- 2 o- 3") == Binary(
            "qminus", Binary("qminus", Literal(F(1)), Literal(F(2))), Literal(F(3))
        )

    def test_decimal_literal_is_exact(self):
        assert parse("0.1") == Literal(F(1, 10))

    def test_dangling_operator(self):
        with pytest.raises(ParseError, match="expected factor"):
            parse(tokenize("1 o+"))

    @pytest.mark.parametrize("bad", ["", "(1 o+ 2", "qexp 2", "1 2", ")", "qlog()"])
    def test_errors(self, bad):
        with pytest.raises(ParseError):
            parse(bad)


class TestEvaluate:
    def test_exact_q_sum(self):
        assert evaluate(parse("1/2 o+ 1/3"), HALF, "exact") == F(11, 12)

    def test_float_qexp(self):
        assert evaluate(parse("qexp(2)"), HALF, "float") == 4.0

    def test_singular(self):
        with pytest.raises(SingularOperand):
            evaluate(parse("1 o- -2"), HALF, "exact")
        with pytest.raises(SingularOperand):
            evaluate(parse("1 o- -2"), HALF, "float")

    def test_exact_mode_rejects_non_rational_ops(self):
        for text in ("2 o* 3", "4 o/ 2", "dn(1)"):
            with pytest.raises(ModeError):
                evaluate(parse(text), HALF, "exact")
        assert not is_exact(parse("1 o+ qlog(2)"))

    def test_domain_errors_propagate(self):
        with pytest.raises(DomainError):
            evaluate(parse("qlog(-1)"), HALF, "float")
        with pytest.raises(DomainError):
            evaluate(parse("dn(-3)"), HALF, "float")

    def test_float_ops(self):
        assert evaluate(parse("4 o* 4"), HALF, "float") == 9.0
        assert evaluate(parse("9 o/ 4"), HALF, "float") == 4.0
        assert evaluate(parse("qlog(4)"), HALF, "float") == 2.0
        assert evaluate(parse("qexp(1/2)"), HALF, "float") == pytest.approx(q_exp(0.5, HALF))


# recursive tree strategy, independent of qvitali.sampling
leaves = st.fractions(-5, 5, max_denominator=100).map(Literal)
trees = st.recursive(
    leaves,
    lambda kids: st.one_of(
        st.builds(Binary, st.sampled_from(["qplus", "qminus", "qtimes", "qdiv"]), kids, kids),
        st.builds(Call, st.sampled_from(["qexp", "qlog", "dn"]), kids),
    ),
    max_leaves=12,
)


@settings(max_examples=300)
@given(trees)
def test_round_trip(tree):
    assert parse(tokenize(to_source(tree))) == tree


additive = st.recursive(
    st.fractions(0, 1, max_denominator=100).map(Literal),
    lambda kids: st.builds(Binary, st.sampled_from(["qplus", "qminus"]), kids, kids),
    max_leaves=8,
)


@settings(max_examples=300)
@given(additive, st.fractions(0, 1, max_denominator=100))
def test_exact_float_agreement(tree, q):
    exact = evaluate(tree, q, "exact")
    approx = evaluate(tree, q, "float")
    assert abs(float(exact) - approx) <= 1e-12 * (1 + abs(approx))


@given(
    st.fractions(F(1, 100), 5, max_denominator=100),
    st.fractions(F(1, 100), 5, max_denominator=100),
    st.fractions(F(1, 100), 5, max_denominator=100),
    st.fractions(0, 1, max_denominator=100),
)
def test_precedence_conformance(a, b, c, q):
    flat = evaluate(parse(f"{a} o+ {b} o* {c}"), q, "float")
    grouped = evaluate(parse(f"{a} o+ ({b} o* {c})"), q, "float")
    assert flat == grouped


def test_exact_agrees_with_library():
    q = F(2, 3)
    expected = q_diff(q_sum(F(1, 3), F(1, 4), q), F(1, 5), q)
    assert evaluate(parse("1/3 o+ 1/4 o- 1/5"), q) == expected
