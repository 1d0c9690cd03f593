import math

import pytest
from hypothesis import given, settings

from oodn.expr import (
    Aggregate,
    Arith,
    Compare,
    Connective,
    EvalContext,
    EvalError,
    ExprSyntaxError,
    If,
    Not,
    Num,
    ParamRef,
    PropRef,
    Sort,
    SortError,
    evaluate,
    expr_equal,
    infer_sort,
    normalize,
    parse,
    print_expr,
)

from .helpers import obj, qprop, qual
from .strategies import expressions


class TestParse:
    def test_number(self):
        assert parse("42") == Num(42.0)
        assert parse("2.5e3") == Num(2500.0)

    def test_negative_literal(self):
        assert parse("-7") == Num(-7.0)

    def test_string(self):
        assert parse('"cm"').value == "cm"

    def test_propref(self):
        assert parse("self.side_sizes.values") == PropRef("side_sizes", "values")
        assert parse("self.p.units") == PropRef("p", "units")

    def test_paramref(self):
        assert parse("d1") == ParamRef("d1")

    def test_precedence(self):
        e = parse("1 + 2 * 3")
        assert e == Arith("+", Num(1.0), Arith("*", Num(2.0), Num(3.0)))

    def test_left_associative(self):
        assert parse("8 - 2 - 1") == Arith("-", Arith("-", Num(8.0), Num(2.0)), Num(1.0))

    def test_connectives_bind_looser_than_comparison(self):
        e = parse("x > 0 and y > 0")
        assert isinstance(e, Connective)
        assert isinstance(e.left, Compare)

    def test_not_and_if(self):
        e = parse("if not (x > 0) then 1 else 0")
        assert isinstance(e, If)
        assert isinstance(e.condition, Not)

    def test_aggregate(self):
        e = parse("all_equal(self.angles.values)")
        assert e == Aggregate("all_equal", PropRef("angles", "values"))

    def test_unary_minus_on_expression(self):
        assert parse("-x") == Arith("-", Num(0.0), ParamRef("x"))

    def test_trailing_operator_rejected(self):
        with pytest.raises(ExprSyntaxError):
            parse("self.p1.value == 4 and")

    def test_error_position(self):
        with pytest.raises(ExprSyntaxError) as exc:
            parse("1 + %")
        assert exc.value.line == 1
        assert exc.value.column == 5

    def test_unknown_accessor(self):
        with pytest.raises(ExprSyntaxError):
            parse("self.p.size")

    def test_unknown_function(self):
        with pytest.raises(ExprSyntaxError):
            parse("median(self.p.values)")

    def test_keyword_not_identifier(self):
        with pytest.raises(ExprSyntaxError):
            parse("then + 1")

    def test_aggregate_arity(self):
        with pytest.raises(ExprSyntaxError):
            parse("sum(x, y)")


class TestPrint:
    def test_minimal_parentheses(self):
        assert print_expr(parse("1 + 2 * 3")) == "1 + 2 * 3"
        assert print_expr(parse("(1 + 2) * 3")) == "(1 + 2) * 3"

    def test_subtraction_grouping(self):
        assert print_expr(parse("8 - (2 - 1)")) == "8 - (2 - 1)"
        assert print_expr(parse("8 - 2 - 1")) == "8 - 2 - 1"

    def test_integral_floats_print_bare(self):
        assert print_expr(Num(4.0)) == "4"
        assert print_expr(Num(0.5)) == "0.5"

    def test_string_escaping(self):
        e = parse('"a\\"b"')
        assert parse(print_expr(e)) == e

    @settings(max_examples=200)
    @given(expressions())
    def test_round_trip(self, e):
        assert parse(print_expr(e)) == e


class TestNormalize:
    def test_commutative_sort(self):
        assert normalize(parse("b + a")) == normalize(parse("a + b"))
        assert normalize(parse("y and x")) == normalize(parse("x and y"))
        assert normalize(parse("x == y")) == normalize(parse("y == x"))

    def test_non_commutative_kept(self):
        assert normalize(parse("a - b")) != normalize(parse("b - a"))
        assert normalize(parse("a / b")) != normalize(parse("b / a"))

    def test_constant_folding(self):
        assert normalize(parse("2 * 3")) == Num(6.0)
        assert normalize(parse("1 + 2 * 3")) == Num(7.0)
        assert normalize(parse("4 > 3")) == Num(1.0)
        assert normalize(parse("not 1")) == Num(0.0)
        assert normalize(parse("if 1 > 0 then x else y")) == ParamRef("x")

    def test_division_by_zero_stays_symbolic(self):
        e = normalize(parse("1 / 0"))
        assert e == Arith("/", Num(1.0), Num(0.0))

    def test_double_negation(self):
        assert normalize(parse("not (not (x > 0))")) == normalize(parse("x > 0"))

    @settings(max_examples=200)
    @given(expressions())
    def test_idempotent(self, e):
        once = normalize(e)
        assert normalize(once) == once

    @settings(max_examples=200)
    @given(expressions())
    def test_semantics_preserved(self, e):
        subject = obj(
            "o",
            qprop("p1", "cm", [2, 2, 2, 2]),
            qprop("p2", "deg", 3.0),
            qprop("side_sizes", "cm", [3, 4, 5]),
        )
        ctx = EvalContext(
            subject=subject,
            arguments={"x": 2.0, "y": 0.5, "width": 3.0, "height": 4.0, "d1": 1.0},
        )
        try:
            before = evaluate(e, ctx)
        except EvalError:
            return  # e.g. division by zero: must still fail after normalizing
        after = evaluate(normalize(e), ctx)
        if isinstance(before, float) and isinstance(after, float):
            assert math.isclose(before, after, rel_tol=1e-12, abs_tol=1e-12)
        else:
            assert before == after


class TestExprEqual:
    def test_reflexive_symmetric(self):
        a, b = parse("a + b"), parse("b + a")
        assert expr_equal(a, a)
        assert expr_equal(a, b) and expr_equal(b, a)

    def test_transitive(self):
        a = parse("a + (2 * 3)")
        b = parse("a + 6")
        c = parse("6 + a")
        assert expr_equal(a, b) and expr_equal(b, c) and expr_equal(a, c)

    def test_different_formulas_differ(self):
        assert not expr_equal(parse("d1 * d2 / 2"), parse("a * a"))

    def test_whitespace_and_parens_irrelevant(self):
        assert expr_equal(parse("( a+b )"), parse("a   +   b"))


class TestSorts:
    def test_literals(self):
        assert infer_sort(Num(0.5)) is Sort.DEGREE
        assert infer_sort(Num(7.0)) is Sort.NUMBER
        assert infer_sort(parse('"cm"')) is Sort.TEXT

    def test_refs(self):
        assert infer_sort(parse("self.p.values")) is Sort.NUMBER_LIST
        assert infer_sort(parse("self.p.units")) is Sort.TEXT
        assert infer_sort(parse("self.p.value")) is Sort.NUMBER

    def test_compare_and_connective(self):
        assert infer_sort(parse("x > 0 and y > 0")) is Sort.DEGREE
        assert infer_sort(parse("all_equal(self.p.values)")) is Sort.DEGREE

    def test_text_ordering_rejected(self):
        with pytest.raises(SortError):
            infer_sort(parse('"a" < "b"'))

    def test_literal_outside_unit_interval_not_a_degree(self):
        with pytest.raises(SortError):
            infer_sort(parse("2 and x > 0"))

    def test_aggregate_needs_list(self):
        with pytest.raises(SortError):
            infer_sort(parse("sum(x)"))


class TestEvaluate:
    def _square(self):
        return obj(
            "sq",
            qprop("side_sizes", "cm", [2, 2, 2, 2]),
            qprop("n", "count", 12.0),
        )

    def test_all_equal_true(self):
        e = parse("all_equal(self.side_sizes.values)")
        assert evaluate(e, EvalContext(subject=self._square())) == 1.0

    def test_all_equal_false(self):
        subject = obj("r", qprop("angle_measures", "deg", [70, 110, 70, 110]))
        e = parse("all_equal(self.angle_measures.values)")
        assert evaluate(e, EvalContext(subject=subject)) == 0.0

    def test_comparison_degrees(self):
        ctx = EvalContext(subject=self._square())
        assert evaluate(parse("self.n.value > 0"), ctx) == 1.0
        ctx2 = EvalContext(subject=obj("o", qprop("n", "count", -1.0)))
        assert evaluate(parse("self.n.value > 0"), ctx2) == 0.0

    def test_fuzzy_connectives(self):
        ctx = EvalContext(arguments={"a": 0.3, "b": 0.8})
        assert evaluate(parse("a and b"), ctx) == 0.3
        assert evaluate(parse("a or b"), ctx) == 0.8
        assert evaluate(parse("not a"), ctx) == pytest.approx(0.7)

    def test_method_body_with_arguments(self):
        result = evaluate(parse("d1 * d2 / 2"), EvalContext(arguments={"d1": 4, "d2": 6}))
        assert result == 12.0

    def test_aggregates(self):
        ctx = EvalContext(subject=self._square())
        assert evaluate(parse("sum(self.side_sizes.values)"), ctx) == 8.0
        assert evaluate(parse("min(self.side_sizes.values)"), ctx) == 2.0
        assert evaluate(parse("count(self.side_sizes.values)"), ctx) == 4.0

    def test_count_attr(self):
        ctx = EvalContext(subject=self._square())
        assert evaluate(parse("self.side_sizes.count"), ctx) == 4.0

    def test_stored_degree_via_value(self):
        subject = obj("o", qual("ok", degree=0.25))
        assert evaluate(parse("self.ok.value"), EvalContext(subject=subject)) == 0.25

    def test_if_branches(self):
        ctx = EvalContext(arguments={"x": 5.0})
        assert evaluate(parse("if x > 0 then x else 0 - x"), ctx) == 5.0
        ctx = EvalContext(arguments={"x": -5.0})
        assert evaluate(parse("if x > 0 then x else 0 - x"), ctx) == 5.0

    def test_division_by_zero(self):
        with pytest.raises(EvalError, match="division by zero"):
            evaluate(parse("1 / (x - x)"), EvalContext(arguments={"x": 1.0}))

    def test_unresolved_parameter(self):
        with pytest.raises(EvalError, match="unresolved parameter"):
            evaluate(parse("q + 1"), EvalContext())

    def test_missing_property(self):
        with pytest.raises(EvalError, match="no property"):
            evaluate(parse("self.ghost.value"), EvalContext(subject=self._square()))

    def test_degree_out_of_range(self):
        with pytest.raises(EvalError, match="out of range"):
            evaluate(parse("x and x"), EvalContext(arguments={"x": 3.0}))

    def test_scalar_value_of_list_property(self):
        with pytest.raises(EvalError, match="use .values"):
            evaluate(parse("self.side_sizes.value"), EvalContext(subject=self._square()))
