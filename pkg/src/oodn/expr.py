"""Expression language used for verification predicates and method bodies.

Concrete syntax (full EBNF in docs/grammar.md):

    expr        = ifexpr | orexpr
    ifexpr      = "if" expr "then" expr "else" expr
    orexpr      = andexpr { "or" andexpr }
    andexpr     = notexpr { "and" notexpr }
    notexpr     = "not" notexpr | comparison
    comparison  = additive [ ("==" | "!=" | "<" | "<=" | ">" | ">=") additive ]
    additive    = multiplicative { ("+" | "-") multiplicative }
    multiplicative = unary { ("*" | "/") unary }
    unary       = "-" unary | primary
    primary     = NUMBER | STRING | propref | aggregate | IDENT | "(" expr ")"
    propref     = "self" "." IDENT "." ("value" | "units" | "values" | "count")
    aggregate   = ("sum" | "min" | "max" | "count" | "all_equal") "(" expr ")"

Connectives use fuzzy semantics: `and` is minimum, `or` is maximum,
`not x` is `1 - x`.  Comparisons yield degree 1 or 0.  An `if` condition
is taken as true when its degree is greater than zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterator, Mapping, Union

from .errors import OodnError

Value = Union[float, str, tuple]


class ExprError(OodnError):
    """Base class for expression-layer failures."""


class ExprSyntaxError(ExprError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class SortError(ExprError):
    """The expression is not well-sorted."""

    def __init__(self, message: str, node: "Expr | None" = None):
        super().__init__(message)
        self.node = node


class EvalError(ExprError):
    """Evaluation failed; `node` is the offending subexpression."""

    def __init__(self, message: str, node: "Expr | None" = None):
        super().__init__(message)
        self.node = node


# --- abstract syntax ---------------------------------------------------------

REF_ATTRS = ("value", "units", "values", "count")
AGGREGATES = ("sum", "min", "max", "count", "all_equal")
ARITH_OPS = ("+", "-", "*", "/")
CMP_OPS = ("==", "!=", "<", "<=", ">", ">=")


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Text:
    value: str


@dataclass(frozen=True)
class PropRef:
    """Reference to a property of the evaluation subject (`self.<p>.<attr>`)."""

    prop: str
    attr: str


@dataclass(frozen=True)
class ParamRef:
    """Reference to a method parameter by name."""

    name: str


@dataclass(frozen=True)
class Arith:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Compare:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Not:
    operand: "Expr"


@dataclass(frozen=True)
class Connective:
    op: str  # "and" | "or"
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Aggregate:
    fn: str
    arg: "Expr"


@dataclass(frozen=True)
class If:
    condition: "Expr"
    then: "Expr"
    orelse: "Expr"


Expr = Union[Num, Text, PropRef, ParamRef, Arith, Compare, Not, Connective, Aggregate, If]


def children(e: Expr) -> tuple:
    if isinstance(e, (Num, Text, PropRef, ParamRef)):
        return ()
    if isinstance(e, (Arith, Compare, Connective)):
        return (e.left, e.right)
    if isinstance(e, Not):
        return (e.operand,)
    if isinstance(e, Aggregate):
        return (e.arg,)
    if isinstance(e, If):
        return (e.condition, e.then, e.orelse)
    raise TypeError(f"not an expression node: {e!r}")


def walk(e: Expr) -> Iterator[Expr]:
    yield e
    for c in children(e):
        yield from walk(c)


def param_refs(e: Expr) -> set[str]:
    return {n.name for n in walk(e) if isinstance(n, ParamRef)}


def prop_refs(e: Expr) -> set[str]:
    return {n.prop for n in walk(e) if isinstance(n, PropRef)}


# --- sorts -------------------------------------------------------------------


class Sort(Enum):
    NUMBER = "number"
    DEGREE = "degree"
    TEXT = "text"
    NUMBER_LIST = "list-of-number"


def _numeric(s: Sort) -> bool:
    return s in (Sort.NUMBER, Sort.DEGREE)


def infer_sort(e: Expr) -> Sort:
    """Static result sort of `e`; raises SortError when ill-sorted.

    A numeric literal inside [0, 1] counts as a degree.  References have
    sort NUMBER and are accepted where a degree is expected; evaluation
    enforces the [0, 1] range dynamically.
    """
    if isinstance(e, Num):
        return Sort.DEGREE if 0.0 <= e.value <= 1.0 else Sort.NUMBER
    if isinstance(e, Text):
        return Sort.TEXT
    if isinstance(e, PropRef):
        if e.attr == "units":
            return Sort.TEXT
        if e.attr == "values":
            return Sort.NUMBER_LIST
        return Sort.NUMBER  # value, count
    if isinstance(e, ParamRef):
        return Sort.NUMBER
    if isinstance(e, Arith):
        for side in (e.left, e.right):
            if not _numeric(infer_sort(side)):
                raise SortError(f"arithmetic '{e.op}' needs numeric operands", e)
        return Sort.NUMBER
    if isinstance(e, Compare):
        ls, rs = infer_sort(e.left), infer_sort(e.right)
        if ls is Sort.TEXT and rs is Sort.TEXT:
            if e.op not in ("==", "!="):
                raise SortError(f"ordering '{e.op}' is not defined for text", e)
            return Sort.DEGREE
        if _numeric(ls) and _numeric(rs):
            return Sort.DEGREE
        raise SortError(f"comparison '{e.op}' needs two numbers or two texts", e)
    if isinstance(e, Not):
        _check_degree_operand(e.operand, e)
        return Sort.DEGREE
    if isinstance(e, Connective):
        _check_degree_operand(e.left, e)
        _check_degree_operand(e.right, e)
        return Sort.DEGREE
    if isinstance(e, Aggregate):
        if infer_sort(e.arg) is not Sort.NUMBER_LIST:
            raise SortError(f"{e.fn} expects a list of numbers", e)
        return Sort.DEGREE if e.fn == "all_equal" else Sort.NUMBER
    if isinstance(e, If):
        _check_degree_operand(e.condition, e)
        ts, os_ = infer_sort(e.then), infer_sort(e.orelse)
        if ts == os_:
            return ts
        if _numeric(ts) and _numeric(os_):
            return Sort.NUMBER
        raise SortError("if branches have incompatible sorts", e)
    raise TypeError(f"not an expression node: {e!r}")


def _check_degree_operand(operand: Expr, parent: Expr) -> None:
    s = infer_sort(operand)
    if s is Sort.DEGREE:
        return
    # A literal outside [0,1] can never be a degree; references might be.
    if s is Sort.NUMBER and not isinstance(operand, Num):
        return
    raise SortError("connective operand must be a degree in [0, 1]", parent)


# --- lexer -------------------------------------------------------------------

_KEYWORDS = frozenset(
    {"and", "or", "not", "if", "then", "else", "self"} | set(AGGREGATES)
)

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<number>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
    | (?P<string>"(?:[^"\\]|\\.)*")
    | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<op><=|>=|==|!=|[<>+\-*/().,])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # number | string | ident | op | eof
    text: str
    line: int
    column: int


def _tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {source[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            tokens.append(_Token(kind, text, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


def _unescape(raw: str) -> str:
    body = raw[1:-1]
    return (
        body.replace("\\\\", "\0")
        .replace('\\"', '"')
        .replace("\\n", "\n")
        .replace("\\t", "\t")
        .replace("\0", "\\")
    )


def _escape(s: str) -> str:
    return (
        s.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\t", "\\t")
    )


# --- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.pos = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.cur
        self.pos += 1
        return tok

    def fail(self, message: str) -> None:
        tok = self.cur
        got = repr(tok.text) if tok.kind != "eof" else "end of input"
        raise ExprSyntaxError(f"{message}, got {got}", tok.line, tok.column)

    def at_op(self, *symbols: str) -> bool:
        return self.cur.kind == "op" and self.cur.text in symbols

    def at_word(self, *words: str) -> bool:
        return self.cur.kind == "ident" and self.cur.text in words

    def expect_op(self, symbol: str) -> None:
        if not self.at_op(symbol):
            self.fail(f"expected '{symbol}'")
        self.advance()

    def expect_word(self, word: str) -> None:
        if not self.at_word(word):
            self.fail(f"expected '{word}'")
        self.advance()

    def expect_ident(self, what: str) -> str:
        if self.cur.kind != "ident":
            self.fail(f"expected {what}")
        return self.advance().text

    def parse(self) -> Expr:
        e = self.expr()
        if self.cur.kind != "eof":
            self.fail("expected end of input")
        return e

    def expr(self) -> Expr:
        if self.at_word("if"):
            self.advance()
            cond = self.expr()
            self.expect_word("then")
            then = self.expr()
            self.expect_word("else")
            orelse = self.expr()
            return If(cond, then, orelse)
        return self.orexpr()

    def orexpr(self) -> Expr:
        e = self.andexpr()
        while self.at_word("or"):
            self.advance()
            e = Connective("or", e, self.andexpr())
        return e

    def andexpr(self) -> Expr:
        e = self.notexpr()
        while self.at_word("and"):
            self.advance()
            e = Connective("and", e, self.notexpr())
        return e

    def notexpr(self) -> Expr:
        if self.at_word("not"):
            self.advance()
            return Not(self.notexpr())
        return self.comparison()

    def comparison(self) -> Expr:
        e = self.additive()
        if self.cur.kind == "op" and self.cur.text in CMP_OPS:
            op = self.advance().text
            e = Compare(op, e, self.additive())
        return e

    def additive(self) -> Expr:
        e = self.multiplicative()
        while self.at_op("+", "-"):
            op = self.advance().text
            e = Arith(op, e, self.multiplicative())
        return e

    def multiplicative(self) -> Expr:
        e = self.unary()
        while self.at_op("*", "/"):
            op = self.advance().text
            e = Arith(op, e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.at_op("-"):
            self.advance()
            operand = self.unary()
            if isinstance(operand, Num):
                return Num(-operand.value)
            return Arith("-", Num(0.0), operand)
        return self.primary()

    def primary(self) -> Expr:
        tok = self.cur
        if tok.kind == "number":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "string":
            self.advance()
            return Text(_unescape(tok.text))
        if self.at_op("("):
            self.advance()
            e = self.expr()
            self.expect_op(")")
            return e
        if tok.kind == "ident":
            if tok.text == "self":
                return self.propref()
            if tok.text in AGGREGATES:
                return self.aggregate()
            if tok.text in _KEYWORDS:
                self.fail("expected an expression")
            nxt = self.tokens[self.pos + 1]
            if nxt.kind == "op" and nxt.text == "(":
                raise ExprSyntaxError(
                    f"unknown function {tok.text!r}", tok.line, tok.column
                )
            self.advance()
            return ParamRef(tok.text)
        self.fail("expected an expression")
        raise AssertionError("unreachable")

    def propref(self) -> Expr:
        self.expect_word("self")
        self.expect_op(".")
        prop = self.expect_ident("a property name")
        self.expect_op(".")
        tok = self.cur
        attr = self.expect_ident("one of value/units/values/count")
        if attr not in REF_ATTRS:
            raise ExprSyntaxError(
                f"unknown property accessor {attr!r} (expected one of {', '.join(REF_ATTRS)})",
                tok.line,
                tok.column,
            )
        return PropRef(prop, attr)

    def aggregate(self) -> Expr:
        tok = self.advance()
        fn = tok.text
        self.expect_op("(")
        arg = self.expr()
        if self.at_op(","):
            raise ExprSyntaxError(
                f"{fn} takes exactly one argument", self.cur.line, self.cur.column
            )
        self.expect_op(")")
        return Aggregate(fn, arg)


def parse(source: str) -> Expr:
    """Parse `source` into an AST; whitespace-insensitive."""
    return _Parser(source).parse()


# --- printer -----------------------------------------------------------------

_PREC_IF = 0
_PREC_OR = 1
_PREC_AND = 2
_PREC_NOT = 3
_PREC_CMP = 4
_PREC_ADD = 5
_PREC_MUL = 6
_PREC_ATOM = 9


def _prec(e: Expr) -> int:
    if isinstance(e, If):
        return _PREC_IF
    if isinstance(e, Connective):
        return _PREC_OR if e.op == "or" else _PREC_AND
    if isinstance(e, Not):
        return _PREC_NOT
    if isinstance(e, Compare):
        return _PREC_CMP
    if isinstance(e, Arith):
        return _PREC_ADD if e.op in ("+", "-") else _PREC_MUL
    return _PREC_ATOM


def _fmt_num(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _render(e: Expr) -> str:
    if isinstance(e, Num):
        return _fmt_num(e.value)
    if isinstance(e, Text):
        return f'"{_escape(e.value)}"'
    if isinstance(e, PropRef):
        return f"self.{e.prop}.{e.attr}"
    if isinstance(e, ParamRef):
        return e.name
    if isinstance(e, Arith):
        p = _prec(e)
        return f"{_child(e.left, p, tight=False)} {e.op} {_child(e.right, p, tight=True)}"
    if isinstance(e, Compare):
        p = _prec(e)
        # Comparison is non-chaining: parenthesize comparison operands.
        return f"{_child(e.left, p, tight=True)} {e.op} {_child(e.right, p, tight=True)}"
    if isinstance(e, Not):
        return f"not {_child(e.operand, _PREC_NOT, tight=False)}"
    if isinstance(e, Connective):
        p = _prec(e)
        return f"{_child(e.left, p, tight=False)} {e.op} {_child(e.right, p, tight=True)}"
    if isinstance(e, Aggregate):
        return f"{e.fn}({_render(e.arg)})"
    if isinstance(e, If):
        c = _child(e.condition, _PREC_OR, tight=False)
        t = _child(e.then, _PREC_OR, tight=False)
        o = _child(e.orelse, _PREC_OR, tight=False)
        return f"if {c} then {t} else {o}"
    raise TypeError(f"not an expression node: {e!r}")


def _child(e: Expr, parent_prec: int, tight: bool) -> str:
    p = _prec(e)
    if p < parent_prec or (tight and p == parent_prec):
        return f"({_render(e)})"
    return _render(e)


def print_expr(e: Expr) -> str:
    """Render `e` with minimal parentheses; parse(print_expr(e)) == e."""
    return _render(e)


# --- normal form -------------------------------------------------------------

_TAG = {
    Num: 0,
    Text: 1,
    PropRef: 2,
    ParamRef: 3,
    Arith: 4,
    Compare: 5,
    Not: 6,
    Connective: 7,
    Aggregate: 8,
    If: 9,
}


def _key(e: Expr):
    """Fixed total order on subtrees: variant tag, then children, then payload."""
    if isinstance(e, Num):
        return (0, e.value)
    if isinstance(e, Text):
        return (1, e.value)
    if isinstance(e, PropRef):
        return (2, e.prop, e.attr)
    if isinstance(e, ParamRef):
        return (3, e.name)
    if isinstance(e, Arith):
        return (4, e.op, _key(e.left), _key(e.right))
    if isinstance(e, Compare):
        return (5, e.op, _key(e.left), _key(e.right))
    if isinstance(e, Not):
        return (6, _key(e.operand))
    if isinstance(e, Connective):
        return (7, e.op, _key(e.left), _key(e.right))
    if isinstance(e, Aggregate):
        return (8, e.fn, _key(e.arg))
    if isinstance(e, If):
        return (9, _key(e.condition), _key(e.then), _key(e.orelse))
    raise TypeError(f"not an expression node: {e!r}")


_COMMUTATIVE_ARITH = ("+", "*")
_COMMUTATIVE_CMP = ("==", "!=")


def normalize(e: Expr) -> Expr:
    """Canonical normal form: constants folded, commutative operands sorted,
    double negation removed.  Idempotent and semantics-preserving."""
    if isinstance(e, (Num, Text, PropRef, ParamRef)):
        return e
    if isinstance(e, Arith):
        left, right = normalize(e.left), normalize(e.right)
        if isinstance(left, Num) and isinstance(right, Num):
            folded = _fold_arith(e.op, left.value, right.value)
            if folded is not None:
                return Num(folded)
        if e.op in _COMMUTATIVE_ARITH and _key(right) < _key(left):
            left, right = right, left
        return Arith(e.op, left, right)
    if isinstance(e, Compare):
        left, right = normalize(e.left), normalize(e.right)
        folded = _fold_compare(e.op, left, right)
        if folded is not None:
            return folded
        if e.op in _COMMUTATIVE_CMP and _key(right) < _key(left):
            left, right = right, left
        return Compare(e.op, left, right)
    if isinstance(e, Not):
        operand = normalize(e.operand)
        if isinstance(operand, Not):
            return operand.operand
        if isinstance(operand, Num) and 0.0 <= operand.value <= 1.0:
            return Num(1.0 - operand.value)
        return Not(operand)
    if isinstance(e, Connective):
        left, right = normalize(e.left), normalize(e.right)
        if (
            isinstance(left, Num)
            and isinstance(right, Num)
            and 0.0 <= left.value <= 1.0
            and 0.0 <= right.value <= 1.0
        ):
            fn = min if e.op == "and" else max
            return Num(fn(left.value, right.value))
        if _key(right) < _key(left):
            left, right = right, left
        return Connective(e.op, left, right)
    if isinstance(e, Aggregate):
        return Aggregate(e.fn, normalize(e.arg))
    if isinstance(e, If):
        cond = normalize(e.condition)
        then, orelse = normalize(e.then), normalize(e.orelse)
        if isinstance(cond, Num):
            return then if cond.value > 0 else orelse
        return If(cond, then, orelse)
    raise TypeError(f"not an expression node: {e!r}")


def _fold_arith(op: str, a: float, b: float) -> float | None:
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if b != 0:
        return a / b
    return None  # division by zero stays symbolic; evaluation reports it


def _fold_compare(op: str, left: Expr, right: Expr) -> Num | None:
    if isinstance(left, Num) and isinstance(right, Num):
        a, b = left.value, right.value
    elif isinstance(left, Text) and isinstance(right, Text):
        if op not in ("==", "!="):
            return None
        a, b = left.value, right.value
    else:
        return None
    result = {
        "==": a == b,
        "!=": a != b,
        "<": a < b,
        "<=": a <= b,
        ">": a > b,
        ">=": a >= b,
    }[op]
    return Num(1.0 if result else 0.0)


def expr_equal(a: Expr, b: Expr) -> bool:
    """Structural equality of normal forms."""
    return normalize(a) == normalize(b)


# --- evaluation --------------------------------------------------------------


@dataclass(frozen=True)
class EvalContext:
    """Evaluation context: a subject exposing find_property(name) plus
    named argument values for parameter references."""

    subject: Any = None
    arguments: Mapping[str, Value] = field(default_factory=dict)


def evaluate(e: Expr, ctx: EvalContext) -> Value:
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Text):
        return e.value
    if isinstance(e, PropRef):
        return _eval_propref(e, ctx)
    if isinstance(e, ParamRef):
        if e.name not in ctx.arguments:
            raise EvalError(f"unresolved parameter {e.name!r}", e)
        return ctx.arguments[e.name]
    if isinstance(e, Arith):
        a = _number(evaluate(e.left, ctx), e.left)
        b = _number(evaluate(e.right, ctx), e.right)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if b == 0:
            raise EvalError("division by zero", e)
        return a / b
    if isinstance(e, Compare):
        return _eval_compare(e, ctx)
    if isinstance(e, Not):
        return 1.0 - _degree(evaluate(e.operand, ctx), e.operand)
    if isinstance(e, Connective):
        a = _degree(evaluate(e.left, ctx), e.left)
        b = _degree(evaluate(e.right, ctx), e.right)
        return min(a, b) if e.op == "and" else max(a, b)
    if isinstance(e, Aggregate):
        return _eval_aggregate(e, ctx)
    if isinstance(e, If):
        cond = _degree(evaluate(e.condition, ctx), e.condition)
        return evaluate(e.then if cond > 0 else e.orelse, ctx)
    raise TypeError(f"not an expression node: {e!r}")


def _eval_propref(e: PropRef, ctx: EvalContext) -> Value:
    if ctx.subject is None:
        raise EvalError(f"no subject to resolve self.{e.prop}", e)
    prop = ctx.subject.find_property(e.prop)
    if prop is None:
        raise EvalError(f"subject has no property {e.prop!r}", e)
    quantitative = hasattr(prop, "units")
    if e.attr == "units":
        if not quantitative:
            raise EvalError(f"property {e.prop!r} has no units", e)
        return prop.units
    if e.attr == "value":
        if quantitative:
            if prop.value is None:
                raise EvalError(f"property {e.prop!r} has no concrete value", e)
            if isinstance(prop.value, tuple):
                raise EvalError(
                    f"property {e.prop!r} is list-valued; use .values", e
                )
            return prop.value
        if prop.degree is None:
            raise EvalError(f"property {e.prop!r} has no stored degree", e)
        return prop.degree
    if e.attr == "values":
        if not quantitative or not isinstance(prop.value, tuple):
            raise EvalError(f"property {e.prop!r} is not list-valued", e)
        return prop.value
    # count
    if not quantitative or not isinstance(prop.value, tuple):
        raise EvalError(f"property {e.prop!r} is not list-valued", e)
    return float(len(prop.value))


def _eval_compare(e: Compare, ctx: EvalContext) -> float:
    a = evaluate(e.left, ctx)
    b = evaluate(e.right, ctx)
    if isinstance(a, str) and isinstance(b, str):
        if e.op not in ("==", "!="):
            raise EvalError(f"ordering '{e.op}' is not defined for text", e)
    elif isinstance(a, (int, float)) and isinstance(b, (int, float)):
        pass
    else:
        raise EvalError("comparison needs two numbers or two texts", e)
    result = {
        "==": a == b,
        "!=": a != b,
        "<": a < b,
        "<=": a <= b,
        ">": a > b,
        ">=": a >= b,
    }[e.op]
    return 1.0 if result else 0.0


def _eval_aggregate(e: Aggregate, ctx: EvalContext) -> float:
    arg = evaluate(e.arg, ctx)
    if not isinstance(arg, tuple):
        raise EvalError(f"{e.fn} expects a list of numbers", e)
    if e.fn == "count":
        return float(len(arg))
    if not arg:
        raise EvalError(f"{e.fn} of an empty list", e)
    if e.fn == "sum":
        return float(sum(arg))
    if e.fn == "min":
        return float(min(arg))
    if e.fn == "max":
        return float(max(arg))
    # all_equal
    return 1.0 if all(v == arg[0] for v in arg) else 0.0


def _number(v: Value, node: Expr) -> float:
    if isinstance(v, (int, float)):
        return float(v)
    raise EvalError("expected a number", node)


def _degree(v: Value, node: Expr) -> float:
    n = _number(v, node)
    if not 0.0 <= n <= 1.0:
        raise EvalError(f"degree out of range: {n}", node)
    return n
