"""
A small expression language for generating functions in t with
coefficients in Q[x].

Grammar (EBNF):

    expr     = term , { ( "+" | "-" ) , term } ;
    term     = unary , { ( "*" | "/" ) , unary } ;
    unary    = "-" , unary | power ;
    power    = atom , [ "^" , exponent ] ;
    exponent = [ "-" ] , integer , [ "^" , exponent ]
             | "x"
             | "(" , ( [ "-" ] , integer | "x" , [ ( "+" | "-" ) , integer ] ) , ")" ;
    atom     = integer | "t" | "x" | "exp" , "(" , expr , ")" | "(" , expr , ")" ;

Whitespace is ignored. Offsets in errors are byte offsets into the ASCII input.
In an integer exponent ^ binds tighter than its sign, so -1^2 is -(1^2), and
the value must stay within MAX_EXPONENT in absolute value.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import FrozenSet, Iterator, List, Optional, Tuple, Union

from .errors import CompositionError, GfEvalError, GfSyntaxError, NonInvertibleError
from .powerseries import TruncatedSeries, binomial_series, exp_series
from .ring import Polynomial, RingElement

Span = Tuple[int, int]

ATOM_START: FrozenSet[str] = frozenset({"integer", "t", "x", "exp", "(", "-"})
EXPONENT_START: FrozenSet[str] = frozenset({"integer", "x", "(", "-"})
KNOWN_IDENTIFIERS = ("t", "x", "exp")
MAX_EXPONENT = 4096


# -- syntax tree ---------------------------------------------------------------


@dataclass(frozen=True)
class Literal:
    value: int
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class VarT:
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class VarX:
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Neg:
    operand: "GfExpr"
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "GfExpr"
    right: "GfExpr"
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class XExponent:
    """The exponent x + shift."""

    shift: int = 0


@dataclass(frozen=True)
class Pow:
    base: "GfExpr"
    exponent: Union[int, XExponent]
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Exp:
    arg: "GfExpr"
    span: Span = field(default=(0, 0), compare=False, repr=False)


GfExpr = Union[Literal, VarT, VarX, Neg, BinOp, Pow, Exp]


# -- tokenizer -----------------------------------------------------------------

_TOKEN_PATTERN = re.compile(r"\s*(?:(?P<integer>\d+)|(?P<ident>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "integer", "ident", "op" or "end"
    text: str
    start: int

    @property
    def end(self) -> int:
        return self.start + len(self.text)

    @property
    def label(self) -> str:
        return self.text if self.kind in ("op", "ident") else self.kind


def tokenize(text: str) -> Iterator[Token]:
    position = 0
    while True:
        match = _TOKEN_PATTERN.match(text, position)
        if match is None:
            rest = text[position:]
            if not rest.strip():
                yield Token("end", "", len(text))
                return
            offset = position + (len(rest) - len(rest.lstrip()))
            raise GfSyntaxError(f"unexpected character {text[offset]!r}", offset)
        kind = match.lastgroup
        token_text = match.group(kind)
        start = match.start(kind)
        if kind == "ident" and token_text not in KNOWN_IDENTIFIERS:
            raise GfSyntaxError(f"unknown identifier {token_text!r}", start, frozenset(KNOWN_IDENTIFIERS))
        yield Token(kind, token_text, start)
        position = match.end()


# -- parser --------------------------------------------------------------------


def _check_exponent_size(value: int, offset: int) -> None:
    if abs(value) > MAX_EXPONENT:
        raise GfSyntaxError(f"exponent {value} exceeds {MAX_EXPONENT} in absolute value", offset)


class _Parser:
    def __init__(self, text: str):
        if not text.isascii():
            bad = next(i for i, ch in enumerate(text) if not ch.isascii())
            raise GfSyntaxError("non-ASCII input", len(text[:bad].encode("utf-8")))
        self.tokens: List[Token] = list(tokenize(text))
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _at(self, label: str) -> bool:
        return self.current.label == label

    def _advance(self) -> Token:
        token = self.current
        if token.kind != "end":
            self.index += 1
        return token

    def _fail(self, expected: FrozenSet[str]) -> GfSyntaxError:
        token = self.current
        found = "end of input" if token.kind == "end" else repr(token.text)
        return GfSyntaxError(f"unexpected {found}", token.start, expected)

    def _expect(self, label: str) -> Token:
        if not self._at(label):
            raise self._fail(frozenset({label}))
        return self._advance()

    def parse(self) -> GfExpr:
        node = self.expr()
        if self.current.kind != "end":
            raise self._fail(frozenset({"+", "-", "*", "/", "^", "end of input"}))
        return node

    def expr(self) -> GfExpr:
        left = self.term()
        while self._at("+") or self._at("-"):
            op = self._advance().text
            right = self.term()
            left = BinOp(op, left, right, (left.span[0], right.span[1]))
        return left

    def term(self) -> GfExpr:
        left = self.unary()
        while self._at("*") or self._at("/"):
            op = self._advance().text
            right = self.unary()
            left = BinOp(op, left, right, (left.span[0], right.span[1]))
        return left

    def unary(self) -> GfExpr:
        if self._at("-"):
            start = self._advance().start
            operand = self.unary()
            return Neg(operand, (start, operand.span[1]))
        return self.power()

    def power(self) -> GfExpr:
        base = self.atom()
        if not self._at("^"):
            return base
        self._advance()
        exponent, end = self.exponent()
        return Pow(base, exponent, (base.span[0], end))

    def _signed_integer(self) -> Tuple[int, int]:
        sign = 1
        if self._at("-"):
            self._advance()
            sign = -1
        if self.current.kind != "integer":
            raise self._fail(frozenset({"integer"}))
        token = self._advance()
        return sign * int(token.text), token.end

    def exponent(self) -> Tuple[Union[int, XExponent], int]:
        if self._at("x"):
            return XExponent(0), self._advance().end
        if self._at("("):
            self._advance()
            if self._at("x"):
                self._advance()
                shift = 0
                if self._at("+") or self._at("-"):
                    sign = 1 if self._advance().text == "+" else -1
                    if self.current.kind != "integer":
                        raise self._fail(frozenset({"integer"}))
                    shift = sign * int(self._advance().text)
                value: Union[int, XExponent] = XExponent(shift)
            elif self._at("-") or self.current.kind == "integer":
                start = self.current.start
                value, _ = self._signed_integer()
                _check_exponent_size(value, start)
            else:
                raise self._fail(frozenset({"integer", "x", "-"}))
            return value, self._expect(")").end
        if self._at("-") or self.current.kind == "integer":
            start = self.current.start
            sign = 1
            if self._at("-"):
                self._advance()
                sign = -1
            if self.current.kind != "integer":
                raise self._fail(frozenset({"integer"}))
            token = self._advance()
            magnitude, end = int(token.text), token.end
            if self._at("^"):
                # right associative, and ^ binds tighter than the sign: -a^b = -(a^b)
                self._advance()
                inner, end = self.exponent()
                if not isinstance(inner, int) or inner < 0:
                    raise GfSyntaxError("nested exponent must be a nonnegative integer", end)
                if magnitude > 1 and inner > MAX_EXPONENT.bit_length():
                    raise GfSyntaxError(f"exponent exceeds {MAX_EXPONENT}", start)
                magnitude = magnitude**inner
            _check_exponent_size(magnitude, start)
            return sign * magnitude, end
        raise self._fail(EXPONENT_START)

    def atom(self) -> GfExpr:
        token = self.current
        if token.kind == "integer":
            self._advance()
            return Literal(int(token.text), (token.start, token.end))
        if self._at("t"):
            self._advance()
            return VarT((token.start, token.end))
        if self._at("x"):
            self._advance()
            return VarX((token.start, token.end))
        if self._at("exp"):
            self._advance()
            self._expect("(")
            arg = self.expr()
            close = self._expect(")")
            return Exp(arg, (token.start, close.end))
        if self._at("("):
            self._advance()
            inner = self.expr()
            self._expect(")")
            return inner
        raise self._fail(ATOM_START)


def parse(text: str) -> GfExpr:
    return _Parser(text).parse()


# -- pretty printer ------------------------------------------------------------

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}
_NEG, _POW, _ATOM = 3, 4, 5


def _precedence(node: GfExpr) -> int:
    if isinstance(node, BinOp):
        return _PRECEDENCE[node.op]
    if isinstance(node, Neg):
        return _NEG
    if isinstance(node, Pow):
        return _POW
    return _ATOM


def _wrap(node: GfExpr, parenthesize: bool) -> str:
    text = pretty_print(node)
    return f"({text})" if parenthesize else text


def _format_exponent(exponent: Union[int, XExponent]) -> str:
    if isinstance(exponent, XExponent):
        if exponent.shift == 0:
            return "x"
        sign = "+" if exponent.shift > 0 else "-"
        return f"(x{sign}{abs(exponent.shift)})"
    return str(exponent) if exponent >= 0 else f"({exponent})"


def pretty_print(node: GfExpr) -> str:
    """Minimal-parenthesis rendering; parse(pretty_print(e)) == e."""
    if isinstance(node, Literal):
        return str(node.value)
    if isinstance(node, VarT):
        return "t"
    if isinstance(node, VarX):
        return "x"
    if isinstance(node, Exp):
        return f"exp({pretty_print(node.arg)})"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, _precedence(node.operand) < _NEG)
    if isinstance(node, Pow):
        return _wrap(node.base, _precedence(node.base) < _ATOM) + "^" + _format_exponent(node.exponent)
    level = _PRECEDENCE[node.op]
    left = _wrap(node.left, _precedence(node.left) < level)
    right = _wrap(node.right, _precedence(node.right) <= level)
    return f"{left} {node.op} {right}"


# -- evaluation ----------------------------------------------------------------


def _evaluate(node: GfExpr, order: int) -> TruncatedSeries:
    if isinstance(node, Literal):
        return TruncatedSeries.constant(Polynomial.constant(node.value), order)
    if isinstance(node, VarT):
        return TruncatedSeries.variable(order, Polynomial)
    if isinstance(node, VarX):
        return TruncatedSeries.constant(Polynomial.x(), order)
    if isinstance(node, Neg):
        return -_evaluate(node.operand, order)
    if isinstance(node, BinOp):
        left = _evaluate(node.left, order)
        right = _evaluate(node.right, order)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        try:
            return left * right.invert()
        except NonInvertibleError:
            raise GfEvalError(
                f"divisor has constant term {right.constant_term}, not an invertible constant", node.right.span
            ) from None
    if isinstance(node, Pow):
        base = _evaluate(node.base, order)
        if isinstance(node.exponent, int):
            try:
                return base**node.exponent
            except NonInvertibleError:
                raise GfEvalError(
                    f"negative power of a series with constant term {base.constant_term}", node.base.span
                ) from None
        if base.constant_term != Polynomial.one():
            raise GfEvalError(
                f"power with exponent x needs constant term 1, found {base.constant_term}", node.base.span
            )
        exponent = Polynomial.x() + node.exponent.shift
        return binomial_series(exponent, order).compose(base - 1)
    if isinstance(node, Exp):
        arg = _evaluate(node.arg, order)
        try:
            return exp_series(order).lift().compose(arg)
        except CompositionError:
            raise GfEvalError(f"exp of a series with constant term {arg.constant_term}", node.arg.span) from None
    raise TypeError(f"not a generating-function expression: {node!r}")


def eval_series(expr: Union[GfExpr, str], order: int, source: Optional[str] = None) -> TruncatedSeries:
    """Evaluate to a series over Q[x] truncated at t^order."""
    if isinstance(expr, str):
        source = expr
        expr = parse(expr)
    try:
        return _evaluate(expr, order).lift(Polynomial)
    except GfEvalError as exc:
        if source is not None and exc.source is None:
            raise GfEvalError(exc.message, exc.span, source) from None
        raise


@dataclass(frozen=True)
class Comparison:
    equal: bool
    index: Optional[int] = None
    lhs: Optional[RingElement] = None
    rhs: Optional[RingElement] = None


def compare(lhs: Union[GfExpr, str], rhs: Union[GfExpr, str], order: int) -> Comparison:
    """Coefficient-by-coefficient comparison; reports the first differing index."""
    left = eval_series(lhs, order)
    right = eval_series(rhs, order)
    for n, (a, b) in enumerate(zip(left.coeffs, right.coeffs)):
        if a != b:
            return Comparison(False, n, a, b)
    return Comparison(True)


def egf_coefficients(expr: Union[GfExpr, str], order: int) -> List[RingElement]:
    """a_0..a_N of the expansion, constant polynomials lowered to rationals."""
    series = eval_series(expr, order)
    values: List[RingElement] = []
    for n in range(order + 1):
        value = series.egf(n)
        values.append(value.constant_term if value.is_constant else value)
    return values
