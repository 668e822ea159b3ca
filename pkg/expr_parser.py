"""Recursive-descent parser for polynomial expressions in scenario files.

Grammar (whitespace is insignificant, implicit multiplication is rejected):

    expr     := term (("+" | "-") term)*
    term     := factor ("*" factor)*
    factor   := "-" factor | atom ("^" exponent)?
    atom     := rational | ident | "(" expr ")"
    rational := uint ("/" uint)?
    exponent := uint | "(" uint ")"
    ident    := "x<k>" (base) | "x<k>p" (fiber)

Unary minus binds looser than "^", so "-x1^2" is -(x1^2).
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

from errors import ExponentError, ParseError, UnknownIdentifierError
from expr import Poly, VarId, VarKind

_TOKEN_PATTERN = re.compile(r"\s*(?:(\d+)|(x\d+p?)|([A-Za-z_]\w*)|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "word", "op", "end"
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class Literal:
    value: Fraction


@dataclass(frozen=True)
class Var:
    var: VarId


@dataclass(frozen=True)
class Sum:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Difference:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Product:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Power:
    base: "ExprAst"
    exponent: int


@dataclass(frozen=True)
class Negation:
    operand: "ExprAst"


ExprAst = Union[Literal, Var, Sum, Difference, Product, Power, Negation]


def tokenize(src: str, line: int = 1, column: int = 1) -> List[Token]:
    """
    Split an expression into tokens.

    Args:
        src: Expression text (single line)
        line: Line number reported in errors
        column: Column of the first character of src

    Returns:
        Tokens, terminated by an "end" token
    """
    tokens = []
    pos = 0
    while True:
        match = _TOKEN_PATTERN.match(src, pos)
        if match is None:
            break
        col = column + match.start(match.lastindex)
        if match.group(1):
            tokens.append(Token("num", match.group(1), line, col))
        elif match.group(2):
            tokens.append(Token("ident", match.group(2), line, col))
        elif match.group(3):
            tokens.append(Token("word", match.group(3), line, col))
        else:
            symbol = match.group(4)
            if symbol not in "+-*^/()":
                raise ParseError(f"unexpected character {symbol!r}", line, col)
            tokens.append(Token("op", symbol, line, col))
        pos = match.end()
    tokens.append(Token("end", "", line, column + len(src.rstrip())))
    return tokens


class _Parser:
    def __init__(self, tokens: List[Token], n: int):
        self.tokens = tokens
        self.pos = 0
        self.n = n

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def at(self, text: str) -> bool:
        return self.current.kind == "op" and self.current.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        return self.advance()

    def fail(self, message: str, token: Optional[Token] = None):
        token = token or self.current
        found = "end of input" if token.kind == "end" else repr(token.text)
        raise ParseError(f"{message}, found {found}", token.line, token.column)

    def parse(self) -> ExprAst:
        node = self.expr()
        if self.current.kind != "end":
            self.fail("unexpected token")
        return node

    def expr(self) -> ExprAst:
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            right = self.term()
            node = Sum(node, right) if op == "+" else Difference(node, right)
        return node

    def term(self) -> ExprAst:
        node = self.factor()
        while True:
            if self.at("*"):
                self.advance()
                node = Product(node, self.factor())
            elif self.current.kind in ("num", "ident", "word") or self.at("("):
                self.fail("implicit multiplication is not allowed; use '*'")
            else:
                return node

    def factor(self) -> ExprAst:
        if self.at("-"):
            self.advance()
            return Negation(self.factor())
        node = self.atom()
        if self.at("^"):
            self.advance()
            node = Power(node, self.exponent())
        return node

    def exponent(self) -> int:
        token = self.current
        if token.kind == "num":
            self.advance()
            if self.at("/"):
                raise ExponentError("exponent must be an integer", token.line, token.column)
            return int(token.text)
        if self.at("("):
            self.advance()
            if self.at("-"):
                raise ExponentError("negative exponent", token.line, token.column)
            inner = self.current
            if inner.kind != "num":
                raise ExponentError("exponent must be a non-negative integer", token.line, token.column)
            self.advance()
            if self.at("/"):
                raise ExponentError("exponent must be an integer", token.line, token.column)
            self.expect(")")
            return int(inner.text)
        if self.at("-"):
            raise ExponentError("negative exponent", token.line, token.column)
        raise ExponentError("exponent must be a non-negative integer", token.line, token.column)

    def atom(self) -> ExprAst:
        token = self.current
        if token.kind == "num":
            self.advance()
            value = Fraction(int(token.text))
            if self.at("/"):
                self.advance()
                denominator = self.current
                if denominator.kind != "num":
                    self.fail("expected a denominator")
                self.advance()
                if int(denominator.text) == 0:
                    raise ParseError("zero denominator", denominator.line, denominator.column)
                value = Fraction(int(token.text), int(denominator.text))
            return Literal(value)
        if token.kind == "ident":
            self.advance()
            return Var(self.resolve(token))
        if token.kind == "word":
            raise UnknownIdentifierError(f"unknown identifier {token.text!r}", token.line, token.column)
        if self.at("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        self.fail("expected a number, a coordinate or '('")

    def resolve(self, token: Token) -> VarId:
        fiber = token.text.endswith("p")
        index = int(token.text[1:-1] if fiber else token.text[1:])
        if not 1 <= index <= self.n:
            raise UnknownIdentifierError(
                f"unknown identifier {token.text!r} (coordinates run from 1 to {self.n})",
                token.line,
                token.column,
            )
        return VarId(VarKind.FIBER if fiber else VarKind.BASE, index)


def parse_ast(src: str, n: int, line: int = 1, column: int = 1) -> ExprAst:
    return _Parser(tokenize(src, line, column), n).parse()


def to_poly(node: ExprAst, n: int) -> Poly:
    """Expand an expression tree into a canonical polynomial in 2n variables."""
    nvars = 2 * n
    if isinstance(node, Literal):
        return Poly.constant(nvars, node.value)
    if isinstance(node, Var):
        return Poly.from_var(node.var, n)
    if isinstance(node, Sum):
        return to_poly(node.left, n) + to_poly(node.right, n)
    if isinstance(node, Difference):
        return to_poly(node.left, n) - to_poly(node.right, n)
    if isinstance(node, Product):
        return to_poly(node.left, n) * to_poly(node.right, n)
    if isinstance(node, Power):
        return to_poly(node.base, n) ** node.exponent
    if isinstance(node, Negation):
        return -to_poly(node.operand, n)
    raise TypeError(f"not an expression node: {node!r}")


def parse_expr(src: str, chart, line: int = 1, column: int = 1) -> Poly:
    """
    Parse an expression into a polynomial on the chart's 2n coordinates.

    Args:
        src: Expression text, e.g. "1/2*x2p*x3p*(x2*x2p - 4)"
        chart: The Chart whose coordinates may appear
        line: Line number for error messages
        column: Column of src's first character for error messages

    Returns:
        The expanded Poly
    """
    return to_poly(parse_ast(src, chart.n, line, column), chart.n)
