"""方程文本前端

语法 (Pratt 解析, 优先级 ^ > 一元负号 > * / > + -, ^ 右结合):

    equation := expr [ '=' expr ]
    expr     := INT | IDENT | y' | y'' | y''' | y'''' | '(' expr ')'
              | '-' expr | expr op expr | expr '^' INT

不支持隐式乘法, "xy'" 必须写成 "x*y'"。导数符号按最长匹配切分。
"""

import re
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

from sympy.polys.fields import FracField

from . import algebra
from .algebra import RationalFunction
from .jet import JetPolynomial, MAX_ORDER, Monomial, normalize_monic
from ..utils.exceptions import (
    DerivativeInDenominator,
    DivisionByZero,
    ExpressionSyntaxError,
    UnknownSymbol,
)


class TokenType(str, Enum):
    """记号类型"""

    INT = "integer"
    IDENT = "identifier"
    DERIVATIVE = "derivative"
    PLUS = "+"
    MINUS = "-"
    STAR = "*"
    SLASH = "/"
    CARET = "^"
    LPAREN = "("
    RPAREN = ")"
    EQUALS = "="
    EOF = "end of input"


@dataclass(frozen=True)
class Token:
    type: TokenType
    text: str
    column: int  # 1 起始


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<int>\d+)"
    r"|(?P<derivative>y'+)"
    r"|(?P<ident>[A-Za-z][A-Za-z0-9]*)"
    r"|(?P<op>[-+*/^()=])"
)

_OPERATORS = {
    "+": TokenType.PLUS,
    "-": TokenType.MINUS,
    "*": TokenType.STAR,
    "/": TokenType.SLASH,
    "^": TokenType.CARET,
    "(": TokenType.LPAREN,
    ")": TokenType.RPAREN,
    "=": TokenType.EQUALS,
}

_OPERAND_START = [
    TokenType.INT.value,
    TokenType.IDENT.value,
    TokenType.DERIVATIVE.value,
    "(",
    "-",
]


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise ExpressionSyntaxError(
                f"unexpected character {text[pos]!r} at column {pos + 1}",
                pos + 1,
                _OPERAND_START,
                text,
            )
        kind = match.lastgroup
        lexeme = match.group()
        column = pos + 1
        pos = match.end()
        if kind == "ws":
            continue
        if kind == "int":
            tokens.append(Token(TokenType.INT, lexeme, column))
        elif kind == "derivative":
            if len(lexeme) - 1 > MAX_ORDER:
                raise ExpressionSyntaxError(
                    f"derivative {lexeme} exceeds order {MAX_ORDER} at column {column}",
                    column,
                    ["y'", "y''", "y'''", "y''''"],
                    text,
                )
            tokens.append(Token(TokenType.DERIVATIVE, lexeme, column))
        elif kind == "ident":
            tokens.append(Token(TokenType.IDENT, lexeme, column))
        else:
            tokens.append(Token(_OPERATORS[lexeme], lexeme, column))
    tokens.append(Token(TokenType.EOF, "", len(text) + 1))
    return tokens


# ---- 语法树 ----


@dataclass(frozen=True)
class IntLiteral:
    value: int
    column: int


@dataclass(frozen=True)
class SymbolRef:
    name: str
    column: int


@dataclass(frozen=True)
class Derivative:
    order: int
    column: int


@dataclass(frozen=True)
class Negate:
    operand: "ExpressionAst"
    column: int


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: "ExpressionAst"
    right: "ExpressionAst"
    column: int


@dataclass(frozen=True)
class Power:
    base: "ExpressionAst"
    exponent: int
    column: int


ExpressionAst = Union[IntLiteral, SymbolRef, Derivative, Negate, BinaryOp, Power]


@dataclass(frozen=True)
class Equation:
    lhs: ExpressionAst
    rhs: Optional[ExpressionAst] = None


_BINARY_POWER = {
    TokenType.PLUS: 10,
    TokenType.MINUS: 10,
    TokenType.STAR: 20,
    TokenType.SLASH: 20,
    TokenType.CARET: 40,
}
_UNARY_POWER = 30


class PrattParser:
    """Pratt 解析器, 只构建语法树, 不做代数运算"""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        if token.type is not TokenType.EOF:
            self.index += 1
        return token

    def error(self, token: Token, expected: Sequence[str]) -> ExpressionSyntaxError:
        found = "end of input" if token.type is TokenType.EOF else repr(token.text)
        return ExpressionSyntaxError(
            f"syntax error at column {token.column}: found {found}, "
            f"expected {' or '.join(expected)}",
            token.column,
            list(expected),
            self.text,
        )

    def expect(self, token_type: TokenType) -> Token:
        if self.current.type is not token_type:
            raise self.error(self.current, [token_type.value])
        return self.advance()

    def parse_equation(self, allow_equals: bool = True) -> Equation:
        lhs = self.parse_expression(0)
        rhs = None
        if allow_equals and self.current.type is TokenType.EQUALS:
            self.advance()
            rhs = self.parse_expression(0)
        if self.current.type is not TokenType.EOF:
            expected = ["operator", "="] if allow_equals and rhs is None else ["operator"]
            raise self.error(self.current, expected)
        return Equation(lhs, rhs)

    def parse_expression(self, right_power: int) -> ExpressionAst:
        left = self.nud(self.advance())
        while _BINARY_POWER.get(self.current.type, 0) > right_power:
            left = self.led(self.advance(), left)
        return left

    def nud(self, token: Token) -> ExpressionAst:
        if token.type is TokenType.INT:
            return IntLiteral(int(token.text), token.column)
        if token.type is TokenType.IDENT:
            return SymbolRef(token.text, token.column)
        if token.type is TokenType.DERIVATIVE:
            return Derivative(len(token.text) - 1, token.column)
        if token.type is TokenType.MINUS:
            return Negate(self.parse_expression(_UNARY_POWER), token.column)
        if token.type is TokenType.LPAREN:
            inner = self.parse_expression(0)
            self.expect(TokenType.RPAREN)
            return inner
        raise self.error(token, _OPERAND_START)

    def led(self, token: Token, left: ExpressionAst) -> ExpressionAst:
        if token.type is TokenType.CARET:
            # 右结合: 右侧以略低的绑定力解析
            exponent = self.parse_expression(_BINARY_POWER[TokenType.CARET] - 1)
            return Power(left, self._constant_exponent(exponent, token), token.column)
        right = self.parse_expression(_BINARY_POWER[token.type])
        return BinaryOp(token.text, left, right, token.column)

    def _constant_exponent(self, node: ExpressionAst, caret: Token) -> int:
        if isinstance(node, IntLiteral):
            return node.value
        if isinstance(node, Power):
            return self._constant_exponent(node.base, caret) ** node.exponent
        column = getattr(node, "column", caret.column)
        raise ExpressionSyntaxError(
            f"exponent at column {column} must be a nonnegative integer literal",
            column,
            [TokenType.INT.value],
            self.text,
        )


# ---- 求值 ----


class _JetBuilder:
    """把语法树求值为微分多项式"""

    def __init__(self, field: FracField, allow_derivatives: bool, text: str):
        self.field = field
        self.allow_derivatives = allow_derivatives
        self.text = text
        self.names = set(algebra.symbol_names(field))

    def build(self, node: ExpressionAst) -> JetPolynomial:
        if isinstance(node, IntLiteral):
            return JetPolynomial.constant(self.field, node.value)
        if isinstance(node, SymbolRef):
            if node.name not in self.names:
                raise UnknownSymbol(
                    f"unknown symbol '{node.name}' at column {node.column} "
                    f"(declare parameters with --params)",
                    {"symbol": node.name, "position": node.column},
                )
            return JetPolynomial.constant(self.field, algebra.variable(self.field, node.name))
        if isinstance(node, Derivative):
            if not self.allow_derivatives:
                raise ExpressionSyntaxError(
                    f"derivative symbol not allowed in a coefficient at column {node.column}",
                    node.column,
                    [TokenType.INT.value, TokenType.IDENT.value, "(", "-"],
                    self.text,
                )
            return JetPolynomial.derivative(self.field, node.order)
        if isinstance(node, Negate):
            return -self.build(node.operand)
        if isinstance(node, Power):
            return self.build(node.base) ** node.exponent
        left = self.build(node.left)
        right = self.build(node.right)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        return self._divide(left, right, node)

    def _divide(self, left: JetPolynomial, right: JetPolynomial, node: BinaryOp) -> JetPolynomial:
        if right.order > 0:
            raise DerivativeInDenominator(
                f"derivative symbols in a denominator are not supported (column {node.column})",
                node.column,
            )
        divisor = right.coefficient((0, 0, 0, 0))
        if not divisor:
            raise DivisionByZero(
                f"division by zero at column {node.column}", {"position": node.column}
            )
        return left * (1 / divisor)


def parse_ast(text: str, allow_equals: bool = True) -> Equation:
    return PrattParser(text).parse_equation(allow_equals)


def parse(text: str, parameters: Sequence[str] = ()) -> JetPolynomial:
    """解析方程文本, 返回首一化的微分多项式 (方程理解为 E = 0)"""
    field = algebra.coefficient_field(tuple(parameters))
    equation = parse_ast(text)
    builder = _JetBuilder(field, True, text)
    jet = builder.build(equation.lhs)
    if equation.rhs is not None:
        jet = jet - builder.build(equation.rhs)
    return normalize_monic(jet)


def parse_rational(text: str, parameters: Sequence[str] = ()) -> RationalFunction:
    """解析系数表达式, 不允许出现导数符号"""
    field = algebra.coefficient_field(tuple(parameters))
    equation = parse_ast(text, allow_equals=False)
    return _JetBuilder(field, False, text).build(equation.lhs).coefficient((0, 0, 0, 0))


# ---- 输出 ----


def _factor_order(names) -> list:
    """单项式内因子的书写顺序: x, 参数, y"""
    return sorted(range(len(names)), key=lambda i: (names[i] == "y", names[i] != "x"))


def _poly_text(poly) -> str:
    """整系数多项式, grevlex 降序; 项内参数写在 y 之前"""
    names = [str(s) for s in poly.ring.symbols]
    order = _factor_order(names)
    pieces = []
    for monom, coeff in poly.terms():
        factors = []
        for i in order:
            name, exp = names[i], monom[i]
            if exp == 1:
                factors.append(name)
            elif exp:
                factors.append(f"{name}^{exp}")
        magnitude = abs(coeff)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        sign = "-" if coeff < 0 else "+"
        pieces.append((sign, body))
    text = ""
    for i, (sign, body) in enumerate(pieces):
        if i == 0:
            text = ("-" if sign == "-" else "") + body
        else:
            text += f" {sign} {body}"
    return text or "0"


def _is_single_factor(poly) -> bool:
    """单个变量幂或正整数, 作分母时无需括号"""
    if len(poly.terms()) != 1:
        return False
    monom, coeff = poly.terms()[0]
    if coeff < 0:
        return False
    nonzero = [e for e in monom if e]
    if not nonzero:
        return True
    return coeff == 1 and len(nonzero) == 1


def _split_sign(f: RationalFunction) -> Tuple[bool, RationalFunction]:
    f = algebra.canonical(f)
    if f.numer.LC < 0:
        return True, -f
    return False, f


def _magnitude_text(f: RationalFunction, monomial_text: str = "") -> str:
    """正首项系数的 N/D 与导数单项式拼接"""
    numer, denom = f.numer, f.denom
    single = len(numer.terms()) == 1
    if monomial_text:
        if numer == numer.ring.one:
            core = monomial_text
        elif single:
            core = f"{_poly_text(numer)}*{monomial_text}"
        else:
            core = f"({_poly_text(numer)})*{monomial_text}"
    else:
        core = _poly_text(numer) if single or denom == denom.ring.one else f"({_poly_text(numer)})"
    if denom != denom.ring.one:
        denom_text = _poly_text(denom)
        core += "/" + (denom_text if _is_single_factor(denom) else f"({denom_text})")
    return core


def print_rational(f: RationalFunction) -> str:
    """有理函数的规范文本, 可被 parse_rational 读回"""
    if not f:
        return "0"
    negative, magnitude = _split_sign(f)
    return ("-" if negative else "") + _magnitude_text(magnitude)


def monomial_text(monomial: Monomial) -> str:
    factors = []
    for k in range(MAX_ORDER, 0, -1):
        power = monomial[k - 1]
        if not power:
            continue
        symbol = "y" + "'" * k
        factors.append(symbol if power == 1 else f"{symbol}^{power}")
    return "*".join(factors)


def print_canonical(f: JetPolynomial) -> str:
    """按导数阶降序、u1 次数降序输出方程左端"""
    pieces = []
    for monomial, coeff in f.items():
        negative, magnitude = _split_sign(coeff)
        mono = monomial_text(monomial)
        body = _magnitude_text(magnitude, mono)
        pieces.append((negative, body))
    if not pieces:
        return "0"
    text = ""
    for i, (negative, body) in enumerate(pieces):
        if i == 0:
            text = ("-" if negative else "") + body
        else:
            text += (" - " if negative else " + ") + body
    return text
