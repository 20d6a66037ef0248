"""隐式解校验

对关系 F(x, y) = 0 取 y' = -F_x / F_y, 高阶导数由全导数 D = d/dx + y' d/dy
逐次得到; 代入方程后取分子, 对 F 关于 y 求伪余式, 为零即方程在整个解族上成立。
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

from sympy import Symbol, expand, prem

from ...core import algebra
from ...core.algebra import RationalFunction
from ...core.jet import MAX_ORDER, JetPolynomial
from ...core.parser import parse_rational
from ...utils.exceptions import SingularRelation
from ...utils.logger import Logger

logger = Logger(__name__)


@dataclass(frozen=True)
class ImplicitRelation:
    """F = 0, F 是 x, y 与参数的多项式"""

    polynomial: RationalFunction

    @classmethod
    def parse(cls, text: str, parameters: Sequence[str] = ()) -> "ImplicitRelation":
        value = parse_rational(text, parameters)
        if value.denom != value.field.ring.one:
            raise ValueError(f"relation {text!r} is not a polynomial")
        return cls(value)

    @property
    def field(self):
        return self.polynomial.field


def _derivatives(relation: ImplicitRelation, field) -> Tuple[RationalFunction, ...]:
    F = algebra.lift(relation.polynomial, field)
    F_y = algebra.partial_derivative(F, "y")
    if not F_y:
        raise SingularRelation(
            f"relation {F.as_expr()} does not depend on y",
            {"relation": str(F.as_expr())},
        )
    first = algebra.canonical(-algebra.partial_derivative(F, "x") / F_y)
    values = [first]
    for _ in range(MAX_ORDER - 1):
        previous = values[-1]
        values.append(algebra.canonical(
            algebra.partial_derivative(previous, "x")
            + first * algebra.partial_derivative(previous, "y")
        ))
    return tuple(values)


def verify_implicit_solution(relation: ImplicitRelation, f: JetPolynomial) -> bool:
    """f 是否在 F = 0 定义的整个解族上恒成立"""
    field = algebra.merge_fields(relation.field, f.field)
    derivatives = _derivatives(relation, field)
    value = field.zero
    for monomial, coeff in f.with_field(field).terms.items():
        term = coeff
        for power, derivative in zip(monomial, derivatives):
            if power:
                term = term * derivative ** power
        value += term
    value = algebra.canonical(value)
    if not value:
        return True
    y = Symbol("y")
    remainder = expand(prem(value.numer.as_expr(), relation.polynomial.as_expr(), y))
    logger.debug(f"伪余式: {remainder}")
    return remainder == 0
