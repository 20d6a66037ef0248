"""全导数判定

自顶向下逐阶积分: f 关于最高阶导数 un 必须线性, 把 un 的系数对 u(n-1)
积分得到 G0, 再对 f - D_x G0 递归。剩到一阶时要求 Q0 + Q1 u1 满足
Q0_y = Q1_x, 由此积出 phi(x, y)。
"""

from typing import Dict

from ...core import algebra
from ...core.jet import JetPolynomial, Monomial, total_derivative
from ...utils.exceptions import LogTermRequired, NotExact
from ...utils.logger import Logger

logger = Logger(__name__)


def _integrate_in(coefficient: JetPolynomial, k: int) -> JetPolynomial:
    """把 coefficient 视为 uk 的多项式做不定积分"""
    terms: Dict[Monomial, object] = {}
    for monomial, coeff in coefficient.terms.items():
        exps = list(monomial)
        exps[k - 1] += 1
        terms[tuple(exps)] = coeff / exps[k - 1]
    return JetPolynomial(coefficient.field, terms)


def _potential(remainder: JetPolynomial) -> JetPolynomial:
    """一阶余项 Q0 + Q1 u1 = D_x phi 的 phi"""
    if remainder.degree_in(1) > 1:
        raise NotExact(
            "first-order remainder is nonlinear in y'",
            {"obstruction": "nonlinear", "order": 1},
        )
    groups = remainder.collect(1)
    field = remainder.field
    q0 = groups[0].coefficient((0, 0, 0, 0)) if 0 in groups else field.zero
    q1 = groups[1].coefficient((0, 0, 0, 0)) if 1 in groups else field.zero
    if algebra.partial_derivative(q0, "y") != algebra.partial_derivative(q1, "x"):
        raise NotExact(
            "first-order remainder fails the compatibility Q0_y = Q1_x",
            {"obstruction": "compatibility", "order": 1},
        )
    try:
        along_y = algebra.antiderivative(q1, "y")
        rest = algebra.canonical(q0 - algebra.partial_derivative(along_y, "x"))
        phi = along_y + algebra.antiderivative(rest, "x")
    except LogTermRequired as e:
        raise NotExact(
            f"potential is not rational: {e.message}",
            {"obstruction": "logarithm", "order": 1},
        )
    return JetPolynomial.constant(field, phi)


def is_total_derivative(f: JetPolynomial) -> JetPolynomial:
    """返回 G 使 D_x G = f 且 order(G) = order(f) - 1, 否则抛出 NotExact

    积分函数取零, 所以 G 只确定到一个常数。
    """
    if f.order < 1:
        raise NotExact("order-0 expressions are not total derivatives", {"order": 0})
    antiderivative = JetPolynomial.zero(f.field)
    remainder = f
    while remainder.order >= 2:
        n = remainder.order
        if remainder.degree_in(n) > 1:
            raise NotExact(
                f"nonlinear in the highest derivative u{n}",
                {"obstruction": "nonlinear", "order": n},
            )
        top = remainder.collect(n)[1]
        piece = _integrate_in(top, n - 1)
        antiderivative = antiderivative + piece
        remainder = remainder - total_derivative(piece)
        if remainder.order >= n:
            raise NotExact(
                f"u{n} could not be eliminated",
                {"obstruction": "compatibility", "order": n},
            )
    if not remainder.is_zero():
        antiderivative = antiderivative + _potential(remainder)
    if total_derivative(antiderivative) != f:
        raise NotExact("antiderivative does not reproduce the input", {"obstruction": "check"})
    logger.debug(f"找到 {f.order - 1} 阶原函数")
    return antiderivative
