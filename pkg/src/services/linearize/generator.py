"""由根系数正向生成各类别方程

只用全导数与导数代入构造, 从不转录展开后的系数公式:

    Root8    = u2 + c u1^3 - g u1^2 + h u1 - d
    Third10  = D(Root8)
    Third14  = Third10 | u2 -> r2
    Fourth18 = D(Third14)
    Fourth21 = Fourth18 | u2 -> r2
    Fourth24 = D(Third10)
    Fourth30 = Fourth24 | u3 -> u3 - Third10
    Fourth34 = Fourth24 | u2 -> r2

其中 r2 = -(c u1^3 - g u1^2 + h u1 - d) 是根方程解出的 y''。
"""

from functools import lru_cache
from typing import Dict, Optional

from ...core.jet import JetPolynomial, substitute_derivative, total_derivative
from ...core.models.forms import FormClass, RootCoefficients
from ...utils.logger import Logger

logger = Logger(__name__)

# 全导数类别及其一阶积分所属类别
TOTAL_DERIVATIVE_OF: Dict[FormClass, FormClass] = {
    FormClass.THIRD10: FormClass.ROOT8,
    FormClass.FOURTH18: FormClass.THIRD14,
    FormClass.FOURTH24: FormClass.THIRD10,
}


def second_derivative(root: RootCoefficients) -> JetPolynomial:
    """r2: 根方程解出的 y''"""
    return JetPolynomial.from_u1_polynomial(
        root.field, {3: -root.c, 2: root.g, 1: -root.h, 0: root.d}
    )


def root_equation(root: RootCoefficients) -> JetPolynomial:
    field = root.field
    return JetPolynomial.derivative(field, 2) - second_derivative(root)


@lru_cache(maxsize=4096)
def _generate(values, form: FormClass) -> JetPolynomial:
    root = RootCoefficients(*values)
    if form is FormClass.ROOT8:
        return root_equation(root)
    if form is FormClass.THIRD10:
        return total_derivative(_generate(values, FormClass.ROOT8))
    if form is FormClass.THIRD14:
        return substitute_derivative(
            _generate(values, FormClass.THIRD10), 2, second_derivative(root)
        )
    if form is FormClass.FOURTH18:
        return total_derivative(_generate(values, FormClass.THIRD14))
    if form is FormClass.FOURTH21:
        return substitute_derivative(
            _generate(values, FormClass.FOURTH18), 2, second_derivative(root)
        )
    if form is FormClass.FOURTH24:
        return total_derivative(_generate(values, FormClass.THIRD10))
    if form is FormClass.FOURTH30:
        third = _generate(values, FormClass.THIRD10)
        u3 = JetPolynomial.derivative(third.field, 3)
        return substitute_derivative(
            _generate(values, FormClass.FOURTH24), 3, u3 - third
        )
    if form is FormClass.FOURTH34:
        return substitute_derivative(
            _generate(values, FormClass.FOURTH24), 2, second_derivative(root)
        )
    raise ValueError(f"unknown class {form}")


def generate(root: RootCoefficients, form: FormClass) -> JetPolynomial:
    """生成类别方程, 结果首一"""
    root = root.unified()
    return _generate(root.values(), form)


def antiderivative_form(form: FormClass) -> Optional[FormClass]:
    """全导数类别对应的低一阶类别"""
    return TOTAL_DERIVATIVE_OF.get(form)


def reduce_on_root(f: JetPolynomial, root: RootCoefficients) -> JetPolynomial:
    """在根方程上约化: u3 用 Third14 消去, u2 用 r2 消去

    任何四阶类别方程约化后都等于 Fourth21。
    """
    root = root.unified()
    result = f
    if result.degree_in(3):
        third = _generate(root.values(), FormClass.THIRD14)
        u3 = JetPolynomial.derivative(third.field, 3)
        result = substitute_derivative(result, 3, u3 - third)
    if result.degree_in(2):
        result = substitute_derivative(result, 2, second_derivative(root))
    return result
