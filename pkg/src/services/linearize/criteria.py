"""根方程的可线性化判据"""

from typing import Tuple

from ...core import algebra
from ...core.algebra import RationalFunction
from ...core.models.forms import FormClass, FormCoefficients, RootCoefficients


def _d(f: RationalFunction, *names: str) -> RationalFunction:
    for name in names:
        f = algebra.partial_derivative(f, name)
    return f


def tresse_criteria(root: RootCoefficients) -> Tuple[RationalFunction, RationalFunction]:
    """两个判据残差, 同时恒为零时根方程可线性化

    r1 = 3(ch)_x + 3 d c_y - 2 g g_x - g h_y - 3 c_xx - 2 g_xy - h_yy
    r2 = 3(dg)_y + 3 c d_x - 2 h h_y - h g_x - 3 d_yy - 2 h_xy - g_xx
    """
    c, g, h, d = root.unified().values()
    r1 = (
        3 * _d(c * h, "x") + 3 * d * _d(c, "y") - 2 * g * _d(g, "x") - g * _d(h, "y")
        - 3 * _d(c, "x", "x") - 2 * _d(g, "x", "y") - _d(h, "y", "y")
    )
    r2 = (
        3 * _d(d * g, "y") + 3 * c * _d(d, "x") - 2 * h * _d(h, "y") - h * _d(g, "x")
        - 3 * _d(d, "y", "y") - 2 * _d(h, "x", "y") - _d(g, "x", "x")
    )
    return algebra.canonical(r1), algebra.canonical(r2)


def is_linearizable(root: RootCoefficients) -> bool:
    r1, r2 = tresse_criteria(root)
    return not r1 and not r2


def lie_form(root: RootCoefficients) -> FormCoefficients:
    """y'' + E3 y'^3 + E2 y'^2 + E1 y' + E0 = 0 的系数"""
    root = root.unified()
    return FormCoefficients(
        form=FormClass.ROOT8,
        named={"E3": root.c, "E2": -root.g, "E1": root.h, "E0": -root.d},
    )
