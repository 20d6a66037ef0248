"""规范补全、曲率张量与测地型可线性化条件"""

from typing import Tuple

from ...core import algebra
from ...core.algebra import RationalFunction
from ...core.models.forms import RootCoefficients
from ...core.models.geometry import ChristoffelSet, CurvatureComponents, GaugeChoice

COORDINATES = ("x", "y")


def complete(root: RootCoefficients, gauge: GaugeChoice) -> ChristoffelSet:
    """由根系数和规范得到六个系数: a = h + 2e, f = g + 2b"""
    field = algebra.merge_fields(root.field, gauge.b.field, gauge.e.field)
    c, g, h, d = root.unified(field).values()
    b, e = algebra.lift(gauge.b, field), algebra.lift(gauge.e, field)
    return ChristoffelSet(a=h + 2 * e, b=b, c=c, d=d, e=e, f=g + 2 * b)


def riemann(cs: ChristoffelSet, i: int, j: int, k: int, l: int) -> RationalFunction:
    """R^i_jkl = G^i_jl,k - G^i_jk,l + G^i_mk G^m_jl - G^i_ml G^m_jk"""
    gamma = cs.gamma()
    value = (
        algebra.partial_derivative(gamma[i][j][l], COORDINATES[k])
        - algebra.partial_derivative(gamma[i][j][k], COORDINATES[l])
    )
    for m in range(2):
        value += gamma[i][m][k] * gamma[m][j][l] - gamma[i][m][l] * gamma[m][j][k]
    return algebra.canonical(value)


def curvature(cs: ChristoffelSet) -> CurvatureComponents:
    return CurvatureComponents(
        r1_112=riemann(cs, 0, 0, 0, 1),
        r1_212=riemann(cs, 0, 1, 0, 1),
        r2_112=riemann(cs, 1, 0, 0, 1),
        r2_212=riemann(cs, 1, 1, 0, 1),
    )


def geodesic_conditions(cs: ChristoffelSet) -> Tuple[RationalFunction, ...]:
    """平直条件的四个残差

    前三个依次等于 R1_112, R1_212, R2_112, 第四个等于 -(R1_112 + R2_212)。
    """
    a, b, c, d, e, f = cs.unified().values()

    def dx(v):
        return algebra.partial_derivative(v, "x")

    def dy(v):
        return algebra.partial_derivative(v, "y")

    residuals = (
        dy(a) - dx(b) + b * e - c * d,
        dy(b) - dx(c) + (a * c - b ** 2) + (b * f - c * e),
        dy(d) - dx(e) - (a * e - b * d) - (d * f - e ** 2),
        dx(b + f) - dy(a + e),
    )
    return tuple(algebra.canonical(r) for r in residuals)


def is_flat(cs: ChristoffelSet) -> bool:
    return algebra.is_zero(geodesic_conditions(cs))
