"""测地型系统的几何数据"""

from dataclasses import dataclass
from typing import Dict, Tuple

from pydantic import BaseModel, field_validator
from sympy.polys.fields import FracField

from .. import algebra
from ..algebra import RationalFunction

CHRISTOFFEL_NAMES = ("a", "b", "c", "d", "e", "f")


@dataclass(frozen=True)
class ChristoffelSet:
    """测地型方程组的六个系数

    联络: G1_11=-a, G1_12=-b, G1_22=-c, G2_11=-d, G2_12=-e, G2_22=-f
    """

    a: RationalFunction
    b: RationalFunction
    c: RationalFunction
    d: RationalFunction
    e: RationalFunction
    f: RationalFunction

    @classmethod
    def from_mapping(cls, values: Dict[str, RationalFunction]) -> "ChristoffelSet":
        field = algebra.merge_fields(*(values[n].field for n in CHRISTOFFEL_NAMES))
        return cls(*(algebra.lift(values[n], field) for n in CHRISTOFFEL_NAMES))

    @property
    def field(self) -> FracField:
        return algebra.merge_fields(*(v.field for v in self.values()))

    def values(self) -> Tuple[RationalFunction, ...]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def as_dict(self) -> Dict[str, RationalFunction]:
        return dict(zip(CHRISTOFFEL_NAMES, self.values()))

    def unified(self) -> "ChristoffelSet":
        return ChristoffelSet.from_mapping(self.as_dict())

    def gamma(self) -> Tuple[Tuple[Tuple[RationalFunction, ...], ...], ...]:
        """gamma()[i][j][k] = G^i_jk, 下标 0 对应 x, 1 对应 y"""
        a, b, c, d, e, f = self.unified().values()
        return (
            ((-a, -b), (-b, -c)),
            ((-d, -e), (-e, -f)),
        )


@dataclass(frozen=True)
class GaugeChoice:
    """自由函数 b, e; 完成后 f = g + 2b, a = h + 2e"""

    b: RationalFunction
    e: RationalFunction

    @classmethod
    def zero(cls, field: FracField) -> "GaugeChoice":
        return cls(field.zero, field.zero)

    def is_zero(self) -> bool:
        return not self.b and not self.e


@dataclass(frozen=True)
class CurvatureComponents:
    """R^i_j12 的四个分量"""

    r1_112: RationalFunction
    r1_212: RationalFunction
    r2_112: RationalFunction
    r2_212: RationalFunction

    def values(self) -> Tuple[RationalFunction, ...]:
        return (self.r1_112, self.r1_212, self.r2_112, self.r2_212)

    def as_dict(self) -> Dict[str, RationalFunction]:
        return {
            "R1_112": self.r1_112,
            "R1_212": self.r1_212,
            "R2_112": self.r2_112,
            "R2_212": self.r2_212,
        }

    @property
    def is_flat(self) -> bool:
        return algebra.is_zero(self.values())


class MetricState(BaseModel):
    """一点处的度规分量 E=p, F=q, G=r; 不要求正定"""

    p: float
    q: float
    r: float

    @field_validator('p', 'q', 'r')
    @classmethod
    def validate_finite(cls, v: float) -> float:
        if v != v or v in (float("inf"), float("-inf")):
            raise ValueError("度规分量必须是有限数")
        return v

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.p, self.q, self.r)

    def distance(self, other: "MetricState") -> float:
        return max(abs(u - v) for u, v in zip(self.as_tuple(), other.as_tuple()))
