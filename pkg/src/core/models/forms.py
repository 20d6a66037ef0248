"""类别形式与根系数模型"""

from dataclasses import dataclass, field as dataclass_field
from enum import Enum
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from sympy.polys.fields import FracField

from .. import algebra
from ..algebra import RationalFunction
from ...utils.exceptions import UnknownSymbol


class FormClass(str, Enum):
    """八种类别形式"""

    ROOT8 = "root8"
    THIRD10 = "third10"
    THIRD14 = "third14"
    FOURTH18 = "fourth18"
    FOURTH21 = "fourth21"
    FOURTH24 = "fourth24"
    FOURTH30 = "fourth30"
    FOURTH34 = "fourth34"

    @property
    def label(self) -> str:
        return self.value[0].upper() + self.value[1:]

    @property
    def order(self) -> int:
        if self is FormClass.ROOT8:
            return 2
        if self in (FormClass.THIRD10, FormClass.THIRD14):
            return 3
        return 4

    @property
    def is_total_derivative(self) -> bool:
        return self in TOTAL_DERIVATIVE_CLASSES

    @classmethod
    def parse(cls, raw: str) -> "FormClass":
        try:
            return cls(raw.strip().lower())
        except ValueError:
            names = ", ".join(c.value for c in cls)
            raise ValueError(f"unknown class '{raw}', expected one of: {names}")


TOTAL_DERIVATIVE_CLASSES = frozenset(
    {FormClass.THIRD10, FormClass.FOURTH18, FormClass.FOURTH24}
)

# 子集形状在前, 避免全导数类被误判为退化的 Fourth21
CLASSIFICATION_ORDER: Tuple[FormClass, ...] = (
    FormClass.ROOT8,
    FormClass.THIRD10,
    FormClass.THIRD14,
    FormClass.FOURTH18,
    FormClass.FOURTH24,
    FormClass.FOURTH21,
    FormClass.FOURTH30,
    FormClass.FOURTH34,
)

FOURTH_ORDER_CLASSES: Tuple[FormClass, ...] = tuple(
    c for c in CLASSIFICATION_ORDER if c.order == 4
)

ROOT_NAMES = ("c", "g", "h", "d")


@dataclass(frozen=True)
class RootCoefficients:
    """根方程 y'' + c y'^3 - g y'^2 + h y' - d = 0 的四个系数"""

    c: RationalFunction
    g: RationalFunction
    h: RationalFunction
    d: RationalFunction

    @classmethod
    def zero(cls, field: FracField) -> "RootCoefficients":
        return cls(field.zero, field.zero, field.zero, field.zero)

    @classmethod
    def from_mapping(cls, values: Mapping[str, RationalFunction]) -> "RootCoefficients":
        missing = [name for name in ROOT_NAMES if name not in values]
        if missing:
            raise UnknownSymbol(f"missing root coefficients: {', '.join(missing)}")
        return cls(*(values[name] for name in ROOT_NAMES)).unified()

    @property
    def field(self) -> FracField:
        return algebra.merge_fields(*(v.field for v in self.values()))

    def values(self) -> Tuple[RationalFunction, ...]:
        return (self.c, self.g, self.h, self.d)

    def as_dict(self) -> Dict[str, RationalFunction]:
        return dict(zip(ROOT_NAMES, self.values()))

    def unified(self, field: Optional[FracField] = None) -> "RootCoefficients":
        target = field or self.field
        return RootCoefficients(*(algebra.lift(v, target) for v in self.values()))

    def replace(self, **changes: RationalFunction) -> "RootCoefficients":
        values = self.as_dict()
        values.update(changes)
        return RootCoefficients.from_mapping(values)

    def same_as(self, other: "RootCoefficients") -> bool:
        field = algebra.merge_fields(self.field, other.field)
        return self.unified(field).values() == other.unified(field).values()

    def is_zero(self) -> bool:
        return algebra.is_zero(self.values())


@dataclass(frozen=True)
class FormCoefficients:
    """某类别形式的具名系数, 符号约定与显示形式一致"""

    form: FormClass
    named: Dict[str, RationalFunction] = dataclass_field(default_factory=dict)

    def __getitem__(self, name: str) -> RationalFunction:
        return self.named[name]

    def names(self) -> Tuple[str, ...]:
        return tuple(self.named)

    def differing(self, other: "FormCoefficients") -> Tuple[str, ...]:
        """值不同的系数名"""
        out = []
        for name in self.named:
            lhs, rhs = self.named[name], other.named.get(name)
            if rhs is None:
                out.append(name)
                continue
            field = algebra.merge_fields(lhs.field, rhs.field)
            if algebra.lift(lhs, field) != algebra.lift(rhs, field):
                out.append(name)
        return tuple(out)
