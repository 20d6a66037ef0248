"""类别形式目录

每个类别由若干系数组构成; 一组系数对应一种导数模式 (u3、u2^2、u2 或纯 u1),
组内第 i 个系数乘 u1^i, 符号按显示形式交替。读出与重建都只依赖这张表。
"""

from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple

from ...core.jet import JetPolynomial, Pattern, ShapeDescriptor, pattern_text, shape
from ...core.models.forms import FormClass, FormCoefficients
from ...core.algebra import RationalFunction
from ...utils.exceptions import ShapeMismatch

U3: Pattern = (0, 1, 0)
U2_SQUARED: Pattern = (2, 0, 0)
U2: Pattern = (1, 0, 0)
PURE: Pattern = (0, 0, 0)

GREEK = ("phi", "epsilon", "delta", "gamma", "beta", "alpha")


@dataclass(frozen=True)
class SlotGroup:
    """一组系数: 名称、模式、u1 最高次数与符号规则

    值 = outer * (-1)^(reference - i) * [pattern * u1^i];
    alternating 为 False 时不交替。
    """

    prefix: str
    pattern: Pattern
    top_degree: int
    reference: int = 0
    outer: int = 1
    alternating: bool = True
    names: Optional[Tuple[str, ...]] = None

    def name(self, i: int) -> str:
        return self.names[i] if self.names else f"{self.prefix}{i}"

    def sign(self, i: int) -> int:
        if not self.alternating:
            return self.outer
        return self.outer * (-1 if (self.reference - i) % 2 else 1)

    def monomial(self, i: int) -> Tuple[int, int, int, int]:
        return (i,) + self.pattern


@dataclass(frozen=True)
class FormSpec:
    form: FormClass
    groups: Tuple[SlotGroup, ...]

    @property
    def order(self) -> int:
        return self.form.order

    def limits(self) -> Dict[Pattern, int]:
        return {group.pattern: group.top_degree for group in self.groups}

    def slots(self) -> Iterator[Tuple[str, SlotGroup, int]]:
        """按显示顺序 (组序, 次数从高到低) 遍历"""
        for group in self.groups:
            for i in range(group.top_degree, -1, -1):
                yield group.name(i), group, i

    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _, _ in self.slots())

    def locate(self, name: str) -> Tuple[SlotGroup, int]:
        for slot_name, group, i in self.slots():
            if slot_name == name:
                return group, i
        raise KeyError(f"{self.form.label} has no coefficient {name}")


FORM_SPECS: Dict[FormClass, FormSpec] = {
    FormClass.ROOT8: FormSpec(FormClass.ROOT8, (
        SlotGroup("E", PURE, 3, alternating=False),
    )),
    FormClass.THIRD10: FormSpec(FormClass.THIRD10, (
        SlotGroup("A", U2, 2, reference=2),
        SlotGroup("B", PURE, 4, reference=4),
    )),
    FormClass.THIRD14: FormSpec(FormClass.THIRD14, (
        SlotGroup("", PURE, 5, reference=0, names=GREEK),
    )),
    FormClass.FOURTH18: FormSpec(FormClass.FOURTH18, (
        SlotGroup("A", U2, 4, reference=4, outer=-1),
        SlotGroup("B", PURE, 6, reference=6, outer=-1),
    )),
    FormClass.FOURTH21: FormSpec(FormClass.FOURTH21, (
        SlotGroup("P", PURE, 7, reference=7),
    )),
    FormClass.FOURTH24: FormSpec(FormClass.FOURTH24, (
        SlotGroup("A", U3, 2, reference=2),
        SlotGroup("B", U2_SQUARED, 1, reference=1),
        SlotGroup("C", U2, 3, reference=3),
        SlotGroup("D", PURE, 5, reference=5, outer=-1),
    )),
    FormClass.FOURTH30: FormSpec(FormClass.FOURTH30, (
        SlotGroup("Q", U2_SQUARED, 1, reference=1),
        SlotGroup("R", U2, 4, reference=4, outer=-1),
        SlotGroup("S", PURE, 6, reference=6, outer=-1),
    )),
    FormClass.FOURTH34: FormSpec(FormClass.FOURTH34, (
        SlotGroup("A", U3, 2, reference=2),
        SlotGroup("B", PURE, 7, reference=7),
    )),
}


def form_spec(form: FormClass) -> FormSpec:
    return FORM_SPECS[form]


def shape_problems(descriptor: ShapeDescriptor, form: FormClass) -> Tuple[str, ...]:
    """形状与类别不符之处; 空元组表示兼容"""
    spec = form_spec(form)
    problems = []
    if descriptor.order != spec.order:
        problems.append(f"order {descriptor.order}, expected {spec.order}")
    if not descriptor.top_is_linear:
        problems.append("highest derivative is not linear with unit coefficient")
    limits = spec.limits()
    for pattern, degree in sorted(descriptor.degrees.items()):
        limit = limits.get(pattern)
        if limit is None:
            problems.append(f"term pattern {pattern_text(pattern)} not allowed")
        elif degree > limit:
            problems.append(
                f"pattern {pattern_text(pattern)} has y'-degree {degree} > {limit}"
            )
    return tuple(problems)


def check_shape(f: JetPolynomial, form: FormClass) -> None:
    problems = shape_problems(shape(f), form)
    if problems:
        raise ShapeMismatch(
            f"not of the {form.label} form: {'; '.join(problems)}",
            {"class": form.value, "problems": list(problems)},
        )


def slot_value(f: JetPolynomial, form: FormClass, name: str) -> RationalFunction:
    group, i = form_spec(form).locate(name)
    return f.coefficient(group.monomial(i)) * group.sign(i)


def readout(f: JetPolynomial, form: FormClass) -> FormCoefficients:
    """按显示形式读出具名系数"""
    check_shape(f, form)
    named = {
        name: f.coefficient(group.monomial(i)) * group.sign(i)
        for name, group, i in form_spec(form).slots()
    }
    return FormCoefficients(form=form, named=named)


def rebuild(coefficients: FormCoefficients, field) -> JetPolynomial:
    """由具名系数重建首一方程"""
    spec = form_spec(coefficients.form)
    top = [0, 0, 0, 0]
    top[spec.order - 1] = 1
    terms = {tuple(top): field.one}
    for name, group, i in spec.slots():
        value = coefficients.named.get(name)
        if value:
            terms[group.monomial(i)] = value * group.sign(i)
    return JetPolynomial(field, terms)
