"""微分多项式

方程 E = 0 表示为导数符号 u1=y', u2=y'', u3=y''', u4=y'''' 的多项式,
系数是 algebra 模块的有理函数。导数符号是环的未定元而不是函数,
因此相等、代入与全导数都是纯代数运算。
"""

from dataclasses import dataclass, field as dataclass_field
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

from sympy.polys.fields import FracField

from . import algebra
from .algebra import RationalFunction
from ..utils.exceptions import OrderOverflow, ZeroLeadingCoefficient

MAX_ORDER = 4

# 指数向量 (e1, e2, e3, e4), 依次对应 u1..u4
Monomial = Tuple[int, int, int, int]
ONE: Monomial = (0, 0, 0, 0)

Scalar = Union[int, RationalFunction]


def derivative_monomial(k: int, power: int = 1) -> Monomial:
    exps = [0, 0, 0, 0]
    exps[k - 1] = power
    return tuple(exps)


def monomial_order(monomial: Monomial) -> int:
    for k in range(MAX_ORDER, 0, -1):
        if monomial[k - 1]:
            return k
    return 0


def leading_key(monomial: Monomial) -> Tuple[int, int, int, int]:
    """先比最高阶导数, 再比次数"""
    return tuple(reversed(monomial))


class JetPolynomial:
    """以导数单项式为键、有理函数为值的不可变映射"""

    __slots__ = ("field", "_terms", "_hash")

    def __init__(self, field: FracField, terms: Optional[Mapping[Monomial, RationalFunction]] = None):
        self.field = field
        cleaned: Dict[Monomial, RationalFunction] = {}
        for monomial, coeff in (terms or {}).items():
            if len(monomial) != MAX_ORDER:
                raise ValueError(f"bad derivative monomial {monomial}")
            coeff = algebra.lift(coeff, field)
            if coeff:
                cleaned[tuple(monomial)] = coeff
        self._terms = cleaned
        self._hash = None

    # ---- 构造 ----

    @classmethod
    def zero(cls, field: FracField) -> "JetPolynomial":
        return cls(field)

    @classmethod
    def constant(cls, field: FracField, value: Scalar) -> "JetPolynomial":
        value = _coerce(field, value)
        return cls(value.field, {ONE: value})

    @classmethod
    def derivative(cls, field: FracField, k: int, power: int = 1) -> "JetPolynomial":
        if not 1 <= k <= MAX_ORDER:
            raise OrderOverflow(f"derivative index {k} outside 1..{MAX_ORDER}")
        return cls(field, {derivative_monomial(k, power): field.one})

    @classmethod
    def from_u1_polynomial(
        cls, field: FracField, coefficients: Mapping[int, RationalFunction], pattern: Monomial = ONE
    ) -> "JetPolynomial":
        """sum_i coefficients[i] * u1^i * pattern"""
        terms = {}
        for power, coeff in coefficients.items():
            terms[(pattern[0] + power,) + tuple(pattern[1:])] = coeff
        return cls(field, terms)

    # ---- 访问 ----

    @property
    def terms(self) -> Dict[Monomial, RationalFunction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, RationalFunction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: leading_key(kv[0]), reverse=True))

    def coefficient(self, monomial: Monomial) -> RationalFunction:
        return self._terms.get(tuple(monomial), self.field.zero)

    @property
    def order(self) -> int:
        return max((monomial_order(m) for m in self._terms), default=0)

    def degree_in(self, k: int) -> int:
        return max((m[k - 1] for m in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def leading_monomial(self) -> Optional[Monomial]:
        if not self._terms:
            return None
        return max(self._terms, key=leading_key)

    def collect(self, k: int) -> Dict[int, "JetPolynomial"]:
        """按 uk 的幂次分组, 组内去掉 uk"""
        groups: Dict[int, Dict[Monomial, RationalFunction]] = {}
        for monomial, coeff in self._terms.items():
            power = monomial[k - 1]
            rest = list(monomial)
            rest[k - 1] = 0
            groups.setdefault(power, {})[tuple(rest)] = coeff
        return {power: JetPolynomial(self.field, terms) for power, terms in groups.items()}

    def map_coefficients(self, func) -> "JetPolynomial":
        return JetPolynomial(self.field, {m: func(c) for m, c in self._terms.items()})

    def with_field(self, field: FracField) -> "JetPolynomial":
        return JetPolynomial(field, self._terms)

    # ---- 算术 ----

    def _unify(self, other: "JetPolynomial") -> Tuple["JetPolynomial", "JetPolynomial"]:
        if self.field == other.field:
            return self, other
        field = algebra.merge_fields(self.field, other.field)
        return self.with_field(field), other.with_field(field)

    def _as_jet(self, other) -> "JetPolynomial":
        if isinstance(other, JetPolynomial):
            return other
        return JetPolynomial.constant(self.field, other)

    def __add__(self, other) -> "JetPolynomial":
        lhs, rhs = self._unify(self._as_jet(other))
        terms = dict(lhs._terms)
        for monomial, coeff in rhs._terms.items():
            terms[monomial] = terms[monomial] + coeff if monomial in terms else coeff
        return JetPolynomial(lhs.field, terms)

    __radd__ = __add__

    def __neg__(self) -> "JetPolynomial":
        return JetPolynomial(self.field, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "JetPolynomial":
        return self + (-self._as_jet(other))

    def __rsub__(self, other) -> "JetPolynomial":
        return self._as_jet(other) - self

    def __mul__(self, other) -> "JetPolynomial":
        if not isinstance(other, JetPolynomial):
            coeff = _coerce(self.field, other)
            base = self if coeff.field == self.field else self.with_field(coeff.field)
            return JetPolynomial(base.field, {m: c * coeff for m, c in base._terms.items()})
        lhs, rhs = self._unify(other)
        terms: Dict[Monomial, RationalFunction] = {}
        for m1, c1 in lhs._terms.items():
            for m2, c2 in rhs._terms.items():
                monomial = tuple(a + b for a, b in zip(m1, m2))
                product = c1 * c2
                terms[monomial] = terms[monomial] + product if monomial in terms else product
        return JetPolynomial(lhs.field, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "JetPolynomial":
        if n < 0:
            raise ValueError("negative powers are not differential polynomials")
        result = JetPolynomial.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, JetPolynomial):
            return NotImplemented
        lhs, rhs = self._unify(other)
        return lhs._terms == rhs._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{m}: {c.as_expr()}" for m, c in self.items())
        return f"JetPolynomial({{{body}}})"


def _coerce(field: FracField, value: Scalar) -> RationalFunction:
    if isinstance(value, int):
        return field(value)
    return algebra.lift(value, algebra.merge_fields(field, value.field))


# ---- 运算 ----


def total_derivative(f: JetPolynomial) -> JetPolynomial:
    """D_x f = f_x + u1 f_y + sum_k u(k+1) df/duk"""
    if f.order > MAX_ORDER - 1:
        raise OrderOverflow(
            f"total derivative of an order-{f.order} equation exceeds order {MAX_ORDER}",
            {"order": f.order},
        )
    field = f.field
    result: Dict[Monomial, RationalFunction] = {}

    def add(monomial, coeff):
        if monomial in result:
            result[monomial] = result[monomial] + coeff
        else:
            result[monomial] = coeff

    for monomial, coeff in f.terms.items():
        add(monomial, algebra.partial_derivative(coeff, "x"))
        shifted = (monomial[0] + 1,) + monomial[1:]
        add(shifted, algebra.partial_derivative(coeff, "y"))
        for k in range(1, MAX_ORDER):
            power = monomial[k - 1]
            if not power:
                continue
            exps = list(monomial)
            exps[k - 1] -= 1
            exps[k] += 1
            add(tuple(exps), coeff * power)
    return JetPolynomial(field, result)


def substitute_derivative(f: JetPolynomial, k: int, replacement: JetPolynomial) -> JetPolynomial:
    """把 uk 全部替换为 replacement 并重新合并"""
    if replacement.order >= k:
        raise ValueError(
            f"replacement of order {replacement.order} cannot eliminate u{k}"
        )
    groups = f.collect(k)
    result = JetPolynomial.zero(f.field)
    power_cache = {0: JetPolynomial.constant(f.field, 1), 1: replacement}
    for power in sorted(groups):
        if power not in power_cache:
            power_cache[power] = replacement ** power
        result = result + groups[power] * power_cache[power]
    return result


def normalize_monic(f: JetPolynomial) -> JetPolynomial:
    """除以首项 (最高阶导数、最高次数) 系数"""
    leading = f.leading_monomial()
    if leading is None:
        raise ZeroLeadingCoefficient()
    coeff = f.coefficient(leading)
    if coeff == f.field.one:
        return f
    inverse = 1 / coeff
    return f.map_coefficients(lambda c: c * inverse)


# 形状模式按 (e2, e3, e4) 区分, u1 次数单独统计
Pattern = Tuple[int, int, int]

PATTERN_NAMES: Dict[Pattern, str] = {
    (0, 1, 0): "u3",
    (2, 0, 0): "u2^2",
    (1, 0, 0): "u2",
    (0, 0, 0): "pure",
}


@dataclass(frozen=True)
class ShapeDescriptor:
    """首一方程的结构: 阶数、首项是否为 un、各模式的 u1 次数"""

    order: int
    top_is_linear: bool
    degrees: Dict[Pattern, int] = dataclass_field(default_factory=dict)

    def degree(self, pattern: Pattern) -> Optional[int]:
        return self.degrees.get(pattern)

    def describe(self) -> Dict[str, object]:
        described = {}
        for pattern, name in PATTERN_NAMES.items():
            described[name] = self.degrees.get(pattern, "absent")
        extra = [p for p in self.degrees if p not in PATTERN_NAMES]
        if extra:
            described["other"] = sorted(pattern_text(p) for p in extra)
        return described


def pattern_text(pattern: Pattern) -> str:
    parts = []
    for k, power in zip((2, 3, 4), pattern):
        if power == 1:
            parts.append(f"u{k}")
        elif power:
            parts.append(f"u{k}^{power}")
    return "*".join(parts) or "1"


def shape(f: JetPolynomial) -> ShapeDescriptor:
    """统计除首项 un 之外各导数模式的 u1 最高次数"""
    order = f.order
    top = derivative_monomial(order) if order else None
    top_is_linear = (
        top is not None
        and f.coefficient(top) == f.field.one
        and f.degree_in(order) == 1
        and all(m == top or m[order - 1] == 0 for m in f.terms)
    )
    degrees: Dict[Pattern, int] = {}
    for monomial in f.terms:
        if monomial == top:
            continue
        pattern = monomial[1:]
        degrees[pattern] = max(degrees.get(pattern, 0), monomial[0])
    return ShapeDescriptor(order=order, top_is_linear=top_is_linear, degrees=degrees)
