"""精确代数内核

所有系数都是 QQ 上关于 x, y 与参数的有理函数, 直接使用 sympy 的稀疏表示:

- 生成元顺序固定为 x, y, 然后是声明的参数; 单项式序为 grevlex
- RationalFunction 即 sympy 的 FracElement, 构造时约分, 分母首项系数为正,
  因此结构相等就是数学相等, 零判定只看分子
- 参数 (k, l, A, B ...) 与 x, y 一样是代数无关的未定元
"""

from functools import lru_cache
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from sympy import Poly, QQ, Rational, Symbol, integer_nthroot, sympify
from sympy.polys.fields import FracElement, FracField
from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyElement

from ..utils.exceptions import (
    DivisionByZero,
    LogTermRequired,
    NotAPerfectPower,
    PoleAtPoint,
    UnknownSymbol,
)
from ..utils.logger import Logger

logger = Logger(__name__)

BASE_VARIABLES: Tuple[str, str] = ("x", "y")

RationalFunction = FracElement
Polynomial = PolyElement
RationalLike = Union[int, Rational, str]


@lru_cache(maxsize=None)
def coefficient_field(parameters: Tuple[str, ...] = ()) -> FracField:
    """返回 QQ(x, y, 参数...) 有理函数域, 按参数元组缓存"""
    parameters = tuple(parameters)
    clash = [name for name in parameters if name in BASE_VARIABLES]
    if clash or len(set(parameters)) != len(parameters):
        raise UnknownSymbol(
            f"invalid parameter list {list(parameters)}",
            {"parameters": list(parameters)},
        )
    names = BASE_VARIABLES + parameters
    return FracField(tuple(Symbol(name) for name in names), QQ, grevlex)


def symbol_names(field: FracField) -> Tuple[str, ...]:
    return tuple(str(symbol) for symbol in field.symbols)


def parameters_of(field: FracField) -> Tuple[str, ...]:
    return symbol_names(field)[len(BASE_VARIABLES):]


def symbol_index(field: FracField, name: str) -> int:
    try:
        return symbol_names(field).index(name)
    except ValueError:
        raise UnknownSymbol(
            f"unknown symbol '{name}'", {"symbol": name, "declared": list(symbol_names(field))}
        )


def variable(field: FracField, name: str) -> RationalFunction:
    """按名称取生成元"""
    return field.gens[symbol_index(field, name)]


def extend_field(field: FracField, extra: Sequence[str]) -> FracField:
    """在参数末尾追加未定元, 用于待定系数"""
    return coefficient_field(parameters_of(field) + tuple(extra))


def merge_fields(*fields: FracField) -> FracField:
    """参数取并集, 保持首次出现的顺序"""
    parameters = []
    for field in fields:
        for name in parameters_of(field):
            if name not in parameters:
                parameters.append(name)
    return coefficient_field(tuple(parameters))


def lift(f: RationalFunction, field: FracField) -> RationalFunction:
    """把元素换到另一个域; 目标域缺少 f 用到的生成元时由 sympy 报错"""
    if f.field == field:
        return f
    return f.set_field(field)


def canonical(f: RationalFunction) -> RationalFunction:
    """重新约分并规范分母符号"""
    return f.field.new(f.numer, f.denom)


def constant(field: FracField, value: RationalLike) -> RationalFunction:
    return field.ground_new(QQ.from_sympy(sympify(value)))


def from_expr(field: FracField, expr) -> RationalFunction:
    """sympy 表达式转为规范有理函数"""
    return canonical(field.from_expr(expr))


# ---- 算术 ----


def divide(lhs: RationalFunction, rhs: RationalFunction) -> RationalFunction:
    if not rhs:
        raise DivisionByZero()
    return lhs / rhs


def partial_derivative(f: RationalFunction, name: str) -> RationalFunction:
    """商法则求偏导, 结果规范"""
    return f.diff(variable(f.field, name))


def depends_on(f: RationalFunction, name: str) -> bool:
    index = symbol_index(f.field, name)
    return any(m[index] for m in f.numer.itermonoms()) or any(
        m[index] for m in f.denom.itermonoms()
    )


def used_symbols(f: RationalFunction) -> Tuple[str, ...]:
    names = symbol_names(f.field)
    used = set()
    for poly in (f.numer, f.denom):
        for monom in poly.itermonoms():
            used.update(i for i, e in enumerate(monom) if e)
    return tuple(names[i] for i in sorted(used))


def gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """最大公因式, 首项系数为正 (QQ 上即首一)"""
    g = p.gcd(q)
    return g.monic() if g else g


# ---- n 次根 ----


def _rational_nth_root(value, n: int):
    negative = value < 0
    if negative and n % 2 == 0:
        raise NotAPerfectPower(f"negative content has no real root of order {n}")
    value = -value if negative else value
    numer, exact_n = integer_nthroot(int(QQ.numer(value)), n)
    denom, exact_d = integer_nthroot(int(QQ.denom(value)), n)
    if not (exact_n and exact_d):
        raise NotAPerfectPower(f"rational content {value} is not a perfect power")
    root = QQ(numer, denom)
    return -root if negative else root


def _poly_nth_root(p: Polynomial, n: int) -> Polynomial:
    coeff, factors = p.sqf_list()
    root = p.ring.one
    for factor, multiplicity in factors:
        if multiplicity % n:
            raise NotAPerfectPower(
                f"square-free factor {factor.as_expr()} has multiplicity {multiplicity}"
            )
        root *= factor ** (multiplicity // n)
    return root * _rational_nth_root(coeff, n)


def nth_root(f: RationalFunction, n: int) -> RationalFunction:
    """有理函数 n 次根

    分子分母分别做无平方分解; 偶数次返回分子首项系数为正的分支,
    另一分支由调用方取负得到。
    """
    if n < 1:
        raise ValueError("root order must be positive")
    if n == 1 or not f:
        return f
    try:
        numer = _poly_nth_root(f.numer, n)
        denom = _poly_nth_root(f.denom, n)
    except NotAPerfectPower as e:
        raise NotAPerfectPower(
            f"{f.as_expr()} is not a perfect power of order {n}: {e.message}",
            {"value": str(f.as_expr()), "order": n},
        )
    root = f.field.new(numer, denom)
    if n % 2 == 0 and root.numer.LC < 0:
        root = -root
    return root


# ---- 原函数 (Hermite 约化) ----


def _gcdex_diophantine(a: Poly, b: Poly, c: Poly) -> Tuple[Poly, Poly]:
    """求 s*a + t*b = c, 且 s = 0 或 deg s < deg b"""
    s, g = a.half_gcdex(b)
    s *= c.exquo(g)
    if s and s.degree() >= b.degree():
        _, s = s.div(b)
    t = (c - s * a).exquo(b)
    return s, t


def _hermite_reduce(a: Poly, d: Poly):
    """真分式 a/d 的 Hermite 约化 (线性版本)

    返回 (g_num, g_den, r, ds): a/d = (g_num/g_den)' + r/ds, ds 无平方因子。
    """
    lc = d.LC()
    a, d = a.quo_ground(lc), d.monic()

    g_num, g_den = d.zero, d.one

    dm = d.gcd(d.diff())
    ds = d.exquo(dm)

    while dm.degree() > 0:
        ddm = dm.diff()
        dm2 = dm.gcd(ddm)
        dms = dm.exquo(dm2)
        ds_ddm_dm = (ds * ddm).exquo(dm)

        b, c = _gcdex_diophantine(-ds_ddm_dm, dms, a)
        a = c - b.diff() * ds.exquo(dms)

        g_num, g_den = g_num * dm + b * g_den, g_den * dm
        dm = dm2

    q, r = a.div(ds)
    return g_num, g_den, q, r, ds


def antiderivative(f: RationalFunction, name: str) -> RationalFunction:
    """对 name 的有理原函数, 无对数项

    多项式部分不含常数项, 有理部分为真分式; 积分常数 (其余变量的函数)
    由调用方补充。
    """
    field = f.field
    if not f:
        return field.zero

    index = symbol_index(field, name)
    var = field.symbols[index]
    others = [s for i, s in enumerate(field.symbols) if i != index]
    domain = QQ.frac_field(*others) if others else QQ

    numer = Poly(f.numer.as_expr(), var, domain=domain)
    denom = Poly(f.denom.as_expr(), var, domain=domain)
    quotient, remainder = numer.div(denom)

    result = quotient.integrate().as_expr()
    if not remainder.is_zero:
        g_num, g_den, q, r, _ = _hermite_reduce(remainder, denom)
        if not r.is_zero:
            raise LogTermRequired(
                f"integral of {f.as_expr()} in {name} has a logarithmic part",
                {"integrand": str(f.as_expr()), "variable": name},
            )
        result = result + g_num.as_expr() / g_den.as_expr() + q.integrate().as_expr()

    return from_expr(field, result)


# ---- 求值 ----


def evaluate(f: RationalFunction, point: Mapping[str, RationalLike]) -> Rational:
    """精确求值, 返回 sympy Rational"""
    field = f.field
    names = symbol_names(field)
    missing = [name for name in used_symbols(f) if name not in point]
    if missing:
        raise UnknownSymbol(
            f"point does not assign {', '.join(missing)}", {"missing": missing}
        )
    values = [QQ.from_sympy(sympify(point.get(name, 0))) for name in names]
    numer = f.numer(*values)
    denom = f.denom(*values)
    if not denom:
        raise PoleAtPoint(
            f"{f.as_expr()} has a pole at {dict(point)}",
            {"value": str(f.as_expr()), "point": {k: str(v) for k, v in point.items()}},
        )
    return QQ.to_sympy(numer) / QQ.to_sympy(denom)


def is_zero(values: Iterable[RationalFunction]) -> bool:
    return all(not v for v in values)


def to_text_map(values: Mapping[str, RationalFunction]) -> Dict[str, str]:
    return {key: str(value.as_expr()) for key, value in values.items()}
