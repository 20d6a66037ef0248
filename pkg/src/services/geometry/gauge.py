"""规范搜索

在 b, e 上试探至多两个单项式 lambda * x^m * y^n 的组合, 把平直条件
按 x, y 收集成关于 lambda 的方程组求解。搜索穷尽不代表规范不存在。
"""

from itertools import combinations
from typing import Iterator, List, Optional, Tuple

from sympy import Symbol

from ...core import algebra
from ...core.models.forms import RootCoefficients
from ...core.models.geometry import GaugeChoice
from ...utils.exceptions import GaugeNotFound
from ...utils.logger import Logger
from ...utils.validators import GeometrySettings
from ..linearize.solvers import identity_equations, solve_constants, to_field
from .curvature import complete, geodesic_conditions

# (分量, x 指数, y 指数)
Term = Tuple[str, int, int]


def _monomial(field, m: int, n: int):
    x, y = algebra.variable(field, "x"), algebra.variable(field, "y")
    value = field.one
    value *= x ** m if m >= 0 else 1 / x ** (-m)
    value *= y ** n if n >= 0 else 1 / y ** (-n)
    return value


def templates(bound: int) -> Iterator[Tuple[Term, ...]]:
    """先单项式后双项式, 各自按指数绝对值之和递增"""
    exponents = range(-bound, bound + 1)
    terms = sorted(
        ((slot, m, n) for slot in ("b", "e") for m in exponents for n in exponents),
        key=lambda t: (abs(t[1]) + abs(t[2]), t),
    )
    for term in terms:
        yield (term,)
    pairs = sorted(
        combinations(terms, 2),
        key=lambda p: (sum(abs(t[1]) + abs(t[2]) for t in p), p),
    )
    yield from pairs


class GaugeSearch:
    """规范搜索器"""

    def __init__(self, settings: Optional[GeometrySettings] = None):
        self.logger = Logger(__name__)
        self.settings = settings or GeometrySettings.from_config()

    def search(self, root: RootCoefficients, bound: Optional[int] = None) -> GaugeChoice:
        bound = self.settings.gauge_bound if bound is None else bound
        if not 0 <= bound <= 3:
            raise ValueError(f"gauge search bound must be in 0..3, got {bound}")
        root = root.unified()
        zero = GaugeChoice.zero(root.field)
        if algebra.is_zero(geodesic_conditions(complete(root, zero))):
            return zero

        tried = 0
        for template in templates(bound):
            tried += 1
            gauge = self._solve_template(root, template)
            if gauge is not None:
                self.logger.info(f"找到规范: b={gauge.b.as_expr()}, e={gauge.e.as_expr()}")
                return gauge
        raise GaugeNotFound(
            f"no gauge with at most two monomials of exponent bound {bound} flattens the root",
            {"bound": bound, "templates": tried},
        )

    def _solve_template(self, root: RootCoefficients, template: Tuple[Term, ...]) -> Optional[GaugeChoice]:
        names = [f"_g{i}" for i in range(len(template))]
        ext = algebra.extend_field(root.field, names)
        parts = {"b": ext.zero, "e": ext.zero}
        for name, (slot, m, n) in zip(names, template):
            parts[slot] += algebra.variable(ext, name) * _monomial(ext, m, n)
        residuals = geodesic_conditions(complete(root.unified(ext), GaugeChoice(parts["b"], parts["e"])))

        equations = identity_equations(list(residuals), ["x", "y"])
        lambda_indices = [algebra.symbol_index(ext, name) for name in names]
        # 不含 lambda 的非零方程直接排除该模板
        for equation in equations:
            if not any(m[i] for m in equation.monoms() for i in lambda_indices):
                return None

        symbols = [Symbol(name) for name in names]
        for solution in solve_constants([e.as_expr() for e in equations], symbols):
            values = [solution.get(s, 1) for s in symbols]
            if any(v == 0 for v in values):
                continue
            chosen = {}
            for slot in ("b", "e"):
                expr = parts[slot].as_expr().subs(dict(zip(symbols, values)))
                chosen[slot] = to_field(root.field, expr)
            if chosen["b"] is None or chosen["e"] is None:
                continue
            gauge = GaugeChoice(chosen["b"], chosen["e"])
            if algebra.is_zero(geodesic_conditions(complete(root, gauge))):
                return gauge
        return None


def gauge_search(root: RootCoefficients, bound: Optional[int] = None) -> GaugeChoice:
    return GaugeSearch().search(root, bound)
