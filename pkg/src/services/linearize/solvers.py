"""待定系数求解

四类恒等式:
- 线性恒等式 sum_j mu_j * col_j = rhs, 按指定变量收集系数后用 DomainMatrix 行化简
- 常数方程组: 只含待定常数的多项式方程, 先逐轮消去线性方程再交给 sympy.solve
- 单个辅助未定元的线性因子
- 一阶 Riccati 恒等式的有理解, 经线性化后归结为线性恒等式的零空间
"""

from dataclasses import dataclass, field as dataclass_field
from functools import reduce
from itertools import product
from typing import Dict, List, Optional, Sequence

from sympy import Poly, Rational, S, Symbol, expand, linsolve, solve
from sympy.polys.fields import FracField
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyerrors import CoercionFailed, GeneratorsError, PolynomialError

from ...core import algebra
from ...core.algebra import Polynomial, RationalFunction
from ...utils.logger import Logger

logger = Logger(__name__)


def collect_coefficients(poly: Polynomial, indices: Sequence[int]) -> List[Polynomial]:
    """按 indices 上的指数分组, 返回各组系数 (这些生成元的指数置零)"""
    groups: Dict[tuple, Dict[tuple, object]] = {}
    for monom, coeff in poly.terms():
        key = tuple(monom[i] for i in indices)
        rest = tuple(0 if i in indices else e for i, e in enumerate(monom))
        groups.setdefault(key, {})[rest] = coeff
    return [poly.ring.from_dict(terms) for _, terms in sorted(groups.items())]


def identity_equations(values: Sequence[RationalFunction], names: Sequence[str]) -> List[Polynomial]:
    """要求每个值关于 names 恒为零时得到的系数方程"""
    equations = []
    for value in values:
        if not value:
            continue
        indices = [algebra.symbol_index(value.field, name) for name in names]
        equations.extend(p for p in collect_coefficients(value.numer, indices) if p)
    return equations


@dataclass
class LinearSolution:
    """特解与零空间基"""

    particular: List[RationalFunction]
    nullspace: List[List[RationalFunction]] = dataclass_field(default_factory=list)

    @property
    def is_unique(self) -> bool:
        return not self.nullspace


def _collect_rows(
    entries: Sequence[RationalFunction], field: FracField, collect: Sequence[str]
) -> List[List[RationalFunction]]:
    """通分后按 collect 变量的单项式拆成行, 每列对应一个 entry"""
    indices = [algebra.symbol_index(field, name) for name in collect]
    common = reduce(lambda a, b: a.lcm(b), (e.denom for e in entries))
    numerators = [e.numer * common.exquo(e.denom) for e in entries]

    rows: Dict[tuple, List[Polynomial]] = {}
    width = len(entries)
    for j, numer in enumerate(numerators):
        for monom, coeff in numer.terms():
            key = tuple(monom[i] for i in indices)
            rest = tuple(0 if i in indices else e for i, e in enumerate(monom))
            row = rows.setdefault(key, [field.ring.zero] * width)
            row[j] = row[j] + field.ring({rest: coeff})
    return [[field.new(p) for p in rows[key]] for key in sorted(rows)]


def _kernel(matrix: List[List[RationalFunction]], width: int,
            field: FracField) -> List[List[RationalFunction]]:
    """matrix * v = 0 的解空间基, 由行化简后的自由列给出"""
    if not matrix:
        return [_unit(field, width, k) for k in range(width)]
    domain = field.to_domain()
    reduced, pivots = DomainMatrix(matrix, (len(matrix), width), domain).rref()
    reduced = reduced.to_list()
    pivot_rows = {p: (r, reduced[r][p]) for r, p in enumerate(pivots)}
    basis = []
    for free in range(width):
        if free in pivot_rows:
            continue
        vector = _unit(field, width, free)
        for p, (r, lead) in pivot_rows.items():
            vector[p] = algebra.canonical(-reduced[r][free] / lead)
        basis.append(vector)
    return basis


def solve_linear_identity(
    columns: Sequence[RationalFunction],
    rhs: RationalFunction,
    collect: Sequence[str],
) -> Optional[LinearSolution]:
    """求 sum_j mu_j * columns[j] = rhs 对 collect 中变量恒成立的 mu

    mu_j 属于系数域且不含 collect 中的变量; 无解返回 None。
    """
    field = algebra.merge_fields(rhs.field, *(col.field for col in columns))
    columns = [algebra.lift(col, field) for col in columns]
    rhs = algebra.lift(rhs, field)
    rows = _collect_rows(list(columns) + [rhs], field, collect)

    m = len(columns)
    if not rows:
        zero = [field.zero] * m
        return LinearSolution(zero, [_unit(field, m, k) for k in range(m)])

    domain = field.to_domain()
    reduced, pivots = DomainMatrix(rows, (len(rows), m + 1), domain).rref()
    if m in pivots:
        return None

    reduced = reduced.to_list()
    particular = [field.zero] * m
    for r, p in enumerate(pivots):
        particular[p] = algebra.canonical(reduced[r][m] / reduced[r][p])
    nullspace = _kernel([row[:m] for row in rows], m, field)
    return LinearSolution(particular, nullspace)


def consistency_conditions(
    columns: Sequence[RationalFunction],
    rhs: RationalFunction,
    collect: Sequence[str],
) -> List[RationalFunction]:
    """sum_j mu_j * columns[j] = rhs 可解的条件, 每个返回值须恒为零

    rhs 含待定常数而 columns 不含时, 这些条件只约束常数。
    """
    field = algebra.merge_fields(rhs.field, *(col.field for col in columns))
    columns = [algebra.lift(col, field) for col in columns]
    rhs = algebra.lift(rhs, field)
    rows = _collect_rows(list(columns) + [rhs], field, collect)
    if not rows:
        return []

    m = len(columns)
    transposed = [[row[j] for row in rows] for j in range(m)]
    conditions = []
    for vector in _kernel(transposed, len(rows), field):
        value = sum((v * row[m] for v, row in zip(vector, rows)), field.zero)
        if value:
            conditions.append(algebra.canonical(value))
    return conditions


def _unit(field: FracField, m: int, k: int) -> List[RationalFunction]:
    vector = [field.zero] * m
    vector[k] = field.one
    return vector


def linear_factor_roots(poly: Polynomial, field: FracField, name: str) -> List[RationalFunction]:
    """poly 中关于 name 线性的因子给出的根 (按因子顺序去重)"""
    if not poly:
        return []
    index = algebra.symbol_index(field, name)
    roots: List[RationalFunction] = []
    _, factors = poly.factor_list()
    for factor, _ in factors:
        if factor.degree(index) != 1:
            continue
        slope = factor.coeff_wrt(index, 1)
        offset = factor.coeff_wrt(index, 0)
        root = algebra.canonical(field.new(-offset) / field.new(slope))
        if root not in roots:
            roots.append(root)
    return roots


def solve_constants(equations: Sequence, unknowns: Sequence[Symbol]) -> List[Dict[Symbol, object]]:
    """求解待定常数的多项式方程组

    返回解的列表; 未被确定的未知量不出现在解中。方程组无解时返回空列表。
    """
    assignment: Dict[Symbol, object] = {}
    pending = list(equations)
    remaining = list(unknowns)
    while True:
        pending = [expand(e.subs(assignment)) for e in pending]
        pending = [e for e in pending if e != 0]
        if not pending:
            return [assignment]
        if any(not e.free_symbols & set(remaining) for e in pending):
            return []
        linear = [e for e in pending if Poly(e, *remaining).total_degree() <= 1]
        if not linear:
            break
        solutions = linsolve(linear, remaining)
        if solutions is S.EmptySet:
            return []
        values = next(iter(solutions))
        fixed = {sym: val for sym, val in zip(remaining, values) if val != sym}
        if not fixed:
            break
        assignment = {sym: expand(val.subs(fixed)) for sym, val in assignment.items()}
        assignment.update(fixed)
        remaining = [sym for sym in remaining if sym not in fixed]

    logger.debug(f"非线性常数方程组: {len(pending)} 个方程, {len(remaining)} 个未知量")
    results = []
    for solution in solve(pending, remaining, dict=True):
        merged = {sym: expand(val.subs(solution)) for sym, val in assignment.items()}
        merged.update(solution)
        results.append(merged)
    return results


def to_field(field: FracField, expr) -> Optional[RationalFunction]:
    """sympy 表达式转入系数域; 含无理数或复数时返回 None"""
    try:
        return algebra.from_expr(field, expr)
    except (CoercionFailed, GeneratorsError, PolynomialError, ValueError):
        return None


def variable_factors(values: Sequence[RationalFunction], name: str,
                     numerators: bool = False) -> List[RationalFunction]:
    """values 分母 (numerators 为真时也看分子) 中含 name 的不可约因子, 不含 name 本身"""
    values = [v for v in values if v]
    if not values:
        return []
    field = algebra.merge_fields(*(v.field for v in values))
    index = algebra.symbol_index(field, name)
    bare = field.ring.gens[index]
    found: List[RationalFunction] = []
    for value in values:
        value = algebra.lift(value, field)
        polys = [value.denom] + ([value.numer] if numerators else [])
        for poly in polys:
            if poly.is_ground:
                continue
            for factor, _ in poly.factor_list()[1]:
                if factor.degree(index) < 1 or factor in (bare, -bare):
                    continue
                element = field.new(factor)
                if element not in found and -element not in found:
                    found.append(element)
    return found


def rational_riccati_solutions(
    b0: RationalFunction,
    b1: RationalFunction,
    b2: RationalFunction,
    bound: int,
    name: str = "y",
) -> List[RationalFunction]:
    """g_name = b0 + b1*g + b2*g^2 的有理解

    g = -w'/(b2*w) 化为 w'' - (b1 + b2'/b2) w' + b0*b2*w = 0。取 w = P * prod(phi_i^e_i):
    phi 为 name 本身与系数分母中至多一个含 name 的其他因子, e_i 为 [-bound, bound]
    内的半整数, P 是次数不超过 bound 的多项式, 由线性方程的零空间给出。
    """
    field = algebra.merge_fields(b0.field, b1.field, b2.field)
    b0, b1, b2 = (algebra.lift(b, field) for b in (b0, b1, b2))
    if not b2:
        return []
    t = algebra.variable(field, name)

    def d(f):
        return algebra.partial_derivative(f, name)

    drift = b1 + d(b2) / b2
    potential = b0 * b2
    factors = [t] + variable_factors([b0, b1, b2], name)[:1]
    logs = [d(phi) / phi for phi in factors]
    exponents = [algebra.constant(field, Rational(k, 2)) for k in range(-2 * bound, 2 * bound + 1)]
    powers = [t ** j for j in range(bound + 1)]

    solutions: List[RationalFunction] = []
    for choice in product(exponents, repeat=len(factors)):
        s = sum((e * log for e, log in zip(choice, logs)), field.zero)
        shift = d(s) + s * s - drift * s + potential
        columns = [
            d(d(p)) + (2 * s - drift) * d(p) + shift * p
            for p in powers
        ]
        solution = solve_linear_identity(columns, field.zero, [name])
        if solution is None:
            continue
        for vector in solution.nullspace:
            poly = sum((v * p for v, p in zip(vector, powers)), field.zero)
            if not poly:
                continue
            g = algebra.canonical(-(s + d(poly) / poly) / b2)
            if g not in solutions:
                solutions.append(g)
    logger.debug(f"Riccati 有理解 {len(solutions)} 个, 因子 {len(factors)} 个")
    return solutions
