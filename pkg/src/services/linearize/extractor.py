"""根系数提取

按类别的步骤计划逐个确定 c, g, h, d。每一步都通过"探测"完成:
用部分已知的根生成类别方程并读出某个系数, 比较目标值。未确定的根系数
在探测时取零, 所以每一步选用的系数只依赖已确定的量和当前未知量。

步骤类型:
- AFFINE      系数关于未知量仿射且不含其导数, 两次探测求出
- ROOT        系数是 c 的常数倍幂, 取 n 次根; 偶数次两个符号分支
- POWER       c=0 时 g 进入首个非零系数: 一阶时按 Riccati 恒等式求有理解,
              另外试 g = A*b^q (b 为 y 或该系数中含 y 的因子), A 由线性因子求出
- LINEAR_Y    系数关于未知量线性且只含其 y 导数, 用 y 的 Laurent 多项式求解;
              右端含先前留下的待定常数时, 先由可解条件确定这些常数
- INTEGRATE_Y 系数是 kappa * d_y + 已知部分, 对 y 积分并留下 k(x)

积分函数与零空间方向用 x 的 Laurent 多项式表示, 其系数是待定常数,
最后由重新生成的方程与输入逐项相等决定, 仍自由时再交给判据。
"""

from dataclasses import dataclass, field as dataclass_field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Rational, Symbol
from sympy.polys.fields import FracField

from ...core import algebra
from ...core.algebra import RationalFunction
from ...core.jet import JetPolynomial
from ...core.models.forms import ROOT_NAMES, FormClass, RootCoefficients
from ...core.parser import print_rational
from ...utils.exceptions import (
    AlgebraError,
    DegenerateUnsupported,
    ExtractionFailure,
    InconsistentCoefficients,
    LogTermRequired,
    NotAPerfectPower,
    UnderdeterminedD,
)
from ...utils.logger import Logger
from ...utils.validators import ExtractionSettings
from .catalog import check_shape, form_spec, readout, slot_value
from .criteria import tresse_criteria
from .generator import generate
from .solvers import (
    collect_coefficients,
    consistency_conditions,
    identity_equations,
    linear_factor_roots,
    rational_riccati_solutions,
    solve_constants,
    solve_linear_identity,
    to_field,
    variable_factors,
)


class StepKind(str, Enum):
    AFFINE = "affine"
    ROOT = "root"
    POWER = "power"
    LINEAR_Y = "linear_y"
    INTEGRATE_Y = "integrate_y"


@dataclass(frozen=True)
class Step:
    kind: StepKind
    unknown: str
    slot: str
    degree: int = 1


@dataclass(frozen=True)
class ExtractionPlan:
    """head 确定 c; 之后按 c 是否为零选择 regular 或 degenerate"""

    head: Tuple[Step, ...]
    regular: Tuple[Step, ...]
    degenerate: Optional[Tuple[Step, ...]] = None

    def tail(self, c_is_zero: bool) -> Tuple[Step, ...]:
        if c_is_zero and self.degenerate is not None:
            return self.degenerate
        return self.regular


def _affine(unknown, slot):
    return Step(StepKind.AFFINE, unknown, slot)


def _linear(unknown, slot):
    return Step(StepKind.LINEAR_Y, unknown, slot)


PLANS: Dict[FormClass, ExtractionPlan] = {
    FormClass.ROOT8: ExtractionPlan(
        head=(_affine("c", "E3"),),
        regular=(_affine("g", "E2"), _affine("h", "E1"), _affine("d", "E0")),
    ),
    FormClass.THIRD10: ExtractionPlan(
        head=(_affine("c", "A2"),),
        regular=(_affine("g", "A1"), _affine("h", "A0"),
                 Step(StepKind.INTEGRATE_Y, "d", "B1")),
    ),
    FormClass.THIRD14: ExtractionPlan(
        head=(Step(StepKind.ROOT, "c", "alpha", 2),),
        regular=(_affine("g", "beta"), _affine("h", "gamma"), _affine("d", "delta")),
        degenerate=(Step(StepKind.POWER, "g", "gamma"), _linear("h", "delta"),
                    _linear("d", "epsilon")),
    ),
    FormClass.FOURTH18: ExtractionPlan(
        head=(Step(StepKind.ROOT, "c", "A4", 2),),
        regular=(_affine("g", "A3"), _affine("h", "A2"), _affine("d", "A1")),
        degenerate=(Step(StepKind.POWER, "g", "A2"), _linear("h", "A1"),
                    _linear("d", "A0")),
    ),
    FormClass.FOURTH21: ExtractionPlan(
        head=(Step(StepKind.ROOT, "c", "P7", 3),),
        regular=(_affine("g", "P6"), _affine("h", "P5"), _affine("d", "P4")),
        degenerate=(Step(StepKind.POWER, "g", "P4"), _linear("h", "P3"),
                    _linear("d", "P2")),
    ),
    FormClass.FOURTH24: ExtractionPlan(
        head=(_affine("c", "A2"),),
        regular=(_affine("g", "A1"), _affine("h", "A0"),
                 Step(StepKind.INTEGRATE_Y, "d", "C0")),
    ),
    FormClass.FOURTH30: ExtractionPlan(
        head=(_affine("c", "Q1"),),
        regular=(_affine("g", "Q0"), _affine("h", "R2"),
                 Step(StepKind.INTEGRATE_Y, "d", "R0")),
        degenerate=(_affine("g", "Q0"), _linear("h", "R1"),
                    Step(StepKind.INTEGRATE_Y, "d", "R0")),
    ),
    FormClass.FOURTH34: ExtractionPlan(
        head=(_affine("c", "A2"),),
        regular=(_affine("g", "A1"), _affine("h", "A0"), _affine("d", "B4")),
        degenerate=(_affine("g", "A1"), _affine("h", "A0"), _linear("d", "B2")),
    ),
}

# 全部分支失败时按此顺序挑选报告的原因
_FAILURE_PRIORITY = (UnderdeterminedD, LogTermRequired, NotAPerfectPower, DegenerateUnsupported)


@dataclass(frozen=True)
class ExtractionBranch:
    root: RootCoefficients
    notes: Tuple[str, ...] = ()


@dataclass(frozen=True)
class ExtractionResult:
    """所有能重新生成输入的分支, 第一个为报告选用的分支"""

    form: FormClass
    branches: Tuple[ExtractionBranch, ...]

    @property
    def root(self) -> RootCoefficients:
        return self.branches[0].root

    @property
    def notes(self) -> Tuple[str, ...]:
        return self.branches[0].notes

    @property
    def alternatives(self) -> Tuple[ExtractionBranch, ...]:
        return self.branches[1:]


@dataclass
class _Branch:
    field: FracField
    values: Dict[str, RationalFunction] = dataclass_field(default_factory=dict)
    notes: List[str] = dataclass_field(default_factory=list)
    constants: List[str] = dataclass_field(default_factory=list)

    def assign(self, name: str, value: RationalFunction, note: Optional[str] = None,
               field: Optional[FracField] = None, constants: Sequence[str] = ()) -> "_Branch":
        field = field or self.field
        values = {k: algebra.lift(v, field) for k, v in self.values.items()}
        values[name] = algebra.lift(value, field)
        notes = self.notes + ([note] if note else [])
        return _Branch(field, values, notes, self.constants + list(constants))


def _power_of(base: RationalFunction, q: int) -> RationalFunction:
    return base ** q if q >= 0 else 1 / base ** (-q)


def _y_power(field: FracField, q: int) -> RationalFunction:
    return _power_of(algebra.variable(field, "y"), q)


def _x_power(field: FracField, q: int) -> RationalFunction:
    return _power_of(algebra.variable(field, "x"), q)


def _window(bound: int) -> List[int]:
    """0, -1, 1, -2, 2, ..."""
    order = [0]
    for q in range(1, bound + 1):
        order.extend((-q, q))
    return order


class CoefficientExtractor:
    """根系数提取器"""

    def __init__(self, settings: Optional[ExtractionSettings] = None):
        self.logger = Logger(__name__)
        self.settings = settings or ExtractionSettings.from_config()
        self._serial = 0

    # ---- 入口 ----

    def extract(self, f: JetPolynomial, form: FormClass) -> ExtractionResult:
        """提取根系数, 失败时抛出 ExtractionFailure 或代数异常"""
        check_shape(f, form)
        self._serial = 0
        target = readout(f, form).named
        plan = PLANS[form]
        failures: List[Exception] = []

        branches = [_Branch(f.field)]
        for step in plan.head:
            branches = self._advance(branches, step, target, form, failures)

        finished: List[_Branch] = []
        for branch in branches:
            tail = plan.tail(not branch.values["c"])
            current = [branch]
            for step in tail:
                current = self._advance(current, step, target, form, failures)
            for candidate in current:
                try:
                    finished.extend(self._resolve(candidate, target, form, f.field))
                except (ExtractionFailure, AlgebraError) as e:
                    failures.append(e)

        accepted: List[ExtractionBranch] = []
        for branch in finished:
            root = RootCoefficients.from_mapping(
                {name: algebra.lift(branch.values[name], f.field) for name in ROOT_NAMES}
            )
            if generate(root, form) != f:
                failures.append(InconsistentCoefficients(
                    f"branch {algebra.to_text_map(root.as_dict())} does not regenerate the input"
                ))
                continue
            if any(root.same_as(other.root) for other in accepted):
                continue
            accepted.append(ExtractionBranch(root, tuple(branch.notes)))

        if accepted:
            self.logger.debug(f"{form.label} 提取成功, 分支数 {len(accepted)}")
            return ExtractionResult(form, tuple(accepted))

        self.logger.debug(f"{form.label} 提取失败: {[str(e) for e in failures]}")
        for kind in _FAILURE_PRIORITY:
            for failure in failures:
                if isinstance(failure, kind):
                    raise failure
        raise InconsistentCoefficients(
            f"no extraction branch regenerates the input as {form.label}",
            {"class": form.value, "branches_tried": len(finished)},
        )

    def _advance(self, branches, step, target, form, failures) -> List[_Branch]:
        handlers = {
            StepKind.AFFINE: self._affine,
            StepKind.ROOT: self._root,
            StepKind.POWER: self._power,
            StepKind.LINEAR_Y: self._linear_y,
            StepKind.INTEGRATE_Y: self._integrate_y,
        }
        advanced = []
        for branch in branches:
            try:
                advanced.extend(handlers[step.kind](branch, step, target, form))
            except (ExtractionFailure, AlgebraError) as e:
                self.logger.debug(f"步骤 {step.kind.value}({step.slot}) 失败: {str(e)}")
                failures.append(e)
        return advanced

    # ---- 槽位求值 ----

    def _slot_at(self, branch: _Branch, form: FormClass, slot: str,
                 field: Optional[FracField] = None, **overrides) -> RationalFunction:
        field = field or branch.field
        values = []
        for name in ROOT_NAMES:
            value = overrides.get(name, branch.values.get(name))
            values.append(algebra.lift(value, field) if value is not None else field.zero)
        return slot_value(generate(RootCoefficients(*values), form), form, slot)

    def _target(self, branch: _Branch, target, slot: str) -> RationalFunction:
        return algebra.lift(target[slot], branch.field)

    def _fresh_constants(self, count: int) -> List[str]:
        names = []
        for _ in range(count):
            names.append(f"_k{self._serial}")
            self._serial += 1
        return names

    # ---- 步骤 ----

    def _affine(self, branch, step, target, form) -> List[_Branch]:
        zero = branch.field.zero
        base = self._slot_at(branch, form, step.slot, **{step.unknown: zero})
        unit = self._slot_at(branch, form, step.slot, **{step.unknown: branch.field.one})
        slope = unit - base
        if not slope:
            raise DegenerateUnsupported(
                f"{step.slot} does not determine {step.unknown}",
                {"slot": step.slot, "unknown": step.unknown},
            )
        value = (self._target(branch, target, step.slot) - base) / slope
        return [branch.assign(step.unknown, algebra.canonical(value))]

    def _root(self, branch, step, target, form) -> List[_Branch]:
        value = self._target(branch, target, step.slot)
        if not value:
            return [branch.assign(step.unknown, branch.field.zero)]
        unit = self._slot_at(branch, form, step.slot, **{step.unknown: branch.field.one})
        root = algebra.nth_root(value / unit, step.degree)
        if step.degree % 2:
            return [branch.assign(step.unknown, root)]
        return [
            branch.assign(step.unknown, root,
                          f"{step.unknown} from {step.slot}: positive square-root branch"),
            branch.assign(step.unknown, -root,
                          f"{step.unknown} from {step.slot}: negative square-root branch"),
        ]

    def _power(self, branch, step, target, form) -> List[_Branch]:
        bound = self.settings.power_bound
        value = self._target(branch, target, step.slot)
        candidates: List[RationalFunction] = []
        if self._slot_at(branch, form, step.slot, **{step.unknown: branch.field.zero}) == value:
            candidates.append(branch.field.zero)

        model = self._riccati_model(branch, step, form, value)
        if model is not None:
            for solution in rational_riccati_solutions(*model, bound=bound):
                solution = algebra.lift(solution, branch.field)
                if solution not in candidates:
                    candidates.append(solution)

        name = self._fresh_constants(1)[0]
        ext = algebra.extend_field(branch.field, [name])
        lam = algebra.variable(ext, name)
        y_index = algebra.symbol_index(ext, "y")
        bases = [algebra.variable(branch.field, "y")] + variable_factors(
            [value], "y", numerators=True
        )
        for base in bases:
            for q in _window(bound):
                trial = lam * _power_of(algebra.lift(base, ext), q)
                residual = self._slot_at(branch, form, step.slot, field=ext, **{step.unknown: trial})
                residual = residual - algebra.lift(value, ext)
                if not residual:
                    continue
                common = None
                for coeff in collect_coefficients(residual.numer, [y_index]):
                    common = coeff if common is None else algebra.gcd(common, coeff)
                for amplitude in linear_factor_roots(common, ext, name):
                    if not amplitude:
                        continue
                    candidate = algebra.lift(amplitude, branch.field) * _power_of(base, q)
                    if candidate not in candidates:
                        candidates.append(candidate)

        if not candidates:
            riccati = "rational Riccati solutions or " if model is not None else ""
            raise DegenerateUnsupported(
                f"no {step.unknown} among {riccati}A*b^q with b in "
                f"[{', '.join(print_rational(b) for b in bases)}] and |q| <= {bound} "
                f"reproduces {step.slot}",
                {"slot": step.slot, "power_bound": bound,
                 "bases": [print_rational(b) for b in bases]},
            )
        if len(candidates) == 1:
            return [branch.assign(step.unknown, candidates[0])]
        return [
            branch.assign(
                step.unknown, candidate,
                f"{step.unknown} from {step.slot}: candidate {i + 1} of {len(candidates)}",
            )
            for i, candidate in enumerate(candidates)
        ]

    def _riccati_model(self, branch, step, form, value):
        """槽值形如 alpha*g_y + beta*g^2 + gamma*g + delta 时, 返回 g_y = b0 + b1*g + b2*g^2 的系数"""
        field = branch.field
        x = algebra.variable(field, "x")
        y = algebra.variable(field, "y")
        half = algebra.constant(field, Rational(1, 2))

        def at(trial):
            return self._slot_at(branch, form, step.slot, **{step.unknown: trial})

        delta = at(field.zero)
        plus, minus = at(field.one), at(-field.one)
        beta = (plus + minus) * half - delta
        gamma = (plus - minus) * half
        alpha = at(y) - beta * y * y - gamma * y - delta
        check = x * y * y
        predicted = alpha * 2 * x * y + beta * check * check + gamma * check + delta
        if not alpha or not beta or at(check) != predicted:
            return None
        return (value - delta) / alpha, -gamma / alpha, -beta / alpha

    def _laurent_system(self, branch, step, target, form):
        """未知量的 Laurent 基、对应列与右端

        基为 y^j (|j| <= bound), 以及已知量与目标槽分母中其他含 y 因子的负幂。
        """
        bound = self.settings.laurent_bound
        field = branch.field
        value = self._target(branch, target, step.slot)
        basis = [_y_power(field, j) for j in range(-bound, bound + 1)]
        for factor in variable_factors([value] + list(branch.values.values()), "y"):
            factor = algebra.lift(factor, field)
            basis.extend(_power_of(factor, -j) for j in range(1, bound + 1))
        base = self._slot_at(branch, form, step.slot, **{step.unknown: field.zero})
        columns = [
            self._slot_at(branch, form, step.slot, **{step.unknown: b}) - base for b in basis
        ]
        return basis, columns, value - base

    def _linear_y(self, branch, step, target, form) -> List[_Branch]:
        return [
            self._solve_linear_y(settled, step, target, form)
            for settled in self._settle_constants(branch, step, target, form)
        ]

    def _solve_linear_y(self, branch, step, target, form) -> _Branch:
        bound = self.settings.laurent_bound
        field = branch.field
        basis, columns, rhs = self._laurent_system(branch, step, target, form)
        solution = solve_linear_identity(columns, rhs, ["y"])
        if solution is None:
            raise DegenerateUnsupported(
                f"{step.unknown} is not a Laurent polynomial in y of degree <= {bound}",
                {"slot": step.slot, "laurent_bound": bound},
            )
        value = sum((mu * b for mu, b in zip(solution.particular, basis)), field.zero)
        if solution.is_unique:
            return branch.assign(step.unknown, value)

        directions = [
            sum((v * b for v, b in zip(vector, basis)), field.zero)
            for vector in solution.nullspace
        ]
        ext, constants, family = self._x_family(field, directions)
        return branch.assign(
            step.unknown, algebra.lift(value, ext) + family,
            f"{step.unknown} from {step.slot} is fixed only up to "
            f"{len(directions)} function(s) of x",
            field=ext, constants=constants,
        )

    def _settle_constants(self, branch, step, target, form) -> List[_Branch]:
        """右端含前面留下的待定常数时, 先求出使未知量仍落在 Laurent 基内的常数"""
        if not branch.constants:
            return [branch]
        _, columns, rhs = self._laurent_system(branch, step, target, form)
        pending = [name for name in branch.constants if algebra.depends_on(rhs, name)]
        if not pending or any(algebra.depends_on(col, n) for col in columns for n in pending):
            return [branch]
        conditions = consistency_conditions(columns, rhs, ["y"])
        equations = [p.as_expr() for p in identity_equations(conditions, ["x"])]
        if not equations:
            return [branch]

        bound = self.settings.laurent_bound
        solutions = solve_constants(equations, [Symbol(name) for name in pending])
        settled = []
        for solution in solutions:
            values = {
                name: to_field(branch.field, value.as_expr().subs(solution))
                for name, value in branch.values.items()
            }
            if any(v is None for v in values.values()):
                self.logger.debug(f"丢弃非有理常数解: {solution}")
                continue
            note = (
                f"{len(solution)} integration constant(s) fixed so that {step.unknown} "
                f"from {step.slot} stays a Laurent polynomial in y"
            )
            settled.append(_Branch(branch.field, values, branch.notes + [note],
                                   list(branch.constants)))
        if not settled:
            raise DegenerateUnsupported(
                f"no rational choice of the integration constants keeps {step.unknown} "
                f"a Laurent polynomial in y of degree <= {bound}",
                {"slot": step.slot, "laurent_bound": bound, "constants": pending},
            )
        return settled

    def _integrate_y(self, branch, step, target, form) -> List[_Branch]:
        field = branch.field
        base = self._slot_at(branch, form, step.slot, **{step.unknown: field.zero})
        kappa = self._slot_at(
            branch, form, step.slot, **{step.unknown: algebra.variable(field, "y")}
        ) - base
        if not kappa:
            raise DegenerateUnsupported(
                f"{step.slot} does not contain {step.unknown}_y",
                {"slot": step.slot, "unknown": step.unknown},
            )
        integrand = (self._target(branch, target, step.slot) - base) / kappa
        if any(algebra.depends_on(integrand, name) for name in branch.constants):
            # 被积函数含待定常数时无法直接判断对数项, 改用 Laurent 基求解
            return self._linear_y(branch, step, target, form)
        value = algebra.antiderivative(algebra.canonical(integrand), "y")
        ext, constants, family = self._x_family(field, [field.one])
        return [branch.assign(
            step.unknown, algebra.lift(value, ext) + family,
            f"{step.unknown} = integral of {step.slot} in y plus k(x)",
            field=ext, constants=constants,
        )]

    def _x_family(self, field, directions):
        """sum_i k_i(x) * directions[i], k_i 为 x 的 Laurent 多项式, 系数是新常数"""
        bound = self.settings.laurent_bound
        window = list(range(-bound, bound + 1))
        constants = self._fresh_constants(len(directions) * len(window))
        ext = algebra.extend_field(field, constants)
        family = ext.zero
        names = iter(constants)
        for direction in directions:
            direction = algebra.lift(direction, ext)
            for m in window:
                family += algebra.variable(ext, next(names)) * _x_power(ext, m) * direction
        return ext, constants, family

    # ---- 待定常数 ----

    def _resolve(self, branch: _Branch, target, form: FormClass, base: FracField) -> List[_Branch]:
        if not branch.constants:
            return [branch]
        ext = branch.field
        symbols = [Symbol(name) for name in branch.constants]
        root = RootCoefficients(*(branch.values[name] for name in ROOT_NAMES)).unified(ext)
        generated = readout(generate(root, form), form).named
        residuals = [
            generated[name] - algebra.lift(target[name], ext)
            for name in form_spec(form).names()
        ]
        equations = [p.as_expr() for p in identity_equations(residuals, ["x", "y"])]
        solutions = solve_constants(equations, symbols)
        if not solutions:
            raise InconsistentCoefficients(
                f"integration constants cannot match {form.label}",
                {"class": form.value},
            )

        resolved = []
        for solution in solutions:
            values = {
                name: value.as_expr().subs(solution) for name, value in branch.values.items()
            }
            notes = list(branch.notes)
            free = [s for s in symbols if any(v.has(s) for v in values.values())]
            if free:
                values, extra = self._fix_by_criteria(values, free, ext)
                notes.extend(extra)
            converted = {name: to_field(base, expr) for name, expr in values.items()}
            if any(v is None for v in converted.values()):
                self.logger.debug(f"丢弃非有理解: {solution}")
                continue
            resolved.append(_Branch(base, converted, notes, []))
        return resolved

    def _fix_by_criteria(self, values, free, ext) -> Tuple[Dict[str, object], List[str]]:
        """方程本身不约束的常数: 能使判据为零则取之, 否则置零"""
        root = RootCoefficients(*(algebra.from_expr(ext, values[name]) for name in ROOT_NAMES))
        equations = [p.as_expr() for p in identity_equations(list(tresse_criteria(root)), ["x", "y"])]
        involved = [s for s in free if any(e.has(s) for e in equations)]
        notes = []
        assignment: Dict[Symbol, object] = {}
        unsatisfiable = False
        if involved:
            solutions = solve_constants(equations, involved)
            if not solutions:
                unsatisfiable = True
                notes.append(
                    f"no choice of {len(involved)} free integration constant(s) makes "
                    f"the criteria vanish; set to 0"
                )
            else:
                assignment.update(solutions[0])
                still_free = [
                    s for s in involved
                    if s not in assignment or any(s in v.free_symbols for v in assignment.values())
                ]
                if still_free:
                    family = {name: str(values[name].subs(assignment)) for name in ROOT_NAMES}
                    raise UnderdeterminedD(
                        "integration constants are not fixed by the equation or the criteria",
                        {"family": family, "free": [str(s) for s in still_free]},
                    )
                notes.append(
                    f"{len(involved)} integration constant(s) fixed by the linearizability criteria"
                )
        rest = [
            s for s in free
            if s not in assignment and any(values[n].subs(assignment).has(s) for n in ROOT_NAMES)
        ]
        if rest and not unsatisfiable:
            notes.append(
                f"{len(rest)} integration constant(s) left free by the equation and the "
                f"criteria, set to 0 (family d = {values['d'].subs(assignment)})"
            )
        fixed = {name: value.subs(assignment) for name, value in values.items()}
        fixed = {name: value.subs({s: 0 for s in free}) for name, value in fixed.items()}
        return fixed, notes
