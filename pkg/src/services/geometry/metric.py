"""度规方程的数值积分

沿折线逐段用定步长四阶 Runge-Kutta 积分 p, q, r 的协变常数方程:

    p_x = -2(ap + dq)   q_x = -bp - (a+e)q - dr   r_x = -2(bq + er)
    p_y = -2(bp + eq)   q_y = -cp - (b+f)q - er   r_y = -2(cq + fr)

曲率为零时结果与路径无关, 据此给出平直性的数值证据。

每段积分前先把线段参数化代入各系数的分母, 用精确实根计数判断 [0, 1] 内
是否有极点, 因此极点落在两个采样点之间也会被发现。
"""

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from sympy import Poly, Rational, Symbol, lambdify

from ...core import algebra
from ...core.models.geometry import CHRISTOFFEL_NAMES, ChristoffelSet, MetricState
from ...utils.exceptions import PoleOnPath, UnknownSymbol
from ...utils.logger import Logger
from ...utils.validators import GeometrySettings

Point = Tuple[float, float]

logger = Logger(__name__)


def _compile(cs: ChristoffelSet, parameters: Mapping[str, float]) -> Tuple[Callable, List]:
    """把六个系数编译为 (x, y) -> ndarray(6), 同时返回含 x 或 y 的精确分母"""
    cs = cs.unified()
    x, y = Symbol("x"), Symbol("y")
    substitutions = {Symbol(k): v for k, v in parameters.items()}
    exact = {Symbol(k): Rational(v) for k, v in parameters.items()}
    expressions = []
    denominators = []
    for name, value in zip(CHRISTOFFEL_NAMES, cs.values()):
        expr = value.as_expr().subs(substitutions)
        extra = expr.free_symbols - {x, y}
        if extra:
            raise UnknownSymbol(
                f"coefficient {name} needs numeric values for {sorted(map(str, extra))}",
                {"coefficient": name, "missing": sorted(map(str, extra))},
            )
        expressions.append(expr)
        denominator = value.denom.as_expr().subs(exact)
        symbols = denominator.free_symbols
        if symbols & {x, y} and symbols <= {x, y} and denominator not in denominators:
            denominators.append(denominator)
    return lambdify((x, y), expressions, modules="numpy"), denominators


def _first_pole(denominators: Sequence, origin: np.ndarray, direction: np.ndarray) -> Optional[float]:
    """线段 origin + t*direction (0 <= t <= 1) 上第一个分母零点的 t"""
    t = Symbol("t")
    x, y = Symbol("x"), Symbol("y")
    x0, y0 = (Rational(float(v)) for v in origin)
    dx, dy = (Rational(float(v)) for v in direction)
    found: Optional[float] = None
    for denominator in denominators:
        poly = Poly(denominator.subs({x: x0 + t * dx, y: y0 + t * dy}, simultaneous=True), t)
        if poly.is_zero:
            return 0.0
        if poly.degree() < 1 or not poly.count_roots(0, 1):
            continue
        intervals = poly.intervals(inf=0, sup=1, eps=Rational(1, 10 ** 9))
        location = float(min(low for (low, _), _ in intervals))
        found = location if found is None else min(found, location)
    return found


def _rhs(coefficients: np.ndarray, state: np.ndarray, direction: np.ndarray) -> np.ndarray:
    a, b, c, d, e, f = coefficients
    p, q, r = state
    along_x = np.array([
        -2 * (a * p + d * q),
        -b * p - (a + e) * q - d * r,
        -2 * (b * q + e * r),
    ])
    along_y = np.array([
        -2 * (b * p + e * q),
        -c * p - (b + f) * q - e * r,
        -2 * (c * q + f * r),
    ])
    return direction[0] * along_x + direction[1] * along_y


class MetricIntegrator:
    """沿折线积分度规"""

    def __init__(self, cs: ChristoffelSet, settings: Optional[GeometrySettings] = None,
                 parameters: Optional[Mapping[str, float]] = None):
        self.logger = Logger(__name__)
        self.settings = settings or GeometrySettings.from_config()
        self.cs = cs
        self._coefficients, self._denominators = _compile(cs, parameters or {})

    def _evaluate(self, point: np.ndarray) -> np.ndarray:
        try:
            with np.errstate(all="ignore"):
                values = np.array(
                    self._coefficients(np.float64(point[0]), np.float64(point[1])),
                    dtype=float,
                )
        except ZeroDivisionError:
            values = np.array([np.inf])
        if not np.all(np.isfinite(values)):
            raise PoleOnPath(
                f"Christoffel coefficients are singular at ({point[0]:.6g}, {point[1]:.6g})",
                {"point": [float(point[0]), float(point[1])]},
            )
        return values

    def integrate_segment(self, start: Point, end: Point, state: np.ndarray,
                          steps_per_unit: Optional[int] = None) -> np.ndarray:
        steps_per_unit = steps_per_unit or self.settings.steps_per_unit
        origin = np.array(start, dtype=float)
        direction = np.array(end, dtype=float) - origin
        length = float(np.hypot(*direction))
        if length == 0.0:
            return state
        pole = _first_pole(self._denominators, origin, direction)
        if pole is not None:
            point = origin + pole * direction
            raise PoleOnPath(
                f"segment from ({start[0]:.6g}, {start[1]:.6g}) to ({end[0]:.6g}, {end[1]:.6g}) "
                f"crosses a pole at ({point[0]:.6g}, {point[1]:.6g})",
                {"point": [float(point[0]), float(point[1])], "segment": [list(start), list(end)]},
            )
        steps = max(1, math.ceil(steps_per_unit * length))
        dt = 1.0 / steps
        state = np.array(state, dtype=float)
        for i in range(steps):
            t = i * dt
            k1 = _rhs(self._evaluate(origin + t * direction), state, direction)
            k2 = _rhs(self._evaluate(origin + (t + dt / 2) * direction), state + dt / 2 * k1, direction)
            k3 = _rhs(self._evaluate(origin + (t + dt / 2) * direction), state + dt / 2 * k2, direction)
            k4 = _rhs(self._evaluate(origin + (t + dt) * direction), state + dt * k3, direction)
            state = state + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        return state

    def integrate(self, start: Point, initial: MetricState, path: Sequence[Point],
                  steps_per_unit: Optional[int] = None) -> MetricState:
        """从 start 出发依次经过 path 中的点"""
        state = np.array(initial.as_tuple(), dtype=float)
        current = start
        for point in path:
            state = self.integrate_segment(current, point, state, steps_per_unit)
            current = point
        if not np.all(np.isfinite(state)):
            raise PoleOnPath("metric integration diverged", {"end": list(current)})
        return MetricState(p=state[0], q=state[1], r=state[2])


def metric_integrate(cs: ChristoffelSet, start: Point, initial: MetricState,
                     path: Sequence[Point], steps_per_unit: Optional[int] = None,
                     parameters: Optional[Mapping[str, float]] = None) -> MetricState:
    return MetricIntegrator(cs, parameters=parameters).integrate(start, initial, path, steps_per_unit)


@dataclass(frozen=True)
class PathComparison:
    target: Point
    axis_first: MetricState
    diagonal: MetricState

    @property
    def discrepancy(self) -> float:
        return self.axis_first.distance(self.diagonal)


@dataclass(frozen=True)
class PathIndependenceReport:
    comparisons: Tuple[PathComparison, ...]
    tolerance: float

    @property
    def max_discrepancy(self) -> float:
        return max((c.discrepancy for c in self.comparisons), default=0.0)

    @property
    def independent(self) -> bool:
        return self.max_discrepancy <= self.tolerance

    def as_dict(self) -> Dict[str, object]:
        return {
            "tolerance": self.tolerance,
            "max_discrepancy": self.max_discrepancy,
            "independent": self.independent,
            "targets": [
                {
                    "target": list(c.target),
                    "axis_first": c.axis_first.model_dump(),
                    "diagonal": c.diagonal.model_dump(),
                    "discrepancy": c.discrepancy,
                }
                for c in self.comparisons
            ],
        }


def path_independence_check(cs: ChristoffelSet, start: Point, initial: MetricState,
                            targets: Sequence[Point], tolerance: Optional[float] = None,
                            steps_per_unit: Optional[int] = None,
                            parameters: Optional[Mapping[str, float]] = None) -> PathIndependenceReport:
    """对每个目标点比较先沿 x 再沿 y 的折线与直线段的积分结果"""
    integrator = MetricIntegrator(cs, parameters=parameters)
    tolerance = integrator.settings.tolerance if tolerance is None else tolerance
    comparisons: List[PathComparison] = []
    for target in targets:
        corner = (target[0], start[1])
        axis_first = integrator.integrate(start, initial, [corner, target], steps_per_unit)
        diagonal = integrator.integrate(start, initial, [target], steps_per_unit)
        comparisons.append(PathComparison(tuple(target), axis_first, diagonal))
    report = PathIndependenceReport(tuple(comparisons), tolerance)
    if not report.independent:
        logger.info(f"路径相关: 最大偏差 {report.max_discrepancy:.3e}")
    return report
