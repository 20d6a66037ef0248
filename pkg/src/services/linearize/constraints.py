"""显示公式的独立转录核对

与再生成校验互相独立: 这里逐条按显示的辨识式与约束式计算残差。
两种校验结论不一致时作为诊断输出, 不做任何调和。
公式按原样转录, 包括其中可疑的系数和符号。
"""

from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from ...core import algebra
from ...core.algebra import RationalFunction
from ...core.models.forms import FormClass, FormCoefficients, RootCoefficients
from ...utils.logger import Logger

logger = Logger(__name__)

Relation = Tuple[str, Callable[[], RationalFunction]]


def _p(f: RationalFunction, spec: str) -> RationalFunction:
    """按 spec 中的字母依次求偏导, 如 _p(f, "xy")"""
    for name in spec:
        f = algebra.partial_derivative(f, name)
    return f


@dataclass(frozen=True)
class AuditEntry:
    relation: str
    residual: Optional[RationalFunction] = None
    skipped: Optional[str] = None

    @property
    def holds(self) -> bool:
        return self.skipped is None and not self.residual


@dataclass(frozen=True)
class AuditReport:
    form: FormClass
    entries: Tuple[AuditEntry, ...]

    @property
    def failing(self) -> Tuple[AuditEntry, ...]:
        return tuple(e for e in self.entries if e.skipped is None and e.residual)

    @property
    def transcribed_ok(self) -> bool:
        return not self.failing

    def agrees_with(self, regenerated_ok: bool) -> bool:
        return self.transcribed_ok == regenerated_ok

    def diagnostics(self) -> List[str]:
        return [f"{e.relation}: residual {e.residual.as_expr()}" for e in self.failing]


def _root8(n, r) -> Iterator[Relation]:
    c, g, h, d = r.values()
    yield "identification E3 = c", lambda: n["E3"] - c
    yield "identification E2 = -g", lambda: n["E2"] + g
    yield "identification E1 = h", lambda: n["E1"] - h
    yield "identification E0 = -d", lambda: n["E0"] + d


def _third10(n, r) -> Iterator[Relation]:
    c, g, h, d = r.values()
    A2, A1, A0 = n["A2"], n["A1"], n["A0"]
    B4, B3, B2, B1 = n["B4"], n["B3"], n["B2"], n["B1"]
    yield "identification c = A2/3", lambda: c - A2 / 3
    yield "identification g = A1/2", lambda: g - A1 / 2
    yield "identification h = A0", lambda: h - A0
    yield "integral d = -int B2 dx", lambda: _p(d, "x") + B2
    yield "integral d = int (B1 - A0x) dy", lambda: _p(d, "y") - (B1 - _p(A0, "x"))
    yield "constraint B4", lambda: B4 - _p(A2, "y") / 3
    yield "constraint B3", lambda: B3 - (_p(A1, "y") / 2 - _p(A1, "x") / 3)
    yield "constraint B2", lambda: B2 - (_p(A0, "y") - _p(A1, "x") / 2)


def _third14(n, r) -> Iterator[Relation]:
    c, g, h, d = r.values()
    yield "identification alpha", lambda: n["alpha"] - 3 * c ** 2
    yield "identification beta", lambda: n["beta"] - (5 * c * g + _p(c, "y"))
    yield "identification gamma", lambda: n["gamma"] - (
        4 * c * h + 2 * g ** 2 + _p(g, "y") - _p(c, "x"))
    yield "identification delta", lambda: n["delta"] - (
        3 * c * d + 3 * g * h + _p(h, "y") - _p(g, "x"))
    yield "constraint epsilon", lambda: n["epsilon"] - (
        2 * d * g + h ** 2 + _p(d, "y") - _p(h, "x"))
    yield "constraint phi", lambda: n["phi"] - (d * h - _p(d, "x"))


def _fourth18(n, r) -> Iterator[Relation]:
    c, g, h, d = r.values()
    A4, A3, A2, A1, A0 = (n[f"A{i}"] for i in (4, 3, 2, 1, 0))
    B = {i: n[f"B{i}"] for i in range(7)}
    yield "identification c^2 = A4/15", lambda: c ** 2 - A4 / 15
    yield "identification g", lambda: g - (A3 - 4 * _p(c, "y")) / (20 * c)
    yield "identification h", lambda: h - (
        A2 - 6 * g ** 2 - 3 * _p(g, "y") + 3 * _p(c, "x")) / (12 * c)
    yield "identification d", lambda: d - (
        A1 - 6 * g * h - 2 * _p(h, "y") + 2 * _p(g, "x")) / (6 * c)
    yield "constraint B6", lambda: B[6] - A4 / 5
    yield "constraint B5", lambda: B[5] - (_p(A3, "y") / 4 - _p(A4, "x") / 5)
    yield "constraint B4", lambda: B[4] - (_p(A2, "y") / 3 - _p(A3, "x") / 4)
    yield "constraint B3", lambda: B[3] - (_p(A1, "y") / 2 - _p(A2, "x") / 3)
    yield "constraint B2", lambda: B[2] - (_p(A0, "y") - _p(A1, "x") / 2)
    yield "constraint B1", lambda: B[1] - (
        d * _p(h, "y") + h * _p(d, "y") - _p(d, "xy") - _p(A0, "x") / 2)
    yield "constraint B0", lambda: B[0] - (d * _p(h, "x") + h * _p(d, "x") - _p(d, "xx"))
    yield "constraint A0", lambda: A0 - (2 * g * d + h ** 2 + _p(d, "y") - _p(h, "x"))


def _fourth21(n, r) -> Iterator[Relation]:
    c, g, h, d = r.values()
    P = {i: n[f"P{i}"] for i in range(8)}
    cx, cy = _p(c, "x"), _p(c, "y")
    gx, gy = _p(g, "x"), _p(g, "y")
    hx, hy = _p(h, "x"), _p(h, "y")
    dx, dy = _p(d, "x"), _p(d, "y")
    yield "identification c^3 = P7/15", lambda: c ** 3 - P[7] / 15
    yield "identification g", lambda: g - (P[6] / (35 * c ** 2) - 2 * cy / (7 * c))
    yield "identification h", lambda: h - (
        P[5] / (27 * c ** 2) - 26 * g ** 2 / (27 * c) + cx / (3 * c) - g * cy / (3 * c ** 2)
        - 8 * gy / (27 * c) - _p(c, "yy") / (27 * c ** 2))
    yield "identification d", lambda: d - (
        P[4] / (21 * c ** 2) - 38 * g * h / (21 * c) - 2 * g ** 3 / (7 * c ** 2)
        + 8 * g * cx / (21 * c ** 2) - 8 * h * cy / (21 * c ** 2) + gx / (3 * c)
        - g * gy / (3 * c ** 2) - 2 * hy / (7 * c) + 2 * _p(c, "xy") / (21 * c ** 2)
        - _p(g, "yy") / (21 * c ** 2))
    yield "constraint P3", lambda: P[3] - (
        28 * c * d * g + 13 * c * h ** 2 + 12 * g ** 2 * h - 3 * (h + d) * cx + 4 * d * cy
        - (2 * g + 3 * h) * gx + (3 * h + 2 * d) * gy - (c + 3 * g) * hx
        + 2 * (g + h) * hy - 3 * c * dx + (c + 2 * g) * dy
        + _p(g, "xx") - 2 * _p(h, "xy") + _p(d, "yy"))
    yield "constraint P2", lambda: P[2] - (
        18 * c * h * d + 8 * g ** 2 * d + 7 * g * h ** 2 - 6 * d * cx - 5 * h * gx
        + 4 * d * gy - 4 * g * hx + 4 * h * hy - 3 * c * dx + 2 * g * dy
        + _p(g, "xx") - 2 * _p(h, "xy") + _p(d, "yy"))
    yield "constraint P1", lambda: P[1] - (
        6 * c * d ** 2 - 8 * g * h * d + h ** 3 - 4 * d * gx - 3 * h * hx + 3 * d * hy
        - 2 * g * dx + 2 * h * dy + _p(h, "xx") - 2 * _p(d, "xy"))
    yield "constraint P0", lambda: P[0] - (
        2 * g * d ** 2 + h ** 2 * d - 2 * d * hx - h * dx + d * dy + _p(d, "xx"))


def _fourth24(n, r) -> Iterator[Relation]:
    c, g, h, d = r.values()
    A2, A1, A0 = n["A2"], n["A1"], n["A0"]
    C = {i: n[f"C{i}"] for i in range(4)}
    D = {i: n[f"D{i}"] for i in range(6)}
    yield "identification c = A2/3", lambda: c - A2 / 3
    yield "identification c = B1/6", lambda: c - n["B1"] / 6
    yield "identification g = A1/2", lambda: g - A1 / 2
    yield "identification g = B0/2", lambda: g - n["B0"] / 2
    yield "identification h = A0", lambda: h - A0
    yield "constraint C3", lambda: C[3] - 7 * _p(A2, "y") / 3
    yield "constraint C2", lambda: C[2] - (5 * _p(A1, "y") / 2 - 2 * _p(A2, "x"))
    yield "constraint C1", lambda: C[1] - (3 * _p(A0, "y") - 2 * _p(A1, "x"))
    yield "constraint D5", lambda: D[5] - _p(A2, "yy") / 3
    yield "constraint D4", lambda: D[4] - (_p(A1, "yy") / 2 - 2 * _p(A2, "xy") / 3)
    yield "constraint D3", lambda: D[3] - (
        _p(A0, "yy") / 2 - _p(A1, "xy") + _p(A2, "xx") / 3)
    yield "constraint C0", lambda: C[0] - (_p(d, "y") - 2 * _p(A0, "x"))
    yield "constraint D0", lambda: D[0] - _p(d, "xx")
    yield "requirement D1", lambda: D[1] + 2 * _p(C[0], "x") + 3 * _p(A0, "xx")
    yield "requirement D2", lambda: D[2] - _p(C[0], "y") - _p(A1, "xx") / 2


def _fourth30(n, r) -> Iterator[Relation]:
    c, g, h, d = r.values()
    Q1, Q0 = n["Q1"], n["Q0"]
    R = {i: n[f"R{i}"] for i in range(5)}
    S = {i: n[f"S{i}"] for i in range(7)}
    hx, hy = _p(h, "x"), _p(h, "y")
    dx = _p(d, "x")
    yield "identification c = Q1/6", lambda: c - Q1 / 6
    yield "identification g = Q0/2", lambda: g - Q0 / 2
    yield "identification h", lambda: h - (
        R[2] - Q0 ** 2 + _p(Q1, "x") - 5 * _p(Q0, "y") / 2) / Q1
    yield "integral d = int (R0 - h^2 + 2h_x) dy", lambda: _p(d, "y") - (R[0] - h ** 2 + 2 * hx)
    yield "constraint R4", lambda: R[4] - Q1 ** 2 / 4
    yield "constraint R3", lambda: R[3] - (Q1 * Q0 + 7 * _p(Q1, "y") / 6)
    yield "constraint R1", lambda: R[1] - (2 * Q0 * h + h ** 2 + 3 * hy - 2 * _p(Q0, "x"))
    yield "constraint S6", lambda: S[6] - Q1 * _p(Q1, "y") / 12
    yield "constraint S5", lambda: S[5] - (
        -Q1 * _p(Q1, "x") / 36 + Q0 * _p(Q1, "y") / 6 + Q1 * _p(Q0, "y") / 4
        + _p(Q1, "yy") / 6)
    yield "constraint S4", lambda: S[4] - (
        -Q0 * _p(Q1, "x") / 6 + h * _p(Q1, "y") / 6 - Q1 * _p(Q0, "x") / 4
        + Q0 * _p(Q0, "y") / 2 + Q1 * hy / 2 - _p(Q1, "xy") / 3 + _p(Q0, "yy") / 2)
    yield "constraint S3", lambda: S[3] - (
        Q1 * (R[0] - h ** 2 - hx) / 2 - h * Q1 / 6 - Q0 * _p(Q0, "x") / 2
        + h * _p(Q0, "y") / 2 + Q0 * hy + _p(Q1, "xx") / 6 - _p(Q0, "xy") + _p(h, "yy"))
    yield "constraint S2", lambda: S[2] - (
        Q1 * dx / 2 + Q0 * (R[0] - h ** 2 + hx) - h * hy - h * _p(Q0, "x") / 2
        + _p(R[0], "y") + _p(Q0, "xx") / 2)
    yield "constraint S1", lambda: S[1] - (
        h * (R[0] - h ** 2 + 5 * hx) - 2 * _p(R[0], "x") - Q0 * dx - 3 * _p(h, "xx"))
    yield "constraint S0", lambda: S[0] - (h * dx - _p(d, "xx"))


def _fourth34(n, r) -> Iterator[Relation]:
    c, g, h, d = r.values()
    A2, A1, A0 = n["A2"], n["A1"], n["A0"]
    B = {i: n[f"B{i}"] for i in range(8)}
    cx, cy = _p(c, "x"), _p(c, "y")
    A1x, A1y = _p(A1, "x"), _p(A1, "y")
    A0x, A0y = _p(A0, "x"), _p(A0, "y")
    dy = _p(d, "y")
    yield "identification c^2 = A2/3", lambda: c ** 2 - A2 / 3
    yield "identification g = A1/2", lambda: g - A1 / 2
    yield "identification h = A0", lambda: h - A0
    yield "identification d", lambda: d - (
        B[4] - 8 * c * A1 * A0 - A1 ** 3 / 4 + 3 * A1 * cx - 7 * A0 * cy + 2 * c * A1x
        - 5 * A1 * A1y / 4 - 3 * c * A0x + 2 * _p(c, "xy") - _p(A1, "yy") / 2) / (4 * A2)
    yield "constraint B7", lambda: B[7] - 6 * c ** 3
    yield "constraint B6", lambda: B[6] - 7 * c * (A1 + cy)
    yield "constraint B5", lambda: B[5] - (
        3 * A2 * A0 + 5 * c * A1 ** 2 / 2 - 6 * c * cx + 7 * A1 * cy / 2
        + 5 * c * A1y / 2 + _p(c, "yy"))
    yield "constraint B3", lambda: B[3] - (
        8 * c * A1 * d + 6 * c * A0 ** 2 + A1 ** 2 * A0 - 6 * A0 * cx + 7 * d * cy
        - A1 * A1x + 5 * A0 * A1y / 2 - 2 * c * A0x + 3 * A1 * A0y / 2 + c * dy
        + _p(c, "xx") - _p(A1, "xy") + _p(A0, "yy"))
    yield "constraint B2", lambda: B[2] - (
        12 * c * A0 * d + A1 ** 2 * d + A1 * A0 ** 2 - 6 * d * cx - 2 * A0 * A1x
        + 5 * d * A1y / 2 - A1 * A0x + 3 * A0 * A0y + A1 * dy / 2 + _p(A1, "xx") / 2
        - 2 * _p(A0, "xy") + _p(d, "yy"))
    yield "constraint B1", lambda: B[1] - (
        6 * c * d ** 2 + 2 * A1 * A0 * d - 4 * d * A1x - 2 * A0 * A0x + 3 * d * A0y
        + A0 * dy + _p(A0, "xx") - 2 * _p(d, "xy"))
    yield "constraint B0", lambda: B[0] - (d * (A1 * d + dy - A0x) + _p(d, "xx"))


TRANSCRIPTIONS: Dict[FormClass, Callable] = {
    FormClass.ROOT8: _root8,
    FormClass.THIRD10: _third10,
    FormClass.THIRD14: _third14,
    FormClass.FOURTH18: _fourth18,
    FormClass.FOURTH21: _fourth21,
    FormClass.FOURTH24: _fourth24,
    FormClass.FOURTH30: _fourth30,
    FormClass.FOURTH34: _fourth34,
}


def audit(coefficients: FormCoefficients, root: RootCoefficients) -> AuditReport:
    """按转录公式逐条计算残差; 除以零的条目标记为跳过"""
    field = algebra.merge_fields(root.field, *(v.field for v in coefficients.named.values()))
    root = root.unified(field)
    named = {k: algebra.lift(v, field) for k, v in coefficients.named.items()}
    entries = []
    for relation, compute in TRANSCRIPTIONS[coefficients.form](named, root):
        try:
            entries.append(AuditEntry(relation, algebra.canonical(compute())))
        except ZeroDivisionError:
            entries.append(AuditEntry(relation, skipped="division by zero (c = 0 branch)"))
    report = AuditReport(coefficients.form, tuple(entries))
    if report.failing:
        logger.debug(f"{coefficients.form.label} 转录公式不成立: {report.diagnostics()}")
    return report
