"""分类流水线

对与输入同阶的每个类别依次提取、校验, 记录全部通过重新生成校验的类别。
"""

from dataclasses import dataclass, field as dataclass_field
from enum import Enum
from typing import List, Optional, Tuple

from ...core.algebra import RationalFunction
from ...core.jet import JetPolynomial, normalize_monic
from ...core.models.forms import CLASSIFICATION_ORDER, FormClass, RootCoefficients
from ...utils.exceptions import (
    AlgebraError,
    ExtractionFailure,
    InconsistentCoefficients,
    NotExact,
    ShapeMismatch,
    UnsupportedOrder,
)
from ...utils.logger import Logger
from .catalog import readout
from .constraints import AuditReport, audit
from .exactness import is_total_derivative
from .extractor import CoefficientExtractor, ExtractionBranch
from .generator import root_equation
from .verifier import verify


class Verdict(str, Enum):
    LINEARIZABLE = "linearizable"
    NOT_LINEARIZABLE = "not-linearizable"
    NOT_THIS_CLASS = "not-this-class"
    INCONCLUSIVE = "inconclusive"


# 这两类失败说明输入确实不属于该类别, 其余失败只说明搜索没有结果
_REJECTIONS = (ShapeMismatch, InconsistentCoefficients)


@dataclass
class CandidateReport:
    form: FormClass
    verdict: Verdict
    root: Optional[RootCoefficients] = None
    failure: Optional[str] = None
    failure_code: Optional[str] = None
    failure_details: dict = dataclass_field(default_factory=dict)
    notes: Tuple[str, ...] = ()
    alternatives: Tuple[ExtractionBranch, ...] = ()
    constraints_ok: bool = False
    residual_names: Tuple[str, ...] = ()
    criteria: Optional[Tuple[RationalFunction, RationalFunction]] = None
    audit: Optional[AuditReport] = None

    @property
    def verified(self) -> bool:
        return self.constraints_ok

    @property
    def audit_disagrees(self) -> bool:
        return self.audit is not None and not self.audit.agrees_with(self.constraints_ok)


@dataclass
class ClassificationReport:
    input: JetPolynomial
    candidates: List[CandidateReport] = dataclass_field(default_factory=list)
    total_derivative_of: Optional[JetPolynomial] = None
    exactness_failure: Optional[str] = None
    root_equation: Optional[JetPolynomial] = None
    notes: List[str] = dataclass_field(default_factory=list)

    @property
    def order(self) -> int:
        return self.input.order

    @property
    def verified(self) -> List[CandidateReport]:
        return [c for c in self.candidates if c.verified]

    @property
    def linearizable(self) -> List[CandidateReport]:
        return [c for c in self.candidates if c.verdict is Verdict.LINEARIZABLE]

    @property
    def verdict(self) -> Verdict:
        """整体结论: 任一类别可线性化即可线性化"""
        if self.linearizable:
            return Verdict.LINEARIZABLE
        if self.verified:
            return Verdict.NOT_LINEARIZABLE
        return Verdict.INCONCLUSIVE

    def candidate(self, form: FormClass) -> Optional[CandidateReport]:
        for c in self.candidates:
            if c.form is form:
                return c
        return None


class EquationClassifier:
    """对输入方程逐类别尝试并汇总报告"""

    def __init__(self, extractor: Optional[CoefficientExtractor] = None, run_audit: bool = True):
        self.logger = Logger(__name__)
        self.extractor = extractor or CoefficientExtractor()
        self.run_audit = run_audit

    def classify(self, f: JetPolynomial) -> ClassificationReport:
        if not 2 <= f.order <= 4:
            raise UnsupportedOrder(
                f"only orders 2 to 4 are supported, got order {f.order}",
                {"order": f.order},
            )
        f = normalize_monic(f)
        report = ClassificationReport(input=f)
        for form in CLASSIFICATION_ORDER:
            if form.order != f.order:
                continue
            report.candidates.append(self._try(f, form))

        first = next(iter(report.verified), None)
        if first is not None:
            report.root_equation = root_equation(first.root)
            roots = [c.root for c in report.verified]
            if any(not r.same_as(roots[0]) for r in roots[1:]):
                report.notes.append("verified classes recover different roots")

        try:
            report.total_derivative_of = is_total_derivative(f)
        except NotExact as e:
            report.exactness_failure = e.message

        for c in report.candidates:
            if c.audit_disagrees:
                report.notes.append(
                    f"{c.form.label}: transcribed relations disagree with regeneration "
                    f"({', '.join(e.relation for e in c.audit.failing)})"
                )
        self.logger.info(f"分类完成: {report.verdict.value}")
        return report

    def _try(self, f: JetPolynomial, form: FormClass) -> CandidateReport:
        try:
            result = self.extractor.extract(f, form)
        except (ExtractionFailure, AlgebraError) as e:
            verdict = Verdict.NOT_THIS_CLASS if isinstance(e, _REJECTIONS) else Verdict.INCONCLUSIVE
            self.logger.debug(f"{form.label} 提取失败: {str(e)}")
            return CandidateReport(
                form=form, verdict=verdict, failure=e.message,
                failure_code=e.code, failure_details=dict(e.details),
            )

        check = verify(f, form, result.root)
        verdict = Verdict.INCONCLUSIVE
        if check.regenerated:
            verdict = Verdict.LINEARIZABLE if check.criteria_ok else Verdict.NOT_LINEARIZABLE
        candidate = CandidateReport(
            form=form,
            verdict=verdict,
            root=result.root,
            notes=result.notes,
            alternatives=result.alternatives,
            constraints_ok=check.regenerated,
            residual_names=check.residual_names,
            criteria=check.criteria,
        )
        if self.run_audit:
            candidate.audit = audit(readout(f, form), result.root)
        return candidate


def classify(f: JetPolynomial) -> ClassificationReport:
    return EquationClassifier().classify(f)
