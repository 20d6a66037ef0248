"""报告模型: 命令行的 JSON 与文本输出"""

import json
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..parser import print_canonical, print_rational


def _text_map(values) -> Dict[str, str]:
    return {name: print_rational(value) for name, value in values.items()}


class ReportModel(BaseModel):
    """所有报告的基类, 键顺序稳定"""

    model_config = ConfigDict(populate_by_name=True)

    def to_json(self) -> str:
        return json.dumps(self.model_dump(by_alias=True), indent=2, ensure_ascii=False)


class FailureInfo(ReportModel):
    code: str
    message: str


class CandidateModel(ReportModel):
    form: str = Field(alias="class")
    verdict: str
    extracted: Optional[Dict[str, str]] = None
    branch_notes: List[str] = []
    alternatives: List[Dict[str, str]] = []
    failure: Optional[FailureInfo] = None
    constraints_ok: bool = False
    residuals: List[str] = []
    criteria: Optional[List[str]] = None
    audit: List[str] = []


class ClassificationModel(ReportModel):
    input: str
    normalized: str
    order: int
    verdict: str
    candidates: List[CandidateModel] = []
    total_derivative_of: Optional[str] = None
    exactness_failure: Optional[str] = None
    root_equation: Optional[str] = None
    notes: List[str] = []

    @classmethod
    def from_report(cls, report, source: str) -> "ClassificationModel":
        candidates = []
        for c in report.candidates:
            candidates.append(CandidateModel(
                form=c.form.value,
                verdict=c.verdict.value,
                extracted=_text_map(c.root.as_dict()) if c.root is not None else None,
                branch_notes=list(c.notes),
                alternatives=[_text_map(b.root.as_dict()) for b in c.alternatives],
                failure=FailureInfo(code=c.failure_code, message=c.failure)
                if c.failure is not None else None,
                constraints_ok=c.constraints_ok,
                residuals=list(c.residual_names),
                criteria=[print_rational(r) for r in c.criteria] if c.criteria else None,
                audit=c.audit.diagnostics() if c.audit is not None else [],
            ))
        return cls(
            input=source,
            normalized=print_canonical(report.input),
            order=report.order,
            verdict=report.verdict.value,
            candidates=candidates,
            total_derivative_of=print_canonical(report.total_derivative_of)
            if report.total_derivative_of is not None else None,
            exactness_failure=report.exactness_failure,
            root_equation=print_canonical(report.root_equation)
            if report.root_equation is not None else None,
            notes=list(report.notes),
        )

    def to_text(self) -> str:
        lines = [
            f"input:      {self.input}",
            f"normalized: {self.normalized} = 0",
            f"order:      {self.order}",
            f"verdict:    {self.verdict}",
            "",
        ]
        for c in self.candidates:
            lines.append(f"[{c.form}] {c.verdict}")
            if c.failure is not None:
                lines.append(f"  failure: {c.failure.code}: {c.failure.message}")
            if c.extracted is not None:
                root = ", ".join(f"{k} = {v}" for k, v in c.extracted.items())
                lines.append(f"  root: {root}")
            for alt in c.alternatives:
                lines.append("  alternative: " + ", ".join(f"{k} = {v}" for k, v in alt.items()))
            for note in c.branch_notes:
                lines.append(f"  note: {note}")
            if c.extracted is not None:
                lines.append(f"  regenerates input: {'yes' if c.constraints_ok else 'no'}")
            if c.residuals:
                lines.append(f"  residuals: {', '.join(c.residuals)}")
            if c.criteria is not None:
                lines.append(f"  criteria: ({c.criteria[0]}, {c.criteria[1]})")
            for item in c.audit:
                lines.append(f"  audit: {item}")
        lines.append("")
        if self.total_derivative_of is not None:
            lines.append(f"total derivative of: {self.total_derivative_of}")
        else:
            lines.append(f"not a total derivative: {self.exactness_failure}")
        if self.root_equation is not None:
            lines.append(f"root equation: {self.root_equation} = 0")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines)


class GenerateModel(ReportModel):
    form: str = Field(alias="class")
    root: Dict[str, str]
    equation: str
    coefficients: Dict[str, str]

    def to_text(self) -> str:
        return self.equation


class CriteriaModel(ReportModel):
    root: Dict[str, str]
    criteria: List[str]
    linearizable: bool
    lie_form: Dict[str, str]

    def to_text(self) -> str:
        return "\n".join([
            "root: " + ", ".join(f"{k} = {v}" for k, v in self.root.items()),
            f"criteria: ({self.criteria[0]}, {self.criteria[1]})",
            f"linearizable: {str(self.linearizable).lower()}",
        ])


class CurvatureModel(ReportModel):
    coefficients: Dict[str, str]
    components: Dict[str, str]
    conditions: List[str]
    flat: bool

    def to_text(self) -> str:
        lines = [f"{k} = {v}" for k, v in self.components.items()]
        lines.append("conditions: (" + ", ".join(self.conditions) + ")")
        lines.append(f"flat: {str(self.flat).lower()}")
        return "\n".join(lines)


class GaugeModel(ReportModel):
    root: Dict[str, str]
    found: bool
    gauge: Optional[Dict[str, str]] = None
    coefficients: Optional[Dict[str, str]] = None
    message: Optional[str] = None

    def to_text(self) -> str:
        if not self.found:
            return f"gauge not found: {self.message}"
        lines = [f"gauge: b = {self.gauge['b']}, e = {self.gauge['e']}"]
        lines.append("coefficients: " + ", ".join(f"{k} = {v}" for k, v in self.coefficients.items()))
        return "\n".join(lines)


class MetricModel(ReportModel):
    coefficients: Dict[str, str]
    start: List[float]
    initial: Dict[str, float]
    path: List[List[float]]
    final: Dict[str, float]
    max_discrepancy: Optional[float] = None
    independent: Optional[bool] = None

    def to_text(self) -> str:
        lines = [
            "final: " + ", ".join(f"{k} = {v:.12g}" for k, v in self.final.items()),
        ]
        if self.max_discrepancy is not None:
            lines.append(f"path discrepancy: {self.max_discrepancy:.3e}")
            lines.append(f"path independent: {str(self.independent).lower()}")
        return "\n".join(lines)


class ExactModel(ReportModel):
    input: str
    exact: bool
    antiderivative: Optional[str] = None
    obstruction: Optional[str] = None

    def to_text(self) -> str:
        if self.exact:
            return f"total derivative of: {self.antiderivative}"
        return f"not a total derivative: {self.obstruction}"


class CorpusCaseModel(ReportModel):
    id: int
    form: str = Field(alias="class")
    ok: bool
    failures: List[str] = []
    notes: List[str] = []
    published_diff: List[Dict[str, str]] = []
    diagnostics: List[str] = []


class CorpusModel(ReportModel):
    headline: str
    failed: int
    cases: List[CorpusCaseModel] = []
    root_equations: List[Dict[str, object]] = []
    relations: List[Dict[str, object]] = []
    companions: List[Dict[str, object]] = []

    @classmethod
    def from_summary(cls, summary) -> "CorpusModel":
        return cls(
            headline=summary.headline,
            failed=len(summary.failures),
            cases=[
                CorpusCaseModel(
                    id=r.case.id,
                    form=r.case.form.value,
                    ok=r.ok,
                    failures=list(r.failures),
                    notes=list(r.case.notes),
                    published_diff=list(r.published_diff),
                    diagnostics=list(r.diagnostics),
                )
                for r in summary.results
            ],
            root_equations=[
                {"equation": text, "cases": ids}
                for text, ids in summary.root_equations().items()
            ],
            relations=[
                {"name": r.name, "published": r.published, "checks": dict(r.checks), "ok": r.ok}
                for r in summary.relations
            ],
            companions=list(summary.companion_diffs),
        )

    def to_text(self) -> str:
        lines = []
        for case in self.cases:
            status = "ok" if case.ok else "FAIL"
            lines.append(f"case {case.id:2d} [{case.form}] {status}")
            for failure in case.failures:
                lines.append(f"    {failure}")
            if case.published_diff:
                lines.append(f"    published text differs in {len(case.published_diff)} term(s)")
            for item in case.diagnostics:
                lines.append(f"    audit: {item}")
        for group in self.root_equations:
            ids = ", ".join(str(i) for i in group["cases"])
            lines.append(f"root equation (cases {ids}): {group['equation']} = 0")
        for relation in self.relations:
            checks = ", ".join(f"{k}: {'ok' if v else 'FAIL'}" for k, v in relation["checks"].items())
            lines.append(f"relation {relation['published']}: {checks}")
        lines.append(self.headline)
        return "\n".join(lines)
