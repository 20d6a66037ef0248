"""例题库批量校验"""

from dataclasses import dataclass, field as dataclass_field
from typing import Dict, Iterable, List, Mapping, Optional

from ...core import algebra
from ...core.parser import parse_rational, print_canonical, print_rational
from ...utils.logger import Logger
from ..linearize.classifier import ClassificationReport, EquationClassifier, Verdict
from ..linearize.generator import root_equation
from .cases import Corpus, CorpusCase, load_corpus, published_diff
from .implicit import ImplicitRelation, verify_implicit_solution

logger = Logger(__name__)


@dataclass
class CaseResult:
    case: CorpusCase
    report: ClassificationReport
    failures: List[str] = dataclass_field(default_factory=list)
    published_diff: List[Dict[str, str]] = dataclass_field(default_factory=list)
    diagnostics: List[str] = dataclass_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass
class RelationResult:
    name: str
    published: str
    checks: Dict[str, bool] = dataclass_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


@dataclass
class CorpusSummary:
    results: List[CaseResult] = dataclass_field(default_factory=list)
    relations: List[RelationResult] = dataclass_field(default_factory=list)
    companion_diffs: List[Dict[str, object]] = dataclass_field(default_factory=list)

    @property
    def failures(self) -> List[CaseResult]:
        return [r for r in self.results if not r.ok]

    @property
    def verified_count(self) -> int:
        return sum(1 for r in self.results if r.ok)

    @property
    def headline(self) -> str:
        return f"{self.verified_count}/{len(self.results)} verified"

    def root_equations(self) -> Dict[str, List[int]]:
        """根方程文本到例题编号, 同根的例题只输出一次"""
        grouped: Dict[str, List[int]] = {}
        for result in self.results:
            if result.report.root_equation is not None:
                text = print_canonical(result.report.root_equation)
                grouped.setdefault(text, []).append(result.case.id)
        return grouped


def _perturbed(case: CorpusCase, changes: Mapping[str, str]) -> CorpusCase:
    """根系数加上给定增量, 用于故障注入"""
    values = case.root.as_dict()
    for name, text in changes.items():
        delta = parse_rational(text, case.parameters)
        field = algebra.merge_fields(values[name].field, delta.field)
        values[name] = algebra.lift(values[name], field) + algebra.lift(delta, field)
    return case.with_root(type(case.root).from_mapping(values))


class CorpusRunner:
    """逐例分类并核对类别、根、判据与全导数判定"""

    def __init__(self, corpus: Optional[Corpus] = None,
                 classifier: Optional[EquationClassifier] = None):
        self.logger = Logger(__name__)
        self.corpus = corpus or load_corpus()
        self.classifier = classifier or EquationClassifier()

    def run(self, case_ids: Optional[Iterable[int]] = None,
            perturb: Optional[Mapping[int, Mapping[str, str]]] = None,
            check_relations: bool = True) -> CorpusSummary:
        wanted = set(case_ids) if case_ids else None
        perturb = perturb or {}
        summary = CorpusSummary()
        for case in self.corpus.cases:
            if wanted is not None and case.id not in wanted:
                continue
            expected_root = case.root
            if case.id in perturb:
                case = _perturbed(case, perturb[case.id])
            summary.results.append(self._run_case(case, expected_root))

        if wanted is None:
            summary.companion_diffs = self._companion_diffs()
        if check_relations:
            summary.relations = self._check_relations(wanted)
        self.logger.info(f"例题库校验: {summary.headline}")
        return summary

    def _run_case(self, case: CorpusCase, expected_root) -> CaseResult:
        report = self.classifier.classify(case.jet)
        result = CaseResult(case=case, report=report)
        candidate = report.candidate(case.form)

        if candidate is None or not candidate.verified:
            reason = candidate.failure if candidate is not None else "class not attempted"
            result.failures.append(f"{case.form.label} not verified: {reason}")
        else:
            if not candidate.root.same_as(expected_root):
                got = algebra.to_text_map(candidate.root.as_dict())
                result.failures.append(f"recovered root {got} differs from the stated root")
            if candidate.verdict is not Verdict.LINEARIZABLE:
                residuals = ", ".join(print_rational(r) for r in candidate.criteria)
                result.failures.append(f"criteria residuals nonzero: ({residuals})")
            if candidate.audit is not None:
                result.diagnostics.extend(candidate.audit.diagnostics())

        exact = report.total_derivative_of is not None
        if exact != case.expected_exact:
            expected = "a total derivative" if case.expected_exact else "not a total derivative"
            result.failures.append(f"expected {expected}; exactness check says otherwise")

        try:
            result.published_diff = published_diff(case.jet, case.expression, case.parameters)
        except Exception as e:
            result.diagnostics.append(f"published text does not parse: {str(e)}")
        if result.failures:
            self.logger.warning(f"例题 {case.id} 未通过: {result.failures}")
        return result

    def _companion_diffs(self) -> List[Dict[str, object]]:
        diffs = []
        for companion in self.corpus.companions:
            diffs.append({
                "root": companion.root_name,
                "class": companion.form.value,
                "published": companion.published,
                "differences": published_diff(
                    companion.jet, companion.expression, companion.parameters
                ),
            })
        return diffs

    def _check_relations(self, wanted) -> List[RelationResult]:
        results = []
        for entry in self.corpus.relations:
            relation = ImplicitRelation.parse(entry.polynomial, entry.parameters)
            result = RelationResult(entry.name, entry.published)
            if entry.root:
                root = self._root_of(entry.root)
                if root is not None:
                    result.checks[f"root '{entry.root}'"] = verify_implicit_solution(
                        relation, root_equation(root)
                    )
            for case_id in entry.cases:
                if wanted is not None and case_id not in wanted:
                    continue
                case = self.corpus.case(case_id)
                result.checks[f"case {case_id}"] = verify_implicit_solution(relation, case.jet)
            results.append(result)
        return results

    def _root_of(self, name: str):
        for case in self.corpus.cases:
            if case.root_name == name:
                return case.root
        return None


def run_corpus(case_ids: Optional[Iterable[int]] = None,
               perturb: Optional[Mapping[int, Mapping[str, str]]] = None) -> CorpusSummary:
    return CorpusRunner().run(case_ids, perturb)
