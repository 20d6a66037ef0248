import pytest

from src.core.models.forms import FormClass
from src.core.parser import parse
from src.services.linearize import EquationClassifier, Verdict, generate
from src.utils.exceptions import UnsupportedOrder

from conftest import make_root


@pytest.fixture(scope="module")
def classifier():
    return EquationClassifier()


class TestClassify:
    def test_root_equation_is_linearizable(self, classifier):
        f = parse("y'' - 2*y'^2/y + k*y'/2 + l*y", ("k", "l"))
        report = classifier.classify(f)
        assert report.verdict is Verdict.LINEARIZABLE
        candidate = report.candidate(FormClass.ROOT8)
        assert candidate.verdict is Verdict.LINEARIZABLE
        assert candidate.criteria is not None
        assert all(not value for value in candidate.criteria)

    def test_polar_quadratic_form(self, classifier, polar_root):
        report = classifier.classify(generate(polar_root, FormClass.FOURTH30))
        candidate = report.candidate(FormClass.FOURTH30)
        assert candidate.verified
        assert candidate.root.same_as(polar_root)
        assert report.verdict is Verdict.LINEARIZABLE
        assert report.total_derivative_of is None
        assert report.exactness_failure

    def test_only_fourth_order_classes_are_tried(self, classifier, polar_root):
        report = classifier.classify(generate(polar_root, FormClass.FOURTH18))
        assert {c.form.order for c in report.candidates} == {4}
        assert report.total_derivative_of == generate(polar_root, FormClass.THIRD14)

    def test_candidate_that_fails_the_criteria(self, classifier):
        root = make_root("x", "0", "2/x", "y^3")
        report = classifier.classify(generate(root, FormClass.ROOT8))
        candidate = report.candidate(FormClass.ROOT8)
        assert candidate.verified
        assert candidate.verdict is Verdict.NOT_LINEARIZABLE
        assert report.verdict is Verdict.NOT_LINEARIZABLE

    def test_degenerate_root_with_a_moving_pole(self, classifier):
        root = make_root("0", "1/(x+y)", "0", "0")
        report = classifier.classify(generate(root, FormClass.FOURTH21))
        candidate = report.candidate(FormClass.FOURTH21)
        assert candidate.verified
        assert candidate.verdict is Verdict.NOT_LINEARIZABLE
        assert report.verdict is not Verdict.INCONCLUSIVE

    def test_no_class_matches(self, classifier):
        report = classifier.classify(parse("y'''' + y'*y''*y'''"))
        assert report.candidates
        assert all(c.verdict is Verdict.NOT_THIS_CLASS for c in report.candidates)
        assert all(c.failure_code == "SHAPE_MISMATCH" for c in report.candidates)
        assert report.verdict is Verdict.INCONCLUSIVE

    def test_input_is_made_monic(self, classifier):
        report = classifier.classify(parse("2*y'' - 4*y'^2/y + k*y' + 2*l*y", ("k", "l")))
        assert report.input == parse("y'' - 2*y'^2/y + k*y'/2 + l*y", ("k", "l"))
        assert report.verdict is Verdict.LINEARIZABLE

    @pytest.mark.parametrize("text", ["y' + y", "x*y"])
    def test_unsupported_order(self, classifier, text):
        with pytest.raises(UnsupportedOrder):
            classifier.classify(parse(text))

    def test_audit_can_be_disabled(self, polar_root):
        report = EquationClassifier(run_audit=False).classify(generate(polar_root, FormClass.FOURTH21))
        assert all(c.audit is None for c in report.candidates)
