import pytest

from src.core.models.forms import FOURTH_ORDER_CLASSES, FormClass
from src.core.parser import parse
from src.services.linearize import CoefficientExtractor, generate
from src.utils.exceptions import AlgebraError, ExtractionFailure, ShapeMismatch
from src.utils.validators import ExtractionSettings

from conftest import make_root, random_root


@pytest.fixture(scope="module")
def extractor():
    return CoefficientExtractor(ExtractionSettings())


class TestExtract:
    def test_mixed_root_from_first_derivative_form(self, extractor, mixed_root):
        f = generate(mixed_root, FormClass.FOURTH21)
        result = extractor.extract(f, FormClass.FOURTH21)
        assert result.root.same_as(mixed_root)

    def test_polar_root_from_quadratic_form(self, extractor, polar_root):
        f = generate(polar_root, FormClass.FOURTH30)
        result = extractor.extract(f, FormClass.FOURTH30)
        assert result.root.same_as(polar_root)

    @pytest.mark.parametrize("form", [FormClass.ROOT8, FormClass.THIRD10, FormClass.THIRD14])
    def test_lower_order_forms(self, extractor, mixed_root, form):
        result = extractor.extract(generate(mixed_root, form), form)
        assert result.root.same_as(mixed_root)

    @pytest.mark.parametrize("form", FOURTH_ORDER_CLASSES)
    def test_degenerate_leading_coefficient(self, extractor, exponential_root, form):
        f = generate(exponential_root, form)
        result = extractor.extract(f, form)
        assert result.root.same_as(exponential_root)
        assert generate(result.root, form) == f

    def test_degree_too_high(self, extractor):
        with pytest.raises(ShapeMismatch):
            extractor.extract(parse("y'''' + y'^10"), FormClass.FOURTH21)

    def test_coefficients_from_no_root(self, extractor):
        with pytest.raises((ExtractionFailure, AlgebraError)):
            extractor.extract(parse("y'''' + y'^7 + 1"), FormClass.FOURTH21)

    def test_square_root_branches_are_both_kept(self, extractor):
        root = make_root("x", "0", "0", "0")
        f = generate(root, FormClass.FOURTH18)
        result = extractor.extract(f, FormClass.FOURTH18)
        roots = [result.root] + [b.root for b in result.alternatives]
        assert any(r.same_as(root) for r in roots)
        for candidate in roots:
            assert generate(candidate, FormClass.FOURTH18) == f


class TestDegenerateBranch:
    """c = 0 时 g, h, d 由逐项匹配确定"""

    @pytest.mark.parametrize("values, form", [
        (("0", "0", "-1/(x^2*y^2)", "0"), FormClass.FOURTH21),
        (("0", "0", "x^2/y^2", "x^2/y"), FormClass.FOURTH21),
        (("0", "0", "-1/(x*y)", "-2/(x*y)"), FormClass.FOURTH18),
        (("0", "0", "-1/(x*y)", "-2/(x*y)"), FormClass.FOURTH21),
        (("0", "0", "-1/(x*y)", "-2/(x*y)"), FormClass.FOURTH30),
    ])
    def test_free_functions_in_h_are_fixed_before_d(self, extractor, values, form):
        root = make_root(*values)
        f = generate(root, form)
        result = extractor.extract(f, form)
        assert generate(result.root, form) == f

    @pytest.mark.parametrize(
        "form", [FormClass.THIRD14, FormClass.FOURTH18, FormClass.FOURTH21]
    )
    def test_g_with_a_moving_pole(self, extractor, form):
        root = make_root("0", "1/(x+y)", "0", "0")
        f = generate(root, form)
        result = extractor.extract(f, form)
        assert generate(result.root, form) == f
        assert any(branch.root.same_as(root) for branch in result.branches)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(50))
def test_round_trip_on_random_roots(extractor, seed):
    root = random_root(seed)
    for form in FOURTH_ORDER_CLASSES:
        f = generate(root, form)
        result = extractor.extract(f, form)
        assert generate(result.root, form) == f, form
