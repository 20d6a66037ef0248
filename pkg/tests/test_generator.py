import pytest

from src.core.jet import substitute_derivative, total_derivative
from src.core.models.forms import FOURTH_ORDER_CLASSES, FormClass
from src.core.parser import parse
from src.services.linearize import generate, readout, rebuild, reduce_on_root, root_equation
from src.services.linearize.generator import antiderivative_form

from conftest import X, make_root, random_root, u


class TestCatalog:
    @pytest.mark.parametrize("form", list(FormClass))
    def test_readout_then_rebuild(self, mixed_root, form):
        f = generate(mixed_root, form)
        assert rebuild(readout(f, form), f.field) == f

    def test_rebuild_with_parameters(self, exponential_root):
        f = generate(exponential_root, FormClass.FOURTH30)
        coefficients = readout(f, FormClass.FOURTH30)
        assert rebuild(coefficients, f.field) == f
        assert coefficients["S0"] == rebuild(coefficients, f.field).coefficient((0, 0, 0, 0)) * -1


class TestGenerate:
    def test_root_equation_with_parameters(self, exponential_root):
        expected = parse("y'' - 2*y'^2/y + k*y'/2 + l*y", ("k", "l"))
        assert generate(exponential_root, FormClass.ROOT8) == expected
        assert root_equation(exponential_root) == expected

    def test_polar_first_derivative_form(self, polar_root):
        f = generate(polar_root, FormClass.FOURTH21)
        assert f.degree_in(3) == 0
        assert f.degree_in(2) == 0
        assert f.degree_in(1) == 7
        assert readout(f, FormClass.FOURTH21)["P7"] == 15 * X ** 3

    def test_polar_first_derivative_form_terms(self, polar_root):
        expected = parse("y'''' + 15*x^3*y'^7 + 45*x*y'^5 + 48*y'^3/x + 24*y'/x^3")
        assert generate(polar_root, FormClass.FOURTH21) == expected

    def test_mixed_third_order_form(self, mixed_root):
        expected = parse(
            "y''' - 3*x^2*y'^5/y^4 - 3*x*y'^4/y^3 + 6*y'^3/y^2 + 6*y'^2/(x*y) - 6*y'/x^2"
        )
        assert generate(mixed_root, FormClass.THIRD14) == expected

    def test_polar_third_derivative_form(self, polar_root):
        expected = parse(
            "y'''' + (3*x*y'^2 + 2/x)*y''' + 6*x*y'*y''^2 + (6*y'^2 - 4/x^2)*y'' + 4*y'/x^3"
        )
        assert generate(polar_root, FormClass.FOURTH24) == expected

    def test_zero_root(self):
        zero = make_root()
        for form in FOURTH_ORDER_CLASSES:
            assert generate(zero, form) == u(4)

    def test_antiderivative_classes(self):
        assert antiderivative_form(FormClass.FOURTH18) is FormClass.THIRD14
        assert antiderivative_form(FormClass.FOURTH24) is FormClass.THIRD10
        assert antiderivative_form(FormClass.FOURTH21) is None


@pytest.mark.parametrize("seed", range(20))
def test_derivative_structure(seed):
    root = random_root(seed)
    assert generate(root, FormClass.FOURTH18) == total_derivative(generate(root, FormClass.THIRD14))
    assert generate(root, FormClass.FOURTH24) == total_derivative(generate(root, FormClass.THIRD10))
    assert generate(root, FormClass.THIRD10) == total_derivative(generate(root, FormClass.ROOT8))


@pytest.mark.parametrize("seed", range(20))
def test_every_fourth_order_form_reduces_to_the_same_equation(seed):
    root = random_root(seed)
    reference = generate(root, FormClass.FOURTH21)
    for form in FOURTH_ORDER_CLASSES:
        assert reduce_on_root(generate(root, form), root) == reference, form


def test_substitution_order_does_not_matter(polar_root):
    """先代入再求导与先求导再代入得到同一个一阶导数形式"""
    r2 = -(u(1, 3) * X + u(1) * (2 / X))
    fourth18 = generate(polar_root, FormClass.FOURTH18)
    assert substitute_derivative(fourth18, 2, r2) == generate(polar_root, FormClass.FOURTH21)
