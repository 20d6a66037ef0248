import pytest

from src.core.jet import JetPolynomial, total_derivative
from src.core.models.forms import FormClass
from src.core.parser import parse
from src.services.linearize import generate, is_total_derivative
from src.utils.exceptions import NotExact

from conftest import FIELD, X, Y, random_root, u


class TestTotalDerivative:
    def test_product_rule(self):
        f = u(3) * u(1) + u(2, 2)
        assert is_total_derivative(f) == u(2) * u(1)

    def test_first_order_potential(self):
        # D_x (x*y) = y + x*y'
        g = is_total_derivative(u(1) * X + Y)
        assert g == JetPolynomial.constant(FIELD, X * Y)

    def test_second_derivative_form_integrates_to_third_order(self, polar_root):
        f = generate(polar_root, FormClass.FOURTH18)
        assert is_total_derivative(f) == generate(polar_root, FormClass.THIRD14)

    def test_third_derivative_form_integrates_to_root_derivative(self, polar_root, exponential_root):
        for root in (polar_root, exponential_root):
            f = generate(root, FormClass.FOURTH24)
            assert is_total_derivative(f) == generate(root, FormClass.THIRD10)

    def test_first_derivative_form_is_not_exact(self, polar_root):
        with pytest.raises(NotExact):
            is_total_derivative(generate(polar_root, FormClass.FOURTH21))

    def test_nonlinear_in_top_derivative(self):
        with pytest.raises(NotExact) as info:
            is_total_derivative(u(3, 2))
        assert info.value.details["obstruction"] == "nonlinear"

    def test_incompatible_remainder(self):
        with pytest.raises(NotExact) as info:
            is_total_derivative(u(1) * X)
        assert info.value.details["obstruction"] == "compatibility"

    def test_parsed_input_is_made_monic(self):
        # y + x*y' becomes y' + y/x, which fails Q0_y = Q1_x
        with pytest.raises(NotExact):
            is_total_derivative(parse("y + x*y'"))

    def test_order_zero(self):
        with pytest.raises(NotExact):
            is_total_derivative(JetPolynomial.constant(FIELD, X * Y))


@pytest.mark.parametrize("seed", range(10))
def test_derivative_of_random_root_equation(seed):
    root = random_root(seed)
    g = generate(root, FormClass.THIRD14)
    assert total_derivative(is_total_derivative(total_derivative(g))) == total_derivative(g)
