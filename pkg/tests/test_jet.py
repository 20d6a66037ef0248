import pytest
from hypothesis import given, strategies as st

from src.core.jet import (
    JetPolynomial,
    normalize_monic,
    shape,
    substitute_derivative,
    total_derivative,
)
from src.utils.exceptions import OrderOverflow, ZeroLeadingCoefficient

from conftest import FIELD, X, Y, u

COEFFICIENTS = [FIELD.zero, FIELD.one, X, -Y, 2 / X, X / Y ** 2, X * Y + 1]


@st.composite
def jets(draw, max_order=2):
    terms = {}
    for _ in range(draw(st.integers(1, 4))):
        e1 = draw(st.integers(0, 2))
        e2 = draw(st.integers(0, 2)) if max_order >= 2 else 0
        terms[(e1, e2, 0, 0)] = draw(st.sampled_from(COEFFICIENTS))
    return JetPolynomial(FIELD, terms)


class TestTotalDerivative:
    def test_leibniz_pair(self):
        assert total_derivative(u(1) * u(2)) == u(2, 2) + u(1) * u(3)

    def test_chain_rule_on_coefficient(self):
        f = JetPolynomial.constant(FIELD, -X / Y ** 2)
        expected = JetPolynomial.constant(FIELD, -1 / Y ** 2) + u(1) * (2 * X / Y ** 3)
        assert total_derivative(f) == expected

    def test_order_overflow(self):
        with pytest.raises(OrderOverflow):
            total_derivative(u(4))

    @given(jets(), jets())
    def test_leibniz_rule(self, f, g):
        lhs = total_derivative(f * g)
        rhs = total_derivative(f) * g + f * total_derivative(g)
        assert lhs == rhs


class TestSubstitution:
    def test_drop_derivative(self):
        assert substitute_derivative(u(2, 2) + u(1), 2, JetPolynomial.zero(FIELD)) == u(1)

    def test_rejects_same_order_replacement(self):
        with pytest.raises(ValueError):
            substitute_derivative(u(2), 2, u(2))

    @given(jets(), jets(), jets(max_order=1))
    def test_ring_homomorphism(self, f, g, replacement):
        def sub(h):
            return substitute_derivative(h, 2, replacement)

        assert sub(f * g) == sub(f) * sub(g)
        assert sub(f + g) == sub(f) + sub(g)


class TestNormalizeMonic:
    def test_constant_leading_coefficient(self):
        assert normalize_monic(2 * u(4) + 2 * u(1)) == u(4) + u(1)

    def test_function_leading_coefficient(self):
        f = u(2) * X + JetPolynomial.constant(FIELD, X ** 2)
        assert normalize_monic(f) == u(2) + JetPolynomial.constant(FIELD, X)

    def test_already_monic(self):
        f = u(3) + u(1, 2) * Y
        assert normalize_monic(f) == f

    def test_zero(self):
        with pytest.raises(ZeroLeadingCoefficient):
            normalize_monic(JetPolynomial.zero(FIELD))


class TestShape:
    def test_pure_first_derivative_form(self):
        f = u(4) + u(1, 7) * X ** 3 + u(1)
        descriptor = shape(f)
        assert descriptor.order == 4
        assert descriptor.top_is_linear
        assert descriptor.degrees == {(0, 0, 0): 7}

    def test_quadratic_in_second_derivative(self):
        f = u(4) + u(2, 2) * u(1) + u(2) * u(1, 4) + u(1, 6)
        descriptor = shape(f)
        assert descriptor.degree((2, 0, 0)) == 1
        assert descriptor.degree((1, 0, 0)) == 4
        assert descriptor.degree((0, 0, 0)) == 6
        assert descriptor.degree((0, 1, 0)) is None

    def test_bare_top_derivative(self):
        descriptor = shape(u(4))
        assert descriptor.degrees == {}
        assert descriptor.describe()["u3"] == "absent"
