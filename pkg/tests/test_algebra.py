import pytest
from hypothesis import assume, given, strategies as st
from sympy import Rational

from src.core import algebra
from src.utils.exceptions import DivisionByZero, LogTermRequired, NotAPerfectPower, PoleAtPoint

from conftest import FIELD, X, Y

MONOMIALS = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]


@st.composite
def polynomials(draw):
    coefficients = draw(st.lists(st.integers(-3, 3), min_size=len(MONOMIALS), max_size=len(MONOMIALS)))
    return sum((c * X ** i * Y ** j for c, (i, j) in zip(coefficients, MONOMIALS)), FIELD.zero)


@st.composite
def rational_functions(draw):
    numer = draw(polynomials())
    denom = draw(polynomials())
    assume(denom)
    return numer / denom


class TestCanonicalForm:
    def test_inverse_pair(self):
        assert (X / Y) * (Y / X) == FIELD.one

    def test_factor_cancellation(self):
        assert (X ** 2 - Y ** 2) / (X - Y) == X + Y

    def test_cube(self):
        assert (-X / Y ** 2) ** 3 == -X ** 3 / Y ** 6

    def test_denominator_sign_is_positive(self):
        f = algebra.canonical(X / (-Y))
        assert f.denom.LC > 0
        assert f == -X / Y

    @given(polynomials(), polynomials(), polynomials())
    def test_products_cancel_structurally(self, p, q, r):
        assume(q and r)
        assert (p / q) * (q / r) == p / r

    def test_divide_by_zero(self):
        with pytest.raises(DivisionByZero):
            algebra.divide(X, FIELD.zero)


class TestPartialDerivative:
    def test_power_rule(self):
        assert algebra.partial_derivative(-X / Y ** 2, "y") == 2 * X / Y ** 3
        assert algebra.partial_derivative(2 / X, "x") == -2 / X ** 2

    def test_parameter_derivative(self):
        field = algebra.coefficient_field(("k", "l"))
        k, l = algebra.variable(field, "k"), algebra.variable(field, "l")
        assert algebra.partial_derivative(k ** 2 - 5 * l, "k") == 2 * k

    @given(rational_functions())
    def test_mixed_partials_commute(self, f):
        xy = algebra.partial_derivative(algebra.partial_derivative(f, "x"), "y")
        yx = algebra.partial_derivative(algebra.partial_derivative(f, "y"), "x")
        assert xy == yx


class TestGcd:
    def test_monomials(self):
        ring = FIELD.ring
        x, y = ring.gens[:2]
        assert algebra.gcd(x ** 2 * y, x * y ** 2) == x * y

    def test_common_factor(self):
        ring = FIELD.ring
        x, y = ring.gens[:2]
        assert algebra.gcd(x ** 2 - y ** 2, x - y) == x - y

    def test_zero_argument_normalizes(self):
        ring = FIELD.ring
        x = ring.gens[0]
        assert algebra.gcd(2 * x, ring.zero) == x


class TestNthRoot:
    def test_odd_root_keeps_sign(self):
        assert algebra.nth_root(-X ** 3 / Y ** 6, 3) == -X / Y ** 2

    def test_square_root_of_rational_content(self):
        assert algebra.nth_root(X ** 2 / 9, 2) == X / 3

    def test_not_a_perfect_power(self):
        with pytest.raises(NotAPerfectPower):
            algebra.nth_root(X, 2)

    @given(rational_functions(), st.sampled_from([2, 3]))
    def test_round_trip(self, f, n):
        assume(f)
        power = f ** n
        assert algebra.nth_root(power, n) ** n == power


class TestAntiderivative:
    def test_reverse_power_rule(self):
        assert algebra.antiderivative(2 * X / Y ** 3, "y") == -X / Y ** 2

    def test_parameter_is_constant(self):
        field = algebra.coefficient_field(("k",))
        k, x = algebra.variable(field, "k"), algebra.variable(field, "x")
        assert algebra.antiderivative(k ** 2, "x") == k ** 2 * x

    def test_logarithm_rejected(self):
        with pytest.raises(LogTermRequired):
            algebra.antiderivative(1 / Y, "y")

    def test_repeated_factor(self):
        f = 1 / (X + Y) ** 2
        assert algebra.antiderivative(f, "x") == -1 / (X + Y)

    @given(rational_functions(), st.sampled_from(["x", "y"]))
    def test_derivative_of_result(self, f, name):
        try:
            F = algebra.antiderivative(f, name)
        except LogTermRequired:
            return
        assert algebra.partial_derivative(F, name) == f


class TestEvaluate:
    def test_exact_values(self):
        assert algebra.evaluate(-X / Y ** 2, {"x": 1, "y": 2}) == Rational(-1, 4)
        assert algebra.evaluate(2 / X, {"x": 2}) == 1

    def test_pole(self):
        with pytest.raises(PoleAtPoint):
            algebra.evaluate(1 / X, {"x": 0})
