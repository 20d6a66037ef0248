import random

import pytest

from src.core import algebra
from src.core.models.forms import RootCoefficients
from src.core.models.geometry import ChristoffelSet, GaugeChoice, MetricState
from src.services.geometry import (
    GaugeSearch,
    MetricIntegrator,
    complete,
    curvature,
    geodesic_conditions,
    is_flat,
    path_independence_check,
)
from src.utils.exceptions import GaugeNotFound, PoleOnPath, UnknownSymbol
from src.utils.validators import GeometrySettings

from conftest import FIELD, LAMBDAS, X, Y, make_root, monomial

SETTINGS = GeometrySettings(gauge_bound=2, tolerance=1e-8, steps_per_unit=1024)
START = (1.0, 1.0)
IDENTITY = MetricState(p=1.0, q=0.0, r=1.0)


@pytest.fixture
def polar_set(polar_root) -> ChristoffelSet:
    return complete(polar_root, GaugeChoice(FIELD.zero, -1 / X))


def random_set(seed: int) -> ChristoffelSet:
    rng = random.Random(seed)
    return ChristoffelSet(*(
        monomial(rng.choice(LAMBDAS), rng.randint(-2, 2), rng.randint(-2, 2))
        for _ in range(6)
    ))


class TestCompletion:
    def test_gauge_fills_the_free_slots(self, polar_root):
        cs = complete(polar_root, GaugeChoice(Y, -1 / X))
        assert cs.a == 0
        assert cs.b == Y
        assert cs.c == X
        assert cs.d == 0
        assert cs.e == -1 / X
        assert cs.f == 2 * Y

    def test_polar_set_is_flat(self, polar_set):
        assert is_flat(polar_set)
        assert curvature(polar_set).is_flat

    def test_zero_gauge_leaves_polar_root_curved(self, polar_root):
        cs = complete(polar_root, GaugeChoice.zero(FIELD))
        assert not is_flat(cs)
        assert not curvature(cs).is_flat


@pytest.mark.parametrize("seed", range(50))
def test_conditions_are_curvature_components(seed):
    cs = random_set(seed)
    res1, res2, res3, res4 = geodesic_conditions(cs)
    r = curvature(cs)
    assert res1 == r.r1_112
    assert res2 == r.r1_212
    assert res3 == r.r2_112
    assert res4 == -(r.r1_112 + r.r2_212)



def pullback(big_x, big_y) -> ChristoffelSet:
    """坐标 (X, Y) 中联络为零时, 在 (x, y) 中的系数"""
    def d(v, name):
        return algebra.partial_derivative(v, name)

    maps = (big_x, big_y)
    jac = [[d(m, "x"), d(m, "y")] for m in maps]
    det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0]
    inverse = [[jac[1][1] / det, -jac[0][1] / det], [-jac[1][0] / det, jac[0][0] / det]]
    hessian = [[[d(d(m, j), k) for k in "xy"] for j in "xy"] for m in maps]

    def gamma(i, j, k):
        return sum((inverse[i][a] * hessian[a][j][k] for a in range(2)), FIELD.zero)

    return ChristoffelSet(
        a=-gamma(0, 0, 0), b=-gamma(0, 0, 1), c=-gamma(0, 1, 1),
        d=-gamma(1, 0, 0), e=-gamma(1, 0, 1), f=-gamma(1, 1, 1),
    )


class TestFlatSets:
    @pytest.mark.parametrize("big_x, big_y", [
        (X, 1 / Y),
        (X + Y ** 2, Y),
        (X * Y, Y),
        (X, Y + X ** 3 / Y),
    ])
    def test_pulled_back_sets_are_flat(self, big_x, big_y):
        cs = pullback(big_x, big_y)
        assert all(not r for r in geodesic_conditions(cs))
        assert curvature(cs).is_flat

        bent = ChristoffelSet(cs.a, cs.b, cs.c + X * Y, cs.d, cs.e, cs.f)
        assert not is_flat(bent)
        assert not curvature(bent).is_flat

    def test_root_with_a_constant_gauge(self):
        # y'' - 2y'^2/y + y' + 2y = 0 is flat with b = 0, e = 1
        root = make_root("0", "2/y", "1", "-2*y")
        cs = complete(root, GaugeChoice(FIELD.zero, FIELD.one))
        assert all(not r for r in geodesic_conditions(cs))
        assert curvature(cs).is_flat

        gauge = GaugeSearch(SETTINGS).search(root)
        assert is_flat(complete(root, gauge))
        assert curvature(complete(root, gauge)).is_flat


class TestGaugeSearch:
    def test_polar_root(self, polar_root):
        gauge = GaugeSearch(SETTINGS).search(polar_root)
        assert gauge.b == 0
        assert gauge.e == -1 / X

    def test_flat_root_needs_no_gauge(self):
        assert GaugeSearch(SETTINGS).search(make_root()).is_zero()

    def test_bound_is_validated(self, polar_root):
        with pytest.raises(ValueError):
            GaugeSearch(SETTINGS).search(polar_root, bound=4)

    @pytest.mark.slow
    def test_exhausted_search(self):
        root = RootCoefficients(FIELD.zero, FIELD.zero, FIELD.zero, Y ** 3)
        with pytest.raises(GaugeNotFound) as info:
            GaugeSearch(SETTINGS).search(root, bound=2)
        assert info.value.details["bound"] == 2


class TestMetric:
    def test_polar_metric_along_x(self, polar_set):
        state = MetricIntegrator(polar_set, SETTINGS).integrate(START, IDENTITY, [(2.0, 1.0)])
        assert state.p == pytest.approx(1.0, abs=1e-8)
        assert state.q == pytest.approx(0.0, abs=1e-8)
        assert state.r == pytest.approx(4.0, abs=1e-8)

    def test_polar_metric_along_y_is_constant(self, polar_set):
        state = MetricIntegrator(polar_set, SETTINGS).integrate(START, IDENTITY, [(1.0, 3.0)])
        assert state.distance(IDENTITY) < 1e-8

    def test_zero_set_keeps_the_state(self):
        cs = complete(make_root(), GaugeChoice.zero(FIELD))
        initial = MetricState(p=2.0, q=-1.0, r=0.5)
        state = MetricIntegrator(cs, SETTINGS).integrate((0.0, 0.0), initial, [(1.0, 2.0), (-1.0, 0.5)])
        assert state.distance(initial) < 1e-12

    def test_path_independence_when_flat(self, polar_set):
        report = path_independence_check(
            polar_set, START, IDENTITY, [(2.0, 2.0), (1.5, 0.5)], tolerance=1e-8, steps_per_unit=1024,
        )
        assert report.independent
        assert report.max_discrepancy < 1e-8
        assert len(report.as_dict()["targets"]) == 2

    def test_wrong_gauge_is_path_dependent(self, polar_root):
        cs = complete(polar_root, GaugeChoice.zero(FIELD))
        report = path_independence_check(
            cs, START, IDENTITY, [(2.0, 2.0)], tolerance=1e-6, steps_per_unit=256,
        )
        assert not report.independent

    def test_fourth_order_convergence(self, polar_set):
        integrator = MetricIntegrator(polar_set, SETTINGS)

        def error(steps):
            state = integrator.integrate(START, IDENTITY, [(2.0, 1.0)], steps_per_unit=steps)
            return abs(state.r - 4.0)

        assert error(4) / error(8) >= 8

    def test_parameters_are_substituted(self, exponential_root):
        cs = complete(exponential_root, GaugeChoice.zero(exponential_root.field))
        with pytest.raises(UnknownSymbol):
            MetricIntegrator(cs, SETTINGS)
        integrator = MetricIntegrator(cs, SETTINGS, parameters={"k": 1.0, "l": 2.0})
        state = integrator.integrate(START, IDENTITY, [(1.5, 1.0)], steps_per_unit=64)
        assert state.p != 1.0

    def test_pole_on_path(self, polar_set):
        with pytest.raises(PoleOnPath):
            MetricIntegrator(polar_set, SETTINGS).integrate(START, IDENTITY, [(-1.0, 1.0)], steps_per_unit=4)

    def test_pole_between_samples(self, polar_set):
        integrator = MetricIntegrator(polar_set, SETTINGS)
        with pytest.raises(PoleOnPath) as info:
            integrator.integrate(START, IDENTITY, [(-1.3, 1.0)], steps_per_unit=1024)
        x, y = info.value.details["point"]
        assert x == pytest.approx(0.0, abs=1e-6)
        assert y == pytest.approx(1.0)

    def test_segment_parallel_to_pole_line(self, polar_set):
        integrator = MetricIntegrator(polar_set, SETTINGS)
        state = integrator.integrate(START, IDENTITY, [(1.0, -2.0)], steps_per_unit=64)
        assert state.p == pytest.approx(1.0)
