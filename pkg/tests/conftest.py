"""测试公共夹具"""

import os
import random
import tempfile

os.environ.setdefault("CONDLIN_LOG_DIR", tempfile.mkdtemp(prefix="condlin-logs-"))

import pytest
from hypothesis import settings
from sympy import Rational

from src.core import algebra
from src.core.jet import JetPolynomial
from src.core.models.forms import RootCoefficients
from src.core.parser import parse_rational

settings.register_profile("condlin", deadline=None, max_examples=40)
settings.load_profile("condlin")

FIELD = algebra.coefficient_field(())
X = algebra.variable(FIELD, "x")
Y = algebra.variable(FIELD, "y")

LAMBDAS = (1, -1, 2, -2, Rational(1, 2), Rational(-1, 2))


def make_root(c="0", g="0", h="0", d="0", params=()) -> RootCoefficients:
    values = dict(zip("cghd", (c, g, h, d)))
    return RootCoefficients.from_mapping(
        {name: parse_rational(text, params) for name, text in values.items()}
    )


def monomial(lam, m: int, n: int):
    value = algebra.constant(FIELD, lam)
    value *= X ** m if m >= 0 else 1 / X ** (-m)
    value *= Y ** n if n >= 0 else 1 / Y ** (-n)
    return value


def random_root(seed: int) -> RootCoefficients:
    """系数为 lambda x^m y^n 的随机根, 约三分之一 c = 0"""
    rng = random.Random(seed)

    def pick(zero_chance: float):
        if rng.random() < zero_chance:
            return FIELD.zero
        return monomial(rng.choice(LAMBDAS), rng.randint(-2, 2), rng.randint(-2, 2))

    return RootCoefficients(pick(1 / 3), pick(0.2), pick(0.2), pick(0.2))


def u(k: int, power: int = 1, field=FIELD) -> JetPolynomial:
    return JetPolynomial.derivative(field, k, power)


@pytest.fixture
def polar_root() -> RootCoefficients:
    return make_root("x", "0", "2/x", "0")


@pytest.fixture
def exponential_root() -> RootCoefficients:
    return make_root("0", "2/y", "k/2", "-l*y", params=("k", "l"))


@pytest.fixture
def mixed_root() -> RootCoefficients:
    return make_root("-x/y^2", "1/y", "2/x", "0")
