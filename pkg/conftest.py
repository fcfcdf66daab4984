"""Shared fixtures for the Growth Lab test suite"""

import random
from pathlib import Path

import pytest

from base_algebra import EnvelopingAlgebra, LieStructure, PolynomialAlgebra, abelian_lie, field_algebra, sl2_lie
from scalars import ScalarField

SCENARIOS = Path(__file__).parent / "scenarios"


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: acceptance-scale runs (still part of the default suite)")


@pytest.fixture
def qq():
    return ScalarField.rational()


@pytest.fixture
def gf7():
    return ScalarField.prime(7)


@pytest.fixture
def base_field(qq):
    return field_algebra(qq)


@pytest.fixture
def poly1(qq):
    return PolynomialAlgebra(qq, 1, ["x"])


@pytest.fixture
def poly2(qq):
    return PolynomialAlgebra(qq, 2, ["x", "y"])


@pytest.fixture
def sl2(qq):
    return sl2_lie(qq)


@pytest.fixture
def u_sl2(sl2):
    return EnvelopingAlgebra(sl2)


@pytest.fixture
def u_abelian2(qq):
    return EnvelopingAlgebra(abelian_lie(qq, 2))


@pytest.fixture
def rng():
    return random.Random(42)


@pytest.fixture
def scenarios_dir():
    return SCENARIOS


@pytest.fixture
def random_lie(qq):
    """
    Factory for random 3-dim Lie algebras F x F^2, x acting on span(y, z)
    by a random 2x2 matrix; Jacobi holds for every matrix.
    """
    def build(seed, field=None):
        field = field or qq
        rng = random.Random(seed)
        a, b, c, d = (field(rng.randint(-3, 3)) for _ in range(4))
        return LieStructure(field, 3, {(0, 1): {1: a, 2: b}, (0, 2): {1: c, 2: d}}, names=["x", "y", "z"])

    return build
