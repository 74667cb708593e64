import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings

from uqwhittaker.module import WhittakerModule
from uqwhittaker.scalars import SYMBOLIC, EvalPoint, NumericField

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def M():
    return WhittakerModule()


@pytest.fixture(scope="session")
def A(M):
    return M.algebra


@pytest.fixture(scope="session")
def Mnum():
    return WhittakerModule(NumericField(EvalPoint(Fraction(2), Fraction(1))))


@pytest.fixture(scope="session")
def q():
    return SYMBOLIC.q


@pytest.fixture(scope="session")
def alpha():
    return SYMBOLIC.alpha


@pytest.fixture(scope="session")
def d2(q):
    return (q - 1 / q) ** 2
