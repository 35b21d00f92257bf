from fractions import Fraction

import pytest

from ultrameasure import Measure, cyclic, haar, heisenberg, make_chain


@pytest.fixture(scope="session")
def z3():
    return cyclic(3, 1)


@pytest.fixture(scope="session")
def z9():
    return cyclic(3, 2)


@pytest.fixture(scope="session")
def z27():
    return cyclic(3, 3)


@pytest.fixture(scope="session")
def heis():
    return heisenberg(3, 1)


@pytest.fixture(scope="session")
def nu3(z3):
    """The running example: atoms (5/6, 1/12, 1/12) on Z/3 with q = 5."""
    return Measure.from_map(z3, {0: Fraction(5, 6), 1: Fraction(1, 12), 2: Fraction(1, 12)}, q=5, probability=True)


@pytest.fixture(scope="session")
def z9_chain(z9):
    return make_chain(z9)


@pytest.fixture(scope="session")
def z9_haar(z9):
    return haar(z9, 5)
