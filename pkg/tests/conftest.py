import random

import pytest

from pptrinomial.gf import get_tower


@pytest.fixture(scope="session")
def tower1():
    return get_tower(1)


@pytest.fixture(scope="session")
def tower2():
    return get_tower(2)


@pytest.fixture(scope="session")
def tower3():
    return get_tower(3)


@pytest.fixture(scope="session")
def tower4():
    return get_tower(4)


@pytest.fixture()
def rng():
    return random.Random(0xC0FFEE)
