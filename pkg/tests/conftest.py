import random

import pytest

from subgraph_wl import generators


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture(scope="session")
def c6():
    return generators.cycle(6)


@pytest.fixture(scope="session")
def two_c3():
    return generators.disjoint_cycles([3, 3])
