import numpy as np
import pytest

from schur_cheeger import build_graph, generators


@pytest.fixture
def triangle():
    return build_graph([(0, 1, 1), (1, 2, 1), (2, 0, 1)])


@pytest.fixture
def path3():
    return generators.path(3)


@pytest.fixture
def cycle4():
    return generators.cycle(4)


@pytest.fixture(scope="session")
def suite():
    """The fixed-seed acceptance suite: 50 graphs, n in [3, 8], weights 1-4."""
    return generators.random_suite(50)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def small_random_graphs(count, seed, n_min=3, n_max=10, w_max=4):
    return generators.random_suite(count, n_min=n_min, n_max=n_max, w_max=w_max, seed=seed)
