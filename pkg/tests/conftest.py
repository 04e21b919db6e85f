import random

import pytest

from crd.sampling import (
    orbit_ready_polygon,
    random_c_vector,
    random_closed_polygon,
    random_related_pair,
    random_twisted_polygon,
)

MASTER_SEED = 20260810


@pytest.fixture
def rng():
    return random.Random(MASTER_SEED)


@pytest.fixture
def make_closed(rng):
    def factory(n, field="complex"):
        return random_closed_polygon(rng, n, field)

    return factory


@pytest.fixture
def make_twisted(rng):
    def factory(n, field="complex"):
        return random_twisted_polygon(rng, n, field)

    return factory


@pytest.fixture
def make_c(rng):
    def factory(n, field="complex"):
        return random_c_vector(rng, n, field)

    return factory


@pytest.fixture
def make_pair(rng):
    def factory(n, alpha, field="complex"):
        return random_related_pair(rng, n, alpha, field)

    return factory


@pytest.fixture
def make_orbit_ready(rng):
    def factory(n, field, alpha):
        return orbit_ready_polygon(rng, n, field, alpha)

    return factory
