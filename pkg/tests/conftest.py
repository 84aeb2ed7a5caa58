"""Shared fixtures: small groups and the bundled twists used across tests."""

import numpy as np
import pytest

from natorus import (
    make_group,
    octonion_algebra,
    octonion_associator_tricharacter,
    octonion_sigma,
)


@pytest.fixture
def rng():
    return np.random.default_rng(20240915)


@pytest.fixture(scope="session")
def z2cubed():
    return make_group([2, 2, 2])


@pytest.fixture(scope="session")
def z4():
    return make_group([4])


@pytest.fixture(scope="session")
def z4cubed():
    return make_group([4, 4, 4])


@pytest.fixture(scope="session")
def oct_algebra():
    return octonion_algebra()


@pytest.fixture(scope="session")
def phi_oct():
    return octonion_associator_tricharacter()


@pytest.fixture(scope="session")
def sigma_oct():
    return octonion_sigma()
