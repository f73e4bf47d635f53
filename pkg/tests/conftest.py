import numpy as np
import pytest

from photon_graviton.fock.space import MomentumLabel, build_space, graviton, photon


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def four_modes():
    return [graviton(MomentumLabel.plus_k), photon(MomentumLabel.plus_k),
            graviton(MomentumLabel.minus_k), photon(MomentumLabel.minus_k)]


@pytest.fixture
def pair_space():
    """
    (graviton +k, photon +k), enough for rotating-wave conversion
    """
    return build_space([graviton(), photon()], 4)


def random_state(space, rng):
    from photon_graviton.fock.operators import StateVector, normalize
    amplitudes = rng.normal(size=space.dim) + 1j * rng.normal(size=space.dim)
    return normalize(StateVector(space, amplitudes))
