import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from photon_graviton.errors import ConfigurationError, ModeLookupError, ResourceError
from photon_graviton.fock.space import (FockSpace, ModeId, MomentumLabel, Polarization, Species, build_space,
                                        graviton, photon)


def test_mode_id_accepts_strings():
    mode = ModeId('photon', '-k', 'cross')
    assert mode == photon(MomentumLabel.minus_k, Polarization.cross)
    assert mode.species is Species.photon
    assert mode.label == 'γ(-k,cross)'


def test_mirrored_momentum():
    assert MomentumLabel.plus_k.mirrored is MomentumLabel.minus_k
    assert MomentumLabel.minus_k.mirrored is MomentumLabel.plus_k


@pytest.mark.parametrize('n_modes, n_max, dim', [(1, 1, 2), (4, 2, 81), (4, 6, 2401)])
def test_dimension(four_modes, n_modes, n_max, dim):
    space = build_space(four_modes[:n_modes], n_max)
    assert space.dim == dim


def test_duplicate_modes_rejected():
    with pytest.raises(ConfigurationError):
        build_space([photon(), photon()], 2)


@pytest.mark.parametrize('n_max', [0, -1, 1.5])
def test_invalid_cutoff_rejected(n_max):
    with pytest.raises(ConfigurationError):
        FockSpace(modes=(photon(),), n_max=n_max)


def test_empty_space_rejected():
    with pytest.raises(ConfigurationError):
        build_space([], 3)


def test_dimension_budget(four_modes):
    with pytest.raises(ResourceError):
        build_space(four_modes, 20)  # 21^4 > 1e5
    with pytest.raises(ResourceError):
        build_space(four_modes, 2, dimension_budget=80)


def test_unknown_mode_lookup(pair_space):
    with pytest.raises(ModeLookupError) as e:
        pair_space.position(photon(MomentumLabel.minus_k))
    assert 'γ(-k,plus)' in str(e.value)


def test_first_mode_slowest(pair_space):
    # local dimension 5
    assert pair_space.index((0, 1)) == 1
    assert pair_space.index((1, 0)) == 5
    assert pair_space.occupations(7) == (1, 2)


@settings(max_examples=25, deadline=None)
@given(n_modes=st.integers(min_value=1, max_value=4), n_max=st.integers(min_value=1, max_value=4))
def test_basis_bijection(n_modes, n_max):
    modes = [graviton(), photon(), graviton(MomentumLabel.minus_k), photon(MomentumLabel.minus_k)][:n_modes]
    space = build_space(modes, n_max)
    assert all(space.index(space.occupations(i)) == i for i in range(space.dim))
    table = space.occupation_table()
    assert table.shape == (space.dim, n_modes)
    assert len({tuple(row) for row in table}) == space.dim


def test_occupations_out_of_range(pair_space):
    with pytest.raises(ConfigurationError):
        pair_space.index((5, 0))
    with pytest.raises(ConfigurationError):
        pair_space.index((0,))


def test_subspace_keeps_order(four_modes):
    space = build_space(four_modes, 2)
    sub = space.subspace([photon(MomentumLabel.minus_k), graviton()])
    assert sub.modes == (graviton(), photon(MomentumLabel.minus_k))
    assert sub.n_max == 2


def test_join(pair_space):
    other = build_space([photon(MomentumLabel.plus_k2)], 4)
    joined = pair_space.join(other)
    assert joined.modes[-1] == photon(MomentumLabel.plus_k2)
    assert joined.dim == 125
    with pytest.raises(ConfigurationError):
        pair_space.join(build_space([photon(MomentumLabel.plus_k2)], 3))
