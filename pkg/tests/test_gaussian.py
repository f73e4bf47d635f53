import math

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from photon_graviton.errors import ConvergenceError, DomainError, ModeLookupError
from photon_graviton.fock.operators import (apply, creator, expectation, identity, inner, number_operator,
                                            restrict_to_occupation, vacuum)
from photon_graviton.fock.space import MomentumLabel, build_space, graviton, photon
from photon_graviton.model.gaussian import (CoherentParams, SqueezeParams, TwoModeSqueezeParams, bogoliubov_residual,
                                            check_coherent_guard, check_squeeze_guard, coherent_state, db_to_r,
                                            displacement_op, graviton_norm_const, photon_enhancement_factor,
                                            photon_norm_const, r_to_db, squeeze_op, squeezed_coherent_state,
                                            suggest_n_max, two_mode_squeeze_op, two_mode_squeezed_vacuum)

G_PLUS, G_MINUS = graviton(MomentumLabel.plus_k), graviton(MomentumLabel.minus_k)


def test_parameters_validation():
    with pytest.raises(DomainError):
        SqueezeParams(r=-0.1)
    with pytest.raises(DomainError):
        TwoModeSqueezeParams(z=np.inf)
    with pytest.raises(DomainError):
        CoherentParams(complex(np.nan, 0))
    assert SqueezeParams(r=0.2, phi=-np.pi / 2).phi == pytest.approx(3 * np.pi / 2)
    assert CoherentParams.from_polar(2.0, np.pi / 3).phase == pytest.approx(np.pi / 3)


@pytest.mark.parametrize('squeeze_db, ratio', [(8.0, 6.31), (15.0, 31.62)])
def test_db_conversion(squeeze_db, ratio):
    r = db_to_r(squeeze_db)
    assert np.exp(2 * r) == pytest.approx(ratio, rel=1e-3)
    assert r_to_db(r) == pytest.approx(squeeze_db)
    assert SqueezeParams.from_db(squeeze_db).db == pytest.approx(squeeze_db)


def test_operators_at_zero_are_identity():
    space = build_space([G_PLUS, G_MINUS], 3)
    assert np.allclose(displacement_op(space, G_PLUS, CoherentParams(0)).entries, identity(space).entries)
    assert np.allclose(squeeze_op(space, G_PLUS, SqueezeParams(0)).entries, identity(space).entries)
    two_mode = two_mode_squeeze_op(space, G_PLUS, G_MINUS, TwoModeSqueezeParams(0))
    assert np.allclose(two_mode.entries, identity(space).entries)


def test_operators_are_unitary():
    space = build_space([G_PLUS, G_MINUS], 6)
    assert displacement_op(space, G_MINUS, CoherentParams(0.4 + 0.3j)).unitarity_defect() < 1e-12
    assert squeeze_op(space, G_PLUS, SqueezeParams(0.5, 1.0)).unitarity_defect() < 1e-12
    assert two_mode_squeeze_op(space, G_PLUS, G_MINUS, TwoModeSqueezeParams(0.3, 0.7)).unitarity_defect() < 1e-12


def test_squeezed_vacuum_has_even_support():
    space = build_space([photon()], 60)
    psi = apply(squeeze_op(space, photon(), SqueezeParams(0.3, 0.4)), vacuum(space))
    assert np.max(np.abs(psi.amplitudes[1::2])) < 1e-14
    assert abs(psi.amplitude((0,))) == pytest.approx(1 / np.sqrt(np.cosh(0.3)), abs=1e-10)


def test_two_mode_squeezed_vacuum_pairs_occupations():
    space = build_space([G_PLUS, G_MINUS], 20)
    psi = two_mode_squeezed_vacuum(space, G_PLUS, G_MINUS, TwoModeSqueezeParams(0.4))
    table = space.occupation_table()
    unpaired = table[:, 0] != table[:, 1]
    assert np.max(np.abs(psi.amplitudes[unpaired])) < 1e-14


def test_squeezed_vacuum_occupation():
    space = build_space([photon()], 40)
    psi = apply(squeeze_op(space, photon(), SqueezeParams(0.5)), vacuum(space))
    assert expectation(number_operator(space, photon()), psi).real == pytest.approx(0.271540, abs=1e-6)


def test_two_mode_amplitude_ratio():
    space = build_space([G_PLUS, G_MINUS], 32)
    g = TwoModeSqueezeParams(0.6, chi=0.5)
    psi = two_mode_squeezed_vacuum(space, G_PLUS, G_MINUS, g)
    for n in range(5):
        ratio = psi.amplitude((n + 1, n + 1)) / psi.amplitude((n, n))
        assert ratio == pytest.approx(np.exp(0.5j) * np.tanh(0.6), abs=1e-8)
    assert abs(psi.amplitude((0, 0))) == pytest.approx(1 / np.cosh(0.6), abs=1e-10)


def test_coherent_state_is_poissonian():
    space = build_space([photon()], 24)
    psi = coherent_state(space, photon(), CoherentParams(1.0))
    expected = [np.exp(-1) / math.factorial(n) for n in range(8)]
    assert np.allclose(psi.probabilities()[:8], expected, atol=1e-10)


def test_guards():
    with pytest.raises(ConvergenceError) as e:
        check_coherent_guard(CoherentParams(2.0), 12)
    assert e.value.required_n_max == 16
    with pytest.raises(ConvergenceError) as e:
        check_squeeze_guard(1.5, 2)
    assert e.value.required_n_max == 5
    assert 'requires n_max >= 5' in str(e.value)
    check_squeeze_guard(1.5, 5)


def test_operators_enforce_guards():
    space = build_space([photon()], 4)
    with pytest.raises(ConvergenceError):
        displacement_op(space, photon(), CoherentParams(1.5))
    with pytest.raises(ConvergenceError):
        squeeze_op(space, photon(), SqueezeParams(2.0))
    with pytest.raises(ModeLookupError):
        squeeze_op(space, graviton(), SqueezeParams(0.1))


def test_two_mode_squeeze_needs_distinct_modes():
    space = build_space([G_PLUS, G_MINUS], 4)
    with pytest.raises(DomainError):
        two_mode_squeeze_op(space, G_PLUS, G_PLUS, TwoModeSqueezeParams(0.1))


@pytest.mark.parametrize('r, phi, n_max', [(0.5, 0.0, 20), (1.0, np.pi / 3, 30)])
def test_bogoliubov_transformation(r, phi, n_max):
    space = build_space([photon()], n_max)
    assert bogoliubov_residual(space, photon(), SqueezeParams(r, phi)) < 1e-7


def test_displacement_shifts_annihilator():
    space = build_space([photon()], 60)
    beta = 0.5
    displacement = displacement_op(space, photon(), CoherentParams(beta))
    b = creator(space, photon()).dagger
    shifted = displacement.dagger @ b @ displacement - b - identity(space) * beta
    assert np.max(np.abs(restrict_to_occupation(shifted, 30))) < 1e-8


@pytest.mark.parametrize('r', [0.0, 0.25, 0.5, 0.8])
@pytest.mark.parametrize('beta_abs', [0.0, 0.5, 1.0, 1.5])
@pytest.mark.parametrize('phase', [0.0, np.pi / 4, np.pi / 2, np.pi])
def test_photon_normalization(r, beta_abs, phase):
    s, c = SqueezeParams(r, phase), CoherentParams.from_polar(beta_abs, phase)
    space = build_space([photon()], suggest_n_max(s, c, tolerance=1e-12))
    added = apply(creator(space, photon()), squeezed_coherent_state(space, photon(), s, c))
    assert added.norm ** 2 == pytest.approx(photon_enhancement_factor(s, c), abs=1e-6)
    assert photon_norm_const(s, c) * added.norm == pytest.approx(1, abs=1e-6)


def test_photon_normalization_example():
    assert photon_norm_const(SqueezeParams(0.5), CoherentParams(1.0)) == pytest.approx(0.500638, abs=1e-6)
    assert photon_norm_const(SqueezeParams(), CoherentParams()) == 1


@pytest.mark.parametrize('z, expected', [(0.5, 0.886819), (1.0, 0.648054)])
def test_graviton_normalization(z, expected):
    g = TwoModeSqueezeParams(z)
    assert graviton_norm_const(g) == pytest.approx(expected, abs=1e-6)
    space = build_space([G_PLUS, G_MINUS], 40)
    added = apply(creator(space, G_PLUS), two_mode_squeezed_vacuum(space, G_PLUS, G_MINUS, g))
    assert graviton_norm_const(g) * added.norm == pytest.approx(1, abs=1e-6)


def test_occupation_depends_on_phase():
    s = SqueezeParams(0.5, np.pi / 2)
    aligned = CoherentParams.from_polar(1.0, np.pi / 4)  # cos(2 arg beta - phi) = 1
    opposed = CoherentParams.from_polar(1.0, 3 * np.pi / 4)  # cos(2 arg beta - phi) = -1
    for c in (aligned, opposed):
        space = build_space([photon()], suggest_n_max(s, c, tolerance=1e-12))
        psi = squeezed_coherent_state(space, photon(), s, c)
        occupation = expectation(number_operator(space, photon()), psi).real
        assert occupation == pytest.approx(photon_enhancement_factor(s, c) - 1, abs=1e-8)
    assert photon_enhancement_factor(s, aligned) > photon_enhancement_factor(s, opposed)


def test_squeeze_after_displacement():
    # <b> = beta cosh r + beta* e^{i phi} sinh r for S(zeta) D(beta)|0>
    space = build_space([photon()], 40)
    s, c = SqueezeParams(0.3, 0.2), CoherentParams(0.8 + 0.3j)
    psi = squeezed_coherent_state(space, photon(), s, c)
    mean = expectation(creator(space, photon()).dagger, psi)
    expected = c.beta * np.cosh(s.r) + np.conj(c.beta) * np.exp(1j * s.phi) * np.sinh(s.r)
    assert mean == pytest.approx(expected, abs=1e-6)
    reversed_order = apply(displacement_op(space, photon(), c), apply(squeeze_op(space, photon(), s), vacuum(space)))
    assert abs(inner(reversed_order, psi)) < 1 - 1e-3


@seed(1234)
@settings(max_examples=50, deadline=None)
@given(r=st.floats(min_value=0, max_value=2), beta_abs=st.floats(min_value=0, max_value=3))
def test_suggested_cutoff_satisfies_guards(r, beta_abs):
    c = CoherentParams(beta_abs)
    n_max = suggest_n_max(SqueezeParams(r), c)
    check_coherent_guard(c, n_max)
    check_squeeze_guard(r, n_max)
    assert suggest_n_max(SqueezeParams(r), c, tolerance=1e-12) >= n_max


def test_suggest_n_max_rejects_bad_tolerance():
    with pytest.raises(DomainError):
        suggest_n_max(tolerance=1.5)
