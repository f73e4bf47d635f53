import numpy as np
import pytest
from hypothesis import assume, given, seed, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy.spatial.transform import Rotation

from photon_graviton import config
from photon_graviton.errors import DomainError, PreconditionError
from photon_graviton.model.polarization import (WaveVector, build_basis, check_delta_pq, coupling_by_contraction,
                                                coupling_lambda, decompose_B, hertz_to_ev, meters_to_inverse_ev,
                                                polarization_tensors, projection_tensor, wavevector_from_frequency)

directions = arrays(np.float64, 3, elements=st.floats(min_value=-1.0, max_value=1.0, allow_subnormal=False))


def random_directions(n, seed_value=1234):
    vectors = np.random.default_rng(seed_value).normal(size=(n, 3))
    return vectors / np.linalg.norm(vectors, axis=1, keepdims=True)


def test_basis_along_x():
    basis = build_basis([1.0, 0, 0])
    assert np.allclose(basis.e_cross, [0, 1, 0])
    assert np.allclose(basis.e_plus, [0, 0, 1])


def test_basis_along_minus_x():
    basis = build_basis([-1.0, 0, 0])
    assert np.allclose(basis.e_cross, [0, -1, 0])
    assert np.allclose(basis.e_plus, [0, 0, 1])
    assert basis.handedness_defect() < 1e-15


def test_basis_on_many_directions():
    for k in random_directions(1000):
        basis = build_basis(k)
        mirrored = build_basis(-k)
        assert basis.orthonormality_defect() < 1e-12
        assert basis.handedness_defect() < 1e-12
        assert np.max(np.abs(mirrored.e_plus - basis.e_plus)) < 1e-12
        assert np.max(np.abs(mirrored.e_cross + basis.e_cross)) < 1e-12


@seed(1234)
@settings(max_examples=200, deadline=None)
@given(k=directions, exponent=st.integers(min_value=0, max_value=20))
def test_basis_properties(k, exponent):
    assume(np.linalg.norm(k) > 1e-3)
    basis = build_basis(k * 2.0 ** exponent)
    assert basis.orthonormality_defect() < 1e-12
    assert basis.handedness_defect() < 1e-12
    assert np.allclose(build_basis(k).e_plus, basis.e_plus, atol=1e-12)


def test_zero_wavevector_rejected():
    with pytest.raises(DomainError):
        build_basis([0, 0, 0])
    with pytest.raises(DomainError):
        WaveVector([1.0, np.nan, 0])
    with pytest.raises(DomainError):
        WaveVector([1.0, 0])


def test_projection_tensor():
    projector = projection_tensor([0, 0, 2.0])
    assert np.allclose(projector, np.diag([1, 1, 0]))
    assert np.trace(projector) == pytest.approx(2)
    for k in random_directions(20):
        projector = projection_tensor(k)
        assert np.allclose(projector @ projector, projector)
        assert np.allclose(projector @ k, 0)


def test_polarization_tensor_along_x():
    e_plus_ij, e_cross_ij = polarization_tensors(build_basis([1.0, 0, 0]))
    assert np.allclose(e_plus_ij, np.diag([0, -1, 1]) / np.sqrt(2))
    assert np.allclose(e_cross_ij, np.array([[0, 0, 0], [0, 0, 1], [0, 1, 0]]) / np.sqrt(2))


def test_polarization_tensors_are_transverse_traceless():
    for k in random_directions(50):
        basis = build_basis(k)
        tensors = polarization_tensors(basis)
        for e_ij in tensors:
            assert np.trace(e_ij) == pytest.approx(0, abs=1e-12)
            assert np.allclose(e_ij, e_ij.T)
            assert np.allclose(e_ij @ basis.khat, 0, atol=1e-12)
        gram = np.array([[np.sum(a * b) for b in tensors] for a in tensors])
        assert np.allclose(gram, np.eye(2), atol=1e-12)
        # completeness over the transverse plane
        projector = projection_tensor(k)
        completeness = sum(np.einsum('ij,kl->ijkl', e, e) for e in tensors)
        expected = 0.5 * (np.einsum('ik,jl->ijkl', projector, projector)
                          + np.einsum('il,jk->ijkl', projector, projector)
                          - np.einsum('ij,kl->ijkl', projector, projector))
        assert np.allclose(completeness, expected, atol=1e-12)


def test_decompose_b():
    decomposition = decompose_B([1.0, 2.0, 3.0], [0, 0, 5.0])
    assert np.allclose(decomposition.B_parallel, [0, 0, 3])
    assert np.allclose(decomposition.B_perp, [1, 2, 0])
    assert decomposition.perp_magnitude == pytest.approx(np.sqrt(5))


def test_parallel_field_does_not_couple():
    assert coupling_lambda([5.0, 0, 0], [1.0, 0, 0]) == 0
    assert coupling_lambda([0, 0, 3.0], [0, 0, -2.0]) == pytest.approx(0, abs=1e-40)


def test_contraction_matches_magnitude():
    for k in random_directions(100, seed_value=7):
        basis = build_basis(k)
        b_field = 7.0 * basis.e_cross + 2.0 * basis.khat
        assert coupling_by_contraction(b_field, k) == pytest.approx(coupling_lambda(b_field, k), rel=1e-12)


def test_coupling_rotation_invariance():
    rotations = Rotation.random(50, random_state=1234)
    b_field, k = np.array([0.3, 10.0, -1.0]), np.array([1.0, 0.2, 0.0])
    reference = coupling_lambda(b_field, k)
    for rotation in rotations:
        assert coupling_lambda(rotation.apply(b_field), rotation.apply(k)) == pytest.approx(reference, rel=1e-12)


def test_coupling_scaling():
    b_field, k = [0, 10.0, 0], [1.0, 0, 0]
    reference = coupling_lambda(b_field, k)
    assert coupling_lambda([0, 30.0, 0], k) == pytest.approx(3 * reference)
    assert coupling_lambda(b_field, [1e-3, 0, 0]) == pytest.approx(reference)
    assert coupling_lambda(b_field, k, planck_mass_gev=2 * config.REDUCED_PLANCK_MASS_GEV) == pytest.approx(
        reference / 2)
    with pytest.raises(DomainError):
        coupling_lambda(b_field, k, planck_mass_gev=0)


def test_delta_structure_along_x():
    basis = build_basis([1.0, 0, 0])
    matrix = check_delta_pq(basis, [0, 1.0, 0])
    assert np.allclose(matrix, np.diag([1, -1]) / np.sqrt(2), atol=1e-12)


def test_delta_structure_requires_alignment():
    basis = build_basis([1.0, 0, 0])
    with pytest.raises(PreconditionError):
        check_delta_pq(basis, [0, 1.0, 0.1])
    with pytest.raises(PreconditionError):
        check_delta_pq(basis, [0.5, 1.0, 0])


def test_delta_structure_on_many_directions():
    for k in random_directions(100, seed_value=99):
        basis = build_basis(k)
        matrix = check_delta_pq(basis, 3.0 * basis.e_cross)
        assert np.allclose(matrix, 3.0 * np.diag([1, -1]) / np.sqrt(2), atol=1e-12)


def test_baseline_magnitude():
    lambda_ = coupling_lambda([0, 10.0, 0], [1.0, 0, 0])
    strength = lambda_ * meters_to_inverse_ev(1e7)
    assert strength == pytest.approx(2.875e-11, rel=1e-3)
    assert 1e-23 <= strength ** 2 <= 1e-19


def test_wavevector_from_frequency():
    k = wavevector_from_frequency(1e8, direction=[0, 2.0, 0])
    assert k.magnitude == pytest.approx(hertz_to_ev(1e8))
    assert np.allclose(k.khat, [0, 1, 0])
    with pytest.raises(DomainError):
        wavevector_from_frequency(-1.0)
