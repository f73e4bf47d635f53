import logging
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from photon_graviton import config
from photon_graviton.errors import DomainError, PreconditionError

logging.basicConfig(level=logging.INFO)

logger = logging.getLogger(__name__)

VectorLike = Union[Sequence[float], np.ndarray]


def _as_vector(values: VectorLike, name: str) -> np.ndarray:
    vector = np.asarray(values, dtype=float)
    if vector.shape != (3,):
        raise DomainError(f"{name} must be a real 3-vector, got shape {vector.shape}")
    if not np.all(np.isfinite(vector)):
        raise DomainError(f"{name} must have finite components, got {vector}")
    return vector


"""
Unit helpers (natural units, energies in eV)
"""


def tesla_to_ev2(b_tesla: float) -> float:
    return b_tesla * config.TESLA_TO_EV2


def meters_to_inverse_ev(length_m: float) -> float:
    return length_m * config.METER_TO_INV_EV


def hertz_to_ev(frequency_hz: float) -> float:
    """
    Photon energy hbar*omega of a frequency, with omega = 2*pi*f
    """
    return 2 * np.pi * frequency_hz * config.HERTZ_TO_EV


def planck_mass_ev(planck_mass_gev: float = config.REDUCED_PLANCK_MASS_GEV) -> float:
    return planck_mass_gev * config.GEV_TO_EV


@dataclass(frozen=True)
class WaveVector:
    components: np.ndarray  # expressed in eV

    def __post_init__(self):
        components = _as_vector(self.components, 'Wavevector')
        if not np.any(components):
            raise DomainError("Wavevector must be non-zero!")
        components.flags.writeable = False
        object.__setattr__(self, 'components', components)

    @property
    def magnitude(self) -> float:
        return float(np.linalg.norm(self.components))

    @property
    def khat(self) -> np.ndarray:
        return self.components / self.magnitude

    def mirrored(self) -> 'WaveVector':
        return WaveVector(-self.components)


def as_wavevector(k: Union['WaveVector', VectorLike]) -> WaveVector:
    if isinstance(k, WaveVector):
        return k
    return WaveVector(k)


def wavevector_from_frequency(frequency_hz: float, direction: VectorLike = (1.0, 0.0, 0.0)) -> WaveVector:
    """
    Wavevector of magnitude omega = 2*pi*f (in eV) along `direction`
    """
    if frequency_hz <= 0:
        raise DomainError(f"Frequency must be positive, got {frequency_hz} Hz")
    direction = as_wavevector(direction).khat
    return WaveVector(direction * hertz_to_ev(frequency_hz))


@dataclass(frozen=True)
class PolarizationBasis:
    e_plus: np.ndarray
    e_cross: np.ndarray
    khat: np.ndarray

    def orthonormality_defect(self) -> float:
        frame = np.stack([self.khat, self.e_cross, self.e_plus])
        return float(np.max(np.abs(frame @ frame.T - np.eye(3))))

    def handedness_defect(self) -> float:
        return float(np.max(np.abs(np.cross(self.khat, self.e_cross) - self.e_plus)))

    @property
    def vectors(self) -> dict:
        return {'plus': self.e_plus, 'cross': self.e_cross}


@dataclass(frozen=True)
class FieldDecomposition:
    B_parallel: np.ndarray
    B_perp: np.ndarray

    @property
    def perp_magnitude(self) -> float:
        return float(np.linalg.norm(self.B_perp))


def build_basis(k: Union[WaveVector, VectorLike]) -> PolarizationBasis:
    """
    Deterministic polarization basis of a wavevector.

    The orientation sign s is taken from the largest |component| of khat so that u = s*khat is
    identical for k and -k. Gram-Schmidt on the axis with the smallest |u| component gives e_cross(u),
    e_plus = u x e_cross(u) and e_cross = s*e_cross(u). This yields (khat, e_cross, e_plus) right-handed,
    e_plus(-k) = e_plus(k) and e_cross(-k) = -e_cross(k) as exact vectors, with k = x gives e_cross = y, e_plus = z.
    Args:
        k (WaveVector): non-zero wavevector
    Returns:
        - PolarizationBasis
    """
    khat = as_wavevector(k).khat
    sign = 1.0 if khat[np.argmax(np.abs(khat))] > 0 else -1.0
    u = sign * khat

    seed = np.zeros(3)
    seed[np.argmin(np.abs(u))] = 1.0
    e_cross_u = seed - np.dot(seed, u) * u
    e_cross_u /= np.linalg.norm(e_cross_u)
    e_plus = np.cross(u, e_cross_u)

    return PolarizationBasis(e_plus=e_plus, e_cross=sign * e_cross_u, khat=khat)


def projection_tensor(k: Union[WaveVector, VectorLike]) -> np.ndarray:
    """
    Transverse projector P_ij = delta_ij - k_i k_j / k^2
    """
    khat = as_wavevector(k).khat
    return np.eye(3) - np.outer(khat, khat)


def polarization_tensors(basis: PolarizationBasis) -> Tuple[np.ndarray, np.ndarray]:
    """
    Symmetric traceless transverse tensors
    Args:
        basis (PolarizationBasis):
    Returns:
        - Tuple[np.ndarray, np.ndarray]: e^+_ij = (e+e+ - exex)/sqrt(2), e^x_ij = (e+ex + exe+)/sqrt(2)
    """
    plus, cross = basis.e_plus, basis.e_cross
    e_plus_ij = (np.outer(plus, plus) - np.outer(cross, cross)) / np.sqrt(2)
    e_cross_ij = (np.outer(plus, cross) + np.outer(cross, plus)) / np.sqrt(2)
    return e_plus_ij, e_cross_ij


def decompose_B(b_field: VectorLike, k: Union[WaveVector, VectorLike]) -> FieldDecomposition:
    """
    Split B into components parallel and perpendicular to k
    """
    b_field = _as_vector(b_field, 'Magnetic field')
    khat = as_wavevector(k).khat
    b_parallel = np.dot(khat, b_field) * khat
    return FieldDecomposition(B_parallel=b_parallel, B_perp=b_field - b_parallel)


def coupling_lambda(b_field_tesla: VectorLike, k: Union[WaveVector, VectorLike],
                    planck_mass_gev: float = config.REDUCED_PLANCK_MASS_GEV) -> float:
    """
    Photon-graviton mixing rate lambda = B_perp / (sqrt(2) M_pl)
    Args:
        b_field_tesla (VectorLike): magnetic field in tesla
        k (WaveVector): propagation direction
        planck_mass_gev (float): reduced Planck mass in GeV
    Returns:
        - float: lambda in eV
    """
    if not planck_mass_gev > 0:
        raise DomainError(f"Planck mass must be positive, got {planck_mass_gev} GeV")
    b_perp = decompose_B(b_field_tesla, k).perp_magnitude
    return tesla_to_ev2(b_perp) / (np.sqrt(2) * planck_mass_ev(planck_mass_gev))


def levi_civita() -> np.ndarray:
    epsilon = np.zeros((3, 3, 3))
    for (i, j, m), parity in {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
                              (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}.items():
        epsilon[i, j, m] = parity
    return epsilon


def coupling_by_contraction(b_field_tesla: VectorLike, k: Union[WaveVector, VectorLike],
                            planck_mass_gev: float = config.REDUCED_PLANCK_MASS_GEV) -> float:
    """
    lambda from the explicit contraction eps_ilm e+_i (k_l/k) B_perp_m / (sqrt(2) M_pl), in eV.
    Equals coupling_lambda when B_perp lies along +e_cross.
    """
    basis = build_basis(k)
    b_perp = tesla_to_ev2(1.0) * decompose_B(b_field_tesla, k).B_perp
    value = np.einsum('ilm,i,l,m->', levi_civita(), basis.e_plus, basis.khat, b_perp)
    return float(value / (np.sqrt(2) * planck_mass_ev(planck_mass_gev)))


def check_delta_pq(basis: PolarizationBasis, b_perp: VectorLike) -> np.ndarray:
    """
    Polarization structure of the interaction, eps_ilm B_perp^m e^P_ij(k) e^Q_j(-k) khat^l
    Args:
        basis (PolarizationBasis): basis of k; the -k vectors follow the parity convention
        b_perp (VectorLike): transverse field, aligned with e_cross
    Returns:
        - np.ndarray: 2x2 matrix indexed (P, Q) in the order (plus, cross)
    """
    b_perp = _as_vector(b_perp, 'B_perp')
    scale = max(float(np.linalg.norm(b_perp)), 1.0)
    misalignment = max(float(np.linalg.norm(np.cross(b_perp, basis.e_cross))),
                       abs(float(np.dot(b_perp, basis.khat))))
    if misalignment > config.ALIGNMENT_TOL * scale:
        raise PreconditionError(
            f"B_perp must be aligned with e_cross (misalignment={misalignment:.3e})"
        )

    tensors = polarization_tensors(basis)
    mirrored_vectors = (basis.e_plus, -basis.e_cross)
    field_direction = np.einsum('ilm,l,m->i', levi_civita(), basis.khat, b_perp)

    matrix = np.zeros((2, 2))
    for p, e_p_ij in enumerate(tensors):
        for q, e_q_j in enumerate(mirrored_vectors):
            matrix[p, q] = field_direction @ e_p_ij @ e_q_j
    return matrix
