import logging
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
from scipy import linalg

from photon_graviton import config
from photon_graviton.errors import ConfigurationError, DomainError
from photon_graviton.fock.operators import StateVector
from photon_graviton.fock.space import FockSpace, ModeId

logging.basicConfig(level=logging.INFO)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DensityMatrix:
    space: FockSpace
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.shape != (self.space.dim, self.space.dim):
            raise ConfigurationError(
                f"Density matrix of shape {entries.shape} does not match space dimension {self.space.dim}"
            )
        entries.flags.writeable = False
        object.__setattr__(self, 'entries', entries)

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.entries)))

    @property
    def purity(self) -> float:
        """
        Tr(rho^2), 1 for pure states
        """
        return float(np.real(np.sum(self.entries * self.entries.T)))

    def eigenvalues(self) -> np.ndarray:
        return linalg.eigvalsh(self.entries)

    def validate(self, tol: float = config.DENSITY_VALIDATION_TOL):
        """
        Raises a DomainError unless the matrix is Hermitian, unit-trace and positive semi-definite within `tol`
        """
        defect = float(np.max(np.abs(self.entries - self.entries.conj().T)))
        if defect > tol:
            raise DomainError(f"Density matrix is not Hermitian (defect={defect:.3e})")
        if abs(self.trace - 1) > tol:
            raise DomainError(f"Density matrix trace is {self.trace:.12f}, expected 1")
        lowest = float(self.eigenvalues()[0])
        if lowest < -max(tol, config.EIGEN_FLOOR):
            raise DomainError(f"Density matrix has a negative eigenvalue {lowest:.3e}")

    def occupation_distribution(self, mode: ModeId) -> np.ndarray:
        """
        Marginal occupation probabilities of one kept mode
        """
        reduced = reduce_density(self, [mode])
        return np.real(np.diag(reduced.entries))


def _kept_positions(space: FockSpace, keep: Sequence[ModeId]) -> List[int]:
    if len(keep) == 0:
        raise ConfigurationError("At least one mode must be kept")
    if len(set(keep)) != len(keep):
        raise ConfigurationError(f"Duplicated modes in keep: {[m.label for m in keep]}")
    # raises ModeLookupError for unknown modes
    return sorted(space.position(mode) for mode in keep)


def pure_density(psi: StateVector) -> DensityMatrix:
    return DensityMatrix(psi.space, np.outer(psi.amplitudes, psi.amplitudes.conj()))


def partial_trace(psi: StateVector, keep: Sequence[ModeId]) -> DensityMatrix:
    """
    Reduced density matrix of a pure state
    Args:
        psi (StateVector): state on the full space
        keep (Sequence[ModeId]): modes to keep, returned in the full space's ordering
    Returns:
        - DensityMatrix: over the sub-space of kept modes
    """
    space = psi.space
    kept = _kept_positions(space, keep)
    traced = [i for i in range(space.n_modes) if i not in kept]
    sub_space = space.subspace(keep)

    # rows: kept modes, columns: traced-out modes
    matrix = np.transpose(psi.tensor, kept + traced).reshape(sub_space.dim, -1)
    rho = matrix @ matrix.conj().T
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(sub_space, rho)


def reduce_density(rho: DensityMatrix, keep: Sequence[ModeId]) -> DensityMatrix:
    """
    Partial trace of a density matrix over every mode not in `keep`
    """
    space = rho.space
    kept = _kept_positions(space, keep)
    traced = [i for i in range(space.n_modes) if i not in kept]
    sub_space = space.subspace(keep)
    n = space.n_modes

    tensor = rho.entries.reshape(space.shape + space.shape)
    # bra axes of the traced modes are offset by n
    for offset, axis in enumerate(sorted(traced, reverse=True)):
        remaining = n - offset
        tensor = np.trace(tensor, axis1=axis, axis2=axis + remaining)
    return DensityMatrix(sub_space, tensor.reshape(sub_space.dim, sub_space.dim))


def partial_transpose(rho: DensityMatrix, modes: Sequence[ModeId]) -> np.ndarray:
    """
    Transpose of the ket/bra indices of the given modes
    Returns:
        - np.ndarray: rho^{T_B} as a dense matrix over the same space
    """
    space = rho.space
    positions = _kept_positions(space, modes)
    n = space.n_modes
    axes = list(range(2 * n))
    for pos in positions:
        axes[pos], axes[pos + n] = axes[pos + n], axes[pos]
    tensor = rho.entries.reshape(space.shape + space.shape)
    return np.transpose(tensor, axes).reshape(space.dim, space.dim)
