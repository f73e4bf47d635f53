import logging
from dataclasses import dataclass
from functools import reduce
from typing import Dict, Mapping, Sequence, Union

import numpy as np
from scipy import linalg

from photon_graviton import config
from photon_graviton.errors import ConfigurationError, DomainError, NumericError, PreconditionError
from photon_graviton.fock.space import FockSpace, ModeId, build_space

logging.basicConfig(level=logging.INFO)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OperatorMatrix:
    space: FockSpace
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.shape != (self.space.dim, self.space.dim):
            raise ConfigurationError(
                f"Operator of shape {entries.shape} does not match space dimension {self.space.dim}"
            )
        entries.flags.writeable = False
        object.__setattr__(self, 'entries', entries)

    @property
    def dagger(self) -> 'OperatorMatrix':
        return OperatorMatrix(self.space, self.entries.conj().T)

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            _check_same_space(self.space, other.space)
            return OperatorMatrix(self.space, self.entries @ other.entries)
        if isinstance(other, StateVector):
            return apply(self, other)
        return NotImplemented

    def __add__(self, other: 'OperatorMatrix') -> 'OperatorMatrix':
        _check_same_space(self.space, other.space)
        return OperatorMatrix(self.space, self.entries + other.entries)

    def __sub__(self, other: 'OperatorMatrix') -> 'OperatorMatrix':
        _check_same_space(self.space, other.space)
        return OperatorMatrix(self.space, self.entries - other.entries)

    def __mul__(self, scalar: complex) -> 'OperatorMatrix':
        return OperatorMatrix(self.space, self.entries * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> 'OperatorMatrix':
        return OperatorMatrix(self.space, -self.entries)

    def hermiticity_defect(self) -> float:
        """
        Returns:
            - float: max-norm of A - A^dag
        """
        return float(np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0))

    def unitarity_defect(self) -> float:
        """
        Returns:
            - float: max-norm of U^dag U - I
        """
        return float(np.max(np.abs(self.entries.conj().T @ self.entries - np.eye(self.space.dim))))

    def is_hermitian(self, tol: float = config.HERMITIAN_TOL) -> bool:
        return self.hermiticity_defect() <= tol

    def is_anti_hermitian(self, tol: float = config.HERMITIAN_TOL) -> bool:
        return float(np.max(np.abs(self.entries + self.entries.conj().T), initial=0.0)) <= tol

    def element(self, final: Sequence[int], initial: Sequence[int]) -> complex:
        """
        Matrix element <final|A|initial> between basis states given as occupation tuples
        """
        return complex(self.entries[self.space.index(final), self.space.index(initial)])


@dataclass(frozen=True)
class StateVector:
    space: FockSpace
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if amplitudes.shape != (self.space.dim,):
            raise ConfigurationError(
                f"State of shape {amplitudes.shape} does not match space dimension {self.space.dim}"
            )
        if not np.all(np.isfinite(amplitudes)):
            raise NumericError("State amplitudes must be finite!")
        amplitudes.flags.writeable = False
        object.__setattr__(self, 'amplitudes', amplitudes)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def tensor(self) -> np.ndarray:
        """
        Amplitudes reshaped with one axis per mode
        """
        return self.amplitudes.reshape(self.space.shape)

    def amplitude(self, occupations: Sequence[int]) -> complex:
        return complex(self.amplitudes[self.space.index(occupations)])

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def __add__(self, other: 'StateVector') -> 'StateVector':
        _check_same_space(self.space, other.space)
        return StateVector(self.space, self.amplitudes + other.amplitudes)

    def __sub__(self, other: 'StateVector') -> 'StateVector':
        _check_same_space(self.space, other.space)
        return StateVector(self.space, self.amplitudes - other.amplitudes)

    def __mul__(self, scalar: complex) -> 'StateVector':
        return StateVector(self.space, self.amplitudes * scalar)

    __rmul__ = __mul__


def _check_same_space(first: FockSpace, second: FockSpace):
    if first != second:
        raise PreconditionError(
            f"Space mismatch: {[m.label for m in first.modes]} (n_max={first.n_max}) vs "
            f"{[m.label for m in second.modes]} (n_max={second.n_max})"
        )


def single_mode_annihilator(n_max: int) -> np.ndarray:
    """
    Truncated annihilation matrix with <n-1|b|n> = sqrt(n)
    """
    return np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), k=1).astype(complex)


def embed(space: FockSpace, factors: Mapping[ModeId, np.ndarray]) -> OperatorMatrix:
    """
    Tensor embedding of single-mode matrices, identity on every other mode
    Args:
        space (FockSpace): target space
        factors (Mapping[ModeId, np.ndarray]): (n_max+1)x(n_max+1) matrix for each mode it acts on
    Returns:
        - OperatorMatrix: kron of the factors in the space's mode order
    """
    eye = np.eye(space.local_dim, dtype=complex)
    slots: Dict[int, np.ndarray] = {space.position(mode): np.asarray(m, dtype=complex) for mode, m in factors.items()}
    for pos, matrix in slots.items():
        if matrix.shape != (space.local_dim, space.local_dim):
            raise ConfigurationError(f"Single-mode factor has shape {matrix.shape}, expected {eye.shape}")
    entries = reduce(np.kron, [slots.get(i, eye) for i in range(space.n_modes)])
    return OperatorMatrix(space, entries)


def identity(space: FockSpace) -> OperatorMatrix:
    return OperatorMatrix(space, np.eye(space.dim, dtype=complex))


def zero_operator(space: FockSpace) -> OperatorMatrix:
    return OperatorMatrix(space, np.zeros((space.dim, space.dim), dtype=complex))


def annihilator(space: FockSpace, mode: ModeId) -> OperatorMatrix:
    """
    Annihilation operator of a mode, embedded in the full space
    Args:
        space (FockSpace):
        mode (ModeId):
    Returns:
        - OperatorMatrix: sqrt(n) on the (n-1, n) elements of the mode slot
    """
    return embed(space, {mode: single_mode_annihilator(space.n_max)})


def creator(space: FockSpace, mode: ModeId) -> OperatorMatrix:
    return annihilator(space, mode).dagger


def number_operator(space: FockSpace, mode: ModeId) -> OperatorMatrix:
    diagonal = np.diag(np.arange(space.local_dim, dtype=float))
    return embed(space, {mode: diagonal})


def total_number_operator(space: FockSpace) -> OperatorMatrix:
    return OperatorMatrix(space, np.diag(space.occupation_table().sum(axis=1).astype(float)))


def commutator(first: OperatorMatrix, second: OperatorMatrix) -> OperatorMatrix:
    return first @ second - second @ first


def matrix_exponential(op: OperatorMatrix, method: str = 'pade') -> OperatorMatrix:
    """
    Dense matrix exponential exp(A)
    Args:
        op (OperatorMatrix): generator A
        method (str): `pade` for scaling-and-squaring with a Pade approximant (scipy.linalg.expm),
         keeps exact zeros of block-structured generators; `eigh` for Hermitian or anti-Hermitian A,
         exponentiates the eigenvalues of a Hermitian decomposition
    Returns:
        - OperatorMatrix: exp(A)
    """
    entries = op.entries
    if not np.all(np.isfinite(entries)):
        raise NumericError("Cannot exponentiate a matrix with non-finite entries!")

    if method == 'pade':
        return OperatorMatrix(op.space, linalg.expm(entries))

    if method == 'eigh':
        if op.is_anti_hermitian():
            # A = iH with H Hermitian
            values, vectors = linalg.eigh(-1j * entries)
            phases = np.exp(1j * values)
        elif op.is_hermitian():
            values, vectors = linalg.eigh(entries)
            phases = np.exp(values)
        else:
            raise DomainError("method=`eigh` requires a Hermitian or anti-Hermitian generator")
        return OperatorMatrix(op.space, (vectors * phases) @ vectors.conj().T)

    raise NotImplementedError(f"method={method} not handled!")


def apply(op: OperatorMatrix, psi: StateVector) -> StateVector:
    _check_same_space(op.space, psi.space)
    return StateVector(psi.space, op.entries @ psi.amplitudes)


def inner(phi: StateVector, psi: StateVector) -> complex:
    """
    <phi|psi>, conjugate-linear in phi
    """
    _check_same_space(phi.space, psi.space)
    return complex(np.vdot(phi.amplitudes, psi.amplitudes))


def expectation(op: OperatorMatrix, psi: StateVector) -> complex:
    return inner(psi, apply(op, psi))


def normalize(psi: StateVector) -> StateVector:
    norm = psi.norm
    if norm == 0:
        raise DomainError("Cannot normalize the zero vector!")
    return StateVector(psi.space, psi.amplitudes / norm)


def basis_state(space: FockSpace, occupations: Sequence[int]) -> StateVector:
    amplitudes = np.zeros(space.dim, dtype=complex)
    amplitudes[space.index(occupations)] = 1.0
    return StateVector(space, amplitudes)


def vacuum(space: FockSpace) -> StateVector:
    return basis_state(space, (0,) * space.n_modes)


def superposition(space: FockSpace, components: Mapping[tuple, complex]) -> StateVector:
    """
    Normalized superposition of basis states
    Args:
        space (FockSpace):
        components (Mapping[tuple, complex]): occupation tuple -> (unnormalized) amplitude
    Returns:
        - StateVector
    """
    amplitudes = np.zeros(space.dim, dtype=complex)
    for occupations, value in components.items():
        amplitudes[space.index(occupations)] += value
    return normalize(StateVector(space, amplitudes))


def tensor_product(*states: StateVector) -> StateVector:
    """
    Product state over the concatenated modes (first argument slowest-varying)
    """
    if len(states) == 0:
        raise ConfigurationError("tensor_product needs at least one state")
    n_max = states[0].space.n_max
    modes = [m for s in states for m in s.space.modes]
    if any(s.space.n_max != n_max for s in states):
        raise ConfigurationError("All factors of a tensor product must share n_max")
    space = build_space(modes, n_max)
    return StateVector(space, reduce(np.kron, [s.amplitudes for s in states]))


def restrict_to_occupation(op: OperatorMatrix, max_occupation: int) -> np.ndarray:
    """
    Block of an operator whose rows and columns have every mode occupation <= max_occupation
    Returns:
        - np.ndarray: restricted dense block
    """
    mask = np.all(op.space.occupation_table() <= max_occupation, axis=1)
    return op.entries[np.ix_(mask, mask)]
