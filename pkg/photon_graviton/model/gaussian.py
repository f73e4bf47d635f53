import logging
import math
from dataclasses import dataclass

import numpy as np

from photon_graviton import config
from photon_graviton.errors import ConvergenceError, DomainError
from photon_graviton.fock.operators import (OperatorMatrix, StateVector, apply, embed, matrix_exponential,
                                            restrict_to_occupation, single_mode_annihilator, vacuum)
from photon_graviton.fock.space import FockSpace, ModeId, build_space

logging.basicConfig(level=logging.INFO)

logger = logging.getLogger(__name__)


def db_to_r(squeeze_db: float) -> float:
    """
    Squeezing amplitude from decibels, with dB = 10*log10(e^{2r})
    """
    return squeeze_db * np.log(10) / 20


def r_to_db(r: float) -> float:
    return 20 * r / np.log(10)


@dataclass(frozen=True)
class CoherentParams:
    beta: complex = 0j

    def __post_init__(self):
        beta = complex(self.beta)
        if not np.isfinite(beta):
            raise DomainError(f"Coherent amplitude must be finite, got {self.beta}")
        object.__setattr__(self, 'beta', beta)

    @classmethod
    def from_polar(cls, magnitude: float, phase: float = 0.0) -> 'CoherentParams':
        return cls(beta=magnitude * np.exp(1j * phase))

    @property
    def magnitude(self) -> float:
        return abs(self.beta)

    @property
    def phase(self) -> float:
        return float(np.angle(self.beta))


@dataclass(frozen=True)
class SqueezeParams:
    r: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.r) and np.isfinite(self.phi)):
            raise DomainError(f"Squeezing parameters must be finite, got r={self.r}, phi={self.phi}")
        if self.r < 0:
            raise DomainError(f"Squeezing amplitude must be >= 0, got r={self.r}")
        object.__setattr__(self, 'r', float(self.r))
        object.__setattr__(self, 'phi', float(np.mod(self.phi, 2 * np.pi)))

    @classmethod
    def from_db(cls, squeeze_db: float, phi: float = 0.0) -> 'SqueezeParams':
        return cls(r=db_to_r(squeeze_db), phi=phi)

    @property
    def zeta(self) -> complex:
        return self.r * np.exp(1j * self.phi)

    @property
    def db(self) -> float:
        return r_to_db(self.r)


@dataclass(frozen=True)
class TwoModeSqueezeParams:
    z: float = 0.0
    chi: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.z) and np.isfinite(self.chi)):
            raise DomainError(f"Squeezing parameters must be finite, got z={self.z}, chi={self.chi}")
        if self.z < 0:
            raise DomainError(f"Squeezing amplitude must be >= 0, got z={self.z}")
        object.__setattr__(self, 'z', float(self.z))
        object.__setattr__(self, 'chi', float(np.mod(self.chi, 2 * np.pi)))

    @property
    def xi(self) -> complex:
        return self.z * np.exp(1j * self.chi)

    @property
    def mean_occupation(self) -> float:
        return float(np.sinh(self.z) ** 2)


"""
Convergence guards
"""


def check_coherent_guard(params: CoherentParams, n_max: int):
    if params.magnitude ** 2 > n_max / 4:
        raise ConvergenceError(
            f"|beta|^2 = {params.magnitude ** 2:.4g} exceeds n_max/4 = {n_max / 4:.4g}",
            required_n_max=math.ceil(4 * params.magnitude ** 2)
        )


def check_squeeze_guard(amplitude: float, n_max: int):
    mean = float(np.sinh(amplitude) ** 2)
    if mean > n_max:
        raise ConvergenceError(
            f"sinh^2 = {mean:.4g} of squeezing amplitude {amplitude} exceeds n_max={n_max}",
            required_n_max=math.ceil(mean)
        )


def suggest_n_max(s: SqueezeParams = SqueezeParams(), c: CoherentParams = CoherentParams(),
                  tolerance: float = 1e-3) -> int:
    """
    Cutoff estimate for S(zeta)D(beta)|0> and single-photon-added versions of it.
    Covers the anti-squeezed quadrature out to kappa standard deviations, with kappa = sqrt(2 ln(1/tolerance)).
    Args:
        s (SqueezeParams):
        c (CoherentParams):
        tolerance (float): target truncation error
    Returns:
        - int: n_max, never below the convergence guards
    """
    if not 0 < tolerance < 1:
        raise DomainError(f"tolerance must lie in (0, 1), got {tolerance}")
    kappa = np.sqrt(2 * np.log(1 / tolerance))
    stretch = np.exp(s.r)
    estimate = math.ceil((c.magnitude * stretch + 0.5 * kappa * stretch) ** 2)
    guards = [math.ceil(4 * c.magnitude ** 2), math.ceil(np.sinh(s.r) ** 2), 1]
    return int(max(estimate, *guards))


"""
Operators
"""


def _single_mode_unitary(space: FockSpace, mode: ModeId, generator: np.ndarray) -> OperatorMatrix:
    # exp(I x G x I) = I x exp(G) x I
    local = build_space([mode], space.n_max)
    unitary = matrix_exponential(OperatorMatrix(local, generator))
    return embed(space, {mode: unitary.entries})


def displacement_op(space: FockSpace, mode: ModeId, params: CoherentParams) -> OperatorMatrix:
    """
    D(beta) = exp(beta b^dag - beta* b)
    Args:
        space (FockSpace):
        mode (ModeId): photon mode b
        params (CoherentParams):
    Returns:
        - OperatorMatrix
    """
    space.position(mode)
    check_coherent_guard(params, space.n_max)
    b = single_mode_annihilator(space.n_max)
    generator = params.beta * b.conj().T - np.conj(params.beta) * b
    return _single_mode_unitary(space, mode, generator)


def squeeze_op(space: FockSpace, mode: ModeId, params: SqueezeParams) -> OperatorMatrix:
    """
    S(zeta) = exp[-(zeta* b^2 - zeta b^dag^2)/2]
    """
    space.position(mode)
    check_squeeze_guard(params.r, space.n_max)
    b = single_mode_annihilator(space.n_max)
    b_dag = b.conj().T
    generator = -0.5 * (np.conj(params.zeta) * (b @ b) - params.zeta * (b_dag @ b_dag))
    return _single_mode_unitary(space, mode, generator)


def two_mode_squeeze_op(space: FockSpace, mode_a: ModeId, mode_b: ModeId,
                        params: TwoModeSqueezeParams) -> OperatorMatrix:
    """
    S(xi) = exp[-xi* a(k) a(-k) + xi a^dag(k) a^dag(-k)], no factor 1/2
    Args:
        space (FockSpace):
        mode_a (ModeId): graviton +k mode
        mode_b (ModeId): graviton -k mode
        params (TwoModeSqueezeParams):
    Returns:
        - OperatorMatrix
    """
    if mode_a == mode_b:
        raise DomainError(f"Two-mode squeezing needs distinct modes, got {mode_a.label} twice")
    space.position(mode_a)
    space.position(mode_b)
    check_squeeze_guard(params.z, space.n_max)

    a = single_mode_annihilator(space.n_max)
    pair_annihilation = embed(space, {mode_a: a, mode_b: a})
    generator = pair_annihilation.dagger * params.xi - pair_annihilation * np.conj(params.xi)
    return matrix_exponential(generator)


def bogoliubov_residual(space: FockSpace, mode: ModeId, params: SqueezeParams) -> float:
    """
    Max-norm of S^dag b S - (b cosh r + b^dag e^{i phi} sinh r) on occupations <= n_max/2.

    S is built on a working cutoff BOGOLIUBOV_PADDING*n_max so the low block is free of truncation effects.
    Only the mode's own factor is involved, the identity on other modes drops out.
    """
    space.position(mode)
    working = build_space([mode], config.BOGOLIUBOV_PADDING * space.n_max)
    squeeze = squeeze_op(working, mode, params)
    b = OperatorMatrix(working, single_mode_annihilator(working.n_max))

    transformed = squeeze.dagger @ b @ squeeze
    expected = b * np.cosh(params.r) + b.dagger * (np.exp(1j * params.phi) * np.sinh(params.r))
    residual = restrict_to_occupation(transformed - expected, space.n_max // 2)
    return float(np.max(np.abs(residual)))


"""
Normalization constants
"""


def photon_enhancement_factor(s: SqueezeParams, c: CoherentParams) -> float:
    """
    cosh^2 r + |beta|^2 (cosh 2r + cos(2 arg beta - phi) sinh 2r), i.e. A_gamma^{-2}
    """
    return float(
        np.cosh(s.r) ** 2
        + c.magnitude ** 2 * (np.cosh(2 * s.r) + np.cos(2 * c.phase - s.phi) * np.sinh(2 * s.r))
    )


def photon_norm_const(s: SqueezeParams, c: CoherentParams) -> float:
    return photon_enhancement_factor(s, c) ** -0.5


def graviton_norm_const(g: TwoModeSqueezeParams) -> float:
    return float(1 / np.cosh(g.z))


"""
State builders
"""


def coherent_state(space: FockSpace, mode: ModeId, c: CoherentParams) -> StateVector:
    return apply(displacement_op(space, mode, c), vacuum(space))


def squeezed_coherent_state(space: FockSpace, mode: ModeId, s: SqueezeParams, c: CoherentParams) -> StateVector:
    """
    S(zeta) D(beta)|0>, squeeze applied after displacement
    """
    displaced = apply(displacement_op(space, mode, c), vacuum(space))
    return apply(squeeze_op(space, mode, s), displaced)


def two_mode_squeezed_vacuum(space: FockSpace, mode_a: ModeId, mode_b: ModeId,
                             g: TwoModeSqueezeParams) -> StateVector:
    return apply(two_mode_squeeze_op(space, mode_a, mode_b, g), vacuum(space))
