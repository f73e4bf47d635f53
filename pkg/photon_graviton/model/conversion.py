import logging
import warnings
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np

from photon_graviton import config
from photon_graviton.errors import ConfigurationError, DomainError, PerturbativeRangeWarning, PreconditionError
from photon_graviton.fock.operators import (OperatorMatrix, StateVector, apply, basis_state, embed, inner,
                                            matrix_exponential, normalize, single_mode_annihilator,
                                            tensor_product)
from photon_graviton.fock.space import (FockSpace, MomentumLabel, ModeId, Polarization, build_space, graviton,
                                        photon)
from photon_graviton.model import polarization as pol
from photon_graviton.model.gaussian import (CoherentParams, SqueezeParams, TwoModeSqueezeParams,
                                            check_squeeze_guard, photon_enhancement_factor,
                                            squeezed_coherent_state, two_mode_squeezed_vacuum)

logging.basicConfig(level=logging.INFO)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CouplingConfig:
    lambda_: float  # expressed in eV
    t: float  # interaction time = length, expressed in eV^-1
    k: float = 1.0  # mode frequency |k|, expressed in eV

    def __post_init__(self):
        if not (np.isfinite(self.lambda_) and np.isfinite(self.t) and np.isfinite(self.k)):
            raise DomainError(f"Coupling inputs must be finite: {self}")
        if self.lambda_ < 0:
            raise DomainError(f"lambda must be >= 0, got {self.lambda_}")
        if self.t < 0:
            raise DomainError(f"Interaction time must be >= 0, got {self.t}")
        if self.k <= 0:
            raise DomainError(f"Mode frequency must be > 0, got {self.k}")
        if not np.isfinite(self.lambda_ * self.t):
            raise DomainError("lambda*t is not finite")

    @property
    def strength(self) -> float:
        """
        Dimensionless conversion strength lambda*t
        """
        return self.lambda_ * self.t

    @classmethod
    def from_strength(cls, strength: float, k: float = 1.0, t: float = 1.0) -> 'CouplingConfig':
        return cls(lambda_=strength / t, t=t, k=k)

    @classmethod
    def from_physical(cls, b_field_tesla, length_m: float, frequency_hz: float,
                      direction=(1.0, 0.0, 0.0),
                      planck_mass_gev: float = config.REDUCED_PLANCK_MASS_GEV) -> 'CouplingConfig':
        """
        Coupling for a photon of frequency f travelling a length L through a static field B
        Args:
            b_field_tesla: magnetic field 3-vector in tesla
            length_m (float): interaction length in m, identified with the interaction time
            frequency_hz (float): photon frequency in Hz
            direction: propagation direction
            planck_mass_gev (float): reduced Planck mass in GeV
        Returns:
            - CouplingConfig
        """
        k = pol.wavevector_from_frequency(frequency_hz, direction)
        return cls(lambda_=pol.coupling_lambda(b_field_tesla, k, planck_mass_gev),
                   t=pol.meters_to_inverse_ev(length_m),
                   k=k.magnitude)


@dataclass(frozen=True)
class SectorSpec:
    polarization: Union[str, Polarization] = Polarization.plus
    include_counter_rotating: bool = True

    def __post_init__(self):
        if isinstance(self.polarization, str):
            object.__setattr__(self, 'polarization', Polarization(self.polarization))


def sector_modes(sector: SectorSpec) -> List[ModeId]:
    """
    Modes of a polarization sector: graviton and photon at +k (and -k when counter-rotating terms are kept)
    """
    p = sector.polarization
    modes = [graviton(MomentumLabel.plus_k, p), photon(MomentumLabel.plus_k, p)]
    if sector.include_counter_rotating:
        modes += [graviton(MomentumLabel.minus_k, p), photon(MomentumLabel.minus_k, p)]
    return modes


def f_of_t(polarization: Union[str, Polarization], k: float, t: float) -> complex:
    """
    Counter-rotating coefficient f^+_k(t) = sin(kt)/k e^{-ikt}, f^x_k = -f^+_k
    """
    if k <= 0:
        raise DomainError(f"k must be > 0, got {k}")
    value = np.sin(k * t) / k * np.exp(-1j * k * t)
    if Polarization(polarization) is Polarization.cross:
        return complex(-value)
    return complex(value)


def _check_sector_modes(space: FockSpace, sector: SectorSpec):
    p = sector.polarization
    required = [graviton(MomentumLabel.plus_k, p), photon(MomentumLabel.plus_k, p)]
    if sector.include_counter_rotating:
        # graviton(-k) only enters through the mirrored terms
        required.append(photon(MomentumLabel.minus_k, p))
    missing = [m.label for m in required if m not in space]
    if missing:
        raise ConfigurationError(f"Space is missing modes {missing} for sector {sector}")


def build_Q(space: FockSpace, coupling: CouplingConfig, sector: SectorSpec) -> OperatorMatrix:
    """
    Integrated interaction Q = -i lambda sum_k [ t(a b^dag - a^dag b) + f a(k) b(-k) - f* a^dag(k) b^dag(-k) ]
    over the momentum labels +k, -k whose modes are present in the space.
    Args:
        space (FockSpace): must hold graviton(+k) and photon(+k) of the sector, plus photon(-k)
         when counter-rotating terms are kept
        coupling (CouplingConfig):
        sector (SectorSpec):
    Returns:
        - OperatorMatrix: Hermitian
    """
    _check_sector_modes(space, sector)
    p = sector.polarization
    lambda_, t = coupling.lambda_, coupling.t
    f = f_of_t(p, coupling.k, t)
    b = single_mode_annihilator(space.n_max)
    b_dag = b.conj().T

    entries = np.zeros((space.dim, space.dim), dtype=complex)
    for label in (MomentumLabel.plus_k, MomentumLabel.minus_k):
        g_mode, p_mode = graviton(label, p), photon(label, p)
        if g_mode in space and p_mode in space and t != 0:
            # a b^dag - a^dag b, distinct modes so each product is a single kron
            entries += (-1j * lambda_ * t) * embed(space, {g_mode: b, p_mode: b_dag}).entries
            entries -= (-1j * lambda_ * t) * embed(space, {g_mode: b_dag, p_mode: b}).entries
        mirrored = photon(label.mirrored, p)
        if sector.include_counter_rotating and g_mode in space and mirrored in space and f != 0:
            entries += (-1j * lambda_ * f) * embed(space, {g_mode: b, mirrored: b}).entries
            entries -= (-1j * lambda_ * np.conj(f)) * embed(space, {g_mode: b_dag, mirrored: b_dag}).entries

    return OperatorMatrix(space, entries)


def build_W(space: FockSpace, coupling: CouplingConfig, sector: SectorSpec) -> OperatorMatrix:
    """
    W = i lambda a^dag(k) [t b(k) + f* b^dag(-k)], the single-mode stand-in for the k integral
    """
    _check_sector_modes(space, sector)
    p = sector.polarization
    f = f_of_t(p, coupling.k, coupling.t)
    b = single_mode_annihilator(space.n_max)
    b_dag = b.conj().T
    g_mode, p_mode = graviton(MomentumLabel.plus_k, p), photon(MomentumLabel.plus_k, p)

    entries = (1j * coupling.lambda_ * coupling.t) * embed(space, {g_mode: b_dag, p_mode: b}).entries
    if sector.include_counter_rotating:
        mirrored = photon(MomentumLabel.minus_k, p)
        entries = entries + (1j * coupling.lambda_ * np.conj(f)) * embed(space, {g_mode: b_dag, mirrored: b_dag}).entries
    return OperatorMatrix(space, entries)


def evolve(Q: OperatorMatrix) -> OperatorMatrix:
    """
    U = exp(-iQ) for a Hermitian generator, unitary to machine precision
    """
    if not Q.is_hermitian():
        raise DomainError(f"Q must be Hermitian (defect={Q.hermiticity_defect():.3e})")
    return matrix_exponential(Q * (-1j), method='eigh')


"""
Perturbative guard
"""


def is_perturbative(coupling: CouplingConfig) -> bool:
    return coupling.strength <= config.PERTURBATIVE_LIMIT


def _guard(coupling: CouplingConfig, formula: str):
    if not is_perturbative(coupling):
        message = (f"{formula}: lambda*t = {coupling.strength:.4g} exceeds the perturbative limit "
                   f"{config.PERTURBATIVE_LIMIT}, leading-order value returned")
        logger.warning(message)
        warnings.warn(message, PerturbativeRangeWarning, stacklevel=3)


"""
Analytic probabilities
"""


def prob_vacuum(coupling: CouplingConfig) -> float:
    """
    Leading-order single photon to single graviton probability in vacuum, (lambda t)^2
    """
    _guard(coupling, 'prob_vacuum')
    return coupling.strength ** 2


def prob_vacuum_exact(coupling: CouplingConfig) -> float:
    """
    Rotating-wave result to all orders, sin^2(lambda t)
    """
    return float(np.sin(coupling.strength) ** 2)


def full_conversion_length(lambda_: float) -> float:
    """
    Interaction length (eV^-1) at which sin^2(lambda L) first reaches 1
    """
    if lambda_ <= 0:
        raise DomainError(f"lambda must be > 0, got {lambda_}")
    return np.pi / (2 * lambda_)


def prob_squeezed_coherent(coupling: CouplingConfig, s: SqueezeParams, c: CoherentParams) -> float:
    """
    Conversion of a photon added to S(zeta)D(beta)|0>
    Returns:
        - float: (lambda t)^2 [cosh^2 r + |beta|^2 (cosh 2r + cos(2 arg beta - phi) sinh 2r)]
    """
    _guard(coupling, 'prob_squeezed_coherent')
    return coupling.strength ** 2 * photon_enhancement_factor(s, c)


def prob_primordial(coupling: CouplingConfig, s: SqueezeParams, c: CoherentParams, g: TwoModeSqueezeParams,
                    n_max: Optional[int] = None) -> float:
    """
    Conversion into a two-mode squeezed graviton background, prob_squeezed_coherent * cosh^2 z
    Args:
        n_max (Optional[int]): when given, the graviton squeezing is checked against this cutoff
    """
    if n_max is not None:
        check_squeeze_guard(g.z, n_max)
    _guard(coupling, 'prob_primordial')
    return coupling.strength ** 2 * photon_enhancement_factor(s, c) * float(np.cosh(g.z) ** 2)


"""
Numeric oracles
"""


def _check_normalized(*states: StateVector):
    for psi in states:
        if abs(psi.norm - 1) > config.DENSITY_VALIDATION_TOL:
            raise PreconditionError(f"State must be normalized, got norm={psi.norm:.12f}")


def first_order_amplitude(Q: OperatorMatrix, initial: StateVector, final: StateVector) -> complex:
    """
    <final|(-iQ)|initial>
    """
    _check_normalized(initial, final)
    return -1j * inner(final, apply(Q, initial))


def transition_prob(U: OperatorMatrix, initial: StateVector, final: StateVector) -> float:
    """
    |<final|U|initial>|^2
    """
    _check_normalized(initial, final)
    return float(abs(inner(final, apply(U, initial))) ** 2)


def _assemble(space: FockSpace, *parts: StateVector) -> StateVector:
    product = tensor_product(*parts)
    if product.space != space:
        raise ConfigurationError(
            f"State factors over {[m.label for m in product.space.modes]} do not match the target space "
            f"{[m.label for m in space.modes]}"
        )
    return product


def photon_state_pair(space: FockSpace, s: SqueezeParams, c: CoherentParams,
                      sector: SectorSpec = SectorSpec(include_counter_rotating=False)) -> Tuple[StateVector, StateVector]:
    """
    Initial and final states of conversion in a squeezed coherent photon background,
    on a space ordered (graviton +k, photon +k)
    Returns:
        - Tuple[StateVector, StateVector]: |0>_g A_gamma b^dag|zeta,beta>, a^dag|0>_g |zeta,beta>
    """
    g_mode = graviton(MomentumLabel.plus_k, sector.polarization)
    p_mode = photon(MomentumLabel.plus_k, sector.polarization)
    g_space = build_space([g_mode], space.n_max)
    p_space = build_space([p_mode], space.n_max)

    background = squeezed_coherent_state(p_space, p_mode, s, c)
    b_dag = embed(p_space, {p_mode: single_mode_annihilator(space.n_max).conj().T})
    photon_added = normalize(apply(b_dag, background))

    initial = _assemble(space, basis_state(g_space, (0,)), photon_added)
    final = _assemble(space, basis_state(g_space, (1,)), normalize(background))
    return initial, final


def primordial_state_pair(space: FockSpace, s: SqueezeParams, c: CoherentParams, g: TwoModeSqueezeParams,
                          sector: SectorSpec = SectorSpec(include_counter_rotating=False)) -> Tuple[StateVector, StateVector]:
    """
    Initial and final states of conversion in a primordial graviton background,
    on a space ordered (graviton +k, graviton -k, photon +k)
    Returns:
        - Tuple[StateVector, StateVector]: |xi>_g A_gamma b^dag|zeta,beta>, A_g a^dag(k)|xi>_g |zeta,beta>
    """
    p = sector.polarization
    g_plus, g_minus = graviton(MomentumLabel.plus_k, p), graviton(MomentumLabel.minus_k, p)
    p_mode = photon(MomentumLabel.plus_k, p)
    g_space = build_space([g_plus, g_minus], space.n_max)
    p_space = build_space([p_mode], space.n_max)

    squeezed_vacuum = two_mode_squeezed_vacuum(g_space, g_plus, g_minus, g)
    a_dag = embed(g_space, {g_plus: single_mode_annihilator(space.n_max).conj().T})
    graviton_added = normalize(apply(a_dag, squeezed_vacuum))

    background = squeezed_coherent_state(p_space, p_mode, s, c)
    b_dag = embed(p_space, {p_mode: single_mode_annihilator(space.n_max).conj().T})
    photon_added = normalize(apply(b_dag, background))

    initial = _assemble(space, normalize(squeezed_vacuum), photon_added)
    final = _assemble(space, graviton_added, normalize(background))
    return initial, final


def oracle_probability(Q: OperatorMatrix, initial: StateVector, final: StateVector) -> float:
    """
    First-order oracle |<final|(-iQ)|initial>|^2
    """
    return float(abs(first_order_amplitude(Q, initial, final)) ** 2)
