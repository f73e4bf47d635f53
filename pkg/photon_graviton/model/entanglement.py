import logging
from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple, Union

import numpy as np
from scipy import linalg

from photon_graviton import config
from photon_graviton.errors import ConfigurationError, NumericError
from photon_graviton.fock.operators import OperatorMatrix, StateVector, apply, identity, inner, superposition
from photon_graviton.fock.reduced import DensityMatrix, partial_trace, partial_transpose
from photon_graviton.fock.space import FockSpace, ModeId, MomentumLabel, build_space, graviton, photon
from photon_graviton.model.conversion import CouplingConfig, SectorSpec, build_Q, evolve

logging.basicConfig(level=logging.INFO)

logger = logging.getLogger(__name__)

PHOTON_K1 = photon(MomentumLabel.plus_k)
PHOTON_K2 = photon(MomentumLabel.plus_k2)
GRAVITON_K1 = graviton(MomentumLabel.plus_k)
SCENARIO_MODES = (PHOTON_K1, PHOTON_K2, GRAVITON_K1)


@dataclass(frozen=True)
class BipartitionSpec:
    side_a: Tuple[ModeId, ...]
    side_b: Tuple[ModeId, ...]

    def __post_init__(self):
        object.__setattr__(self, 'side_a', tuple(self.side_a))
        object.__setattr__(self, 'side_b', tuple(self.side_b))
        if len(self.side_a) == 0 or len(self.side_b) == 0:
            raise ConfigurationError("Both sides of a bipartition must be non-empty")
        overlap = set(self.side_a) & set(self.side_b)
        if overlap:
            raise ConfigurationError(f"Bipartition sides overlap on {sorted(m.label for m in overlap)}")

    @classmethod
    def isolate(cls, space: FockSpace, modes: Sequence[ModeId]) -> 'BipartitionSpec':
        """
        `modes` against every other mode of the space
        """
        for mode in modes:
            space.position(mode)
        return cls(side_a=tuple(modes), side_b=tuple(m for m in space.modes if m not in set(modes)))

    def validate_for(self, space: FockSpace):
        if set(self.side_a) | set(self.side_b) != set(space.modes) or \
                len(self.side_a) + len(self.side_b) != space.n_modes:
            raise ConfigurationError(
                f"Bipartition {[m.label for m in self.side_a]} | {[m.label for m in self.side_b]} "
                f"does not cover the space modes {[m.label for m in space.modes]}"
            )


@dataclass(frozen=True)
class ScenarioReport:
    initial_state: StateVector
    final_state: StateVector
    entropy_before: float  # nats
    entropy_after: float  # nats
    negativity_after: float
    fidelity_to_target: float
    target_state: StateVector = field(default=None, repr=False)
    scenario: str = ''
    strength: float = float('nan')

    def __post_init__(self):
        if min(self.entropy_before, self.entropy_after) < -config.TRACE_TOL:
            raise NumericError(f"Negative entropy in report: {self.entropy_before}, {self.entropy_after}")
        if not -config.TRACE_TOL <= self.fidelity_to_target <= 1 + config.TRACE_TOL:
            raise NumericError(f"Fidelity {self.fidelity_to_target} outside [0, 1]")


"""
Entanglement measures
"""


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """
    -sum_i p_i ln p_i over the spectrum of rho, in nats
    """
    rho.validate()
    spectrum = rho.eigenvalues()
    spectrum = spectrum[spectrum > config.EIGEN_FLOOR]
    return max(0.0, float(-np.sum(spectrum * np.log(spectrum))))


def entanglement_entropy(psi: StateVector, modes: Sequence[ModeId]) -> float:
    return von_neumann_entropy(partial_trace(psi, modes))


def _schmidt_coefficients(psi: StateVector, partition: BipartitionSpec) -> np.ndarray:
    space = psi.space
    partition.validate_for(space)
    side_a = sorted(space.position(m) for m in partition.side_a)
    side_b = sorted(space.position(m) for m in partition.side_b)
    matrix = np.transpose(psi.tensor, side_a + side_b).reshape(space.local_dim ** len(side_a), -1)
    return linalg.svdvals(matrix)


def logarithmic_negativity(state: Union[StateVector, DensityMatrix], partition: BipartitionSpec) -> float:
    """
    ln ||rho^{T_B}||_1
    Args:
        state (Union[StateVector, DensityMatrix]): pure states use the Schmidt form, 2 ln(sum of Schmidt
         coefficients); density matrices use the spectrum of the partial transpose
        partition (BipartitionSpec): transpose taken on side_b
    Returns:
        - float: >= 0, zero for product states
    """
    if isinstance(state, StateVector):
        coefficients = _schmidt_coefficients(state, partition)
        return max(0.0, float(2 * np.log(np.sum(coefficients))))

    partition.validate_for(state.space)
    transposed = partial_transpose(state, partition.side_b)
    spectrum = linalg.eigvalsh((transposed + transposed.conj().T) / 2)
    return max(0.0, float(np.log(np.sum(np.abs(spectrum)))))


def pure_state_concurrence(psi: StateVector, partition: BipartitionSpec) -> float:
    """
    sqrt(2(1 - Tr rho_A^2)), 1 for a Bell pair
    """
    partition.validate_for(psi.space)
    purity = partial_trace(psi, partition.side_a).purity
    return float(np.sqrt(max(0.0, 2 * (1 - purity))))


def fidelity(phi: StateVector, psi: StateVector) -> float:
    return float(abs(inner(phi, psi)) ** 2)


"""
Conversion scenarios on (photon k1, photon k2, graviton k1)
"""


def scenario_space(n_max: int = 1) -> FockSpace:
    return build_space(list(SCENARIO_MODES), n_max)


def conversion_unitary(strength: float, n_max: int = 1, k: float = 1.0) -> OperatorMatrix:
    """
    Rotating-wave conversion unitary between photon k1 and graviton k1; strength = lambda*t, full swap at pi/2
    """
    space = scenario_space(n_max)
    coupling = CouplingConfig.from_strength(strength, k=k)
    return evolve(build_Q(space, coupling, SectorSpec(include_counter_rotating=False)))


def controlled_conversion(unitary: OperatorMatrix, control: ModeId = PHOTON_K2) -> OperatorMatrix:
    """
    P0 U + (1 - P0), with P0 the projector on an empty `control` mode
    """
    space = unitary.space
    empty = space.occupation_table()[:, space.position(control)] == 0
    projector = OperatorMatrix(space, np.diag(empty.astype(float)))
    return projector @ unitary + (identity(space) - projector)


def _check_scenario_space(space: FockSpace):
    missing = [m.label for m in SCENARIO_MODES if m not in space]
    if missing:
        raise ConfigurationError(f"Scenario unitary acts on a space without modes {missing}")


def _scenario_state(space: FockSpace, components: Dict[Tuple[int, int, int], complex]) -> StateVector:
    positions = [space.position(m) for m in SCENARIO_MODES]
    expanded = {}
    for (photon_k1, photon_k2, graviton_k1), amplitude in components.items():
        occupations = [0] * space.n_modes
        for pos, n in zip(positions, (photon_k1, photon_k2, graviton_k1)):
            occupations[pos] = n
        expanded[tuple(occupations)] = amplitude
    return superposition(space, expanded)


def _flip_phase(unitary: OperatorMatrix, source: Tuple[int, int, int], target: Tuple[int, int, int]) -> complex:
    element = inner(_scenario_state(unitary.space, {target: 1}),
                    apply(unitary, _scenario_state(unitary.space, {source: 1})))
    if abs(element) == 0:
        return 1.0
    return element / abs(element)


def _report(name: str, initial: StateVector, final: StateVector,
            target: StateVector) -> ScenarioReport:
    partition = BipartitionSpec.isolate(initial.space, [PHOTON_K2])
    report = ScenarioReport(
        initial_state=initial,
        final_state=final,
        entropy_before=entanglement_entropy(initial, [PHOTON_K2]),
        entropy_after=entanglement_entropy(final, [PHOTON_K2]),
        negativity_after=logarithmic_negativity(final, partition),
        fidelity_to_target=fidelity(target, final),
        target_state=target,
        scenario=name,
    )
    logger.info(f"{name} scenario: entropy {report.entropy_before:.6f} -> {report.entropy_after:.6f} nats, "
                f"fidelity to target={report.fidelity_to_target:.12f}")
    return report


def run_swap_scenario(conversion_unitary: OperatorMatrix) -> ScenarioReport:
    """
    Entanglement swapping: (|1,0>+|0,1>)/sqrt(2) on the photon pair with an empty graviton mode.
    The target |0>_{k1} (|0>_{k2}|1>_g + |1>_{k2}|0>_g)/sqrt(2) carries the phase the unitary imprints
    on the converted branch.
    Args:
        conversion_unitary (OperatorMatrix): acts on a space holding photon k1, photon k2 and graviton k1
    Returns:
        - ScenarioReport: entropies of photon k2 against the rest
    """
    space = conversion_unitary.space
    _check_scenario_space(space)
    initial = _scenario_state(space, {(1, 0, 0): 1, (0, 1, 0): 1})
    final = apply(conversion_unitary, initial)
    sigma = _flip_phase(conversion_unitary, source=(1, 0, 0), target=(0, 0, 1))
    target = _scenario_state(space, {(0, 0, 1): sigma, (0, 1, 0): 1})
    return _report('swap', initial, final, target)


def run_generation_scenario(conversion_unitary: OperatorMatrix) -> ScenarioReport:
    """
    Entanglement generation from the product state |0>_{k1} (|0>+|1>)_{k2}/sqrt(2) |1>_g.
    The conversion acts only on the branch with photon k2 empty, which yields
    (sigma|1,0,0> + |0,1,1>)/sqrt(2), sigma being the flip phase of the unitary.
    """
    space = conversion_unitary.space
    _check_scenario_space(space)
    initial = _scenario_state(space, {(0, 0, 1): 1, (0, 1, 1): 1})
    controlled = controlled_conversion(conversion_unitary)
    final = apply(controlled, initial)
    sigma = _flip_phase(conversion_unitary, source=(0, 0, 1), target=(1, 0, 0))
    target = _scenario_state(space, {(1, 0, 0): sigma, (0, 1, 1): 1})
    return _report('generate', initial, final, target)
