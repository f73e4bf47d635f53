import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from photon_graviton import config
from photon_graviton.errors import ConfigurationError, ModeLookupError, ResourceError

logging.basicConfig(level=logging.INFO)

logger = logging.getLogger(__name__)


class Species(Enum):
    photon = 'photon'
    graviton = 'graviton'

    @property
    def symbol(self):
        return {'photon': 'γ', 'graviton': 'g'}[self.value]


class MomentumLabel(Enum):
    plus_k = '+k'
    minus_k = '-k'
    plus_k2 = '+k2'  # second photon wavevector of the entanglement scenarios

    @property
    def mirrored(self) -> 'MomentumLabel':
        if self is MomentumLabel.plus_k:
            return MomentumLabel.minus_k
        if self is MomentumLabel.minus_k:
            return MomentumLabel.plus_k
        raise NotImplementedError(f"no mirrored label for {self.value}")


class Polarization(Enum):
    plus = 'plus'
    cross = 'cross'


@dataclass(frozen=True)
class ModeId:
    species: Union[str, Species]
    momentum_label: Union[str, MomentumLabel] = MomentumLabel.plus_k
    polarization: Union[str, Polarization] = Polarization.plus

    def __post_init__(self):
        # enforce enum types when passed as str
        if isinstance(self.species, str):
            object.__setattr__(self, 'species', Species(self.species))
        if isinstance(self.momentum_label, str):
            object.__setattr__(self, 'momentum_label', MomentumLabel(self.momentum_label))
        if isinstance(self.polarization, str):
            object.__setattr__(self, 'polarization', Polarization(self.polarization))

    @property
    def label(self) -> str:
        return f"{self.species.symbol}({self.momentum_label.value},{self.polarization.value})"

    def __str__(self):
        return self.label


def photon(momentum_label: Union[str, MomentumLabel] = MomentumLabel.plus_k,
           polarization: Union[str, Polarization] = Polarization.plus) -> ModeId:
    return ModeId(Species.photon, momentum_label, polarization)


def graviton(momentum_label: Union[str, MomentumLabel] = MomentumLabel.plus_k,
             polarization: Union[str, Polarization] = Polarization.plus) -> ModeId:
    return ModeId(Species.graviton, momentum_label, polarization)


@dataclass(frozen=True)
class FockSpace:
    """
    Truncated multi-mode bosonic Fock space.

    Basis states are occupation tuples enumerated lexicographically with the first mode
    varying slowest, i.e. the index is the base-(n_max+1) number formed by the occupations.
    """
    modes: Tuple[ModeId, ...]
    n_max: int
    _positions: Dict[ModeId, int] = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, 'modes', tuple(self.modes))
        if len(self.modes) == 0:
            raise ConfigurationError("A Fock space needs at least one mode!")
        if len(set(self.modes)) != len(self.modes):
            duplicated = sorted({m.label for m in self.modes if self.modes.count(m) > 1})
            raise ConfigurationError(f"Duplicated modes found: {duplicated}")
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ConfigurationError(f"n_max must be an integer >= 1, got n_max=`{self.n_max}`")
        object.__setattr__(self, '_positions', {m: i for i, m in enumerate(self.modes)})

    @property
    def local_dim(self) -> int:
        return self.n_max + 1

    @property
    def n_modes(self) -> int:
        return len(self.modes)

    @property
    def dim(self) -> int:
        return self.local_dim ** self.n_modes

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.local_dim,) * self.n_modes

    def __contains__(self, mode: ModeId) -> bool:
        return mode in self._positions

    def position(self, mode: ModeId) -> int:
        """
        Tensor slot of a mode
        Args:
            mode (ModeId): mode to locate
        Returns:
            - int: index of the mode in the space ordering
        """
        try:
            return self._positions[mode]
        except (KeyError, TypeError):
            raise ModeLookupError(f"Mode `{mode}` not found in space with modes {[m.label for m in self.modes]}")

    def index(self, occupations: Sequence[int]) -> int:
        """
        Basis index of an occupation tuple
        """
        if len(occupations) != self.n_modes:
            raise ConfigurationError(f"Expected {self.n_modes} occupations, got {len(occupations)}")
        if any((n < 0) or (n > self.n_max) for n in occupations):
            raise ConfigurationError(f"Occupations {tuple(occupations)} outside [0, {self.n_max}]")
        return int(np.ravel_multi_index(tuple(occupations), self.shape))

    def occupations(self, index: int) -> Tuple[int, ...]:
        """
        Occupation tuple of a basis index
        """
        if not 0 <= index < self.dim:
            raise ConfigurationError(f"Basis index {index} outside [0, {self.dim})")
        return tuple(int(n) for n in np.unravel_index(index, self.shape))

    def occupation_table(self) -> np.ndarray:
        """
        Returns:
            - np.ndarray: (dim, n_modes) integer array, row i is the occupation tuple of basis state i
        """
        return np.array(np.unravel_index(np.arange(self.dim), self.shape)).T

    def subspace(self, modes: Sequence[ModeId]) -> 'FockSpace':
        """
        Space over a subset of modes, kept in this space's ordering
        """
        for mode in modes:
            self.position(mode)
        kept = [m for m in self.modes if m in set(modes)]
        return FockSpace(modes=tuple(kept), n_max=self.n_max)

    def join(self, other: 'FockSpace') -> 'FockSpace':
        """
        Tensor product space, this space's modes first
        """
        if other.n_max != self.n_max:
            raise ConfigurationError(f"Cannot join spaces with n_max={self.n_max} and n_max={other.n_max}")
        return build_space(list(self.modes) + list(other.modes), self.n_max)


def build_space(modes: List[ModeId], n_max: int,
                dimension_budget: int = config.DEFAULT_DIMENSION_BUDGET) -> FockSpace:
    """
    Creates a truncated Fock space
    Args:
        modes (List[ModeId]): ordered, unique modes; the first mode is the slowest-varying tensor factor
        n_max (int): per-mode occupation cutoff
        dimension_budget (int): largest total dimension allowed
    Returns:
        - FockSpace
    """
    space = FockSpace(modes=tuple(modes), n_max=n_max)
    if space.dim > dimension_budget:
        raise ResourceError(
            f"Space dimension {space.dim} = {space.local_dim}^{space.n_modes} exceeds the budget of {dimension_budget}"
        )
    logger.debug(f"Built Fock space {[m.label for m in space.modes]} with n_max={n_max} (dim={space.dim})")
    return space
