import configparser
import dataclasses
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, TextIO, Tuple, Union

import numpy as np
import pandas as pd

from photon_graviton import config
from photon_graviton.errors import ConfigurationError, SimulationError
from photon_graviton.fock.space import Polarization
from photon_graviton.model import cosmology
from photon_graviton.model.conversion import CouplingConfig
from photon_graviton.model.gaussian import (CoherentParams, SqueezeParams, TwoModeSqueezeParams,
                                            check_coherent_guard, check_squeeze_guard)

logging.basicConfig(level=logging.INFO)

logger = logging.getLogger(__name__)

SECTION = 'scenario'

# key -> parser
VECTOR_KEYS = ('b_field', 'k_direction')
FLOAT_KEYS = ('length', 'frequency', 'r', 'squeeze_db', 'squeeze_phase', 'beta_abs', 'beta_phase', 'graviton_z',
              'cutoff_frequency', 'graviton_chi', 'planck_mass_gev')
INT_KEYS = ('n_max',)
BOOL_KEYS = ('oracle',)
STR_KEYS = ('polarization',)


@dataclass(frozen=True)
class ScenarioConfig:
    b_field: Tuple[float, float, float] = (0.0, 10.0, 0.0)  # expressed in T
    k_direction: Tuple[float, float, float] = (1.0, 0.0, 0.0)
    length: float = 1e7  # expressed in m
    frequency: float = 1e8  # expressed in Hz
    r: Optional[float] = None
    squeeze_db: Optional[float] = None
    squeeze_phase: float = 0.0  # expressed in rad
    beta_abs: float = 0.0
    beta_phase: float = 0.0  # expressed in rad
    graviton_z: Optional[float] = None
    cutoff_frequency: Optional[float] = None  # expressed in Hz, selects the primordial spectrum
    graviton_chi: float = 0.0  # expressed in rad
    planck_mass_gev: float = config.REDUCED_PLANCK_MASS_GEV
    n_max: int = 12
    oracle: bool = False
    polarization: str = 'plus'

    def __post_init__(self):
        if self.r is not None and self.squeeze_db is not None:
            raise ConfigurationError("`r` and `squeeze_db` are mutually exclusive, set only one of them")
        if self.graviton_z is not None and self.cutoff_frequency is not None:
            raise ConfigurationError("`graviton_z` and `cutoff_frequency` are mutually exclusive, set only one of them")
        for name in VECTOR_KEYS:
            vector = tuple(float(v) for v in getattr(self, name))
            if len(vector) != 3 or not np.all(np.isfinite(vector)):
                raise ConfigurationError(f"`{name}` must be three finite numbers, got {getattr(self, name)}")
            object.__setattr__(self, name, vector)
        if not any(self.k_direction):
            raise ConfigurationError("`k_direction` must be non-zero")
        if not self.length >= 0:
            raise ConfigurationError(f"`length` must be >= 0 m, got {self.length}")
        if not self.frequency > 0:
            raise ConfigurationError(f"`frequency` must be > 0 Hz, got {self.frequency}")
        if not self.planck_mass_gev > 0:
            raise ConfigurationError(f"`planck_mass_gev` must be > 0, got {self.planck_mass_gev}")
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ConfigurationError(f"`n_max` must be an integer >= 1, got {self.n_max}")
        if self.polarization not in [p.value for p in Polarization]:
            raise ConfigurationError(f"`polarization` must be one of {[p.value for p in Polarization]}, "
                                     f"got `{self.polarization}`")
        if not self.beta_abs >= 0:
            raise ConfigurationError(f"`beta_abs` must be >= 0, got {self.beta_abs}")

        # parameter records raise their own domain errors
        try:
            self.squeeze_params
            self.graviton_params
        except SimulationError as e:
            raise ConfigurationError(f"Invalid scenario: {e}")

    @classmethod
    def from_mapping(cls, values: Dict[str, object]) -> 'ScenarioConfig':
        unknown = sorted(set(values) - {f.name for f in dataclasses.fields(cls)})
        if unknown:
            raise ConfigurationError(f"Unknown configuration keys {unknown}")
        return cls(**values)

    def with_overrides(self, **overrides) -> 'ScenarioConfig':
        """
        Copy with the given (non-None) values replaced
        """
        return dataclasses.replace(self, **{k: v for k, v in overrides.items() if v is not None})

    @property
    def squeeze_params(self) -> SqueezeParams:
        if self.squeeze_db is not None:
            return SqueezeParams.from_db(self.squeeze_db, phi=self.squeeze_phase)
        return SqueezeParams(r=self.r or 0.0, phi=self.squeeze_phase)

    @property
    def coherent_params(self) -> CoherentParams:
        return CoherentParams.from_polar(self.beta_abs, self.beta_phase)

    @property
    def graviton_source(self) -> str:
        if self.cutoff_frequency is not None:
            return 'primordial'
        if self.graviton_z is not None:
            return 'explicit'
        return 'vacuum'

    @property
    def spectrum(self) -> Optional[cosmology.PrimordialSpectrum]:
        if self.cutoff_frequency is None:
            return None
        return cosmology.PrimordialSpectrum(f_c=self.cutoff_frequency, chi=self.graviton_chi)

    @property
    def graviton_params(self) -> TwoModeSqueezeParams:
        if self.graviton_source == 'primordial':
            return cosmology.squeeze_amplitude(self.spectrum, self.frequency)
        return TwoModeSqueezeParams(z=self.graviton_z or 0.0, chi=self.graviton_chi)

    def coupling(self) -> CouplingConfig:
        return CouplingConfig.from_physical(self.b_field, self.length, self.frequency,
                                            direction=self.k_direction, planck_mass_gev=self.planck_mass_gev)

    def check_oracle_guards(self):
        """
        Convergence guards of the truncated oracle, raised with the n_max they require
        """
        check_coherent_guard(self.coherent_params, self.n_max)
        check_squeeze_guard(self.squeeze_params.r, self.n_max)
        check_squeeze_guard(self.graviton_params.z, self.n_max)


def _parse_value(key: str, raw: str):
    try:
        if key in VECTOR_KEYS:
            return tuple(float(v) for v in raw.split(','))
        if key in FLOAT_KEYS:
            return float(raw)
        if key in INT_KEYS:
            return int(raw)
        if key in BOOL_KEYS:
            return raw.strip().lower() in ('1', 'true', 'yes', 'on')
        if key in STR_KEYS:
            return raw.strip()
    except ValueError:
        raise ConfigurationError(f"Cannot parse `{key} = {raw}`")
    raise ConfigurationError(f"Unknown configuration key `{key}`")


def read_scenario_text(text: str) -> Dict[str, object]:
    """
    Parses flat `key = value` lines with `#` comments
    """
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=('#',), comment_prefixes=('#',))
    try:
        parser.read_string(f"[{SECTION}]\n{text}")
    except configparser.Error as e:
        raise ConfigurationError(f"Malformed configuration: {e}")
    extra_sections = [s for s in parser.sections() if s != SECTION]
    if extra_sections:
        raise ConfigurationError(f"Section headers are not supported, found {extra_sections}")
    return {key: _parse_value(key, raw) for key, raw in parser.items(SECTION)}


def load_scenario(path: Optional[Union[str, Path]] = None, **overrides) -> ScenarioConfig:
    """
    Builds a scenario from an optional config file, command-line values taking precedence
    Args:
        path (Optional[Union[str, Path]]): flat key-value file
        **overrides: values replacing the file ones when not None
    Returns:
        - ScenarioConfig
    """
    values = {}
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigurationError(f"Config file {path} not found")
        values = read_scenario_text(path.read_text(encoding='utf-8'))
        logger.info(f"Loaded {len(values)} settings from {path}")
    return ScenarioConfig.from_mapping(values).with_overrides(**overrides)


@dataclass
class ResultRecord:
    """
    One output row; None fields are left empty in the CSV
    """
    command: str
    # input echo
    b_perp_T: Optional[float] = None
    length_m: Optional[float] = None
    frequency_Hz: Optional[float] = None
    r: Optional[float] = None
    squeeze_dB: Optional[float] = None
    squeeze_phase_rad: Optional[float] = None
    beta_abs: Optional[float] = None
    beta_phase_rad: Optional[float] = None
    graviton_source: Optional[str] = None
    z: Optional[float] = None
    n_max: Optional[int] = None
    scan_parameter: Optional[str] = None
    scan_value: Optional[float] = None
    # conversion outputs
    lambda_eV: Optional[float] = None
    lambda_t: Optional[float] = None
    perturbative: Optional[bool] = None
    photon_factor: Optional[float] = None
    graviton_factor: Optional[float] = None
    prob_analytic: Optional[float] = None
    prob_vacuum_all_orders: Optional[float] = None
    prob_oracle: Optional[float] = None
    prob_full_unitary: Optional[float] = None
    relative_deviation: Optional[float] = None
    oracle_doubling_change: Optional[float] = None
    # entanglement outputs
    scenario: Optional[str] = None
    strength: Optional[float] = None
    entropy_before_nats: Optional[float] = None
    entropy_after_nats: Optional[float] = None
    entropy_before_bits: Optional[float] = None
    entropy_after_bits: Optional[float] = None
    negativity_after: Optional[float] = None
    fidelity_to_target: Optional[float] = None
    notes: Optional[str] = None
    extra: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.prob_oracle is not None and self.relative_deviation is None:
            raise ConfigurationError("relative_deviation must be set whenever an oracle probability is reported")

    def to_row(self) -> Dict[str, object]:
        row = {k: v for k, v in dataclasses.asdict(self).items() if k != 'extra'}
        row.update(self.extra)
        return row


def records_to_frame(records: List[ResultRecord]) -> pd.DataFrame:
    """
    Table with a fixed column order, dropping columns empty in every row
    """
    df = pd.DataFrame([r.to_row() for r in records])
    return df.dropna(axis=1, how='all')


def write_records(records: List[ResultRecord], out: Optional[Union[str, Path, TextIO]] = None):
    """
    Writes records as CSV (12 significant digits) to a path, a text stream, or standard output
    """
    df = records_to_frame(records)
    target = sys.stdout if out is None else out
    df.to_csv(target, index=False, float_format=config.FLOAT_FORMAT, lineterminator='\n')
    if isinstance(out, (str, Path)):
        logger.info(f"Wrote {len(df)} rows to {out}")
