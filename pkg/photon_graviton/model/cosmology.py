import logging
from dataclasses import dataclass

import numpy as np

from photon_graviton import config
from photon_graviton.errors import DomainError, RangeError
from photon_graviton.model.gaussian import TwoModeSqueezeParams

logging.basicConfig(level=logging.INFO)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrimordialSpectrum:
    f_c: float = config.DEFAULT_CUTOFF_FREQUENCY_HZ  # expressed in Hz
    chi: float = 0.0  # squeezing angle, not fixed by the inflationary estimate

    def __post_init__(self):
        if not (np.isfinite(self.f_c) and self.f_c > 0):
            raise DomainError(f"Cutoff frequency must be > 0, got f_c={self.f_c}")
        if self.f_c > config.DEFAULT_CUTOFF_FREQUENCY_HZ:
            logger.warning(f"f_c={self.f_c:.3e} Hz is above the CMB bound of "
                           f"{config.DEFAULT_CUTOFF_FREQUENCY_HZ:.1e} Hz")

    def cosh_2z(self, frequency_hz: float) -> float:
        """
        Squeezing law cosh 2z = (f_c/f)^4
        """
        if not frequency_hz > 0:
            raise DomainError(f"Frequency must be > 0, got {frequency_hz}")
        if frequency_hz > self.f_c:
            raise RangeError(f"Frequency {frequency_hz:.4e} Hz is above the cutoff f_c={self.f_c:.4e} Hz")
        return (self.f_c / frequency_hz) ** 4


def squeeze_amplitude(spec: PrimordialSpectrum, frequency_hz: float) -> TwoModeSqueezeParams:
    """
    Graviton squeezing at frequency f, z = arccosh((f_c/f)^4)/2
    Args:
        spec (PrimordialSpectrum):
        frequency_hz (float): 0 < f <= f_c
    Returns:
        - TwoModeSqueezeParams: with chi taken from the spectrum
    """
    return TwoModeSqueezeParams(z=0.5 * float(np.arccosh(spec.cosh_2z(frequency_hz))), chi=spec.chi)


def enhancement_factor(spec: PrimordialSpectrum, frequency_hz: float) -> float:
    """
    cosh^2 z = (cosh 2z + 1)/2
    """
    return (spec.cosh_2z(frequency_hz) + 1) / 2


def graviton_occupation(spec: PrimordialSpectrum, frequency_hz: float) -> float:
    """
    Mean graviton number per mode, sinh^2 z
    """
    return (spec.cosh_2z(frequency_hz) - 1) / 2


def sinh_extraction_discrepancy(spec: PrimordialSpectrum, frequency_hz: float) -> float:
    """
    z from cosh 2z = (f_c/f)^4 minus z from sinh 2z = (f_c/f)^4; vanishes at large squeezing
    """
    ratio = spec.cosh_2z(frequency_hz)
    return 0.5 * float(np.arccosh(ratio) - np.arcsinh(ratio))
