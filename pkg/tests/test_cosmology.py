import numpy as np
import pytest

from photon_graviton.errors import DomainError, RangeError
from photon_graviton.model.cosmology import (PrimordialSpectrum, enhancement_factor, graviton_occupation,
                                             sinh_extraction_discrepancy, squeeze_amplitude)


@pytest.fixture
def spectrum():
    return PrimordialSpectrum(f_c=1e9)


@pytest.mark.parametrize('frequency_hz, z', [(1e9, 0.0), (5e8, 1.732378), (1e8, 4.95174)])
def test_squeeze_amplitude(spectrum, frequency_hz, z):
    assert squeeze_amplitude(spectrum, frequency_hz).z == pytest.approx(z, abs=1e-5)


def test_enhancement_at_100_mhz(spectrum):
    factor = enhancement_factor(spectrum, 1e8)
    assert factor == pytest.approx((1e4 + 1) / 2)
    assert 0.5e4 <= factor <= 2e4
    z = squeeze_amplitude(spectrum, 1e8).z
    assert factor == pytest.approx(np.cosh(z) ** 2, rel=1e-12)
    assert graviton_occupation(spectrum, 1e8) == pytest.approx(np.sinh(z) ** 2, rel=1e-12)


def test_doubling_frequency_divides_by_16(spectrum):
    assert spectrum.cosh_2z(2e8) == pytest.approx(spectrum.cosh_2z(1e8) / 16)


def test_log_slope(spectrum):
    frequencies = np.logspace(7, 9, 9)
    slopes = np.diff(np.log([spectrum.cosh_2z(f) for f in frequencies])) / np.diff(np.log(frequencies))
    assert np.allclose(slopes, -4)


def test_monotonic_decrease(spectrum):
    frequencies = np.linspace(1e7, 1e9, 50)
    values = [squeeze_amplitude(spectrum, f).z for f in frequencies]
    assert np.all(np.diff(values) < 0)


def test_cosh_law_round_trip(spectrum):
    for frequency_hz in (1.5e8, 4e8, 9.9e8):
        z = squeeze_amplitude(spectrum, frequency_hz).z
        assert np.cosh(2 * z) == pytest.approx((1e9 / frequency_hz) ** 4, rel=1e-10)


def test_out_of_range_frequencies(spectrum):
    with pytest.raises(RangeError):
        spectrum.cosh_2z(2e9)
    with pytest.raises(DomainError):
        spectrum.cosh_2z(0.0)
    with pytest.raises(DomainError):
        PrimordialSpectrum(f_c=-1.0)


def test_spectrum_above_bound_warns(caplog):
    with caplog.at_level('WARNING'):
        PrimordialSpectrum(f_c=5e9)
    assert 'above the CMB bound' in caplog.text


def test_squeezing_angle_is_carried():
    params = squeeze_amplitude(PrimordialSpectrum(f_c=1e9, chi=0.7), 3e8)
    assert params.chi == pytest.approx(0.7)


def test_sinh_extraction_converges(spectrum):
    near_cutoff = abs(sinh_extraction_discrepancy(spectrum, 9e8))
    deep = abs(sinh_extraction_discrepancy(spectrum, 1e8))
    assert deep < 1e-8
    assert near_cutoff > deep
