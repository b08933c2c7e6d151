import warnings

import numpy as np
import pytest

from crossover import propagation, spectrum
from crossover.errors import ParameterError
from crossover.propagation import PulseSpec, delay_and_attenuation, gaussian_spectrum, propagate
from crossover.spectrum import SusceptibilitySpectrum
from crossover.units import C_AU

OMEGA1 = 5.845e-2


def flat_chi(value, half=1e-7, n=2001):
    grid = np.linspace(-half, half, n)
    return SusceptibilitySpectrum(grid, np.full(n, value, dtype=complex))


@pytest.fixture
def pulse():
    return PulseSpec(duration_fwhm=1e10)


def test_round_trip_recovers_envelope(pulse):
    g = gaussian_spectrum(pulse)
    np.testing.assert_allclose(np.fft.fft(g.g), pulse.envelope(), atol=1e-10)
    out = propagate(g, flat_chi(0.0), 0.0, OMEGA1)
    np.testing.assert_allclose(out.envelope, pulse.envelope(), atol=1e-10)


def test_spectral_width():
    tau = 1e9
    ps = gaussian_spectrum(PulseSpec(tau, n_points=1024, dt=tau / 16))
    fwhm_hz = propagation.spectral_fwhm(ps) / (2 * np.pi)
    assert fwhm_hz == pytest.approx(2 * np.log(2) / (np.pi * tau), rel=1e-2)
    wide = propagation.spectral_fwhm(gaussian_spectrum(PulseSpec(2 * tau, n_points=1024, dt=tau / 16)))
    assert wide == pytest.approx(0.5 * propagation.spectral_fwhm(ps), rel=1e-2)


def test_real_constant_chi_is_pure_phase(pulse):
    chi0, z = 3e-6, 5e7
    out = propagate(gaussian_spectrum(pulse), flat_chi(chi0), z, OMEGA1)
    expect = pulse.envelope() * np.exp(1j * OMEGA1 * z * chi0 / (2 * C_AU))
    np.testing.assert_allclose(out.envelope, expect, atol=1e-10)


def test_vacuum_keeps_shape(pulse):
    g = gaussian_spectrum(pulse)
    ref = propagate(g, flat_chi(0.0), 0.0, OMEGA1)
    far = propagate(g, flat_chi(0.0), 1e8, OMEGA1)
    np.testing.assert_allclose(far.envelope, ref.envelope, atol=1e-10)
    assert delay_and_attenuation(far, ref) == pytest.approx((0.0, 1.0), abs=1e-9)


def test_group_delay_of_broad_line(pulse):
    # a broad absorption line centred on the carrier has anomalous dispersion: the peak is advanced
    grid = np.linspace(-1e-7, 1e-7, 4001)
    chi = 1e-5j * 1e-8 / (1e-8 - 1j * grid)
    spec = SusceptibilitySpectrum(grid, chi)
    g = gaussian_spectrum(pulse)
    ref = propagate(g, spec, 0.0, OMEGA1)
    out = propagate(g, spec, 1e8, OMEGA1)
    delay, ratio = delay_and_attenuation(out, ref)
    slope = -1e-5 / 1e-8  # d Re chi / d omega at the centre
    assert delay == pytest.approx(0.5 * OMEGA1 * slope * 1e8 / C_AU, rel=0.05)
    assert 0 < ratio < 1


def test_composition_of_depths(pulse, default_chi):
    g = gaussian_spectrum(pulse)
    H1, _ = propagation.transfer_function(default_chi, g.omega, 3e7, OMEGA1)
    two = propagate(propagation.PulseSpectrum(g.omega, g.g * H1, g.time), default_chi, 4e7, OMEGA1)
    once = propagate(g, default_chi, 7e7, OMEGA1)
    assert np.max(np.abs(two.envelope - once.envelope)) < 1e-8 * np.max(np.abs(once.envelope))


def test_energy_and_peak_decrease_with_depth(pulse, default_chi):
    g = gaussian_spectrum(pulse)
    runs = [propagate(g, default_chi, z, OMEGA1) for z in (0.0, 2e7, 6e7, 1e8)]
    energies = [r.energy for r in runs]
    peaks = [r.peak_amplitude for r in runs]
    assert all(a > b for a, b in zip(energies, energies[1:]))
    assert all(a > b for a, b in zip(peaks, peaks[1:]))
    for r in runs:
        assert np.max(np.abs(r.envelope)) <= pulse.amplitude * (1 + 1e-6)


def test_spectrum_outside_chi_grid_is_rejected():
    short = PulseSpec(duration_fwhm=1e8)
    with pytest.raises(ParameterError, match="beyond the chi grid"):
        propagate(gaussian_spectrum(short), flat_chi(1e-6, half=1e-8), 1e7, OMEGA1)


def test_pulse_validation():
    with pytest.raises(ParameterError):
        PulseSpec(duration_fwhm=1e9, n_points=500)
    with pytest.raises(ParameterError):
        gaussian_spectrum(PulseSpec(duration_fwhm=1e9, n_points=64))
    with pytest.raises(ParameterError):
        propagate(gaussian_spectrum(PulseSpec()), flat_chi(0.0), -1.0, OMEGA1)


def test_peak_location_and_flat_input():
    t = np.arange(50.0)
    t_peak, a_peak = propagation.locate_peak(t, np.exp(-((t - 20.3) ** 2) / 200))
    assert t_peak == pytest.approx(20.3, abs=1e-2) and a_peak == pytest.approx(1.0, abs=1e-3)
    with pytest.raises(ParameterError, match="flat"):
        propagation.locate_peak(t, np.ones_like(t))


def test_bandwidth_warning():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        propagation.window_width_check(PulseSpec(duration_fwhm=1e8), 1e-9)
    assert caught
