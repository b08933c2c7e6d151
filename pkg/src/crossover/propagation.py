"""Linear propagation of a probe pulse through the dressed medium.

Convention: envelope(t) = sum_m g_m exp(-i omega_m t), with t the retarded
time t - z/c, so a pulse in vacuum does not move on the grid and any shift
of the peak is the slowdown relative to vacuum.
"""
import logging
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ParameterError
from .units import C_AU

log = logging.getLogger(__name__)

SUPPORT_CUTOFF = 1e-10

DEFAULT_PULSE_FWHM = 1e10


@dataclass(frozen=True)
class PulseSpec:
    duration_fwhm: float = DEFAULT_PULSE_FWHM
    n_points: int = 512
    dt: float | None = None
    t_center: float | None = None
    amplitude: float = 1.0

    def __post_init__(self):
        if not self.duration_fwhm > 0:
            raise ParameterError("duration_fwhm must be > 0")
        n = self.n_points
        if n < 16 or n & (n - 1):
            raise ParameterError(f"n_points must be a power of two >= 16, got {n}")
        if self.dt is not None and not self.dt > 0:
            raise ParameterError("dt must be > 0")

    @property
    def step(self):
        return self.dt if self.dt is not None else self.duration_fwhm / 16.0

    @property
    def window(self):
        return self.n_points * self.step

    @property
    def center(self):
        return self.t_center if self.t_center is not None else 0.5 * self.window

    @property
    def time_grid(self):
        return np.arange(self.n_points) * self.step

    def envelope(self):
        t = self.time_grid
        return self.amplitude * np.exp(-2.0 * np.log(2.0) * (t - self.center) ** 2 / self.duration_fwhm**2)

    def check_window(self, max_delay=0.0):
        need = 8.0 * self.duration_fwhm + max_delay
        if self.window < need:
            raise ParameterError(f"time window {self.window:.4g} shorter than 8*FWHM + delay = {need:.4g}")


@dataclass
class PulseSpectrum:
    """g(omega) on the FFT frequency grid, plus the time grid it belongs to."""
    omega: np.ndarray
    g: np.ndarray
    time: np.ndarray

    def envelope(self):
        return np.fft.fft(self.g)


@dataclass
class PropagatedPulse:
    z: float
    time: np.ndarray
    envelope: np.ndarray
    peak_time: float
    peak_amplitude: float

    @classmethod
    def from_envelope(cls, z, time, envelope):
        t_peak, a_peak = locate_peak(time, np.abs(envelope))
        return cls(z, time, envelope, t_peak, a_peak)

    def spectrum(self):
        dt = self.time[1] - self.time[0]
        omega = 2.0 * np.pi * np.fft.fftfreq(self.time.size, dt)
        return PulseSpectrum(omega, np.fft.ifft(self.envelope), self.time)

    @property
    def energy(self):
        dt = self.time[1] - self.time[0]
        return float(np.sum(np.abs(self.envelope) ** 2) * dt)


def gaussian_spectrum(spec, max_delay=0.0):
    spec.check_window(max_delay)
    env = spec.envelope()
    if max(abs(env[0]), abs(env[-1])) > 1e-12 * spec.amplitude:
        raise ParameterError("pulse not contained in the time window (aliasing)")
    omega = 2.0 * np.pi * np.fft.fftfreq(spec.n_points, spec.step)
    return PulseSpectrum(omega, np.fft.ifft(env), spec.time_grid)


def spectral_fwhm(ps):
    """FWHM of |g|^2 in angular frequency (linear interpolation of the half points)."""
    order = np.argsort(ps.omega)
    w, p = ps.omega[order], np.abs(ps.g[order]) ** 2
    i = int(np.argmax(p))
    half = 0.5 * p[i]
    lo = i
    while lo > 0 and p[lo] > half:
        lo -= 1
    hi = i
    while hi < p.size - 1 and p[hi] > half:
        hi += 1
    left = np.interp(half, [p[lo], p[lo + 1]], [w[lo], w[lo + 1]])
    right = np.interp(half, [p[hi], p[hi - 1]], [w[hi], w[hi - 1]])
    return right - left


def _interp_chi(chi_av, omega):
    grid = chi_av.omega_grid
    re = CubicSpline(grid, chi_av.chi.real)
    im = CubicSpline(grid, chi_av.chi.imag)
    return re(omega) + 1j * im(omega)


def transfer_function(chi_av, omega, z, omega1):
    """exp[i omega1 z chi(omega) / (2c)] on the points of ``omega`` inside the chi grid, 1 outside."""
    inside = (omega >= chi_av.omega_grid[0]) & (omega <= chi_av.omega_grid[-1])
    H = np.ones(omega.shape, dtype=complex)
    H[inside] = np.exp(1j * omega1 * z * _interp_chi(chi_av, omega[inside]) / (2.0 * C_AU))
    return H, inside


def propagate(g, chi_av, z, omega1):
    if z < 0:
        raise ParameterError("z must be >= 0")
    H, inside = transfer_function(chi_av, g.omega, z, omega1)
    mag = np.abs(g.g)
    leak = mag[~inside].max() if np.any(~inside) else 0.0
    if z > 0 and leak > SUPPORT_CUTOFF * mag.max():
        lo, hi = chi_av.omega_grid[0], chi_av.omega_grid[-1]
        outside = g.omega[~inside][mag[~inside] > SUPPORT_CUTOFF * mag.max()]
        deficit = max(lo - outside.min(), outside.max() - hi, 0.0)
        raise ParameterError(
            f"pulse spectrum extends {deficit:.4g} a.u. beyond the chi grid [{lo:.4g}, {hi:.4g}]"
        )
    env = np.fft.fft(g.g * H) if z > 0 else g.envelope()
    return PropagatedPulse.from_envelope(z, g.time, env)


def locate_peak(time, magnitude):
    """Peak of a sampled curve by a parabola through the maximum and its neighbours."""
    mag = np.asarray(magnitude, dtype=float)
    i = int(np.argmax(mag))
    if mag[i] <= 0 or np.ptp(mag) <= 1e-12 * mag[i]:
        raise ParameterError("flat envelope: no unique peak")
    if i == 0 or i == mag.size - 1:
        return float(time[i]), float(mag[i])
    y0, y1, y2 = mag[i - 1 : i + 2]
    den = y0 - 2.0 * y1 + y2
    frac = 0.5 * (y0 - y2) / den if den != 0 else 0.0
    dt = time[1] - time[0]
    return float(time[i] + frac * dt), float(y1 - 0.25 * (y0 - y2) * frac)


def delay_and_attenuation(out, reference_vacuum):
    if out.time.shape != reference_vacuum.time.shape or not np.allclose(out.time, reference_vacuum.time):
        raise ParameterError("pulses are not on the same time grid")
    return out.peak_time - reference_vacuum.peak_time, out.peak_amplitude / reference_vacuum.peak_amplitude


def window_width_check(spec, window_width):
    """Warn when the pulse bandwidth is not well inside a feature of width ``window_width``."""
    bw = 4.0 * np.log(2.0) / spec.duration_fwhm
    if bw > 0.2 * window_width:
        warnings.warn(
            f"pulse spectral FWHM {bw:.3g} exceeds 1/5 of the transparency window {window_width:.3g}",
            stacklevel=2,
        )
    return bw
