"""Susceptibility, Doppler averaging and group index.

The velocity integral uses the trapezoidal rule on v/D in [-v_max, v_max].
Two nested grids are summed in a single kernel pass (spacing h and h/2);
their difference certifies the result, and the finer one is returned.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import find_peaks

from . import _backend, bloch
from .errors import NumericalError, ParameterError, SolverError

log = logging.getLogger(__name__)

SUSCEPTIBILITY_PREFACTOR = 8.0 * np.pi  # 2 / eps0 with eps0 = 1 / (4 pi)
MAX_NODE_SPACING = 0.25


@dataclass
class SusceptibilitySpectrum:
    omega_grid: np.ndarray
    chi: np.ndarray
    kind: str = "doppler_averaged"
    linewidth: float | None = None
    quad_error: float | None = None
    n_velocity_nodes: int | None = None

    def __post_init__(self):
        self.omega_grid = np.asarray(self.omega_grid, dtype=float)
        self.chi = np.asarray(self.chi, dtype=complex)
        if self.omega_grid.shape != self.chi.shape:
            raise ParameterError("omega_grid and chi must have the same shape")
        if self.kind not in ("single_velocity", "doppler_averaged"):
            raise ParameterError(f"unknown spectrum kind {self.kind!r}")
        if not np.all(np.isfinite(self.chi)):
            raise NumericalError("susceptibility has non-finite values")

    @property
    def spacing(self):
        return uniform_spacing(self.omega_grid)


@dataclass
class GroupIndexSpectrum:
    omega_grid: np.ndarray
    n_g: np.ndarray
    meta: dict = field(default_factory=dict)


def uniform_spacing(grid, rtol=1e-9):
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 3:
        raise ParameterError("need a 1-D grid with at least 3 points")
    d = np.diff(grid)
    h = (grid[-1] - grid[0]) / (grid.size - 1)
    if not h > 0 or np.max(np.abs(d - h)) > rtol * max(abs(h), np.max(np.abs(grid))):
        raise ParameterError("grid must be strictly increasing and uniform")
    return h


def default_omega_grid(atom, drive, n_points=None, half_width=None):
    """Scan grid centred on the midpoint tuning.

    Covers both two-level resonances (at +-omega_da from the cross-over)
    with an 8 Gamma margin, spacing at most Gamma/20, and at least 2001 points.
    """
    gamma = atom.linewidth
    center = atom.midpoint - drive.omega1
    if half_width is None:
        half_width = atom.omega_da + 8.0 * gamma
    if n_points is None:
        n_points = max(2001, math.ceil(2.0 * half_width / (gamma / 20.0)) + 1)
        n_points += 1 - n_points % 2
    return np.linspace(center - half_width, center + half_width, int(n_points))


def velocity_nodes(v_max, n_intervals):
    """Trapezoid nodes on [-v_max, v_max] with Gaussian weights exp(-u^2)/sqrt(pi)."""
    u = np.linspace(-v_max, v_max, n_intervals + 1)
    h = 2.0 * v_max / n_intervals
    w = np.full(u.size, h)
    w[0] = w[-1] = 0.5 * h
    return u, w * np.exp(-u * u) / np.sqrt(np.pi)


def _base_intervals(atom, medium, v_max, node_density):
    h = min(atom.linewidth / (node_density * medium.doppler_k1D), MAX_NODE_SPACING)
    return max(8, math.ceil(2.0 * v_max / h))


def _doppler_pass(atom, drive, medium, omega, u, weight_sets, threads=1, backend=None):
    """Weighted velocity sums of the single-velocity susceptibility."""
    D = medium.doppler_k1D / drive.k1
    Ls, x0 = bloch.steady_states(atom, drive, u * D)
    K = np.empty_like(Ls)
    rhs = np.empty((u.size, 9), dtype=complex)
    mask = None
    for j in range(u.size):
        K[j], rhs[j], mask = bloch.response_system(atom, None, x0[j], L=Ls[j])
    proj = np.zeros(9, dtype=complex)
    proj[bloch.IDX_AB] = atom.d_ba
    proj[bloch.IDX_DB] = atom.d_bd
    delta0 = np.ascontiguousarray(omega + drive.omega1 - drive.omega2, dtype=float)
    slope = medium.doppler_k1D * (1.0 - drive.k2 / drive.k1)
    kernel = _backend.get(backend)
    sums, status = kernel(
        np.ascontiguousarray(K), np.ascontiguousarray(rhs), proj, mask,
        delta0, float(slope), np.ascontiguousarray(u, dtype=float),
        np.ascontiguousarray(weight_sets, dtype=float), int(threads),
    )
    if np.any(status):
        bad = omega[np.flatnonzero(status)[0]]
        raise SolverError(f"singular linear-response system near omega={bad!r}")
    return SUSCEPTIBILITY_PREFACTOR * medium.density_N * sums


def _resolve_threads(threads):
    if threads is None or threads <= 0:
        import os
        return os.cpu_count() or 1
    return int(threads)


def chi_single_velocity(atom, drive, medium, v_scaled, omega, threads=1, backend=None):
    """Susceptibility of the velocity class v = v_scaled * D, per unit probe field."""
    om = np.atleast_1d(np.asarray(omega, dtype=float))
    u = np.array([float(v_scaled)])
    chi = _doppler_pass(atom, drive, medium, om, u, np.ones((1, 1)), _resolve_threads(threads), backend)[0]
    return chi.reshape(np.shape(omega)) if np.ndim(omega) else complex(chi[0])


def chi_doppler_averaged(atom, drive, medium, omega, v_max=4.0, node_density=10.0,
                         tol=1e-4, max_refinements=2, threads=0, backend=None,
                         return_info=False):
    """Velocity-averaged susceptibility on the Fourier detunings ``omega``.

    Raises NumericalError if the nested-grid difference stays above ``tol``
    (relative, pointwise in |chi|) after ``max_refinements`` node doublings.
    """
    om = np.atleast_1d(np.asarray(omega, dtype=float))
    threads = _resolve_threads(threads)
    n = _base_intervals(atom, medium, v_max, node_density)
    err = np.inf
    for level in range(max_refinements + 1):
        u, w_fine = velocity_nodes(v_max, 2 * n)
        _, w_coarse = velocity_nodes(v_max, n)
        weights = np.zeros((2, u.size))
        weights[0, ::2] = w_coarse
        weights[1] = w_fine
        coarse, fine = _doppler_pass(atom, drive, medium, om, u, weights, threads, backend)
        scale = np.abs(fine)
        diff = np.abs(fine - coarse)
        rel = np.divide(diff, scale, out=np.zeros_like(diff), where=scale > 0)
        err = float(rel.max()) if rel.size else 0.0
        log.debug("Doppler average level %d: %d nodes, error %.3g", level, u.size, err)
        if err <= tol:
            chi = fine.reshape(np.shape(omega)) if np.ndim(omega) else complex(fine[0])
            if return_info:
                return chi, {"quad_error": err, "n_velocity_nodes": int(u.size), "level": level}
            return chi
        n *= 2
    raise NumericalError(
        f"Doppler average not converged: relative change {err:.3g} > {tol:g} with {u.size} nodes",
        achieved=err,
    )


def susceptibility_spectrum(atom, drive, medium, omega_grid=None, **quad):
    if omega_grid is None:
        omega_grid = default_omega_grid(atom, drive)
    chi, info = chi_doppler_averaged(atom, drive, medium, omega_grid, return_info=True, **quad)
    return SusceptibilitySpectrum(
        omega_grid, chi, "doppler_averaged", linewidth=atom.linewidth,
        quad_error=info["quad_error"], n_velocity_nodes=info["n_velocity_nodes"],
    )


def check_resolution(omega_grid, linewidth):
    """Group-index grids must resolve the narrowest features: spacing <= linewidth / 20."""
    h = uniform_spacing(omega_grid)
    if h > linewidth / 20.0 * (1 + 1e-9):
        raise ParameterError(f"grid spacing {h:.4g} too coarse; need <= {linewidth / 20.0:.4g} (linewidth/20)")
    return h


def group_index(chi_spectrum, omega1, linewidth=None):
    """n_g = 1 + (omega1 / 2) d Re(chi) / d omega by second-order finite differences."""
    h = chi_spectrum.spacing
    lw = linewidth if linewidth is not None else chi_spectrum.linewidth
    if lw is not None:
        check_resolution(chi_spectrum.omega_grid, lw)
    slope = np.gradient(chi_spectrum.chi.real, h, edge_order=2)
    return GroupIndexSpectrum(chi_spectrum.omega_grid.copy(), 1.0 + 0.5 * omega1 * slope)


def five_point_derivative(y, h):
    """Fourth-order central derivative at interior points 2..n-3."""
    y = np.asarray(y)
    return (y[:-4] - 8 * y[1:-3] + 8 * y[3:-1] - y[4:]) / (12.0 * h)


def find_maxima(spectrum, prominence=0.05):
    """Indices of interior maxima standing out by ``prominence`` of the full range."""
    y = np.asarray(spectrum.n_g if hasattr(spectrum, "n_g") else spectrum, dtype=float)
    if y.size == 0:
        raise ParameterError("empty spectrum")
    if not prominence > 0:
        raise ParameterError("prominence must be > 0")
    span = float(y.max() - y.min())
    if span == 0:
        return np.array([], dtype=int)
    peaks, _ = find_peaks(y, prominence=prominence * span)
    return peaks


def count_local_maxima(spectrum, prominence=0.05):
    return int(len(find_maxima(spectrum, prominence)))
