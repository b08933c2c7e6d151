"""Closed-form two-level pump-probe susceptibility.

Reference model for the degenerate limit of the V system (omega_da = 0),
where only the bright upper state with dipole sqrt(d_ba^2 + d_bd^2)
couples to b.  Written by hand, without the superoperator machinery in
``bloch``, so it can check that code.
"""
import numpy as np

from crossover.spectrum import SUSCEPTIBILITY_PREFACTOR, velocity_nodes


def steady_state(detuning, rabi, gamma_pop, gamma_coh):
    """(rho_aa, rho_ab) for pump detuning omega2 - omega0 and Rabi frequency d*eps2."""
    sat = rabi**2 * gamma_coh / (2.0 * gamma_pop * (gamma_coh**2 + detuning**2))
    rho_aa = sat / (1.0 + 2.0 * sat)
    w = 1.0 - 2.0 * rho_aa
    rho_ab = 0.5j * rabi * w / (gamma_coh - 1j * detuning)
    return rho_aa, rho_ab


def probe_coherence(delta, detuning, rabi, d, gamma_pop, gamma_coh):
    """<a|rho'|b> per unit probe field, for beat frequency ``delta``."""
    rho_aa, rho_ab = steady_state(detuning, rabi, gamma_pop, gamma_coh)
    rho_ba = np.conj(rho_ab)
    w = 1.0 - 2.0 * rho_aa
    v = -0.5 * d
    A = gamma_coh - 1j * (delta + detuning)
    Bc = gamma_coh - 1j * (delta - detuning)
    x_aa = (-rabi * v * w / (2.0 * A) - 1j * v * rho_ba) / (
        gamma_pop - 1j * delta + 0.5 * rabi**2 * (1.0 / A + 1.0 / Bc)
    )
    return (-1j * rabi * x_aa - 1j * v * w) / A


def chi_doppler_averaged(d, omega0, gamma_pop, gamma_coh, drive, medium, omega,
                         v_max=4.0, n_velocity_nodes=None):
    """Doppler-averaged two-level susceptibility on the same trapezoid rule as the V model."""
    om = np.asarray(omega, dtype=float)
    u, w = velocity_nodes(v_max, n_velocity_nodes - 1)
    ratio = drive.k2 / drive.k1
    total = np.zeros(om.shape, dtype=complex)
    rabi = d * drive.eps2
    for uj, wj in zip(u, w):
        k1v = medium.doppler_k1D * uj
        w1 = drive.omega1 - k1v
        w2 = drive.omega2 - ratio * k1v
        delta = om + w1 - w2
        total += wj * probe_coherence(delta, w2 - omega0, rabi, d, gamma_pop, gamma_coh)
    return SUSCEPTIBILITY_PREFACTOR * medium.density_N * d * total
