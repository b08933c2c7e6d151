"""Atomic-unit <-> SI conversions.

Everything inside the package works in Hartree atomic units
(hbar = e = m_e = 1, c = 1/alpha). SI only shows up at the edges:
config comments, CSV labels and the README.
"""
from dataclasses import dataclass

import numpy as np
from scipy import constants as _sc


@dataclass(frozen=True)
class PhysicalConstants:
    speed_of_light_au: float
    fine_structure_alpha: float
    au_time_in_seconds: float
    au_frequency_in_Hz: float
    au_length_in_m: float
    au_field_in_Vpm: float


def _codata():
    alpha = _sc.fine_structure
    t_au = _sc.physical_constants["atomic unit of time"][0]
    return PhysicalConstants(
        speed_of_light_au=1.0 / alpha,
        fine_structure_alpha=alpha,
        au_time_in_seconds=t_au,
        au_frequency_in_Hz=1.0 / t_au,
        au_length_in_m=_sc.physical_constants["Bohr radius"][0],
        au_field_in_Vpm=_sc.physical_constants["atomic unit of electric field"][0],
    )


CONSTANTS = _codata()
C_AU = CONSTANTS.speed_of_light_au


_HZ_PER_AU_ANGULAR = CONSTANTS.au_frequency_in_Hz / (2.0 * np.pi)
_CM_PER_AU = CONSTANTS.au_length_in_m * 100.0


def angular_frequency_au_to_Hz(w):
    """Angular frequency in a.u. -> ordinary frequency nu = omega / 2pi in Hz."""
    return np.multiply(w, _HZ_PER_AU_ANGULAR)


def Hz_to_angular_frequency_au(nu):
    return np.divide(nu, _HZ_PER_AU_ANGULAR)


def length_au_to_cm(z):
    return np.multiply(z, _CM_PER_AU)


def cm_to_length_au(z_cm):
    return np.divide(z_cm, _CM_PER_AU)


def time_au_to_s(t):
    return np.multiply(t, CONSTANTS.au_time_in_seconds)


def s_to_time_au(t_s):
    return np.divide(t_s, CONSTANTS.au_time_in_seconds)


def density_au_to_per_cm3(n):
    return np.divide(n, _CM_PER_AU**3)


def field_au_to_intensity_mW_per_cm2(eps):
    """Cycle-averaged intensity of a real field eps*cos(...), in mW/cm^2."""
    e_si = np.multiply(eps, CONSTANTS.au_field_in_Vpm)
    w_per_m2 = 0.5 * _sc.c * _sc.epsilon_0 * e_si**2
    return w_per_m2 * 0.1
