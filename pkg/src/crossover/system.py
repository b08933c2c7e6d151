"""Model definition: V-type atom, drive fields, and the Doppler-broadened medium.

Basis ordering used throughout the package is (b, a, d): the ground state b
and the two upper states a and d, with E_d >= E_a > E_b.
"""
from dataclasses import dataclass, replace

import numpy as np

from .errors import ParameterError
from .units import C_AU

REFERENCE_GAMMA = 8.63e-10
REFERENCE_OMEGA_AB = 5.845e-2
REFERENCE_OMEGA_DA = 4.06e-8
REFERENCE_EPS2 = 3.47e-10
REFERENCE_DENSITY = 3e-14
REFERENCE_K1D = 4.58e-8
REFERENCE_SAMPLE_LENGTH = 1e8


def emission_rate(d, omega):
    """Spontaneous emission rate A = 4 omega^3 d^2 / (3 c^3), atomic units."""
    return 4.0 * omega**3 * d**2 / (3.0 * C_AU**3)


def dipole_from_linewidth(gamma, omega):
    """Dipole matrix element whose spontaneous emission rate equals ``gamma``."""
    if not (np.isfinite(gamma) and np.isfinite(omega)) or gamma <= 0 or omega <= 0:
        raise ParameterError(
            f"dipole_from_linewidth needs gamma > 0 and omega > 0 (got {gamma!r}, {omega!r})"
        )
    return float(np.sqrt(3.0 * gamma * C_AU**3 / (4.0 * omega**3)))


@dataclass(frozen=True)
class AtomicSystem:
    omega_ab: float
    omega_da: float
    d_ba: float
    d_bd: float
    gamma_aa: float
    gamma_dd: float
    gamma_ba: float
    gamma_bd: float
    gamma_ad: float

    def __post_init__(self):
        if not self.omega_ab > 0:
            raise ParameterError(f"omega_ab must be > 0, got {self.omega_ab!r}")
        if not self.omega_da >= 0:
            raise ParameterError(f"omega_da must be >= 0, got {self.omega_da!r}")
        for name in ("gamma_aa", "gamma_dd", "gamma_ba", "gamma_bd", "gamma_ad"):
            if not getattr(self, name) >= 0:
                raise ParameterError(f"{name} must be >= 0, got {getattr(self, name)!r}")
        for name in ("d_ba", "d_bd"):
            if not getattr(self, name) >= 0:
                raise ParameterError(f"{name} must be >= 0, got {getattr(self, name)!r}")

    @classmethod
    def from_linewidth(cls, omega_ab, omega_da, gamma, d_ba=None, d_bd=None):
        """Both upper levels decaying at ``gamma`` into b only.

        Coherence rates follow gamma_ba = gamma_bd = gamma_ad / 2 = gamma / 2.
        Missing dipoles are derived from the linewidth of each transition.
        """
        if d_ba is None:
            d_ba = dipole_from_linewidth(gamma, omega_ab)
        if d_bd is None:
            d_bd = dipole_from_linewidth(gamma, omega_ab + omega_da)
        return cls(
            omega_ab=omega_ab,
            omega_da=omega_da,
            d_ba=d_ba,
            d_bd=d_bd,
            gamma_aa=gamma,
            gamma_dd=gamma,
            gamma_ba=gamma / 2.0,
            gamma_bd=gamma / 2.0,
            gamma_ad=gamma,
        )

    @property
    def omega_db(self):
        return self.omega_ab + self.omega_da

    @property
    def linewidth(self):
        """Narrowest population decay rate; sets grid resolutions."""
        return min(self.gamma_aa, self.gamma_dd)

    @property
    def midpoint(self):
        """Laser frequency halfway between the two transitions."""
        return self.omega_ab + 0.5 * self.omega_da

    def replace(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class DriveConfig:
    eps2: float
    omega1: float
    omega2: float
    k1: float
    k2: float

    def __post_init__(self):
        if not self.eps2 >= 0:
            raise ParameterError(f"eps2 must be >= 0, got {self.eps2!r}")
        if not self.k1 > 0:
            raise ParameterError(f"k1 must be > 0, got {self.k1!r}")
        if not self.k2 < 0:
            raise ParameterError(f"k2 must be < 0 (counter-propagating pump), got {self.k2!r}")

    @classmethod
    def counter_propagating(cls, eps2, omega1, omega2=None):
        """omega2 = omega1 unless given; k = omega / c with the pump reversed."""
        if omega2 is None:
            omega2 = omega1
        return cls(eps2=eps2, omega1=omega1, omega2=omega2, k1=omega1 / C_AU, k2=-omega2 / C_AU)

    def at_velocity(self, v):
        """Laser frequencies seen by an atom moving with velocity ``v`` along z."""
        return replace(self, omega1=self.omega1 - self.k1 * v, omega2=self.omega2 - self.k2 * v)

    def replace(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class MediumConfig:
    density_N: float
    doppler_k1D: float
    sample_length_L: float

    def __post_init__(self):
        if not self.density_N >= 0:
            raise ParameterError(f"density_N must be >= 0, got {self.density_N!r}")
        if not self.doppler_k1D > 0:
            raise ParameterError(f"doppler_k1D must be > 0, got {self.doppler_k1D!r}")
        if not self.sample_length_L >= 0:
            raise ParameterError(f"sample_length_L must be >= 0, got {self.sample_length_L!r}")

    def replace(self, **changes):
        return replace(self, **changes)


def default_paper_system():
    """Reference V atom, drive and medium: equal linewidths, pump and probe at the midpoint."""
    atom = AtomicSystem.from_linewidth(REFERENCE_OMEGA_AB, REFERENCE_OMEGA_DA, REFERENCE_GAMMA)
    drive = DriveConfig.counter_propagating(REFERENCE_EPS2, atom.midpoint)
    medium = MediumConfig(
        density_N=REFERENCE_DENSITY,
        doppler_k1D=REFERENCE_K1D,
        sample_length_L=REFERENCE_SAMPLE_LENGTH,
    )
    return atom, drive, medium
