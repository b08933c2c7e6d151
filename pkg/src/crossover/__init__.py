"""Slow light at cross-over resonances of Doppler-broadened V-type atoms.

Pump-probe model: a strong counter-propagating pump dresses three-level
V atoms (ground b, upper a and d); a weak probe sees the Doppler-averaged
linear susceptibility, whose steep normal dispersion inside the burned
velocity holes slows the probe down.
"""
__version__ = "0.1.0"

from ._backend import BACKEND
from .bloch import DensityMatrix, LinearResponse, linear_response, steady_state, time_evolve
from .config import RunConfig, emit_config, parse_config
from .errors import (
    ConfigError,
    ConsistencyError,
    CrossoverError,
    NumericalError,
    ParameterError,
    SolverError,
)
from .propagation import PulseSpec, delay_and_attenuation, gaussian_spectrum, propagate
from .spectrum import (
    GroupIndexSpectrum,
    SusceptibilitySpectrum,
    chi_doppler_averaged,
    chi_single_velocity,
    count_local_maxima,
    group_index,
    susceptibility_spectrum,
)
from .system import AtomicSystem, DriveConfig, MediumConfig, default_paper_system, dipole_from_linewidth
