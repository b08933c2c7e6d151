"""Run configuration: a flat ``key = value`` file in atomic units.

Every key is optional; anything left out takes the reference value.  Keys
whose default depends on other keys (dipoles, laser frequencies, scan
grid, ...) accept ``auto``.  Lists are comma separated.
"""
import dataclasses
import logging
import math
from dataclasses import dataclass, fields

import numpy as np

from . import system
from .errors import ConfigError
from .propagation import DEFAULT_PULSE_FWHM, PulseSpec
from .spectrum import default_omega_grid
from .units import C_AU

log = logging.getLogger(__name__)

JOBS = ("chi", "group-index", "sweep-spacing", "sweep-pump", "propagate")

_G = system.REFERENCE_GAMMA


@dataclass(frozen=True)
class RunConfig:
    # atom
    omega_ab: float = system.REFERENCE_OMEGA_AB
    omega_da: float = system.REFERENCE_OMEGA_DA
    gamma: float = system.REFERENCE_GAMMA
    gamma_aa: float | None = None
    gamma_dd: float | None = None
    gamma_ba: float | None = None
    gamma_bd: float | None = None
    gamma_ad: float | None = None
    d_ba: float | None = None
    d_bd: float | None = None
    # drive
    eps2: float = system.REFERENCE_EPS2
    omega1: float | None = None
    omega2: float | None = None
    k1: float | None = None
    k2: float | None = None
    # medium
    density_N: float = system.REFERENCE_DENSITY
    doppler_k1D: float = system.REFERENCE_K1D
    sample_length_L: float = system.REFERENCE_SAMPLE_LENGTH
    # probe pulse
    pulse_fwhm: float = DEFAULT_PULSE_FWHM
    pulse_n_points: int = 512
    pulse_dt: float | None = None
    pulse_t_center: float | None = None
    pulse_amplitude: float = 1.0
    # frequency scan
    omega_min: float | None = None
    omega_max: float | None = None
    n_points: int | None = None
    # velocity quadrature
    v_max_over_D: float = 4.0
    node_density: float = 10.0
    quad_tol: float = 1e-4
    max_refinements: int = 2
    # jobs
    job: str = "group-index"
    prominence: float = 0.05
    spacings: tuple = (4 * _G, 2 * _G, 0.0)
    amplitudes: tuple = (1.74e-10, 3.47e-10, 10.4e-10)
    depths: tuple = (0.0, 2e7, 6e7, 1e8)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def atom(self):
        g = self.gamma
        gaa = _pick(self.gamma_aa, g)
        gdd = _pick(self.gamma_dd, g)
        return system.AtomicSystem(
            omega_ab=self.omega_ab,
            omega_da=self.omega_da,
            d_ba=_pick(self.d_ba, lambda: system.dipole_from_linewidth(gaa, self.omega_ab)),
            d_bd=_pick(self.d_bd, lambda: system.dipole_from_linewidth(gdd, self.omega_ab + self.omega_da)),
            gamma_aa=gaa,
            gamma_dd=gdd,
            gamma_ba=_pick(self.gamma_ba, g / 2.0),
            gamma_bd=_pick(self.gamma_bd, g / 2.0),
            gamma_ad=_pick(self.gamma_ad, g),
        )

    def drive(self):
        w1 = _pick(self.omega1, lambda: self.omega_ab + 0.5 * self.omega_da)
        w2 = _pick(self.omega2, w1)
        return system.DriveConfig(
            eps2=self.eps2,
            omega1=w1,
            omega2=w2,
            k1=_pick(self.k1, w1 / C_AU),
            k2=_pick(self.k2, -w2 / C_AU),
        )

    def medium(self):
        return system.MediumConfig(self.density_N, self.doppler_k1D, self.sample_length_L)

    def pulse(self):
        return PulseSpec(
            duration_fwhm=self.pulse_fwhm,
            n_points=self.pulse_n_points,
            dt=self.pulse_dt,
            t_center=self.pulse_t_center,
            amplitude=self.pulse_amplitude,
        )

    def omega_grid(self):
        atom, drive = self.atom(), self.drive()
        if self.omega_min is None and self.omega_max is None:
            return default_omega_grid(atom, drive, n_points=self.n_points)
        auto = default_omega_grid(atom, drive)
        lo = _pick(self.omega_min, auto[0])
        hi = _pick(self.omega_max, auto[-1])
        n = self.n_points
        if n is None:
            n = max(2001, math.ceil((hi - lo) / (atom.linewidth / 20.0)) + 1)
        return np.linspace(lo, hi, n)

    def quadrature(self):
        return {
            "v_max": self.v_max_over_D,
            "node_density": self.node_density,
            "tol": self.quad_tol,
            "max_refinements": self.max_refinements,
        }


def _pick(value, default):
    if value is not None:
        return value
    return default() if callable(default) else default


_KINDS = {f.name: f for f in fields(RunConfig)}
_LIST_KEYS = ("spacings", "amplitudes", "depths")
_INT_KEYS = ("pulse_n_points", "n_points", "max_refinements")

_POSITIVE = (
    "omega_ab", "gamma", "doppler_k1D", "density_N", "pulse_fwhm", "pulse_dt",
    "v_max_over_D", "node_density", "quad_tol", "prominence", "k1", "omega1", "omega2",
    "pulse_amplitude",
)
_NON_NEGATIVE = (
    "omega_da", "gamma_aa", "gamma_dd", "gamma_ba", "gamma_bd", "gamma_ad",
    "d_ba", "d_bd", "eps2", "sample_length_L", "max_refinements",
)


def _parse_value(key, raw, line):
    raw = raw.strip()
    default = _KINDS[key].default
    if raw.lower() == "auto":
        if default is not None:
            raise ConfigError(f"{key} does not accept 'auto'", line)
        return None
    if key == "job":
        if raw not in JOBS:
            raise ConfigError(f"unknown job {raw!r}; expected one of {', '.join(JOBS)}", line)
        return raw
    try:
        if key in _LIST_KEYS:
            return tuple(float(x) for x in raw.split(",") if x.strip())
        if key in _INT_KEYS:
            return int(raw)
        return float(raw)
    except ValueError:
        raise ConfigError(f"malformed number for {key}: {raw!r}", line) from None


def _validate(cfg, lines):
    def fail(key, msg):
        raise ConfigError(f"{key}: {msg}", lines.get(key))

    for key in _POSITIVE:
        v = getattr(cfg, key)
        if v is not None and not (math.isfinite(v) and v > 0):
            fail(key, f"must be > 0 (got {v!r})")
    for key in _NON_NEGATIVE:
        v = getattr(cfg, key)
        if v is not None and not (math.isfinite(v) and v >= 0):
            fail(key, f"must be >= 0 (got {v!r})")
    if cfg.k2 is not None and not cfg.k2 < 0:
        fail("k2", f"must be < 0 for a counter-propagating pump (got {cfg.k2!r})")
    n = cfg.pulse_n_points
    if n < 16 or n & (n - 1):
        fail("pulse_n_points", f"must be a power of two >= 16 (got {n})")
    if cfg.n_points is not None and cfg.n_points < 5:
        fail("n_points", "must be >= 5")
    if cfg.omega_min is not None and cfg.omega_max is not None and not cfg.omega_max > cfg.omega_min:
        fail("omega_max", "must exceed omega_min")
    if any(s < 0 for s in cfg.spacings):
        fail("spacings", "level spacings must be >= 0")
    if any(a <= 0 for a in cfg.amplitudes):
        fail("amplitudes", "pump amplitudes must be > 0")
    if any(z < 0 or z > cfg.sample_length_L for z in cfg.depths):
        fail("depths", f"depths must lie in [0, sample_length_L={cfg.sample_length_L!r}]")


def parse_config(text):
    values, lines = {}, {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"expected 'key = value', got {body!r}", lineno)
        key, value = (s.strip() for s in body.split("=", 1))
        if key not in _KINDS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in values:
            raise ConfigError(f"duplicate key {key!r} (first set on line {lines[key]})", lineno)
        values[key] = _parse_value(key, value, lineno)
        lines[key] = lineno
    missing = [k for k in _KINDS if k not in values]
    if missing:
        log.info("using defaults for %d unset keys: %s", len(missing), ", ".join(missing))
    cfg = RunConfig(**values)
    _validate(cfg, lines)
    return cfg


def _format(value):
    if value is None:
        return "auto"
    if isinstance(value, tuple):
        return ", ".join(repr(float(v)) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_config(cfg):
    return "".join(f"{f.name} = {_format(getattr(cfg, f.name))}\n" for f in fields(RunConfig))


def load_config(path):
    if path is None:
        return parse_config("")
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
