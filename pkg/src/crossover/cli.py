"""Command line front end: reproducible scans written as CSV.

Each output file starts with '#' lines echoing the complete configuration,
the package version and the kernel backend; ``crossover replay FILE``
re-runs the job from that header and checks the body byte for byte.
"""
import argparse
import hashlib
import io
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, _backend, propagation, spectrum
from .config import emit_config, load_config, parse_config
from .errors import ConfigError, ConsistencyError, NumericalError, ParameterError, SolverError
from .units import C_AU

log = logging.getLogger("crossover")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_IO = 0, 2, 3, 4

COLUMNS = {
    "chi": ("omega", "re_chi", "im_chi"),
    "spectrum": ("omega", "re_chi", "im_chi", "n_g"),
    "envelope": ("t", "re_envelope", "im_envelope", "abs_envelope"),
    "summary": ("z", "delay", "amplitude_ratio"),
}


@dataclass
class ScanResult:
    output: str
    cfg: object
    rows: np.ndarray
    summary: dict = field(default_factory=dict)
    backend: str = _backend.BACKEND

    @property
    def columns(self):
        return COLUMNS[self.output]

    def header(self):
        lines = [f"crossover-version = {__version__}", f"output = {self.output}", f"backend = {self.backend}",
                 "--- config ---"]
        lines += emit_config(self.cfg).splitlines()
        lines.append("--- end config ---")
        return "".join(f"# {ln}\n" for ln in lines)

    def body(self):
        buf = io.StringIO()
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(f"{x:.17g}" for x in row) + "\n")
        return buf.getvalue()

    def filename(self):
        digest = hashlib.sha256((self.output + "\n" + emit_config(self.cfg)).encode()).hexdigest()[:12]
        return f"{self.cfg.job}_{self.output}_{digest}.csv"

    def write(self, out_dir):
        path = Path(out_dir) / self.filename()
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.header() + self.body(), encoding="utf-8")
        return path


def _chi_spectrum(cfg, threads, backend=None):
    atom, drive, medium = cfg.atom(), cfg.drive(), cfg.medium()
    grid = cfg.omega_grid()
    log.info("Doppler-averaged chi: %d frequencies, omega_da=%.4g, eps2=%.4g", grid.size, atom.omega_da, drive.eps2)
    return spectrum.susceptibility_spectrum(atom, drive, medium, grid, threads=threads, backend=backend,
                                            **cfg.quadrature())


def job_chi(cfg, threads=0, velocity=None, backend=None):
    if velocity is None:
        s = _chi_spectrum(cfg, threads, backend)
        grid, chi = s.omega_grid, s.chi
    else:
        grid = cfg.omega_grid()
        chi = spectrum.chi_single_velocity(cfg.atom(), cfg.drive(), cfg.medium(), velocity, grid,
                                           threads=threads, backend=backend)
    rows = np.column_stack([grid, chi.real, chi.imag])
    return ScanResult("chi", cfg, rows, {"points": int(grid.size)}, backend or _backend.BACKEND)


def job_group_index(cfg, threads=0, backend=None):
    spectrum.check_resolution(cfg.omega_grid(), cfg.atom().linewidth)
    s = _chi_spectrum(cfg, threads, backend)
    ng = spectrum.group_index(s, cfg.drive().omega1)
    peaks = spectrum.find_maxima(ng, cfg.prominence)
    summary = {
        "maxima": len(peaks),
        "peak_omega": [float(ng.omega_grid[i]) for i in peaks],
        "max_n_g": float(ng.n_g.max()),
        "quad_error": s.quad_error,
    }
    rows = np.column_stack([s.omega_grid, s.chi.real, s.chi.imag, ng.n_g])
    return ScanResult("spectrum", cfg, rows, summary, backend or _backend.BACKEND)


def _pinned_grid(cfg, members):
    """Shared frequency offsets: the widest default grid among ``members``."""
    grids = [m.omega_grid() for m in members]
    widest = max(grids, key=lambda g: (g[-1] - g[0], g.size))
    center = 0.5 * (widest[0] + widest[-1])
    return widest[0] - center, widest[-1] - center, widest.size


def _sweep(cfg, key, values, threads, backend):
    members = [cfg.replace(**{key: float(v)}) for v in values]
    if cfg.omega_min is None and cfg.omega_max is None:
        lo, hi, n = _pinned_grid(cfg, members)
        pinned = []
        for m in members:
            atom, drive = m.atom(), m.drive()
            c = atom.midpoint - drive.omega1
            pinned.append(m.replace(omega_min=c + lo, omega_max=c + hi, n_points=n))
        members = pinned
    return [job_group_index(m, threads, backend) for m in members]


def job_level_spacing_sweep(cfg, spacings=None, threads=0, backend=None):
    spacings = cfg.spacings if spacings is None else tuple(spacings)
    if any(s < 0 for s in spacings):
        raise ParameterError("level spacings must be >= 0")
    return _sweep(cfg.replace(job="sweep-spacing", spacings=tuple(spacings)), "omega_da", spacings, threads, backend)


def job_pump_sweep(cfg, amplitudes=None, threads=0, backend=None):
    amplitudes = cfg.amplitudes if amplitudes is None else tuple(amplitudes)
    if any(a <= 0 for a in amplitudes):
        raise ParameterError("pump amplitudes must be > 0")
    return _sweep(cfg.replace(job="sweep-pump", amplitudes=tuple(amplitudes)), "eps2", amplitudes, threads, backend)


def job_propagate(cfg, depths=None, threads=0, backend=None):
    depths = cfg.depths if depths is None else tuple(float(z) for z in depths)
    if any(z < 0 or z > cfg.sample_length_L for z in depths):
        raise ParameterError(f"depths must lie in [0, {cfg.sample_length_L!r}]")
    cfg = cfg.replace(job="propagate", depths=tuple(depths))
    spectrum.check_resolution(cfg.omega_grid(), cfg.atom().linewidth)
    s = _chi_spectrum(cfg, threads, backend)
    omega1 = cfg.drive().omega1
    g = propagation.gaussian_spectrum(cfg.pulse())
    ref = propagation.propagate(g, s, 0.0, omega1)
    backend = backend or _backend.BACKEND
    results, summary_rows = [], []
    for z in depths:
        out = propagation.propagate(g, s, z, omega1)
        delay, ratio = propagation.delay_and_attenuation(out, ref)
        summary_rows.append((z, delay, ratio))
        env = out.envelope
        rows = np.column_stack([out.time, env.real, env.imag, np.abs(env)])
        results.append(ScanResult("envelope", cfg.replace(depths=(z,)), rows,
                                  {"z": z, "delay": delay, "amplitude_ratio": ratio}, backend))
    ng = spectrum.group_index(s, omega1)
    n_center = float(np.interp(0.0, ng.omega_grid, ng.n_g))
    summary = {
        "depths": list(depths),
        "delay": [r[1] for r in summary_rows],
        "amplitude_ratio": [r[2] for r in summary_rows],
        "group_delay_estimate": [(n_center - 1.0) * z / C_AU for z in depths],
    }
    results.append(ScanResult("summary", cfg, np.array(summary_rows, dtype=float).reshape(-1, 3), summary, backend))
    return results


def read_result(path):
    """Split a CSV written by this tool into (metadata, config text, body)."""
    text = Path(path).read_text(encoding="utf-8")
    meta, cfg_lines, body_lines = {}, [], []
    state = "meta"
    for line in text.splitlines(keepends=True):
        if not line.startswith("#"):
            body_lines.append(line)
            continue
        content = line[1:].strip()
        if content == "--- config ---":
            state = "config"
        elif content == "--- end config ---":
            state = "done"
        elif state == "config":
            cfg_lines.append(content)
        elif "=" in content:
            k, v = (s.strip() for s in content.split("=", 1))
            meta[k] = v
    if state != "done" or "output" not in meta:
        raise ConfigError(f"{path}: missing parameter header; cannot replay")
    return meta, "\n".join(cfg_lines) + "\n", "".join(body_lines)


def replay(path, threads=0):
    meta, cfg_text, body = read_result(path)
    cfg = parse_config(cfg_text)
    backend = meta.get("backend")
    if backend not in _backend.available():
        log.warning("backend %r unavailable, replaying with %r; last digits may differ", backend, _backend.BACKEND)
        backend = None
    output = meta["output"]
    if output == "chi":
        fresh = job_chi(cfg, threads, backend=backend)
    elif output == "spectrum":
        fresh = job_group_index(cfg, threads, backend=backend)
    elif output in ("envelope", "summary"):
        runs = job_propagate(cfg, threads=threads, backend=backend)
        fresh = runs[-1] if output == "summary" else runs[0]
    else:
        raise ConfigError(f"{path}: unknown output kind {output!r}")
    return fresh.body() == body, fresh


def _add_common(p):
    p.add_argument("--config", help="key = value file (a.u.); unset keys take the reference values")
    p.add_argument("--out", default=".", help="output directory (default: current)")
    p.add_argument("--threads", type=int, default=0, help="kernel threads, 0 = all cores")


def _floats(text):
    return [float(x) for x in text.split(",") if x.strip()]


def build_parser():
    parser = argparse.ArgumentParser(prog="crossover", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("chi", help="Doppler-averaged (or single-velocity) susceptibility")
    _add_common(p)
    p.add_argument("--velocity", type=float, help="single velocity class v/D instead of the average")
    p = sub.add_parser("group-index", help="chi and group index over the scan grid")
    _add_common(p)
    p = sub.add_parser("sweep-spacing", help="group index for several upper-level spacings")
    _add_common(p)
    p.add_argument("--spacings", type=_floats, help="comma-separated omega_da values (a.u.)")
    p = sub.add_parser("sweep-pump", help="group index for several pump amplitudes")
    _add_common(p)
    p.add_argument("--amplitudes", type=_floats, help="comma-separated eps2 values (a.u.)")
    p = sub.add_parser("propagate", help="Gaussian probe pulse at several depths")
    _add_common(p)
    p.add_argument("--depths", type=_floats, help="comma-separated depths z (a.u.)")
    p = sub.add_parser("replay", help="re-run CSV files from their headers and compare")
    p.add_argument("files", nargs="+")
    p.add_argument("--threads", type=int, default=0)
    return parser


def _run(args):
    if args.command == "replay":
        ok_all = True
        for f in args.files:
            ok, _ = replay(f, args.threads)
            ok_all &= ok
            print(json.dumps({"file": f, "identical": ok}))
        return EXIT_OK if ok_all else EXIT_NUMERICAL

    cfg = load_config(args.config).replace(job=args.command)
    if args.command == "chi":
        results = [job_chi(cfg, args.threads, args.velocity)]
    elif args.command == "group-index":
        results = [job_group_index(cfg, args.threads)]
    elif args.command == "sweep-spacing":
        results = job_level_spacing_sweep(cfg, args.spacings, args.threads)
    elif args.command == "sweep-pump":
        results = job_pump_sweep(cfg, args.amplitudes, args.threads)
    else:
        results = job_propagate(cfg, args.depths, args.threads)
    for r in results:
        path = r.write(args.out)
        log.info("wrote %s", path)
        print(json.dumps({"file": str(path), "output": r.output, **r.summary}))
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose + 1, 2)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return _run(args)
    except (ConfigError, ParameterError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except (SolverError, NumericalError, ConsistencyError) as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERICAL
    except OSError as exc:
        log.error("I/O error: %s", exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
