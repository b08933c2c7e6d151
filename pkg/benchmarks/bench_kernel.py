"""Compiled vs numpy Doppler-sum kernel on the reference parameters.

    python3 benchmarks/bench_kernel.py [--points 201] [--repeat 3]
"""
import argparse
import time

import numpy as np

from crossover import _backend, spectrum
from crossover.system import default_paper_system


def timed(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=201)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    atom, drive, medium = default_paper_system()
    grid = spectrum.default_omega_grid(atom, drive)
    omega = np.linspace(grid[0], grid[-1], args.points)
    results = {}
    for name in _backend.available():
        def run():
            return spectrum.chi_doppler_averaged(atom, drive, medium, omega, threads=args.threads,
                                                 backend=name, return_info=True)
        seconds, (chi, info) = timed(run, args.repeat)
        results[name] = chi
        print(f"{name:9s} {seconds:8.3f} s  {omega.size} frequencies x {info['n_velocity_nodes']} nodes"
              f"  ({omega.size * info['n_velocity_nodes'] / seconds / 1e6:.2f} M solves/s)")
    if len(results) == 2:
        diff = np.max(np.abs(results["compiled"] - results["python"]) / np.abs(results["python"]))
        print(f"max relative difference between backends: {diff:.2e}")


if __name__ == "__main__":
    main()
