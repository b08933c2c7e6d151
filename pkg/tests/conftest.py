import functools
import time

import pytest

from crossover import spectrum
from crossover.config import RunConfig
from crossover.system import default_paper_system

ACCEPTANCE_LINES = []


@functools.lru_cache(maxsize=None)
def default_spectra():
    """(chi spectrum, group index, seconds) for the reference parameters on the default grid."""
    atom, drive, medium = default_paper_system()
    start = time.perf_counter()
    chi = spectrum.susceptibility_spectrum(atom, drive, medium)
    ng = spectrum.group_index(chi, drive.omega1)
    return chi, ng, time.perf_counter() - start


@functools.lru_cache(maxsize=None)
def sweep(kind):
    from crossover import cli

    cfg = RunConfig()
    if kind == "spacing":
        return cli.job_level_spacing_sweep(cfg)
    return cli.job_pump_sweep(cfg.replace(omega_da=2 * cfg.gamma))


@pytest.fixture(scope="session")
def reference():
    return default_paper_system()


@pytest.fixture(scope="session")
def default_chi():
    return default_spectra()[0]


@pytest.fixture(scope="session")
def default_ng():
    return default_spectra()[1]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
