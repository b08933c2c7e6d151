import numpy as np
import pytest

from crossover.errors import ParameterError
from crossover.system import (
    AtomicSystem,
    DriveConfig,
    MediumConfig,
    default_paper_system,
    dipole_from_linewidth,
    emission_rate,
)


def test_dipole_for_reference_linewidth():
    d = dipole_from_linewidth(8.63e-10, 5.845e-2)
    assert d == pytest.approx(2.89, rel=5e-3)
    assert emission_rate(d, 5.845e-2) == pytest.approx(8.63e-10, rel=1e-12)


@pytest.mark.parametrize("gamma, omega", [(0.0, 0.05), (-1e-9, 0.05), (1e-9, 0.0), (np.nan, 0.05)])
def test_dipole_rejects_bad_input(gamma, omega):
    with pytest.raises(ParameterError):
        dipole_from_linewidth(gamma, omega)


def test_default_system():
    atom, drive, medium = default_paper_system()
    assert atom.omega_db == pytest.approx(5.845e-2 + 4.06e-8, rel=1e-15)
    assert drive.omega1 == drive.omega2 == atom.midpoint
    assert drive.k2 == -drive.k1
    assert atom.gamma_ba == atom.gamma_bd == atom.gamma_ad / 2
    assert medium.density_N == 3e-14
    # the upper dipole follows from its own transition frequency
    assert atom.d_bd < atom.d_ba


def test_doppler_shifts():
    _, drive, _ = default_paper_system()
    moving = drive.at_velocity(1e-4)
    assert moving.omega1 == pytest.approx(drive.omega1 - drive.k1 * 1e-4, rel=1e-15)
    assert moving.omega2 == pytest.approx(drive.omega2 + drive.k1 * 1e-4, rel=1e-15)


@pytest.mark.parametrize("field", ["omega_ab", "gamma_aa", "d_bd"])
def test_atom_validation(field):
    atom, _, _ = default_paper_system()
    with pytest.raises(ParameterError):
        atom.replace(**{field: -1.0})
    with pytest.raises(ParameterError):
        AtomicSystem.from_linewidth(0.05, -1e-9, 1e-9)


def test_drive_and_medium_validation():
    with pytest.raises(ParameterError):
        DriveConfig(eps2=1e-10, omega1=0.05, omega2=0.05, k1=1e-4, k2=1e-4)
    with pytest.raises(ParameterError):
        DriveConfig.counter_propagating(-1.0, 0.05)
    with pytest.raises(ParameterError):
        MediumConfig(1e-14, 0.0, 1e8)
    assert MediumConfig(0.0, 1e-8, 0.0).density_N == 0.0
