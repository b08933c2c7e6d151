import numpy as np
import pytest

from crossover import _backend, spectrum
from crossover.errors import NumericalError, ParameterError
from crossover.spectrum import SusceptibilitySpectrum, chi_doppler_averaged, chi_single_velocity


def undressed_chi(atom, medium, omega1, omega):
    """Two independent Lorentzian lines of an atom left in its ground state."""
    total = 0.0
    for d, wt, g in ((atom.d_ba, atom.omega_ab, atom.gamma_ba), (atom.d_bd, atom.omega_db, atom.gamma_bd)):
        total = total + d**2 / (wt - omega1 - omega - 1j * g)
    return 4 * np.pi * medium.density_N * total


@pytest.fixture
def small_grid(reference):
    atom, drive, _ = reference
    return np.linspace(-6e-8, 6e-8, 41)


def test_undressed_atom_gives_two_lorentzians(reference, small_grid):
    atom, drive, medium = reference
    dr = drive.replace(eps2=0.0)
    chi = chi_single_velocity(atom, dr, medium, 0.0, small_grid)
    expect = undressed_chi(atom, medium, dr.omega1, small_grid)
    np.testing.assert_allclose(chi, expect, rtol=1e-8)
    assert np.all(chi.imag > 0)


def test_density_enters_linearly(reference, small_grid):
    atom, drive, medium = reference
    one = chi_single_velocity(atom, drive, medium, 0.2, small_grid)
    two = chi_single_velocity(atom, drive, medium.replace(density_N=2 * medium.density_N), 0.2, small_grid)
    assert np.array_equal(two, 2 * one)
    assert np.all(chi_single_velocity(atom, drive, medium.replace(density_N=0.0), 0.2, small_grid) == 0)


def test_scalar_frequency(reference):
    atom, drive, medium = reference
    value = chi_single_velocity(atom, drive, medium, 0.0, 1e-9)
    assert isinstance(value, complex)
    assert value == chi_single_velocity(atom, drive, medium, 0.0, np.array([1e-9]))[0]


def test_narrow_velocity_distribution_collapses_to_zero_velocity(reference, small_grid):
    atom, drive, medium = reference
    cold = medium.replace(doppler_k1D=atom.linewidth / 100)
    avg = chi_doppler_averaged(atom, drive, cold, small_grid)
    still = chi_single_velocity(atom, drive, cold, 0.0, small_grid)
    assert np.max(np.abs(avg - still) / np.abs(still)) < 5e-3


def test_mirror_symmetry_for_identical_transitions(reference):
    atom, drive, medium = reference
    atom = atom.replace(d_bd=atom.d_ba)
    offsets = np.linspace(0.3, 5.0, 10) * 1e-8
    om = np.concatenate([-offsets[::-1], offsets])
    chi = chi_doppler_averaged(atom, drive, medium, om)
    np.testing.assert_allclose(chi.imag[:10][::-1], chi.imag[10:], rtol=1e-4)


@pytest.mark.skipif("compiled" not in _backend.available(), reason="extension not built")
def test_backends_agree(reference, small_grid):
    atom, drive, medium = reference
    a = chi_doppler_averaged(atom, drive, medium, small_grid, backend="compiled")
    b = chi_doppler_averaged(atom, drive, medium, small_grid, backend="python")
    np.testing.assert_allclose(a, b, rtol=1e-11)


def test_thread_count_does_not_change_bits(reference, small_grid):
    atom, drive, medium = reference
    one = chi_doppler_averaged(atom, drive, medium, small_grid, threads=1)
    three = chi_doppler_averaged(atom, drive, medium, small_grid, threads=3)
    assert one.tobytes() == three.tobytes()


def test_unconverged_quadrature_reports_error(reference, small_grid):
    atom, drive, medium = reference
    with pytest.raises(NumericalError) as info:
        chi_doppler_averaged(atom, drive, medium, small_grid, node_density=0.05, tol=1e-12, max_refinements=0)
    assert info.value.achieved > 1e-12


def test_group_index_exact_cases():
    grid = np.linspace(-1e-8, 1e-8, 201)
    ramp = SusceptibilitySpectrum(grid, 3e4 * grid + 0.1j)
    ng = spectrum.group_index(ramp, 0.05, linewidth=2e-9)
    np.testing.assert_allclose(ng.n_g, 1 + 0.05 * 3e4 / 2, rtol=1e-12)
    flat = SusceptibilitySpectrum(grid, np.full(grid.size, 2e-3 + 1e-4j))
    assert np.all(spectrum.group_index(flat, 0.05).n_g == 1.0)
    with pytest.raises(ParameterError, match="linewidth/20"):
        spectrum.group_index(ramp, 0.05, linewidth=1e-9)


def test_spectrum_validation():
    with pytest.raises(ParameterError):
        SusceptibilitySpectrum(np.array([0.0, 1.0, 3.0]), np.zeros(3)).spacing
    with pytest.raises(NumericalError):
        SusceptibilitySpectrum(np.arange(3.0), np.array([0, np.nan, 0]))


def test_counting_maxima():
    x = np.linspace(0, 1, 500)
    assert spectrum.count_local_maxima(x) == 0
    assert spectrum.count_local_maxima(np.sin(6 * np.pi * x)) == 3
    assert spectrum.count_local_maxima(np.sin(6 * np.pi * x) + 0.01 * np.sin(200 * x), prominence=0.05) == 3
    with pytest.raises(ParameterError):
        spectrum.count_local_maxima(np.array([]))
    with pytest.raises(ParameterError):
        spectrum.count_local_maxima(x, prominence=0)


@pytest.mark.slow
def test_default_scan_is_absorptive(default_chi):
    assert np.all(default_chi.chi.imag > 0)


@pytest.mark.slow
def test_default_scan_quadrature_converged(default_chi, reference):
    assert default_chi.quad_error <= 1e-4
    atom, drive, medium = reference
    om = default_chi.omega_grid[::100]
    denser = chi_doppler_averaged(atom, drive, medium, om, node_density=20)
    coarse = default_chi.chi[::100]
    assert np.max(np.abs(denser - coarse) / np.abs(denser)) < 1e-4


@pytest.mark.slow
def test_reduced_absorption_windows(default_chi, reference):
    atom, _, _ = reference
    reach = atom.omega_da + atom.linewidth
    sel = np.abs(default_chi.omega_grid) <= reach
    minima = spectrum.find_maxima(-default_chi.chi.imag[sel], 0.01)
    assert len(minima) == 3
    found = default_chi.omega_grid[sel][minima]
    assert found[1] == pytest.approx(0.0, abs=default_chi.spacing)
    assert found[0] == pytest.approx(-found[2], abs=default_chi.spacing)


@pytest.mark.slow
def test_group_index_agrees_with_five_point_stencil(default_chi, default_ng, reference):
    _, drive, _ = reference
    five = 1 + 0.5 * drive.omega1 * spectrum.five_point_derivative(default_chi.chi.real, default_chi.spacing)
    scale = np.max(np.abs(default_ng.n_g - 1))
    assert np.max(np.abs(default_ng.n_g[2:-2] - five)) < 0.01 * scale
