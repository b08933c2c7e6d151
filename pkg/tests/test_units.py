import numpy as np
import pytest
from hypothesis import given, strategies as st

from crossover import units


@pytest.mark.parametrize(
    "fn, value, expected",
    [
        (units.angular_frequency_au_to_Hz, 4.06e-8, 2.671e8),
        (units.angular_frequency_au_to_Hz, 8.63e-10, 5.678e6),
        (units.length_au_to_cm, 1e8, 0.5292),
        (units.time_au_to_s, 1e10, 2.419e-7),
        (units.density_au_to_per_cm3, 3e-14, 2.024e11),
        (units.field_au_to_intensity_mW_per_cm2, 3.47e-10, 4.226),
    ],
)
def test_reference_conversions(fn, value, expected):
    assert fn(value) == pytest.approx(expected, rel=2e-3)


def test_speed_of_light_is_inverse_fine_structure():
    assert units.C_AU == pytest.approx(137.035999, rel=1e-8)


def test_arrays_pass_through():
    w = np.array([1e-9, 2e-9])
    np.testing.assert_allclose(units.angular_frequency_au_to_Hz(w), 2 * units.angular_frequency_au_to_Hz(1e-9) * np.array([0.5, 1]))


finite = st.floats(min_value=1e-20, max_value=1e20)


@given(finite)
def test_frequency_round_trip(w):
    assert units.Hz_to_angular_frequency_au(units.angular_frequency_au_to_Hz(w)) == pytest.approx(w, rel=1e-14)


@given(finite)
def test_length_and_time_round_trip(x):
    assert units.cm_to_length_au(units.length_au_to_cm(x)) == pytest.approx(x, rel=1e-14)
    assert units.s_to_time_au(units.time_au_to_s(x)) == pytest.approx(x, rel=1e-14)
