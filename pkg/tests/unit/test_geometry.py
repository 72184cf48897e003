import math

import numpy as np
import pytest

from zonecross.core.errors import InvalidArgumentError
from zonecross.core.geometry import (
    DEFAULT_CARRIER_HZ,
    Geometry,
    path_sum,
    signed_distance_to_los,
    wavelength,
)


def test_wavelength_at_default_carrier():
    assert wavelength(DEFAULT_CARRIER_HZ) == pytest.approx(0.05721231, rel=1e-6)


@pytest.mark.parametrize("carrier", [0.0, -1.0, float("nan"), float("inf")])
def test_wavelength_rejects_bad_carrier(carrier):
    with pytest.raises(InvalidArgumentError):
        wavelength(carrier)


def test_doorway_layout():
    geo = Geometry.doorway(2.0)
    assert geo.tx_pos == (0.0, 0.0)
    assert geo.rx_pos == (2.0, 0.0)
    assert geo.num_antennas == 3
    assert geo.los_distance == pytest.approx(2.0)
    np.testing.assert_allclose(geo.los_unit, [1.0, 0.0])
    np.testing.assert_allclose(geo.los_normal, [0.0, 1.0])
    np.testing.assert_allclose(geo.midpoint, [1.0, 0.0])
    np.testing.assert_allclose(geo.antenna_position(2), [2.0, geo.wavelength_m])


def test_geometry_rejects_inconsistent_wavelength():
    with pytest.raises(InvalidArgumentError):
        Geometry((0, 0), (2, 0), ((0, 0), (0, 0.03)), 5.24e9, 0.06)


def test_geometry_rejects_coincident_transceivers():
    lam = wavelength(5.24e9)
    with pytest.raises(InvalidArgumentError):
        Geometry((1, 1), (1, 1), ((0, 0), (0, lam / 2)), 5.24e9, lam)


def test_geometry_needs_two_antennas():
    with pytest.raises(InvalidArgumentError):
        Geometry.doorway(2.0, num_antennas=1)


def test_antenna_index_out_of_range():
    with pytest.raises(InvalidArgumentError):
        Geometry.doorway(2.0).antenna_position(3)


def test_path_sum_on_los_equals_distance():
    geo = Geometry.doorway(2.0)
    for x in (0.1, 1.0, 1.9):
        assert path_sum(geo, (x, 0.0)) == pytest.approx(2.0)


def test_path_sum_vectorised():
    geo = Geometry.doorway(2.0)
    points = np.array([[1.0, 1.0], [1.0, 0.0]])
    np.testing.assert_allclose(path_sum(geo, points), [2.0 * math.sqrt(2.0), 2.0])


def test_signed_distance_sides():
    geo = Geometry.doorway(2.0)
    assert signed_distance_to_los(geo, (1.0, 0.5)) == pytest.approx(0.5)
    assert signed_distance_to_los(geo, (1.0, -0.5)) == pytest.approx(-0.5)
