"""
Doorway geometry and the physical constants shared by every stage.
"""
import math
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from .errors import InvalidArgumentError

SPEED_OF_LIGHT = 299_792_458.0
DEFAULT_CARRIER_HZ = 5.24e9

Point = Tuple[float, float]
ArrayLike = Union[Sequence[float], np.ndarray]


def wavelength(carrier_hz: float) -> float:
    """
    Free-space wavelength for a carrier frequency.

    Args:
        carrier_hz (float): Carrier frequency in Hz

    Returns:
        float: Wavelength in meters

    Raises:
        InvalidArgumentError: If the frequency is not a positive finite number

    Example:
        >>> round(wavelength(5.24e9), 7)
        0.0572123
    """
    if not math.isfinite(carrier_hz) or carrier_hz <= 0:
        raise InvalidArgumentError(f"Carrier frequency must be positive, got {carrier_hz}")
    return SPEED_OF_LIGHT / carrier_hz


@dataclass(frozen=True)
class Geometry:
    """
    Transmitter, receiver array and carrier of one doorway deployment.

    ``rx_pos`` is the position of receive antenna 0; ``rx_antenna_offsets[k]``
    is antenna k's displacement from it (offset 0 is the zero vector).
    """

    tx_pos: Point
    rx_pos: Point
    rx_antenna_offsets: Tuple[Point, ...]
    carrier_hz: float
    wavelength_m: float

    def __post_init__(self):
        object.__setattr__(self, "tx_pos", _as_point(self.tx_pos))
        object.__setattr__(self, "rx_pos", _as_point(self.rx_pos))
        object.__setattr__(
            self, "rx_antenna_offsets", tuple(_as_point(o) for o in self.rx_antenna_offsets)
        )

        expected = wavelength(self.carrier_hz)
        if not math.isfinite(self.wavelength_m) or abs(self.wavelength_m - expected) > 1e-9 * expected:
            raise InvalidArgumentError(
                f"wavelength_m={self.wavelength_m} inconsistent with carrier {self.carrier_hz} Hz"
            )
        if self.los_distance <= 0:
            raise InvalidArgumentError("Transmitter and receiver must not coincide")
        if len(self.rx_antenna_offsets) < 2:
            raise InvalidArgumentError("At least two receive antennas are required")
        if self.rx_antenna_offsets[0] != (0.0, 0.0):
            raise InvalidArgumentError("Offset of receive antenna 0 must be the zero vector")

    @classmethod
    def doorway(cls, los_distance_m: float, carrier_hz: float = DEFAULT_CARRIER_HZ,
                num_antennas: int = 3) -> "Geometry":
        """
        Standard deployment: Tx at the origin, Rx on the +x axis.

        Receive antennas form a half-wavelength linear array perpendicular
        to the LoS, stepping towards +y.

        Args:
            los_distance_m (float): Transmitter-receiver separation in meters
            carrier_hz (float): Carrier frequency in Hz
            num_antennas (int): Number of receive antennas (>= 2)

        Returns:
            Geometry: The deployment
        """
        if not math.isfinite(los_distance_m) or los_distance_m <= 0:
            raise InvalidArgumentError(f"LoS distance must be positive, got {los_distance_m}")
        lam = wavelength(carrier_hz)
        offsets = tuple((0.0, k * lam / 2.0) for k in range(num_antennas))
        return cls(
            tx_pos=(0.0, 0.0),
            rx_pos=(float(los_distance_m), 0.0),
            rx_antenna_offsets=offsets,
            carrier_hz=carrier_hz,
            wavelength_m=lam,
        )

    @property
    def num_antennas(self) -> int:
        return len(self.rx_antenna_offsets)

    @property
    def los_distance(self) -> float:
        return math.hypot(self.rx_pos[0] - self.tx_pos[0], self.rx_pos[1] - self.tx_pos[1])

    @property
    def los_unit(self) -> np.ndarray:
        """Unit vector from Tx to Rx."""
        return (np.asarray(self.rx_pos) - np.asarray(self.tx_pos)) / self.los_distance

    @property
    def los_normal(self) -> np.ndarray:
        """Unit normal of the LoS line (LoS direction rotated by +90 degrees)."""
        ux, uy = self.los_unit
        return np.array([-uy, ux])

    @property
    def midpoint(self) -> np.ndarray:
        return (np.asarray(self.tx_pos) + np.asarray(self.rx_pos)) / 2.0

    def antenna_position(self, index: int) -> np.ndarray:
        """Absolute position of receive antenna ``index``."""
        if not 0 <= index < self.num_antennas:
            raise InvalidArgumentError(
                f"Antenna index {index} out of range for {self.num_antennas} antennas"
            )
        return np.asarray(self.rx_pos) + np.asarray(self.rx_antenna_offsets[index])


def path_sum(geometry: Geometry, p: ArrayLike) -> Union[float, np.ndarray]:
    """
    Sum of distances from a point to the transmitter and to receive antenna 0.

    Accepts a single point or an array of points with shape (..., 2).

    Args:
        geometry (Geometry): Deployment
        p (ArrayLike): Point(s) in meters

    Returns:
        Union[float, np.ndarray]: |p - tx| + |p - rx| in meters
    """
    points = np.asarray(p, dtype=float)
    tx = np.asarray(geometry.tx_pos)
    rx = np.asarray(geometry.rx_pos)
    total = np.hypot(*np.moveaxis(points - tx, -1, 0)) + np.hypot(*np.moveaxis(points - rx, -1, 0))
    if total.ndim == 0:
        return float(total)
    return total


def signed_distance_to_los(geometry: Geometry, p: ArrayLike) -> Union[float, np.ndarray]:
    """Signed distance of point(s) from the LoS line; positive on the ``los_normal`` side."""
    points = np.asarray(p, dtype=float)
    rel = points - np.asarray(geometry.tx_pos)
    dist = rel @ geometry.los_normal
    if np.ndim(dist) == 0:
        return float(dist)
    return dist


def _as_point(value) -> Point:
    x, y = value
    return (float(x), float(y))
