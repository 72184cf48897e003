"""
CSI ratio between two receive antennas.

Antennas of one receiver share the oscillator, so the random common phase
from unsynchronized clocks cancels in their quotient.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..core.errors import DegenerateDenominatorError, InvalidArgumentError
from ..core.types import CsiTrace

DEFAULT_EPSILON_DEN = 1e-9


@dataclass(frozen=True, eq=False)
class RatioSeries:
    """Per-frame ratio of antenna ``antenna_pair[0]`` to ``antenna_pair[1]``."""

    sample_rate_hz: float
    values: np.ndarray
    antenna_pair: Tuple[int, int]

    def __len__(self) -> int:
        return len(self.values)


def _check_pair(pair: Tuple[int, int], num_antennas: int) -> Tuple[int, int]:
    a, b = (int(pair[0]), int(pair[1]))
    if a == b:
        raise InvalidArgumentError("Ratio pair must name two different antennas")
    for idx in (a, b):
        if not 0 <= idx < num_antennas:
            raise InvalidArgumentError(f"Antenna index {idx} out of range for {num_antennas} antennas")
    return a, b


def ratio_from_samples(samples: np.ndarray, pair: Tuple[int, int], sample_rate_hz: float,
                       epsilon_den: float = DEFAULT_EPSILON_DEN) -> RatioSeries:
    """
    Ratio series from a (frames, antennas) sample matrix.

    Raises:
        DegenerateDenominatorError: At the first frame with |denominator| < epsilon_den
    """
    samples = np.asarray(samples, dtype=complex)
    a, b = _check_pair(pair, samples.shape[1])
    den = samples[:, b]
    mag = np.abs(den)
    bad = np.flatnonzero(~(mag >= epsilon_den))
    if bad.size:
        raise DegenerateDenominatorError(int(bad[0]), float(mag[bad[0]]))
    values = samples[:, a] / den
    if not np.all(np.isfinite(values)):
        raise InvalidArgumentError("Ratio series contains non-finite values")
    return RatioSeries(sample_rate_hz=sample_rate_hz, values=values, antenna_pair=(a, b))


def csi_ratio(trace: CsiTrace, pair: Tuple[int, int] = (0, 1),
              epsilon_den: float = DEFAULT_EPSILON_DEN) -> RatioSeries:
    """
    Ratio of two antennas' raw samples for every frame of a trace.

    Args:
        trace (CsiTrace): Source trace
        pair (Tuple[int, int]): (numerator, denominator) antenna indices
        epsilon_den (float): Smallest acceptable denominator magnitude

    Returns:
        RatioSeries: One value per frame
    """
    return ratio_from_samples(trace.samples, pair, trace.sample_rate_hz, epsilon_den)


def align_common_phase(samples: np.ndarray, reference: int) -> np.ndarray:
    """
    Rotate every frame so the reference antenna has zero phase.

    Ratios against the reference are unchanged. Frames whose reference sample
    is exactly zero are left as they are.
    """
    samples = np.asarray(samples, dtype=complex)
    ref = samples[:, reference]
    mag = np.abs(ref)
    rotation = np.ones_like(ref)
    nonzero = mag > 0
    rotation[nonzero] = np.conj(ref[nonzero]) / mag[nonzero]
    return samples * rotation[:, None]
