"""
Cumulative-phase pattern extraction and the extrema-based behavior rule.

For a ratio series R, the difference ΔR between consecutive frames points
along the direction the dynamic path is rotating. Summing the wrapped
increments of angle(ΔR) gives a cumulative phase that rises while the
target approaches the LoS, peaks on it and falls as the target departs.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
from scipy.signal import find_peaks

from ..core.errors import InsufficientDataError, InvalidArgumentError

logger = logging.getLogger(__name__)

MIN_RETAINED_SAMPLES = 3

# Retrace test around the crest: pairs up to RETRACE_SPAN_FRAMES from the
# candidate center, centers within RETRACE_SEARCH_FRAMES of the peak.
RETRACE_SPAN_FRAMES = 300
RETRACE_SEARCH_FRAMES = 200
RETRACE_MIN_PAIRS = 50
RETRACE_QUANTILE = 75.0
RETRACE_MAX = 0.5


class Extremum(NamedTuple):
    index: int
    value: float


class BehaviorLabel(str, Enum):
    CROSSING = "Crossing"
    TURN_BACK = "TurnBack"
    WALK_BY = "WalkBy"
    NO_EVENT = "NoEvent"


@dataclass(frozen=True)
class PhaseTrack:
    """Cumulative phase plus the difference indices that survived the gate."""

    phase_sum: np.ndarray
    retained: np.ndarray
    gated_fraction: float


@dataclass(frozen=True, eq=False)
class PhasePattern:
    """
    Cumulative phase of one segment and its prominent extrema.

    ``frame_index[i]`` is the trace frame that ``phase_sum[i]`` was measured at;
    extremum indices refer to positions in ``phase_sum``. ``retrace`` is the
    smallest retrace error around the single crest, None when not measured.
    """

    phase_sum: np.ndarray
    maxima: List[Extremum]
    minima: List[Extremum]
    gated_fraction: float
    prominence_threshold: float = 0.0
    frame_index: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=int))
    retrace: Optional[float] = None

    @classmethod
    def empty(cls, gated_fraction: float = 1.0) -> "PhasePattern":
        return cls(
            phase_sum=np.zeros(0),
            maxima=[],
            minima=[],
            gated_fraction=gated_fraction,
        )

    @property
    def is_empty(self) -> bool:
        return len(self.phase_sum) == 0

    def extremum_frames(self, extrema: List[Extremum]) -> List[int]:
        return [int(self.frame_index[e.index]) for e in extrema]


def wrap_phase(x):
    """Wrap angles into (-π, π]."""
    x = np.asarray(x, dtype=float)
    return x - 2.0 * math.pi * np.ceil((x - math.pi) / (2.0 * math.pi))


def extract_phase(ratio_segment, gate_rel: float = 0.1) -> PhaseTrack:
    """
    Cumulative phase of angle(ΔR) with a magnitude gate.

    Differences with |ΔR| < gate_rel · median|ΔR|, and exactly-zero differences,
    are skipped; the cumulative sum runs over the retained ones.

    Args:
        ratio_segment: Complex ratio samples of one segment
        gate_rel (float): Gate as a fraction of the median difference magnitude; 0 disables it

    Returns:
        PhaseTrack: phase_sum with ``phase_sum[0] = 0`` and the retained difference indices

    Raises:
        InsufficientDataError: If fewer than 3 samples are given or retained
    """
    if gate_rel < 0:
        raise InvalidArgumentError(f"gate_rel must be non-negative, got {gate_rel}")
    values = np.asarray(ratio_segment, dtype=complex)
    if len(values) < MIN_RETAINED_SAMPLES:
        raise InsufficientDataError(f"Need at least {MIN_RETAINED_SAMPLES} samples, got {len(values)}")

    diffs = np.diff(values)
    magnitude = np.abs(diffs)
    keep = magnitude > 0
    if gate_rel > 0:
        keep &= magnitude >= gate_rel * float(np.median(magnitude))
    retained = np.flatnonzero(keep)
    if len(retained) < MIN_RETAINED_SAMPLES:
        raise InsufficientDataError(
            f"Only {len(retained)} of {len(diffs)} differences survive the magnitude gate"
        )

    phase = np.angle(diffs[retained])
    steps = wrap_phase(np.diff(phase))
    phase_sum = np.concatenate([[0.0], np.cumsum(steps)])
    gated_fraction = 1.0 - len(retained) / len(diffs)
    return PhaseTrack(phase_sum=phase_sum, retained=retained, gated_fraction=gated_fraction)


def phase_track(ratio_segment, gate_rel: float = 0.1) -> np.ndarray:
    """
    Cumulative phase sequence of a ratio segment.

    Its length is the number of retained differences.

    Example:
        >>> series = np.exp(1j * 0.05 * np.arange(1000))
        >>> ps = phase_track(series)
        >>> bool(abs(ps[1] - 0.05) < 1e-9)
        True
    """
    return extract_phase(ratio_segment, gate_rel).phase_sum


def prominence_threshold(phase_sum, prominence_rel: float) -> float:
    x = np.asarray(phase_sum, dtype=float)
    if len(x) == 0:
        return 0.0
    return prominence_rel * float(np.max(x) - np.min(x))


def _endpoint_minimum(x: np.ndarray, first_interior: Optional[Extremum], first_is_min: bool,
                      threshold: float, from_left: bool) -> Optional[Extremum]:
    if first_is_min:
        return None
    if from_left:
        stop = first_interior.index if first_interior is not None else len(x) - 1
        rise = float(np.max(x[: stop + 1]) - x[0])
        index = 0
    else:
        stop = first_interior.index if first_interior is not None else 0
        rise = float(np.max(x[stop:]) - x[-1])
        index = len(x) - 1
    if rise > 0 and rise >= threshold:
        return Extremum(index, float(x[index]))
    return None


def find_extrema(phase_sum, prominence_rel: float = 0.15) -> Tuple[List[Extremum], List[Extremum]]:
    """
    Prominent local maxima and minima of a cumulative phase sequence.

    Interior extrema need topographic prominence ≥ prominence_rel · (max - min).
    An endpoint counts as a minimum when the sequence climbs at least that
    much from it before the nearest interior minimum. Consecutive extrema of
    the same kind are merged, keeping the more extreme one, so the combined
    list alternates.

    Args:
        phase_sum: Cumulative phase
        prominence_rel (float): Prominence threshold relative to the range

    Returns:
        Tuple[List[Extremum], List[Extremum]]: (maxima, minima) in index order
    """
    if prominence_rel < 0:
        raise InvalidArgumentError(f"prominence_rel must be non-negative, got {prominence_rel}")
    x = np.asarray(phase_sum, dtype=float)
    if len(x) < MIN_RETAINED_SAMPLES:
        raise InsufficientDataError("Need at least 3 samples to locate extrema")
    span = float(np.max(x) - np.min(x))
    if span == 0:
        return [], []
    threshold = prominence_rel * span

    max_idx, _ = find_peaks(x, prominence=threshold)
    min_idx, _ = find_peaks(-x, prominence=threshold)
    interior = sorted(
        [(int(i), True) for i in max_idx] + [(int(i), False) for i in min_idx]
    )

    events: List[Tuple[int, bool]] = []
    first = interior[0] if interior else None
    left = _endpoint_minimum(
        x,
        Extremum(first[0], float(x[first[0]])) if first else None,
        bool(first and not first[1]),
        threshold,
        from_left=True,
    )
    last = interior[-1] if interior else None
    right = _endpoint_minimum(
        x,
        Extremum(last[0], float(x[last[0]])) if last else None,
        bool(last and not last[1]),
        threshold,
        from_left=False,
    )
    if left is not None:
        events.append((left.index, False))
    events.extend(interior)
    if right is not None and (not events or right.index != events[-1][0]):
        events.append((right.index, False))

    # same-kind neighbours collapse to the most extreme one
    merged: List[Tuple[int, bool]] = []
    for index, is_max in events:
        if merged and merged[-1][1] == is_max:
            prev = merged[-1][0]
            better = x[index] > x[prev] if is_max else x[index] < x[prev]
            if better:
                merged[-1] = (index, is_max)
        else:
            merged.append((index, is_max))

    maxima = [Extremum(i, float(x[i])) for i, is_max in merged if is_max]
    minima = [Extremum(i, float(x[i])) for i, is_max in merged if not is_max]
    return maxima, minima


def retrace_error(ratio_segment, center: int, span: int = RETRACE_SPAN_FRAMES,
                  search: int = RETRACE_SEARCH_FRAMES,
                  min_pairs: int = RETRACE_MIN_PAIRS) -> Optional[float]:
    """
    How closely the ratio path retraces itself around a turning point.

    For a candidate center c (on a half-frame grid) the samples a = R(c - τ)
    and b = R(c + τ) are paired for τ = 1..span and each pair scores

        e(τ) = |a - b|² / (|a - m|² + |b - m|²),

    with m the mean over the candidate's pairs. The candidate's error is the
    ``RETRACE_QUANTILE`` percentile of e. A walker who stops and walks back
    retraces the same positions, so every pair nearly coincides. A crossing
    mirrors the path across the LoS instead and a wrong center leaves the
    pairs sweeping in phase; either way most pairs score about 1 or more.

    Args:
        ratio_segment: Complex ratio samples of one segment
        center (int): Index the search is centered on
        span (int): Largest pair offset τ in frames
        search (int): Search radius around ``center`` in frames
        min_pairs (int): Fewest pairs a candidate center needs

    Returns:
        Optional[float]: Smallest candidate error, None if no candidate has enough pairs
    """
    if span < 1 or search < 0 or min_pairs < 1:
        raise InvalidArgumentError("span and min_pairs must be positive, search non-negative")
    values = np.asarray(ratio_segment, dtype=complex)
    n = len(values)
    if n < 3:
        return None

    doubled = np.arange(max(0, 2 * (center - search)), min(2 * (n - 1), 2 * (center + search)) + 1)
    offsets = np.arange(1, span + 1)
    left = (doubled // 2 + doubled % 2)[:, None] - offsets[None, :]
    right = doubled[:, None] - left
    valid = (left >= 0) & (right < n)
    counts = valid.sum(axis=1)
    rows = counts >= min_pairs
    if not rows.any():
        return None

    valid, left, right, counts = valid[rows], left[rows], right[rows], counts[rows]
    a = values[np.clip(left, 0, n - 1)]
    b = values[np.clip(right, 0, n - 1)]
    mean = np.where(valid, a + b, 0).sum(axis=1) / (2.0 * counts)
    num = np.abs(a - b) ** 2
    den = np.abs(a - mean[:, None]) ** 2 + np.abs(b - mean[:, None]) ** 2

    score = np.full(num.shape, np.nan)
    usable = valid & (den > 0)
    score[usable] = num[usable] / den[usable]
    enough = usable.sum(axis=1) >= min_pairs
    if not enough.any():
        return None
    return float(np.min(np.nanpercentile(score[enough], RETRACE_QUANTILE, axis=1)))


def build_pattern(ratio_segment, gate_rel: float = 0.1, prominence_rel: float = 0.15,
                  first_frame: int = 0) -> PhasePattern:
    """
    Phase track plus extrema for one segment, in trace frame coordinates.

    A single-crest pattern also gets its retrace error, searched around the
    crest.
    """
    track = extract_phase(ratio_segment, gate_rel)
    maxima, minima = find_extrema(track.phase_sum, prominence_rel)
    retrace = None
    if len(maxima) == 1:
        retrace = retrace_error(ratio_segment, int(track.retained[maxima[0].index]))
    return PhasePattern(
        phase_sum=track.phase_sum,
        maxima=maxima,
        minima=minima,
        gated_fraction=track.gated_fraction,
        prominence_threshold=prominence_threshold(track.phase_sum, prominence_rel),
        frame_index=first_frame + track.retained,
        retrace=retrace,
    )


def classify(pattern: PhasePattern, retrace_max: float = RETRACE_MAX) -> BehaviorLabel:
    """
    Behavior label from the extrema of a phase pattern.

    One maximum with both ends lower than it by at least the prominence
    threshold is a crossing, unless the ratio path retraces itself around
    the crest (retrace error below ``retrace_max``): the walker stopped and
    went back. Two or more maxima are a turn-back.

    Args:
        pattern (PhasePattern): Extracted pattern
        retrace_max (float): Largest retrace error still read as a reversal

    Returns:
        BehaviorLabel: Crossing, TurnBack, WalkBy or NoEvent
    """
    x = pattern.phase_sum
    if pattern.is_empty or float(np.max(x) - np.min(x)) == 0:
        return BehaviorLabel.NO_EVENT

    n_max = len(pattern.maxima)
    if n_max >= 2:
        return BehaviorLabel.TURN_BACK
    if n_max == 1:
        if pattern.retrace is not None and pattern.retrace < retrace_max:
            logger.debug("Crest retraced (error %.3f), reading a reversal", pattern.retrace)
            return BehaviorLabel.TURN_BACK
        peak = pattern.maxima[0].value
        floor = peak - pattern.prominence_threshold
        if x[0] < floor and x[-1] < floor:
            return BehaviorLabel.CROSSING
        logger.debug("Single maximum without a low end on both sides")
    return BehaviorLabel.WALK_BY
