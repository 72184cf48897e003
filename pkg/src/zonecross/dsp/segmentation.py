"""
Activity segmentation on the AGC stream.
"""
import logging
from dataclasses import dataclass
from typing import Any, List, Mapping

import numpy as np

from ..core.errors import InsufficientBaselineError, InvalidArgumentError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Segment:
    """Inclusive frame range of one activity window."""

    start_idx: int
    end_idx: int

    def __post_init__(self):
        if not 0 <= self.start_idx < self.end_idx:
            raise InvalidArgumentError(f"Invalid segment bounds [{self.start_idx}, {self.end_idx}]")

    @property
    def length(self) -> int:
        return self.end_idx - self.start_idx + 1

    def contains(self, frame: int) -> bool:
        return self.start_idx <= frame <= self.end_idx


@dataclass(frozen=True)
class SegmentParams:
    """
    Thresholds for AGC segmentation.

    A frame is active when |agc - μ| > k_sigma·σ + floor_db, with μ and σ taken
    over the first ``baseline_frames`` frames.
    """

    baseline_frames: int = 500
    k_sigma: float = 4.0
    floor_db: float = 0.5
    min_segment_frames: int = 300
    merge_gap_frames: int = 200

    def __post_init__(self):
        if self.baseline_frames < 2:
            raise InvalidArgumentError("baseline_frames must be at least 2")
        if self.min_segment_frames < 2:
            raise InvalidArgumentError("min_segment_frames must be at least 2")
        if self.k_sigma < 0 or self.floor_db < 0 or self.merge_gap_frames < 0:
            raise InvalidArgumentError("Segmentation thresholds must be non-negative")

    @classmethod
    def from_config(cls, section: Mapping[str, Any]) -> "SegmentParams":
        return cls(
            baseline_frames=int(section.get("baseline_frames", cls.baseline_frames)),
            k_sigma=float(section.get("k_sigma", cls.k_sigma)),
            floor_db=float(section.get("floor_db", cls.floor_db)),
            min_segment_frames=int(section.get("min_segment_frames", cls.min_segment_frames)),
            merge_gap_frames=int(section.get("merge_gap_frames", cls.merge_gap_frames)),
        )


def _active_runs(active: np.ndarray) -> List[List[int]]:
    padded = np.concatenate([[False], active, [False]]).astype(np.int8)
    edges = np.diff(padded)
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1) - 1
    return [[int(s), int(e)] for s, e in zip(starts, ends)]


def segment_activity(agc_series, sample_rate_hz: float,
                     params: SegmentParams = SegmentParams()) -> List[Segment]:
    """
    Find activity windows where the AGC departs from its quiet baseline.

    Active runs closer than ``merge_gap_frames`` are merged; merged runs shorter
    than ``min_segment_frames`` are dropped.

    Args:
        agc_series: AGC indicator per frame
        sample_rate_hz (float): Frame rate, used for logging durations
        params (SegmentParams): Thresholds

    Returns:
        List[Segment]: Disjoint segments in frame order

    Raises:
        InsufficientBaselineError: If the series has no frames beyond the baseline window
    """
    agc = np.asarray(agc_series, dtype=float)
    if len(agc) <= params.baseline_frames:
        raise InsufficientBaselineError(
            f"AGC series has {len(agc)} frames, baseline needs more than {params.baseline_frames}"
        )

    baseline = agc[: params.baseline_frames]
    mu = float(np.mean(baseline))
    sigma = float(np.std(baseline))
    threshold = params.k_sigma * sigma + params.floor_db
    active = np.abs(agc - mu) > threshold

    merged: List[List[int]] = []
    for start, end in _active_runs(active):
        if merged and start - merged[-1][1] - 1 < params.merge_gap_frames:
            merged[-1][1] = end
        else:
            merged.append([start, end])

    segments = [
        Segment(start, end)
        for start, end in merged
        if end - start + 1 >= params.min_segment_frames
    ]
    for seg in segments:
        logger.debug(
            "Active segment [%d, %d] (%.2f s, threshold %.3f dB)",
            seg.start_idx,
            seg.end_idx,
            seg.length / sample_rate_hz,
            threshold,
        )
    return segments
