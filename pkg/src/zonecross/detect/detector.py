"""
End-to-end doorway crossing detection on a CSI trace.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..core.errors import (
    DegenerateDenominatorError,
    InsufficientBaselineError,
    InsufficientDataError,
    InvalidArgumentError,
    PipelineError,
)
from ..core.types import CsiTrace
from ..dsp.filters import moving_average
from ..dsp.ratio import DEFAULT_EPSILON_DEN, align_common_phase, ratio_from_samples
from ..dsp.segmentation import Segment, SegmentParams, segment_activity
from ..validation.validator import TraceValidator
from .pattern import RETRACE_MAX, BehaviorLabel, PhasePattern, build_pattern, classify

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DetectorParams:
    """
    Tunables of the detection pipeline.

    Args:
        ma_window (int): Moving-average window in frames
        ratio_pair (Tuple[int, int]): Authoritative (numerator, denominator) antennas
        consistency_pair (Optional[Tuple[int, int]]): Second pair checked for agreement; None skips it
        epsilon_den (float): Smallest acceptable ratio denominator
        gate_rel (float): Magnitude gate on ΔR relative to the median
        prominence_rel (float): Extremum prominence relative to the phase range
        context_frames (int): Frames of context added on each side of a segment
        retrace_max (float): Largest crest retrace error still read as a reversal
        segment (SegmentParams): AGC segmentation thresholds
    """

    ma_window: int = 50
    ratio_pair: Tuple[int, int] = (0, 1)
    consistency_pair: Optional[Tuple[int, int]] = (0, 2)
    epsilon_den: float = DEFAULT_EPSILON_DEN
    gate_rel: float = 0.1
    prominence_rel: float = 0.15
    context_frames: int = 250
    retrace_max: float = RETRACE_MAX
    segment: SegmentParams = field(default_factory=SegmentParams)

    def __post_init__(self):
        if self.ma_window < 1:
            raise InvalidArgumentError("ma_window must be at least 1")
        if self.gate_rel < 0 or self.prominence_rel < 0:
            raise InvalidArgumentError("gate_rel and prominence_rel must be non-negative")
        if self.context_frames < 0 or self.retrace_max < 0:
            raise InvalidArgumentError("context_frames and retrace_max must be non-negative")
        if self.consistency_pair is not None and tuple(self.consistency_pair) == tuple(self.ratio_pair):
            raise InvalidArgumentError("consistency_pair must differ from ratio_pair")

    @property
    def group_delay(self) -> int:
        """Lag of the trailing moving average, (W - 1) / 2 frames rounded down."""
        return (self.ma_window - 1) // 2

    @classmethod
    def from_config(cls, config, **overrides) -> "DetectorParams":
        """
        Build from a ConfigManager (``dsp`` and ``detect`` sections).

        Args:
            config (ConfigManager): Loaded configuration
            **overrides: Field values taking precedence

        Returns:
            DetectorParams: Parsed parameters
        """
        dsp = config.get_section("dsp")
        det = config.get_section("detect")
        consistency = dsp.get("consistency_pair", [0, 2])
        kwargs: Dict[str, Any] = {
            "ma_window": int(dsp.get("ma_window", cls.ma_window)),
            "ratio_pair": tuple(int(i) for i in dsp.get("ratio_pair", [0, 1])),
            "consistency_pair": None if consistency is None else tuple(int(i) for i in consistency),
            "epsilon_den": float(dsp.get("epsilon_den", DEFAULT_EPSILON_DEN)),
            "gate_rel": float(det.get("gate_rel", cls.gate_rel)),
            "prominence_rel": float(det.get("prominence_rel", cls.prominence_rel)),
            "context_frames": int(det.get("context_frames", cls.context_frames)),
            "retrace_max": float(det.get("retrace_max", cls.retrace_max)),
            "segment": SegmentParams.from_config(dsp),
        }
        kwargs.update(overrides)
        return cls(**kwargs)


@dataclass(frozen=True, eq=False)
class Detection:
    """Decision for one activity segment."""

    label: BehaviorLabel
    segment: Segment
    pattern: PhasePattern
    consistent: Optional[bool] = None

    @property
    def binary(self) -> bool:
        return self.label is BehaviorLabel.CROSSING

    def to_record(self, trace_id: Optional[str] = None) -> Dict[str, Any]:
        """Detection-log record."""
        return {
            "trace_id": trace_id,
            "start_idx": self.segment.start_idx,
            "end_idx": self.segment.end_idx,
            "label": self.label.value,
            "crossing": self.binary,
            "n_maxima": len(self.pattern.maxima),
            "n_minima": len(self.pattern.minima),
            "gated_fraction": round(float(self.pattern.gated_fraction), 6),
            "retrace": None if self.pattern.retrace is None else round(float(self.pattern.retrace), 6),
            "consistent": self.consistent,
        }


def filtered_ratio(samples: np.ndarray, pair: Tuple[int, int], window: int, sample_rate_hz: float,
                   epsilon_den: float) -> np.ndarray:
    """
    Common-phase aligned, moving-averaged ratio series for one antenna pair.

    Frames are rotated to the denominator antenna's phase before filtering so
    the average runs over a phase-coherent sequence; the ratio itself is
    unaffected by that rotation.
    """
    aligned = align_common_phase(samples, pair[1])
    smoothed = moving_average(aligned, window)
    return ratio_from_samples(smoothed, pair, sample_rate_hz, epsilon_den).values


def pattern_windows(segments: List[Segment], n_frames: int, context_frames: int) -> List[Tuple[int, int]]:
    """
    Inclusive frame windows the phase patterns are taken over.

    Each segment grows by ``context_frames`` on both sides, clipped to the
    trace and to the midpoint of the gap to a neighbouring segment.
    """
    windows: List[Tuple[int, int]] = []
    for i, seg in enumerate(segments):
        lo = max(0, seg.start_idx - context_frames)
        hi = min(n_frames - 1, seg.end_idx + context_frames)
        if i > 0:
            lo = max(lo, (segments[i - 1].end_idx + seg.start_idx) // 2 + 1)
        if i + 1 < len(segments):
            hi = min(hi, (seg.end_idx + segments[i + 1].start_idx) // 2)
        windows.append((lo, hi))
    return windows


def _window_pattern(ratio: np.ndarray, window: Tuple[int, int], params: DetectorParams) -> PhasePattern:
    # the filtered ratio lags the trace by the group delay
    lo, hi = window
    delay = params.group_delay
    values = ratio[lo + delay : hi + delay + 1]
    return build_pattern(values, params.gate_rel, params.prominence_rel, first_frame=lo)


def detect(trace: CsiTrace, params: DetectorParams = DetectorParams()) -> List[Detection]:
    """
    Detect doorway crossings in a trace.

    Pipeline: phase alignment and moving average, CSI ratio, AGC
    segmentation, then per segment the cumulative phase, its extrema and
    the behavior label. Patterns span the segment plus ``context_frames``
    either side and are read from the ratio shifted by the filter's group
    delay, so extremum frames line up with the trace.

    Args:
        trace (CsiTrace): Input trace
        params (DetectorParams): Pipeline tunables

    Returns:
        List[Detection]: One detection per activity segment, in frame order

    Raises:
        PipelineError: On a degenerate ratio denominator or a too-short AGC baseline
    """
    TraceValidator().require(trace)
    trace_id = trace.trace_id

    try:
        ratio = filtered_ratio(
            trace.samples, params.ratio_pair, params.ma_window, trace.sample_rate_hz, params.epsilon_den
        )
        check = None
        if params.consistency_pair is not None and trace.geometry.num_antennas > max(params.consistency_pair):
            check = filtered_ratio(
                trace.samples,
                params.consistency_pair,
                params.ma_window,
                trace.sample_rate_hz,
                params.epsilon_den,
            )
    except DegenerateDenominatorError as exc:
        raise PipelineError(str(exc), trace_id=trace_id, frame_index=exc.frame_index) from exc

    try:
        segments = segment_activity(trace.agc, trace.sample_rate_hz, params.segment)
    except InsufficientBaselineError as exc:
        raise PipelineError(str(exc), trace_id=trace_id) from exc

    detections: List[Detection] = []
    windows = pattern_windows(segments, len(ratio), params.context_frames)
    for segment, window in zip(segments, windows):
        try:
            pattern = _window_pattern(ratio, window, params)
            label = classify(pattern, params.retrace_max)
        except InsufficientDataError as exc:
            logger.debug("Segment [%d, %d]: %s", segment.start_idx, segment.end_idx, exc)
            pattern, label = PhasePattern.empty(), BehaviorLabel.NO_EVENT

        consistent = None
        if check is not None:
            try:
                other = classify(_window_pattern(check, window, params), params.retrace_max)
            except InsufficientDataError:
                other = BehaviorLabel.NO_EVENT
            consistent = (other is BehaviorLabel.CROSSING) == (label is BehaviorLabel.CROSSING)
            if not consistent:
                logger.warning(
                    "Antenna pairs disagree on segment [%d, %d] of trace %s: %s vs %s",
                    segment.start_idx,
                    segment.end_idx,
                    trace_id,
                    label.value,
                    other.value,
                )

        logger.debug(
            "Segment [%d, %d] -> %s (%d maxima, gated %.1f%%)",
            segment.start_idx,
            segment.end_idx,
            label.value,
            len(pattern.maxima),
            100.0 * pattern.gated_fraction,
        )
        detections.append(Detection(label=label, segment=segment, pattern=pattern, consistent=consistent))
    return detections
