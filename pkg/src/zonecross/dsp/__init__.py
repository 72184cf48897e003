"""
Signal conditioning: filtering, CSI ratio and AGC segmentation.
"""

from .filters import moving_average
from .ratio import DEFAULT_EPSILON_DEN, RatioSeries, align_common_phase, csi_ratio, ratio_from_samples
from .segmentation import Segment, SegmentParams, segment_activity

__all__ = [
    "moving_average",
    "RatioSeries",
    "csi_ratio",
    "ratio_from_samples",
    "align_common_phase",
    "DEFAULT_EPSILON_DEN",
    "Segment",
    "SegmentParams",
    "segment_activity",
]
