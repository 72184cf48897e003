"""
Cumulative-phase pattern extraction and crossing detection.
"""

from .detector import Detection, DetectorParams, detect, filtered_ratio
from .pattern import (
    BehaviorLabel,
    Extremum,
    PhasePattern,
    PhaseTrack,
    build_pattern,
    classify,
    extract_phase,
    find_extrema,
    phase_track,
    wrap_phase,
)

__all__ = [
    "BehaviorLabel",
    "Extremum",
    "PhasePattern",
    "PhaseTrack",
    "extract_phase",
    "phase_track",
    "wrap_phase",
    "find_extrema",
    "build_pattern",
    "classify",
    "Detection",
    "DetectorParams",
    "detect",
    "filtered_ratio",
]
