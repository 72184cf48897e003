"""
Synthetic CSI traces from the body-segment diffraction model.
"""

from .config import SynthConfig
from .diffraction import diffraction_response, segment_response, trajectory_response
from .generator import AGC_CEILING, Impairments, agc_model, agc_series, draw_impairments, synthesize_trace
from .trajectories import make_crossing, make_parked, make_turnback, make_walkby, walk_polyline

__all__ = [
    "SynthConfig",
    "diffraction_response",
    "segment_response",
    "trajectory_response",
    "Impairments",
    "draw_impairments",
    "agc_model",
    "agc_series",
    "AGC_CEILING",
    "synthesize_trace",
    "make_crossing",
    "make_turnback",
    "make_walkby",
    "make_parked",
    "walk_polyline",
]
