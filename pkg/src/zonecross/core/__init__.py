"""
Core domain types, geometry and errors for zonecross.
"""

from .errors import (
    DegenerateDenominatorError,
    InsufficientBaselineError,
    InsufficientDataError,
    InvalidArgumentError,
    PipelineError,
    SingularGeometryError,
    TraceParseError,
    ZoneCrossError,
)
from .geometry import (
    DEFAULT_CARRIER_HZ,
    SPEED_OF_LIGHT,
    Geometry,
    path_sum,
    signed_distance_to_los,
    wavelength,
)
from .types import ComplexSample, CsiFrame, CsiTrace, TargetState, Trajectory

__all__ = [
    "ZoneCrossError",
    "InvalidArgumentError",
    "SingularGeometryError",
    "DegenerateDenominatorError",
    "InsufficientBaselineError",
    "InsufficientDataError",
    "TraceParseError",
    "PipelineError",
    "SPEED_OF_LIGHT",
    "DEFAULT_CARRIER_HZ",
    "Geometry",
    "wavelength",
    "path_sum",
    "signed_distance_to_los",
    "ComplexSample",
    "TargetState",
    "Trajectory",
    "CsiFrame",
    "CsiTrace",
]
