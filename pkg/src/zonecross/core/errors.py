"""
Exception hierarchy for zonecross.

Every error raised by the library derives from ``ZoneCrossError`` so callers
(and the CLI exit-code mapping) can catch the whole family at once.
"""
from typing import Optional


class ZoneCrossError(Exception):
    """Base class for all zonecross errors."""


class InvalidArgumentError(ZoneCrossError, ValueError):
    """A parameter is outside its documented domain."""


class SingularGeometryError(ZoneCrossError):
    """An integration point coincides with a transceiver antenna."""


class DegenerateDenominatorError(ZoneCrossError):
    """
    The denominator antenna of a CSI ratio vanished.

    Args:
        frame_index (int): First frame whose denominator magnitude is below epsilon
        magnitude (float): Offending magnitude
    """

    def __init__(self, frame_index: int, magnitude: float):
        self.frame_index = frame_index
        self.magnitude = magnitude
        super().__init__(
            f"Degenerate CSI ratio denominator at frame {frame_index} (|z| = {magnitude:.3e})"
        )


class InsufficientBaselineError(ZoneCrossError):
    """The AGC series is shorter than the quiet baseline window."""


class InsufficientDataError(ZoneCrossError):
    """Too few samples survive to build a phase pattern."""


class TraceParseError(ZoneCrossError):
    """
    A trace file could not be parsed.

    Args:
        message (str): What went wrong
        line_number (Optional[int]): 1-based line number in the file, if known
    """

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{prefix}{message}")


class PipelineError(ZoneCrossError):
    """
    A detection pipeline stage failed for a specific trace.

    Args:
        message (str): Description of the failure
        trace_id (Optional[str]): Identifier of the trace being processed
        frame_index (Optional[int]): Frame the failure refers to, if any
    """

    def __init__(self, message: str, trace_id: Optional[str] = None,
                 frame_index: Optional[int] = None):
        self.trace_id = trace_id
        self.frame_index = frame_index
        context = []
        if trace_id is not None:
            context.append(f"trace={trace_id}")
        if frame_index is not None:
            context.append(f"frame={frame_index}")
        suffix = f" [{', '.join(context)}]" if context else ""
        super().__init__(f"{message}{suffix}")
