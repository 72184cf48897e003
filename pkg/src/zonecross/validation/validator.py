"""
Consistency checks for CSI traces.
"""
from typing import Tuple

import numpy as np

from ..core.errors import InvalidArgumentError
from ..core.types import TIMESTAMP_TOLERANCE_S, CsiTrace


class TraceValidator:
    """
    Validator for in-memory CSI traces.

    Each check returns ``(is_valid, message)``; ``require`` runs them all and
    raises on the first failure.
    """

    def __init__(self, timestamp_tolerance_s: float = TIMESTAMP_TOLERANCE_S):
        self.timestamp_tolerance_s = timestamp_tolerance_s

    def check_shape(self, trace: CsiTrace) -> Tuple[bool, str]:
        if len(trace) == 0:
            return False, "Trace has no frames."
        if trace.samples.shape[1] != trace.geometry.num_antennas:
            return False, (
                f"Frames carry {trace.samples.shape[1]} samples, "
                f"geometry declares {trace.geometry.num_antennas} antennas."
            )
        return True, "Shape checks passed."

    def check_finite(self, trace: CsiTrace) -> Tuple[bool, str]:
        bad = np.flatnonzero(~np.all(np.isfinite(trace.samples), axis=1))
        if bad.size:
            return False, f"Non-finite CSI sample in frame {int(bad[0])}."
        bad = np.flatnonzero(~np.isfinite(trace.agc))
        if bad.size:
            return False, f"Non-finite AGC value in frame {int(bad[0])}."
        return True, "All values finite."

    def check_timestamps(self, trace: CsiTrace) -> Tuple[bool, str]:
        """
        Timestamps must increase by 1/sample_rate_hz.

        Returns:
            Tuple[bool, str]: (is_valid, message naming the first bad frame)
        """
        if not trace.sample_rate_hz > 0:
            return False, f"Invalid sample rate {trace.sample_rate_hz}."
        if len(trace) < 2:
            return True, "Single-frame trace."
        steps = np.diff(trace.t)
        expected = 1.0 / trace.sample_rate_hz
        bad = np.flatnonzero(~(np.abs(steps - expected) <= self.timestamp_tolerance_s))
        if bad.size:
            frame = int(bad[0]) + 1
            if steps[bad[0]] <= 0:
                return False, f"Timestamps not strictly increasing at frame {frame}."
            return False, f"Timestamp at frame {frame} off the declared {trace.sample_rate_hz} Hz grid."
        return True, "Timestamps consistent."

    def validate(self, trace: CsiTrace) -> Tuple[bool, str]:
        for check in (self.check_shape, self.check_finite, self.check_timestamps):
            ok, message = check(trace)
            if not ok:
                return False, message
        return True, "Trace is valid."

    def require(self, trace: CsiTrace) -> CsiTrace:
        """Return the trace unchanged, or raise InvalidArgumentError."""
        ok, message = self.validate(trace)
        if not ok:
            raise InvalidArgumentError(message)
        return trace
