"""
Plain-text plot data: whitespace-separated columns under one ``#`` header line.
"""
import json
import logging
from pathlib import Path
from typing import Any, Optional, Union

import pandas as pd

from ..core.errors import InvalidArgumentError
from ..core.types import CsiTrace

logger = logging.getLogger(__name__)

SERIES = ("phase_sum", "agc", "extrema", "accuracy_by_condition")


def _write_table(frame: pd.DataFrame, path: Path) -> Path:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write("# " + " ".join(frame.columns) + "\n")
        frame.to_csv(f, sep=" ", header=False, index=False, float_format="%.10g", lineterminator="\n")
    logger.debug("Wrote %d rows to %s", len(frame), path)
    return path


def export_plot_data(source, what: str, path: Union[str, Path], segment: int = 0,
                     by: str = "los_distance_m", params: Optional[Any] = None) -> Path:
    """
    Export a series of a trace or report as a plot-ready table.

    Traces provide ``agc``, ``phase_sum`` and ``extrema`` (the latter two for
    detection segment ``segment``); evaluation reports provide
    ``accuracy_by_condition`` for the condition named by ``by``.

    Args:
        source: CsiTrace or EvalReport
        what (str): Series name
        path (Union[str, Path]): Output file
        segment (int): Detection index for trace-pattern series
        by (str): Condition axis for accuracy_by_condition
        params (Optional[DetectorParams]): Detector settings for pattern series

    Returns:
        Path: The written file

    Raises:
        InvalidArgumentError: If the series is unknown or does not exist for the source
    """
    from ..detect.detector import DetectorParams, detect
    from ..metrics.evaluator import EvalReport

    if what not in SERIES:
        raise InvalidArgumentError(f"Unknown series {what!r}; expected one of {', '.join(SERIES)}")
    path = Path(path)

    if what == "accuracy_by_condition":
        if not isinstance(source, EvalReport):
            raise InvalidArgumentError("accuracy_by_condition needs an evaluation report")
        rows = source.per_condition.get(by)
        if not rows:
            raise InvalidArgumentError(f"Report has no per-condition table for {by!r}")
        frame = pd.DataFrame(rows, columns=["value", "n", "accuracy", "false_alarm_rate"])
        frame = frame.rename(columns={"value": by})
        return _write_table(frame, path)

    if not isinstance(source, CsiTrace):
        raise InvalidArgumentError(f"{what} needs a trace")

    if what == "agc":
        return _write_table(pd.DataFrame({"t": source.t, "agc": source.agc}), path)

    detections = detect(source, params or DetectorParams())
    if not 0 <= segment < len(detections):
        raise InvalidArgumentError(
            f"Trace has {len(detections)} detection segment(s); segment {segment} does not exist"
        )
    pattern = detections[segment].pattern
    if pattern.is_empty:
        raise InvalidArgumentError(f"Segment {segment} has no phase pattern")

    if what == "phase_sum":
        frame = pd.DataFrame({"frame": pattern.frame_index, "phase_sum": pattern.phase_sum})
        return _write_table(frame, path)

    extrema = [("max", e) for e in pattern.maxima] + [("min", e) for e in pattern.minima]
    extrema.sort(key=lambda item: item[1].index)
    frame = pd.DataFrame(
        {
            "type": [kind for kind, _ in extrema],
            "index": [e.index for _, e in extrema],
            "frame": pattern.extremum_frames([e for _, e in extrema]),
            "phase_sum": [e.value for _, e in extrema],
        },
        columns=["type", "index", "frame", "phase_sum"],
    )
    return _write_table(frame, path)


def load_report(path: Union[str, Path]):
    """Read an EvalReport JSON file."""
    from ..metrics.evaluator import EvalReport

    with open(path, "r", encoding="utf-8") as f:
        return EvalReport.from_dict(json.load(f))
