"""
Line-oriented trace files.

Line 1 is a JSON header object; every following line is a JSON array
``[t, agc, re_0, im_0, re_1, im_1, ...]`` for one frame. Floats are written
with their shortest round-trip representation, so read(write(trace)) is exact.
"""
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Union

import numpy as np

from ..core.errors import InvalidArgumentError, TraceParseError
from ..core.geometry import Geometry, wavelength
from ..core.types import TIMESTAMP_TOLERANCE_S, CsiTrace
from ..validation.validator import TraceValidator

logger = logging.getLogger(__name__)

TRACE_FORMAT = "wicross-trace/1"
# tag written by earlier releases, still readable
LEGACY_TRACE_FORMATS = ("zonecross-trace/1",)
HEADER_FIELDS = (
    "format",
    "sample_rate_hz",
    "carrier_hz",
    "num_antennas",
    "tx_pos",
    "rx_pos",
    "rx_antenna_offsets",
    "meta",
)

PathLike = Union[str, Path]


def _header(trace: CsiTrace) -> Dict[str, Any]:
    geo = trace.geometry
    return {
        "format": TRACE_FORMAT,
        "sample_rate_hz": float(trace.sample_rate_hz),
        "carrier_hz": float(geo.carrier_hz),
        "num_antennas": geo.num_antennas,
        "tx_pos": list(geo.tx_pos),
        "rx_pos": list(geo.rx_pos),
        "rx_antenna_offsets": [list(o) for o in geo.rx_antenna_offsets],
        "meta": trace.meta,
    }


def write_trace(trace: CsiTrace, path: PathLike) -> Path:
    """
    Write a trace to ``path``.

    Args:
        trace (CsiTrace): Trace to persist (must validate)
        path (PathLike): Output file

    Returns:
        Path: The written file
    """
    TraceValidator().require(trace)
    path = Path(path)
    interleaved = np.empty((len(trace), 2 + 2 * trace.geometry.num_antennas))
    interleaved[:, 0] = trace.t
    interleaved[:, 1] = trace.agc
    interleaved[:, 2::2] = trace.samples.real
    interleaved[:, 3::2] = trace.samples.imag

    try:
        header = json.dumps(_header(trace), sort_keys=True)
    except TypeError as exc:
        raise InvalidArgumentError(f"Trace meta is not serializable: {exc}") from exc

    with open(path, "w", encoding="utf-8") as f:
        f.write(header + "\n")
        for row in interleaved.tolist():
            f.write(json.dumps(row) + "\n")
    logger.debug("Wrote %d frames to %s", len(trace), path)
    return path


def _parse_header(line: str) -> Dict[str, Any]:
    try:
        header = json.loads(line)
    except json.JSONDecodeError as exc:
        raise TraceParseError(f"Header is not valid JSON: {exc.msg}", 1) from exc
    if not isinstance(header, dict):
        raise TraceParseError("Header must be a JSON object", 1)
    missing = [k for k in HEADER_FIELDS if k not in header]
    if missing:
        raise TraceParseError(f"Header missing fields: {', '.join(missing)}", 1)
    if header["format"] != TRACE_FORMAT and header["format"] not in LEGACY_TRACE_FORMATS:
        raise TraceParseError(f"Unsupported trace format {header['format']!r}", 1)
    if not isinstance(header["meta"], dict):
        raise TraceParseError("Header meta must be an object", 1)
    return header


def _parse_geometry(header: Dict[str, Any]) -> Geometry:
    try:
        offsets = [tuple(o) for o in header["rx_antenna_offsets"]]
        if len(offsets) != int(header["num_antennas"]):
            raise TraceParseError("num_antennas does not match rx_antenna_offsets", 1)
        carrier = float(header["carrier_hz"])
        return Geometry(
            tx_pos=tuple(header["tx_pos"]),
            rx_pos=tuple(header["rx_pos"]),
            rx_antenna_offsets=tuple(offsets),
            carrier_hz=carrier,
            wavelength_m=wavelength(carrier),
        )
    except TraceParseError:
        raise
    except (InvalidArgumentError, TypeError, ValueError) as exc:
        raise TraceParseError(f"Invalid geometry in header: {exc}", 1) from exc


def read_trace(path: PathLike) -> CsiTrace:
    """
    Read a trace written by ``write_trace``.

    Args:
        path (PathLike): Trace file

    Returns:
        CsiTrace: Parsed trace

    Raises:
        TraceParseError: On a malformed header or frame, an antenna-count
            mismatch or timestamps off the declared rate, naming the line
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8") as f:
        lines = f.read().splitlines()
    if not lines:
        raise TraceParseError("Empty trace file", 1)

    header = _parse_header(lines[0])
    geometry = _parse_geometry(header)
    try:
        rate = float(header["sample_rate_hz"])
    except (TypeError, ValueError) as exc:
        raise TraceParseError("sample_rate_hz is not a number", 1) from exc
    if not rate > 0 or not math.isfinite(rate):
        raise TraceParseError(f"Invalid sample_rate_hz {rate}", 1)

    width = 2 + 2 * geometry.num_antennas
    rows: List[List[float]] = []
    for line_number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            raise TraceParseError("Blank frame line", line_number)
        try:
            row = json.loads(line)
        except json.JSONDecodeError as exc:
            raise TraceParseError(f"Frame is not valid JSON: {exc.msg}", line_number) from exc
        if not isinstance(row, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in row
        ):
            raise TraceParseError("Frame must be a flat array of numbers", line_number)
        if len(row) != width:
            raise TraceParseError(
                f"Frame has {(len(row) - 2) / 2:g} samples, header declares "
                f"{geometry.num_antennas} antennas",
                line_number,
            )
        if not all(math.isfinite(v) for v in row):
            raise TraceParseError("Frame contains a non-finite value", line_number)
        if rows:
            step = row[0] - rows[-1][0]
            if step <= 0:
                raise TraceParseError("Timestamps are not strictly increasing", line_number)
            if abs(step - 1.0 / rate) > TIMESTAMP_TOLERANCE_S:
                raise TraceParseError(f"Timestamp off the declared {rate:g} Hz grid", line_number)
        rows.append([float(v) for v in row])

    if not rows:
        raise TraceParseError("Trace has no frames", len(lines) + 1)

    data = np.asarray(rows, dtype=float)
    samples = np.empty((len(rows), geometry.num_antennas), dtype=complex)
    samples.real = data[:, 2::2]
    samples.imag = data[:, 3::2]
    return CsiTrace(
        geometry=geometry,
        sample_rate_hz=rate,
        t=data[:, 0],
        agc=data[:, 1],
        samples=samples,
        meta=header["meta"],
    )


def write_jsonl(records: Iterable[Dict[str, Any]], path: PathLike) -> Path:
    """Write records as JSON Lines with sorted keys."""
    path = Path(path)
    with open(path, "w", encoding="utf-8") as f:
        for record in records:
            f.write(json.dumps(record, sort_keys=True) + "\n")
    return path


def read_jsonl(path: PathLike) -> List[Dict[str, Any]]:
    records = []
    with open(path, "r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise TraceParseError(f"Invalid JSON record: {exc.msg}", line_number) from exc
    return records
