"""
Domain types: target states, trajectories and CSI traces.

Trajectories and traces keep their per-frame data as numpy arrays; the
``states`` / ``frames`` views materialize the record-per-frame form on demand.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence

import numpy as np

from .errors import InvalidArgumentError
from .geometry import Geometry, Point

# Complex baseband samples are numpy complex128 scalars / arrays.
ComplexSample = complex

TIMESTAMP_TOLERANCE_S = 1e-9


@dataclass(frozen=True)
class TargetState:
    """Position, heading and body width of the target at one instant."""

    t: float
    center: Point
    heading: float
    body_len_m: float = 0.4

    def __post_init__(self):
        if not self.body_len_m > 0:
            raise InvalidArgumentError(f"body_len_m must be positive, got {self.body_len_m}")


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    A uniformly sampled target path.

    Args:
        sample_rate_hz (float): Frame rate in Hz
        t (np.ndarray): Timestamps, shape (N,)
        centers (np.ndarray): Body centers, shape (N, 2)
        headings (np.ndarray): Direction of motion in radians, shape (N,)
        body_len (np.ndarray): Scatterer segment length per frame, shape (N,)
    """

    sample_rate_hz: float
    t: np.ndarray
    centers: np.ndarray
    headings: np.ndarray
    body_len: np.ndarray

    def __post_init__(self):
        if not math.isfinite(self.sample_rate_hz) or self.sample_rate_hz <= 0:
            raise InvalidArgumentError(f"sample_rate_hz must be positive, got {self.sample_rate_hz}")
        t = np.asarray(self.t, dtype=float)
        centers = np.asarray(self.centers, dtype=float).reshape(-1, 2)
        headings = np.asarray(self.headings, dtype=float)
        body_len = np.broadcast_to(np.asarray(self.body_len, dtype=float), t.shape).copy()
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "headings", headings)
        object.__setattr__(self, "body_len", body_len)

        n = len(t)
        if n == 0:
            raise InvalidArgumentError("Trajectory must contain at least one state")
        if centers.shape[0] != n or headings.shape != (n,):
            raise InvalidArgumentError("Trajectory arrays must share the same length")
        if np.any(body_len <= 0):
            raise InvalidArgumentError("body_len_m must be positive")
        if n > 1:
            steps = np.diff(t)
            if np.any(np.abs(steps - 1.0 / self.sample_rate_hz) > TIMESTAMP_TOLERANCE_S):
                raise InvalidArgumentError(
                    "Trajectory timestamps must advance by exactly 1/sample_rate_hz"
                )

    @classmethod
    def from_states(cls, sample_rate_hz: float, states: Sequence[TargetState]) -> "Trajectory":
        return cls(
            sample_rate_hz=sample_rate_hz,
            t=np.array([s.t for s in states], dtype=float),
            centers=np.array([s.center for s in states], dtype=float).reshape(-1, 2),
            headings=np.array([s.heading for s in states], dtype=float),
            body_len=np.array([s.body_len_m for s in states], dtype=float),
        )

    def __len__(self) -> int:
        return len(self.t)

    def __getitem__(self, index: int) -> TargetState:
        return TargetState(
            t=float(self.t[index]),
            center=(float(self.centers[index, 0]), float(self.centers[index, 1])),
            heading=float(self.headings[index]),
            body_len_m=float(self.body_len[index]),
        )

    @property
    def states(self) -> List[TargetState]:
        return [self[i] for i in range(len(self))]

    @property
    def duration_s(self) -> float:
        return len(self) / self.sample_rate_hz

    def with_lead_in(self, seconds: float) -> "Trajectory":
        """
        Prepend a parked interval at the starting pose.

        Timestamps are re-stamped from the original start time.
        """
        if seconds < 0:
            raise InvalidArgumentError(f"Lead-in must be non-negative, got {seconds}")
        n_park = int(round(seconds * self.sample_rate_hz))
        if n_park == 0:
            return self
        idx = np.concatenate([np.zeros(n_park, dtype=int), np.arange(len(self))])
        return self._reindexed(idx)

    def reversed(self) -> "Trajectory":
        """Time-reversed path; headings flip so they still point along the motion."""
        idx = np.arange(len(self))[::-1]
        rev = self._reindexed(idx)
        return Trajectory(
            sample_rate_hz=rev.sample_rate_hz,
            t=rev.t,
            centers=rev.centers,
            headings=np.mod(rev.headings + math.pi, 2.0 * math.pi),
            body_len=rev.body_len,
        )

    def _reindexed(self, idx: np.ndarray) -> "Trajectory":
        t0 = float(self.t[0])
        return Trajectory(
            sample_rate_hz=self.sample_rate_hz,
            t=t0 + np.arange(len(idx)) / self.sample_rate_hz,
            centers=self.centers[idx],
            headings=self.headings[idx],
            body_len=self.body_len[idx],
        )


@dataclass(frozen=True)
class CsiFrame:
    """One received packet: timestamp, AGC indicator and one sample per antenna."""

    t: float
    agc: float
    samples: np.ndarray


@dataclass(eq=False)
class CsiTrace:
    """
    A recorded (or synthesized) CSI stream.

    Args:
        geometry (Geometry): Deployment the trace was captured in
        sample_rate_hz (float): Frame rate in Hz
        t (np.ndarray): Frame timestamps, shape (N,)
        agc (np.ndarray): AGC indicator per frame, shape (N,)
        samples (np.ndarray): Complex samples, shape (N, num_antennas)
        meta (Dict[str, Any]): Free-form annotations (label, seed, ...)
    """

    geometry: Geometry
    sample_rate_hz: float
    t: np.ndarray
    agc: np.ndarray
    samples: np.ndarray
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        self.agc = np.asarray(self.agc, dtype=float)
        self.samples = np.asarray(self.samples, dtype=complex)
        n = len(self.t)
        if self.samples.ndim != 2 or self.samples.shape[0] != n or self.agc.shape != (n,):
            raise InvalidArgumentError("Trace arrays must share the frame dimension")
        if self.samples.shape[1] != self.geometry.num_antennas:
            raise InvalidArgumentError(
                f"Frames carry {self.samples.shape[1]} samples but geometry has "
                f"{self.geometry.num_antennas} antennas"
            )

    def __len__(self) -> int:
        return len(self.t)

    def __iter__(self) -> Iterator[CsiFrame]:
        for i in range(len(self)):
            yield CsiFrame(t=float(self.t[i]), agc=float(self.agc[i]), samples=self.samples[i])

    @property
    def frames(self) -> List[CsiFrame]:
        return list(self)

    @property
    def trace_id(self) -> Optional[str]:
        value = self.meta.get("trace_id")
        return None if value is None else str(value)

    def with_samples(self, samples: np.ndarray, agc: Optional[np.ndarray] = None) -> "CsiTrace":
        """Copy of the trace with replaced samples (and optionally AGC)."""
        return CsiTrace(
            geometry=self.geometry,
            sample_rate_hz=self.sample_rate_hz,
            t=self.t.copy(),
            agc=self.agc.copy() if agc is None else agc,
            samples=samples,
            meta=dict(self.meta),
        )

    def equals(self, other: "CsiTrace") -> bool:
        """Field-for-field equality (exact)."""
        return (
            self.geometry == other.geometry
            and self.sample_rate_hz == other.sample_rate_hz
            and self.meta == other.meta
            and np.array_equal(self.t, other.t)
            and np.array_equal(self.agc, other.agc)
            and np.array_equal(self.samples, other.samples)
        )
