"""
Scripted walking paths around a doorway: crossings, turn-backs and walk-bys.

All paths are walked at constant speed and sampled at the frame rate. The
target's signed distance to the LoS line is positive on the ``los_normal``
side; crossings start there and end on the negative side.
"""
import math
from typing import Sequence

import numpy as np

from ..core.errors import InvalidArgumentError
from ..core.geometry import Geometry
from ..core.types import Trajectory


def _rotate(vec: np.ndarray, angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([c * vec[0] - s * vec[1], s * vec[0] + c * vec[1]])


def _check_motion(speed: float, approach_dist: float, sample_rate_hz: float, body_len_m: float):
    if not speed > 0:
        raise InvalidArgumentError(f"speed must be positive, got {speed}")
    if not approach_dist > 0:
        raise InvalidArgumentError(f"approach_dist must be positive, got {approach_dist}")
    if not sample_rate_hz > 0:
        raise InvalidArgumentError(f"sample_rate_hz must be positive, got {sample_rate_hz}")
    if not body_len_m > 0:
        raise InvalidArgumentError(f"body_len_m must be positive, got {body_len_m}")


def walk_polyline(waypoints: Sequence[np.ndarray], speed: float, sample_rate_hz: float,
                  body_len_m: float = 0.4, lead_in_s: float = 0.0) -> Trajectory:
    """
    Walk through waypoints at constant speed.

    Headings follow the leg being walked; the final sample lands on the last
    waypoint only when the total length is a whole number of steps.

    Args:
        waypoints (Sequence[np.ndarray]): Corner points in walking order
        speed (float): Walking speed in m/s
        sample_rate_hz (float): Frame rate in Hz
        body_len_m (float): Body segment length in meters
        lead_in_s (float): Parked time at the first waypoint before moving

    Returns:
        Trajectory: Sampled path
    """
    pts = np.asarray(waypoints, dtype=float)
    legs = np.diff(pts, axis=0)
    leg_len = np.hypot(legs[:, 0], legs[:, 1])
    keep = leg_len > 0
    pts = np.vstack([pts[:1], pts[1:][keep]])
    legs, leg_len = legs[keep], leg_len[keep]
    if len(legs) == 0:
        raise InvalidArgumentError("Path has zero length")

    cum = np.concatenate([[0.0], np.cumsum(leg_len)])
    step = speed / sample_rate_hz
    n = int(math.floor(cum[-1] / step + 1e-9)) + 1
    s = np.arange(n) * step

    centers = np.stack([np.interp(s, cum, pts[:, 0]), np.interp(s, cum, pts[:, 1])], axis=-1)
    leg_idx = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(legs) - 1)
    leg_heading = np.arctan2(legs[:, 1], legs[:, 0])
    headings = leg_heading[leg_idx]

    trajectory = Trajectory(
        sample_rate_hz=sample_rate_hz,
        t=np.arange(n) / sample_rate_hz,
        centers=centers,
        headings=headings,
        body_len=np.full(n, float(body_len_m)),
    )
    return trajectory.with_lead_in(lead_in_s)


def make_crossing(geometry: Geometry, cross_point_offset: float, angle: float, speed: float,
                  approach_dist: float, sample_rate_hz: float, body_len_m: float = 0.4,
                  lead_in_s: float = 0.0) -> Trajectory:
    """
    Straight walk through the doorway.

    Args:
        geometry (Geometry): Deployment
        cross_point_offset (float): Crossing point, meters along the LoS from its midpoint
        angle (float): Direction of travel relative to the LoS normal, radians
        speed (float): Walking speed in m/s
        approach_dist (float): Path length on each side of the crossing point
        sample_rate_hz (float): Frame rate in Hz
        body_len_m (float): Body segment length in meters
        lead_in_s (float): Parked time before the walk starts

    Returns:
        Trajectory: The crossing path

    Raises:
        InvalidArgumentError: If the crossing point is not strictly inside the LoS segment
    """
    _check_motion(speed, approach_dist, sample_rate_hz, body_len_m)
    half = geometry.los_distance / 2.0
    if not abs(cross_point_offset) < half:
        raise InvalidArgumentError(
            f"Crossing point offset {cross_point_offset} outside the LoS segment (±{half})"
        )
    if not abs(angle) < math.pi / 2:
        raise InvalidArgumentError("Crossing angle must be within ±90 degrees of the LoS normal")

    cross = geometry.midpoint + cross_point_offset * geometry.los_unit
    direction = _rotate(-geometry.los_normal, angle)
    start = cross - approach_dist * direction
    end = cross + approach_dist * direction
    return walk_polyline([start, end], speed, sample_rate_hz, body_len_m, lead_in_s)


def make_turnback(geometry: Geometry, nearest_approach: float, speed: float, approach_dist: float,
                  sample_rate_hz: float, approach_offset: float = 0.0, angle: float = 0.0,
                  body_len_m: float = 0.4, lead_in_s: float = 0.0, hesitations: int = 0,
                  hesitation_retreat_m: float = 0.8) -> Trajectory:
    """
    Walk up to the doorway, hesitate, and leave without crossing.

    The walker reaches ``nearest_approach`` from the LoS line, then for each
    hesitation backs off ``hesitation_retreat_m`` along the path and leans in
    again, and finally retreats the full approach distance.

    Args:
        geometry (Geometry): Deployment
        nearest_approach (float): Closest distance to the LoS line, meters
        speed (float): Walking speed in m/s
        approach_dist (float): Length of the approach and final retreat legs
        sample_rate_hz (float): Frame rate in Hz
        approach_offset (float): Turn point position along the LoS from its midpoint
        angle (float): Approach direction relative to the LoS normal, radians
        body_len_m (float): Body segment length in meters
        lead_in_s (float): Parked time before the walk starts
        hesitations (int): Number of back-off-and-return excursions at the door
        hesitation_retreat_m (float): Length of each back-off

    Returns:
        Trajectory: The turn-back path
    """
    _check_motion(speed, approach_dist, sample_rate_hz, body_len_m)
    if not nearest_approach > 0:
        raise InvalidArgumentError(f"nearest_approach must be positive, got {nearest_approach}")
    if hesitations < 0:
        raise InvalidArgumentError("hesitations must be non-negative")
    if hesitations and not hesitation_retreat_m > 0:
        raise InvalidArgumentError("hesitation_retreat_m must be positive")
    if not abs(angle) < math.pi / 2:
        raise InvalidArgumentError("Approach angle must be within ±90 degrees of the LoS normal")

    direction = _rotate(-geometry.los_normal, angle)
    # turn point sits nearest_approach off the line, measured along the normal
    turn = (
        geometry.midpoint
        + approach_offset * geometry.los_unit
        + nearest_approach * geometry.los_normal
    )
    start = turn - approach_dist * direction
    waypoints = [start, turn]
    for _ in range(hesitations):
        waypoints.extend([turn - hesitation_retreat_m * direction, turn])
    waypoints.append(start)
    return walk_polyline(waypoints, speed, sample_rate_hz, body_len_m, lead_in_s)


def make_walkby(geometry: Geometry, standoff: float, speed: float, approach_dist: float,
                sample_rate_hz: float, along_offset: float = 0.0, side: int = 1,
                body_len_m: float = 0.4, lead_in_s: float = 0.0) -> Trajectory:
    """
    Walk parallel to the LoS line at a fixed standoff.

    The path runs ``approach_dist`` either side of the point nearest to
    ``midpoint + along_offset``.
    """
    _check_motion(speed, approach_dist, sample_rate_hz, body_len_m)
    if not standoff > 0:
        raise InvalidArgumentError(f"standoff must be positive, got {standoff}")
    if side not in (-1, 1):
        raise InvalidArgumentError("side must be +1 or -1")

    nearest = geometry.midpoint + along_offset * geometry.los_unit + side * standoff * geometry.los_normal
    start = nearest - approach_dist * geometry.los_unit
    end = nearest + approach_dist * geometry.los_unit
    return walk_polyline([start, end], speed, sample_rate_hz, body_len_m, lead_in_s)


def make_parked(position, duration_s: float, sample_rate_hz: float,
                heading: float = 0.0, body_len_m: float = 0.4) -> Trajectory:
    """Stationary target for ``duration_s`` seconds."""
    n = int(round(duration_s * sample_rate_hz))
    if n < 1:
        raise InvalidArgumentError("Parked trajectory needs at least one frame")
    return Trajectory(
        sample_rate_hz=sample_rate_hz,
        t=np.arange(n) / sample_rate_hz,
        centers=np.tile(np.asarray(position, dtype=float), (n, 1)),
        headings=np.full(n, float(heading)),
        body_len=np.full(n, float(body_len_m)),
    )
