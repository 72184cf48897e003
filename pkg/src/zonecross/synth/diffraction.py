"""
Diffraction model of a body segment crossing the transmitter-receiver link.

The dynamic channel term is a line integral over the body segment,

    H = (-j / 2λ) · E0 · e^{jφ0} / √(4π) · ∫ e^{-j2π(r_T + r_R)/λ} / (r_T r_R) dl,

where r_T and r_R are the distances from a point of the segment to the
transmitter and to the receive antenna. The segment is centered on the body
and oriented perpendicular to the heading.
"""
import math
from functools import lru_cache
from typing import Tuple

import numpy as np

from ..core.errors import SingularGeometryError
from ..core.geometry import Geometry
from ..core.types import TargetState, Trajectory
from .config import SynthConfig

# Distances below this are treated as touching an antenna.
SINGULAR_DISTANCE_M = 1e-9


@lru_cache(maxsize=16)
def _unit_nodes(n: int, rule: str) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes on [-1/2, 1/2] and weights summing to 1."""
    if rule == "gauss":
        x, w = np.polynomial.legendre.leggauss(n)
        return x / 2.0, w / 2.0
    nodes = (np.arange(n) + 0.5) / n - 0.5
    return nodes, np.full(n, 1.0 / n)


def _prefactor(geometry: Geometry, cfg: SynthConfig) -> complex:
    lam = geometry.wavelength_m
    return (-1j / (2.0 * lam)) * cfg.e0 * np.exp(1j * cfg.phi0) / math.sqrt(4.0 * math.pi)


def segment_response(geometry: Geometry, antenna_pos: np.ndarray, centers: np.ndarray,
                     headings: np.ndarray, body_len: np.ndarray, cfg: SynthConfig) -> np.ndarray:
    """
    Dynamic term for many target poses at one receive antenna.

    Args:
        geometry (Geometry): Deployment
        antenna_pos (np.ndarray): Receive antenna position, shape (2,)
        centers (np.ndarray): Body centers, shape (N, 2)
        headings (np.ndarray): Headings in radians, shape (N,)
        body_len (np.ndarray): Segment lengths, shape (N,)
        cfg (SynthConfig): Channel configuration

    Returns:
        np.ndarray: Complex responses, shape (N,)

    Raises:
        SingularGeometryError: If an integration point touches an antenna
    """
    nodes, weights = _unit_nodes(cfg.n_integration_points, cfg.quadrature)
    centers = np.asarray(centers, dtype=float).reshape(-1, 2)
    headings = np.asarray(headings, dtype=float).reshape(-1)
    body_len = np.broadcast_to(np.asarray(body_len, dtype=float), headings.shape)

    # segment direction is the heading rotated by +90 degrees
    direction = np.stack([-np.sin(headings), np.cos(headings)], axis=-1)
    along = body_len[:, None] * nodes[None, :]
    points = centers[:, None, :] + along[:, :, None] * direction[:, None, :]

    tx = np.asarray(geometry.tx_pos)
    r_t = np.hypot(points[..., 0] - tx[0], points[..., 1] - tx[1])
    r_r = np.hypot(points[..., 0] - antenna_pos[0], points[..., 1] - antenna_pos[1])
    if np.any(r_t < SINGULAR_DISTANCE_M) or np.any(r_r < SINGULAR_DISTANCE_M):
        raise SingularGeometryError("Body segment passes through a transceiver antenna")

    k = 2.0 * math.pi / geometry.wavelength_m
    integrand = np.exp(-1j * k * (r_t + r_r)) / (r_t * r_r)
    integral = (integrand @ weights) * body_len
    return _prefactor(geometry, cfg) * integral


def diffraction_response(geometry: Geometry, rx_antenna_index: int, state: TargetState,
                         cfg: SynthConfig) -> complex:
    """
    Dynamic channel term of one target state at one receive antenna.

    Args:
        geometry (Geometry): Deployment
        rx_antenna_index (int): Receive antenna (0-based)
        state (TargetState): Target pose
        cfg (SynthConfig): Channel configuration

    Returns:
        complex: H_target for that antenna

    Example:
        >>> geo = Geometry.doorway(2.0)
        >>> h = diffraction_response(geo, 0, TargetState(0.0, (1.0, 0.6), 0.0), SynthConfig())
    """
    antenna = geometry.antenna_position(rx_antenna_index)
    response = segment_response(
        geometry,
        antenna,
        np.array([state.center], dtype=float),
        np.array([state.heading]),
        np.array([state.body_len_m]),
        cfg,
    )
    return complex(response[0])


def trajectory_response(geometry: Geometry, trajectory: Trajectory, cfg: SynthConfig) -> np.ndarray:
    """Dynamic term for every frame and antenna, shape (N, num_antennas)."""
    columns = [
        segment_response(
            geometry,
            geometry.antenna_position(k),
            trajectory.centers,
            trajectory.headings,
            trajectory.body_len,
            cfg,
        )
        for k in range(geometry.num_antennas)
    ]
    return np.stack(columns, axis=1)
