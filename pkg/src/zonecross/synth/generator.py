"""
Trace synthesis: static LoS term plus the diffraction term, with receiver impairments.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from ..core.errors import InvalidArgumentError
from ..core.geometry import Geometry
from ..core.types import CsiTrace, Trajectory
from .config import SynthConfig
from .diffraction import trajectory_response

logger = logging.getLogger(__name__)

AGC_CEILING = 120.0


@dataclass(frozen=True)
class Impairments:
    """
    Per-frame receiver impairments.

    ``common_phase`` (shape (N,)) multiplies every antenna of a frame alike;
    ``awgn`` (shape (N, A)) is added per antenna.
    """

    common_phase: np.ndarray
    awgn: np.ndarray


def draw_impairments(n_frames: int, n_antennas: int, cfg: SynthConfig,
                     noise_scale: float) -> Impairments:
    """
    Draw the common-phase random walk and the complex Gaussian noise.

    The two draws come from independent child streams of ``cfg.rng_seed`` so
    toggling one impairment leaves the other unchanged.

    Args:
        n_frames (int): Number of frames
        n_antennas (int): Number of receive antennas
        cfg (SynthConfig): Impairment settings
        noise_scale (float): Reference magnitude the SNR is relative to

    Returns:
        Impairments: Drawn impairment arrays
    """
    phase_seq, noise_seq = np.random.SeedSequence(cfg.rng_seed).spawn(2)
    phase_rng = np.random.default_rng(phase_seq)
    noise_rng = np.random.default_rng(noise_seq)

    drift = cfg.phase_drift_per_frame_rad
    if drift > 0 and n_frames > 1:
        steps = phase_rng.uniform(-drift, drift, size=n_frames - 1)
        common_phase = np.concatenate([[0.0], np.cumsum(steps)])
    else:
        common_phase = np.zeros(n_frames)

    if cfg.noise_snr_db is None:
        awgn = np.zeros((n_frames, n_antennas), dtype=complex)
    else:
        sigma = noise_scale * 10.0 ** (-cfg.noise_snr_db / 20.0)
        std = sigma / np.sqrt(2.0)
        awgn = noise_rng.normal(0.0, std, size=(n_frames, n_antennas)) + 1j * noise_rng.normal(
            0.0, std, size=(n_frames, n_antennas)
        )
    return Impairments(common_phase=common_phase, awgn=awgn)


def agc_model(frame_samples) -> float:
    """
    Gain indicator of one frame: -10·log10 of the mean sample power.

    Example:
        >>> agc_model([1.0, 1j, -1.0])
        0.0
    """
    return float(agc_series(np.asarray(frame_samples, dtype=complex).reshape(1, -1))[0])


def agc_series(samples: np.ndarray) -> np.ndarray:
    """Vectorized ``agc_model`` over frames; all-zero frames map to ``AGC_CEILING``."""
    power = np.mean(np.abs(samples) ** 2, axis=1)
    out = np.full(power.shape, AGC_CEILING)
    nonzero = power > 0
    out[nonzero] = -10.0 * np.log10(power[nonzero])
    # +0.0 turns -0.0 into 0.0 for unit-power frames
    return out + 0.0


def synthesize_trace(geometry: Geometry, trajectory: Trajectory, cfg: SynthConfig,
                     meta: Optional[Dict[str, Any]] = None) -> CsiTrace:
    """
    Synthesize a CSI trace for a target walking a trajectory.

    Each sample is (los_gain + H_target) · e^{j·common_phase} + noise.

    Args:
        geometry (Geometry): Deployment
        trajectory (Trajectory): Target path
        cfg (SynthConfig): Channel and impairment configuration
        meta (Optional[Dict[str, Any]]): Extra annotations stored with the trace

    Returns:
        CsiTrace: One frame per trajectory state
    """
    if len(trajectory) == 0:
        raise InvalidArgumentError("Trajectory is empty")

    dynamic = trajectory_response(geometry, trajectory, cfg)
    clean = cfg.los_gain + dynamic

    impairments = draw_impairments(len(trajectory), geometry.num_antennas, cfg, abs(cfg.los_gain))
    samples = clean * np.exp(1j * impairments.common_phase)[:, None] + impairments.awgn

    trace_meta: Dict[str, Any] = {"seed": cfg.rng_seed}
    if meta:
        trace_meta.update(meta)

    logger.debug(
        "Synthesized %d frames (max |H|/|LoS| = %.3f, snr=%s)",
        len(trajectory),
        float(np.max(np.abs(dynamic)) / abs(cfg.los_gain)),
        cfg.noise_snr_db,
    )
    return CsiTrace(
        geometry=geometry,
        sample_rate_hz=trajectory.sample_rate_hz,
        t=trajectory.t.copy(),
        agc=agc_series(samples),
        samples=samples,
        meta=trace_meta,
    )
