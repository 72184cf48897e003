"""
Synthesis parameters.
"""
from dataclasses import dataclass, replace
from typing import Any, Mapping, Optional

import math

from ..core.errors import InvalidArgumentError

QUADRATURE_RULES = ("midpoint", "gauss")


@dataclass(frozen=True)
class SynthConfig:
    """
    Channel-model and impairment settings for one synthesized trace.

    Args:
        e0 (float): Transmit energy scalar
        phi0 (float): Initial phase of the dynamic term, radians
        los_gain (complex): Static line-of-sight component
        n_integration_points (int): Sub-segments of the body segment integral
        noise_snr_db (Optional[float]): Per-sample SNR relative to |los_gain|; None disables noise
        phase_drift_per_frame_rad (float): Bound of the uniform common-phase step
        rng_seed (int): Seed for the impairment streams
        quadrature (str): "gauss" (Gauss-Legendre) or "midpoint" sum over the same point count
    """

    e0: float = 0.2
    phi0: float = 0.0
    los_gain: complex = 1.0 + 0.0j
    n_integration_points: int = 64
    noise_snr_db: Optional[float] = 20.0
    phase_drift_per_frame_rad: float = 0.2
    rng_seed: int = 0
    quadrature: str = "gauss"

    def __post_init__(self):
        if not self.e0 > 0:
            raise InvalidArgumentError(f"e0 must be positive, got {self.e0}")
        if self.n_integration_points < 2:
            raise InvalidArgumentError("n_integration_points must be at least 2")
        if not abs(self.los_gain) > 0:
            raise InvalidArgumentError("los_gain must be non-zero")
        if self.phase_drift_per_frame_rad < 0:
            raise InvalidArgumentError("phase_drift_per_frame_rad must be non-negative")
        if self.noise_snr_db is not None and not math.isfinite(self.noise_snr_db):
            raise InvalidArgumentError("noise_snr_db must be finite or None")
        if self.quadrature not in QUADRATURE_RULES:
            raise InvalidArgumentError(
                f"quadrature must be one of {QUADRATURE_RULES}, got {self.quadrature!r}"
            )

    @property
    def noiseless(self) -> bool:
        return self.noise_snr_db is None

    def clean(self) -> "SynthConfig":
        """Same channel with noise and phase drift disabled."""
        return replace(self, noise_snr_db=None, phase_drift_per_frame_rad=0.0)

    @classmethod
    def from_config(cls, section: Mapping[str, Any], **overrides) -> "SynthConfig":
        """
        Build from the ``synth`` config section.

        Args:
            section (Mapping[str, Any]): Section dict (see default_config.yaml)
            **overrides: Field values taking precedence over the section

        Returns:
            SynthConfig: Parsed configuration
        """
        gain = section.get("los_gain", [1.0, 0.0])
        if isinstance(gain, (list, tuple)):
            gain = complex(float(gain[0]), float(gain[1]))
        kwargs = {
            "e0": float(section.get("e0", cls.e0)),
            "phi0": float(section.get("phi0", cls.phi0)),
            "los_gain": complex(gain),
            "n_integration_points": int(section.get("n_integration_points", cls.n_integration_points)),
            "noise_snr_db": section.get("noise_snr_db", cls.noise_snr_db),
            "phase_drift_per_frame_rad": float(
                section.get("phase_drift_per_frame_rad", cls.phase_drift_per_frame_rad)
            ),
            "rng_seed": int(section.get("seed", cls.rng_seed)),
            "quadrature": str(section.get("quadrature", cls.quadrature)),
        }
        kwargs.update(overrides)
        if kwargs["noise_snr_db"] is not None:
            kwargs["noise_snr_db"] = float(kwargs["noise_snr_db"])
        return cls(**kwargs)
