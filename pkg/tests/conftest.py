"""
Shared fixtures for the zonecross test suite.
"""
import logging
import os
import sys

import numpy as np
import pytest

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from zonecross.core.geometry import Geometry
from zonecross.core.types import CsiTrace
from zonecross.synth.config import SynthConfig
from zonecross.synth.generator import synthesize_trace
from zonecross.synth.trajectories import make_crossing, make_parked, make_turnback

FS = 1000.0
SPEED = 0.8
APPROACH = 2.0
LEAD_IN = 1.0

FIXTURES_DIR = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture(autouse=True)
def _reset_package_logger():
    """CLI tests install a console handler; undo it so caplog keeps working."""
    yield
    logger = logging.getLogger("zonecross")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    logger.setLevel(logging.NOTSET)
    logger.propagate = True


@pytest.fixture(autouse=True)
def _clear_env(monkeypatch):
    for name in list(os.environ):
        if name.startswith("ZONECROSS_"):
            monkeypatch.delenv(name, raising=False)


@pytest.fixture(scope="session")
def geometry() -> Geometry:
    return Geometry.doorway(2.0)


@pytest.fixture(scope="session")
def clean_cfg() -> SynthConfig:
    return SynthConfig(noise_snr_db=None, phase_drift_per_frame_rad=0.0, rng_seed=7)


@pytest.fixture(scope="session")
def noisy_cfg() -> SynthConfig:
    return SynthConfig(noise_snr_db=20.0, phase_drift_per_frame_rad=0.2, rng_seed=7)


@pytest.fixture(scope="session")
def crossing_trajectory(geometry):
    return make_crossing(geometry, 0.0, 0.0, SPEED, APPROACH, FS, lead_in_s=LEAD_IN)


@pytest.fixture(scope="session")
def crossing_trace(geometry, crossing_trajectory, clean_cfg) -> CsiTrace:
    return synthesize_trace(
        geometry, crossing_trajectory, clean_cfg, meta={"label": "crossing", "trace_id": "crossing"}
    )


@pytest.fixture(scope="session")
def turnback_trace(geometry, clean_cfg) -> CsiTrace:
    trajectory = make_turnback(geometry, 0.3, SPEED, APPROACH, FS, lead_in_s=LEAD_IN)
    return synthesize_trace(
        geometry, trajectory, clean_cfg, meta={"label": "turnback", "trace_id": "turnback"}
    )


@pytest.fixture(scope="session")
def parked_trace(geometry, clean_cfg) -> CsiTrace:
    trajectory = make_parked((1.0, 1.5), 3.0, FS)
    return synthesize_trace(geometry, trajectory, clean_cfg, meta={"trace_id": "parked"})


@pytest.fixture
def small_trace(geometry) -> CsiTrace:
    """Short random trace for file-format tests."""
    rng = np.random.default_rng(3)
    n = 1000
    samples = rng.normal(size=(n, 3)) + 1j * rng.normal(size=(n, 3))
    return CsiTrace(
        geometry=geometry,
        sample_rate_hz=FS,
        t=np.arange(n) / FS,
        agc=rng.normal(30.0, 0.5, size=n),
        samples=samples,
        meta={"trace_id": "small", "label": "crossing", "seed": 3},
    )
