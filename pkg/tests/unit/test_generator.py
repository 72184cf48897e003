import numpy as np
import pytest

from zonecross.dsp.ratio import csi_ratio
from zonecross.synth.config import SynthConfig
from zonecross.synth.diffraction import trajectory_response
from zonecross.synth.generator import (
    AGC_CEILING,
    agc_model,
    agc_series,
    draw_impairments,
    synthesize_trace,
)
from zonecross.synth.trajectories import make_parked


def test_noiseless_trace_is_los_plus_dynamic(geometry, crossing_trajectory, clean_cfg, crossing_trace):
    expected = clean_cfg.los_gain + trajectory_response(geometry, crossing_trajectory, clean_cfg)
    np.testing.assert_allclose(crossing_trace.samples, expected, rtol=0, atol=1e-15)
    np.testing.assert_array_equal(crossing_trace.t, crossing_trajectory.t)
    assert crossing_trace.meta["seed"] == clean_cfg.rng_seed
    assert crossing_trace.meta["label"] == "crossing"


def test_same_seed_same_trace(geometry, crossing_trajectory, noisy_cfg):
    a = synthesize_trace(geometry, crossing_trajectory, noisy_cfg)
    b = synthesize_trace(geometry, crossing_trajectory, noisy_cfg)
    assert a.equals(b)


def test_different_seed_different_noise(geometry, crossing_trajectory, noisy_cfg):
    a = synthesize_trace(geometry, crossing_trajectory, noisy_cfg)
    b = synthesize_trace(geometry, crossing_trajectory, SynthConfig(rng_seed=8))
    assert not np.array_equal(a.samples, b.samples)


def test_common_phase_cancels_in_ratio(geometry, crossing_trajectory, crossing_trace):
    drifting = synthesize_trace(
        geometry, crossing_trajectory, SynthConfig(noise_snr_db=None, phase_drift_per_frame_rad=0.2)
    )
    np.testing.assert_allclose(
        csi_ratio(drifting).values, csi_ratio(crossing_trace).values, rtol=1e-10
    )


def test_drift_steps_are_bounded():
    cfg = SynthConfig(noise_snr_db=None, phase_drift_per_frame_rad=0.05, rng_seed=1)
    imp = draw_impairments(2000, 3, cfg, 1.0)
    assert imp.common_phase[0] == 0.0
    assert np.max(np.abs(np.diff(imp.common_phase))) <= 0.05 + 1e-12


def test_noise_toggle_keeps_phase_stream():
    noisy = draw_impairments(500, 3, SynthConfig(rng_seed=5), 1.0)
    quiet = draw_impairments(500, 3, SynthConfig(rng_seed=5, noise_snr_db=None), 1.0)
    np.testing.assert_array_equal(noisy.common_phase, quiet.common_phase)
    assert not np.any(quiet.awgn)


def test_noise_power_matches_snr(geometry):
    traj = make_parked((1.0, 30.0), 20.0, 1000.0)
    cfg = SynthConfig(noise_snr_db=20.0, phase_drift_per_frame_rad=0.0, rng_seed=11)
    trace = synthesize_trace(geometry, traj, cfg)
    residual = trace.samples - trace.samples.mean(axis=0)
    assert np.mean(np.abs(residual) ** 2) == pytest.approx(0.01, rel=0.05)


def test_agc_model():
    assert agc_model([1.0, 1j, -1.0]) == 0.0
    assert agc_model([0.1, 0.1, 0.1]) == pytest.approx(20.0)
    assert agc_model([0.0, 0.0]) == AGC_CEILING


def test_agc_series_shape(crossing_trace):
    assert agc_series(crossing_trace.samples).shape == (len(crossing_trace),)
    np.testing.assert_allclose(crossing_trace.agc, agc_series(crossing_trace.samples))


def test_ratio_drift_cancellation_across_seeds(geometry):
    from zonecross.synth.trajectories import make_walkby

    traj = make_walkby(geometry, 0.5, 0.8, 0.1, 1000.0)
    for seed in range(100):
        drift_on = synthesize_trace(
            geometry, traj, SynthConfig(noise_snr_db=None, phase_drift_per_frame_rad=0.2, rng_seed=seed)
        )
        drift_off = synthesize_trace(
            geometry, traj, SynthConfig(noise_snr_db=None, phase_drift_per_frame_rad=0.0, rng_seed=seed)
        )
        error = np.abs(csi_ratio(drift_on).values - csi_ratio(drift_off).values)
        assert error.max() <= 1e-9
