"""
End-to-end detection on synthesized traces.
"""
import math

import numpy as np
import pytest

from zonecross.core.errors import InvalidArgumentError, PipelineError
from zonecross.core.geometry import Geometry, path_sum
from zonecross.detect.detector import DetectorParams, detect
from zonecross.detect.pattern import BehaviorLabel
from zonecross.dsp.segmentation import segment_activity
from zonecross.synth.config import SynthConfig
from zonecross.synth.generator import synthesize_trace
from zonecross.synth.trajectories import make_crossing, make_turnback, make_walkby

FS = 1000.0


def _labels(trace, params=DetectorParams()):
    return [d.label for d in detect(trace, params)]


def test_parked_target_yields_nothing(parked_trace):
    assert detect(parked_trace) == []


def test_crossing_detected_once(crossing_trace):
    detections = detect(crossing_trace)
    assert [d.label for d in detections] == [BehaviorLabel.CROSSING]
    d = detections[0]
    assert d.binary
    assert d.consistent is not None
    assert len(d.pattern.maxima) == 1


def _path_sum_minimum(geometry, trajectory):
    return int(np.argmin(path_sum(geometry, trajectory.centers)))


def test_crossing_peak_at_path_sum_minimum(crossing_trace, crossing_trajectory, geometry):
    d = detect(crossing_trace)[0]
    peak_frame = d.pattern.extremum_frames(d.pattern.maxima)[0]
    nearest = _path_sum_minimum(geometry, crossing_trajectory)
    assert abs(peak_frame - nearest) <= 25
    assert d.segment.contains(nearest)


def test_noisy_crossing_is_one_segment_around_path_sum_minimum():
    geo = Geometry.doorway(1.0)
    trajectory = make_crossing(geo, 0.0, 0.0, 0.8, 2.0, FS, lead_in_s=1.0)
    trace = synthesize_trace(geo, trajectory, SynthConfig(noise_snr_db=20.0, rng_seed=11))
    nearest = _path_sum_minimum(geo, trajectory)

    segments = segment_activity(trace.agc, FS)
    assert len(segments) == 1
    assert segments[0].contains(nearest)

    crossings = [d for d in detect(trace) if d.label is BehaviorLabel.CROSSING]
    assert len(crossings) == 1
    peak_frame = crossings[0].pattern.extremum_frames(crossings[0].pattern.maxima)[0]
    assert abs(peak_frame - nearest) <= 100


def test_turnback_is_a_single_turnback(turnback_trace):
    detections = detect(turnback_trace)
    assert [d.label for d in detections] == [BehaviorLabel.TURN_BACK]
    assert len(detections[0].pattern.maxima) == 1
    assert detections[0].pattern.retrace < DetectorParams().retrace_max


@pytest.mark.parametrize("nearest", [0.2, 0.4])
def test_pure_turnbacks_are_rejected(geometry, clean_cfg, nearest):
    trajectory = make_turnback(geometry, nearest, 0.8, 2.0, FS, approach_offset=-0.2, lead_in_s=1.0)
    labels = _labels(synthesize_trace(geometry, trajectory, clean_cfg))
    assert labels
    assert BehaviorLabel.CROSSING not in labels


def test_hesitating_turnback_not_a_crossing(geometry, clean_cfg):
    trajectory = make_turnback(geometry, 0.3, 0.8, 2.0, FS, lead_in_s=1.0, hesitations=1)
    labels = _labels(synthesize_trace(geometry, trajectory, clean_cfg))
    assert labels
    assert BehaviorLabel.CROSSING not in labels


def test_crossing_crest_does_not_retrace(crossing_trace):
    pattern = detect(crossing_trace)[0].pattern
    assert pattern.retrace is not None
    assert pattern.retrace > DetectorParams().retrace_max


@pytest.mark.parametrize(
    "los, offset_frac, angle_deg", [(1.5, -0.2, 8.0), (2.0, -0.2, 12.0), (1.0, 0.2, -12.0)]
)
def test_offset_angled_crossings(clean_cfg, los, offset_frac, angle_deg):
    geo = Geometry.doorway(los)
    trajectory = make_crossing(
        geo, offset_frac * los / 2.0, math.radians(angle_deg), 0.8, 2.0, FS, lead_in_s=1.0
    )
    assert BehaviorLabel.CROSSING in _labels(synthesize_trace(geo, trajectory, clean_cfg))


def test_walkby_not_a_crossing(geometry, clean_cfg):
    trajectory = make_walkby(geometry, 1.0, 0.8, 2.0, FS, lead_in_s=1.0)
    labels = _labels(synthesize_trace(geometry, trajectory, clean_cfg))
    assert BehaviorLabel.CROSSING not in labels


def test_invariant_to_common_gain(crossing_trace):
    scaled = crossing_trace.with_samples(crossing_trace.samples * (0.3 * np.exp(1j * 1.1)))
    scaled.agc = crossing_trace.agc - 20.0 * math.log10(0.3)
    assert _labels(scaled) == _labels(crossing_trace)


def test_invariant_to_common_phase_drift(geometry, crossing_trajectory, crossing_trace):
    drifting = synthesize_trace(
        geometry, crossing_trajectory, SynthConfig(noise_snr_db=None, phase_drift_per_frame_rad=0.2)
    )
    assert _labels(drifting) == _labels(crossing_trace)


def test_time_reversed_crossing_is_still_a_crossing(geometry, crossing_trajectory, clean_cfg):
    reversed_walk = crossing_trajectory.reversed().with_lead_in(1.0)
    assert _labels(synthesize_trace(geometry, reversed_walk, clean_cfg)) == [BehaviorLabel.CROSSING]


def test_noisy_crossing_at_short_range():
    geo = Geometry.doorway(1.0)
    trajectory = make_crossing(geo, 0.0, 0.0, 0.8, 2.0, FS, lead_in_s=1.0)
    trace = synthesize_trace(geo, trajectory, SynthConfig(noise_snr_db=30.0, rng_seed=21))
    assert BehaviorLabel.CROSSING in _labels(trace)


def test_short_trace_is_pipeline_error(crossing_trace):
    short = crossing_trace.with_samples(crossing_trace.samples)
    short.t, short.agc, short.samples = short.t[:100], short.agc[:100], short.samples[:100]
    with pytest.raises(PipelineError):
        detect(short)


def test_dead_denominator_is_pipeline_error(crossing_trace):
    samples = crossing_trace.samples.copy()
    samples[:, 1] = 0.0
    with pytest.raises(PipelineError) as info:
        detect(crossing_trace.with_samples(samples))
    assert info.value.trace_id == "crossing"
    assert info.value.frame_index == 0


def test_invalid_trace_rejected(crossing_trace):
    samples = crossing_trace.samples.copy()
    samples[10, 0] = np.nan
    with pytest.raises(InvalidArgumentError):
        detect(crossing_trace.with_samples(samples))


def test_detection_record(crossing_trace):
    record = detect(crossing_trace)[0].to_record("crossing")
    assert record["label"] == "Crossing"
    assert record["crossing"] is True
    assert record["start_idx"] < record["end_idx"]
