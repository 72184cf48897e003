import json
from collections import Counter

import pytest

from zonecross.core.errors import InvalidArgumentError, PipelineError
from zonecross.metrics.evaluator import (
    EvalReport,
    SuiteConfig,
    plan_trials,
    run_eval,
    run_trial,
    score_trials,
)
from zonecross.storage.tracefile import read_jsonl


@pytest.fixture
def tiny_suite() -> SuiteConfig:
    return SuiteConfig(
        n_crossing=2,
        n_turnback=1,
        n_walkby=1,
        los_distances_m=[2.0],
        snr_db=None,
        phase_drift_per_frame_rad=0.0,
    )


def _record(index, kind, predicted, **extra):
    record = {
        "trial": index,
        "kind": kind,
        "truth": kind == "crossing",
        "predicted": predicted,
        "error": None,
        "los_distance_m": 1.0,
        "offset_frac": None,
        "angle_deg": None,
        "body_len_m": 0.4,
        "snr_db": 20.0,
    }
    record.update(extra)
    return record


def test_default_plan_counts():
    specs = plan_trials(SuiteConfig())
    assert len(specs) == 816
    assert Counter(s.kind for s in specs) == {"crossing": 409, "turnback": 209, "walkby": 198}
    assert [s.index for s in specs] == list(range(816))
    assert Counter(s.los_distance_m for s in specs if s.kind == "crossing") == {
        1.0: 103, 1.5: 102, 2.0: 102, 2.5: 102
    }


def test_plan_is_deterministic_and_seeded_per_trial():
    a = plan_trials(SuiteConfig())
    b = plan_trials(SuiteConfig())
    assert a == b
    assert len({s.seed for s in a}) == len(a)
    other = plan_trials(SuiteConfig(master_seed=1))
    assert [s.seed for s in other] != [s.seed for s in a]


def test_crossing_grid_cycles_offsets_then_angles():
    specs = [s for s in plan_trials(SuiteConfig()) if s.kind == "crossing"]
    assert [s.offset_frac for s in specs[:5]] == [-0.2, -0.1, 0.0, 0.1, 0.2]
    assert {s.angle_deg for s in specs[:5]} == {-12.0}
    assert specs[5].angle_deg == -8.0


def test_turnback_hesitations_alternate_per_grid_pass():
    specs = [s for s in plan_trials(SuiteConfig()) if s.kind == "turnback"]
    assert {s.hesitations for s in specs[:15]} == {0}
    assert {s.hesitations for s in specs[15:30]} == {1}
    assert specs[30].hesitations == 0


def test_walkby_sides_alternate():
    specs = [s for s in plan_trials(SuiteConfig()) if s.kind == "walkby"]
    assert {s.side for s in specs[:16]} == {1}
    assert {s.side for s in specs[16:32]} == {-1}


def test_zero_trials_rejected():
    with pytest.raises(InvalidArgumentError):
        plan_trials(SuiteConfig(n_crossing=0, n_turnback=0, n_walkby=0))


@pytest.mark.parametrize(
    "raw",
    [
        {"los_distances_m": []},
        {"crossing_offsets_frac": [1.5]},
        {"n_crossing": -1},
        {"detector": {"ma_window": 0}},
        {"turnback_hesitations": []},
        {"turnback_hesitations": [-1]},
        {"detector": {"retrace_max": -0.1}},
    ],
)
def test_invalid_suite_mapping(raw):
    with pytest.raises(InvalidArgumentError):
        SuiteConfig.from_mapping(raw)


def test_scalar_snr_becomes_list():
    assert SuiteConfig(snr_db=30).snr_db == [30.0]
    assert SuiteConfig(snr_db=None).snr_db == [None]


def test_score_trials_confusion():
    trials = [
        _record(0, "crossing", True),
        _record(1, "crossing", False),
        _record(2, "turnback", True),
        _record(3, "walkby", False, los_distance_m=2.0),
        _record(4, "walkby", False, los_distance_m=2.0, snr_db=None),
    ]
    report = score_trials(trials, SuiteConfig())
    assert report.confusion == [[2, 1], [1, 1]]
    assert report.accuracy == pytest.approx(3 / 5)
    assert report.false_alarm_rate == pytest.approx(1 / 3)
    assert report.precision == pytest.approx(0.5)
    assert report.recall == pytest.approx(0.5)
    assert not report.target_met
    by_distance = {row["value"]: row for row in report.per_condition["los_distance_m"]}
    assert by_distance[1.0]["n"] == 3
    assert by_distance[2.0]["accuracy"] == 1.0
    assert {row["value"] for row in report.per_condition["snr_db"]} == {"20", "noiseless"}
    assert report.per_kind["turnback"] == {"n": 1, "predicted_crossing": 1, "errors": 0}


def test_failed_trial_is_logged_not_raised(mocker, tiny_suite):
    mocker.patch(
        "zonecross.metrics.evaluator.detect",
        side_effect=PipelineError("boom", trace_id="trial-00000"),
    )
    record = run_trial(plan_trials(tiny_suite)[0], tiny_suite)
    assert record["predicted"] is False
    assert "boom" in record["error"]


def test_report_round_trip_and_trial_log(tmp_path, tiny_suite):
    report = run_eval(tiny_suite, with_frontier=False)
    assert report.n_trials == 4
    report.save(tmp_path / "report.json", tmp_path / "trials.jsonl")

    trials = read_jsonl(tmp_path / "trials.jsonl")
    assert [t["trial"] for t in trials] == [0, 1, 2, 3]
    tp = sum(t["truth"] and t["predicted"] for t in trials)
    fp = sum(not t["truth"] and t["predicted"] for t in trials)
    assert (tp, fp) == (report.true_positives, report.false_positives)

    data = json.loads((tmp_path / "report.json").read_text())
    assert EvalReport.from_dict(data).to_json() == report.to_json()


def test_evaluation_is_deterministic(tiny_suite):
    first = run_eval(tiny_suite, with_frontier=False)
    second = run_eval(tiny_suite, with_frontier=False)
    assert first.to_json() == second.to_json()
    assert first.trials == second.trials


def test_frontier_attached_when_targets_missed(mocker, tiny_suite):
    frontier = mocker.patch(
        "zonecross.metrics.benchmarks.BenchmarkSuite.run_frontier", return_value=[{"snr_db": 20.0}]
    )
    suite = tiny_suite.model_copy(update={"accuracy_target": 1.0, "false_alarm_target": 0.0,
                                          "n_crossing": 1, "n_turnback": 0, "n_walkby": 0})
    mocker.patch(
        "zonecross.metrics.evaluator.run_trial",
        return_value={**_record(0, "crossing", False)},
    )
    report = run_eval(suite)
    frontier.assert_called_once()
    assert report.frontier == [{"snr_db": 20.0}]
