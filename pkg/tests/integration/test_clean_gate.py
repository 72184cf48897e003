"""
Noiseless, drift-free suites must be classified without a single error.
"""
from zonecross.metrics.benchmarks import BenchmarkSuite
from zonecross.metrics.evaluator import SuiteConfig, SuiteEvaluator


def test_clean_gate_is_perfect():
    report = BenchmarkSuite(SuiteEvaluator()).run_clean_gate(SuiteConfig(), per_class=35)
    assert report.n_trials == 105
    assert report.per_kind["crossing"]["predicted_crossing"] == 35
    assert report.per_kind["turnback"]["predicted_crossing"] == 0
    assert report.per_kind["walkby"]["predicted_crossing"] == 0
    assert report.accuracy == 1.0
    assert report.false_alarm_rate == 0.0
    assert all(t["error"] is None for t in report.trials)
    assert {t["hesitations"] for t in report.trials if t["kind"] == "turnback"} == {0, 1}


def test_los_sweep_rows():
    suite = SuiteConfig(snr_db=None, phase_drift_per_frame_rad=0.0)
    result = BenchmarkSuite().run_los_sweep(suite, distances=[1.0, 2.0], trials_per_distance=3)
    assert [row["los_distance_m"] for row in result["rows"]] == [1.0, 2.0]
    assert all(row["n"] == 3 for row in result["rows"])
    assert isinstance(result["non_increasing"], bool)
