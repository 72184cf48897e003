import pytest

from zonecross.core.errors import InvalidArgumentError
from zonecross.detect.detector import detect
from zonecross.metrics.evaluator import EvalReport
from zonecross.storage.export import export_plot_data, load_report


def _rows(path):
    lines = path.read_text().splitlines()
    return lines[0], [line.split(" ") for line in lines[1:]]


def test_agc_series(tmp_path, crossing_trace):
    header, rows = _rows(export_plot_data(crossing_trace, "agc", tmp_path / "agc.dat"))
    assert header == "# t agc"
    assert len(rows) == len(crossing_trace)
    assert float(rows[0][1]) == pytest.approx(crossing_trace.agc[0])


def test_phase_sum_series(tmp_path, crossing_trace):
    pattern = detect(crossing_trace)[0].pattern
    header, rows = _rows(export_plot_data(crossing_trace, "phase_sum", tmp_path / "ps.dat"))
    assert header == "# frame phase_sum"
    assert len(rows) == len(pattern.phase_sum)
    assert int(rows[0][0]) == pattern.frame_index[0]


def test_extrema_series(tmp_path, crossing_trace):
    pattern = detect(crossing_trace)[0].pattern
    header, rows = _rows(export_plot_data(crossing_trace, "extrema", tmp_path / "ext.dat"))
    assert header == "# type index frame phase_sum"
    assert len(rows) == len(pattern.maxima) + len(pattern.minima)
    assert {row[0] for row in rows} <= {"max", "min"}


def test_missing_segment(tmp_path, crossing_trace):
    with pytest.raises(InvalidArgumentError):
        export_plot_data(crossing_trace, "phase_sum", tmp_path / "ps.dat", segment=5)


def test_unknown_series(tmp_path, crossing_trace):
    with pytest.raises(InvalidArgumentError):
        export_plot_data(crossing_trace, "spectrum", tmp_path / "x.dat")


def test_accuracy_by_condition(tmp_path):
    report = EvalReport(
        n_trials=4,
        true_positives=2,
        false_positives=0,
        true_negatives=1,
        false_negatives=1,
        accuracy=0.75,
        precision=1.0,
        recall=2 / 3,
        false_alarm_rate=0.0,
        per_kind={},
        per_condition={
            "los_distance_m": [
                {"value": 1.0, "n": 2, "accuracy": 1.0, "false_alarm_rate": 0.0},
                {"value": 2.0, "n": 2, "accuracy": 0.5, "false_alarm_rate": 0.0},
            ]
        },
        targets={"accuracy": 0.95, "false_alarm_rate": 0.05},
        target_met=False,
        suite={},
    )
    report.save(tmp_path / "report.json")
    loaded = load_report(tmp_path / "report.json")
    header, rows = _rows(export_plot_data(loaded, "accuracy_by_condition", tmp_path / "acc.dat"))
    assert header == "# los_distance_m n accuracy false_alarm_rate"
    assert rows == [["1", "2", "1", "0"], ["2", "2", "0.5", "0"]]
    with pytest.raises(InvalidArgumentError):
        export_plot_data(loaded, "accuracy_by_condition", tmp_path / "acc.dat", by="angle_deg")


def test_report_series_needs_report(tmp_path, crossing_trace):
    with pytest.raises(InvalidArgumentError):
        export_plot_data(crossing_trace, "accuracy_by_condition", tmp_path / "acc.dat")
