"""
Evaluation harness: synthesize a grid of walking trials, detect, and score.
"""
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator
from rich.console import Console
from rich.table import Table
from sklearn.metrics import confusion_matrix
from tqdm import tqdm

from ..core.errors import InvalidArgumentError, TraceParseError, ZoneCrossError
from ..core.geometry import Geometry
from ..detect.detector import DetectorParams, detect
from ..detect.pattern import BehaviorLabel
from ..dsp.segmentation import SegmentParams
from ..storage.tracefile import write_jsonl
from ..synth.config import SynthConfig
from ..synth.generator import synthesize_trace
from ..synth.trajectories import make_crossing, make_turnback, make_walkby

logger = logging.getLogger(__name__)

# Accuracy and false-alarm rate measured on real WiFi hardware with the same
# class mix; the synthetic suite is compared against them qualitatively.
REFERENCE_HARDWARE = {"accuracy": 0.957, "false_alarm_rate": 0.049}

KINDS = ("crossing", "turnback", "walkby")
CONDITION_AXES = ("los_distance_m", "offset_frac", "angle_deg", "body_len_m", "snr_db")


class DetectorSettings(BaseModel):
    """Detector overrides accepted in suite files."""

    ma_window: int = Field(50, ge=1)
    gate_rel: float = Field(0.1, ge=0)
    prominence_rel: float = Field(0.15, ge=0)
    context_frames: int = Field(250, ge=0)
    retrace_max: float = Field(0.5, ge=0)
    baseline_frames: int = Field(500, ge=2)
    k_sigma: float = Field(4.0, ge=0)
    floor_db: float = Field(0.5, ge=0)
    min_segment_frames: int = Field(300, ge=2)
    merge_gap_frames: int = Field(200, ge=0)

    def to_params(self, **overrides) -> DetectorParams:
        values = self.model_dump()
        values.update(overrides)
        return DetectorParams(
            ma_window=values["ma_window"],
            gate_rel=values["gate_rel"],
            prominence_rel=values["prominence_rel"],
            context_frames=values["context_frames"],
            retrace_max=values["retrace_max"],
            segment=SegmentParams(
                baseline_frames=values["baseline_frames"],
                k_sigma=values["k_sigma"],
                floor_db=values["floor_db"],
                min_segment_frames=values["min_segment_frames"],
                merge_gap_frames=values["merge_gap_frames"],
            ),
        )


class FrontierSettings(BaseModel):
    """Prominence × SNR grid evaluated when the suite misses its targets."""

    enabled: bool = True
    prominence_rel: List[float] = [0.1, 0.15, 0.25]
    snr_db: List[float] = [20.0, 30.0, 40.0]
    trials_per_class: int = Field(15, ge=1)


class SuiteConfig(BaseModel):
    """
    Trial grid, channel settings and targets of one evaluation run.

    Crossings cycle through position offsets (fastest) and angles; turn-backs
    through offsets and nearest approaches; walk-bys through standoffs and
    sides. The LoS distance rotates with the trial index within each class.
    """

    master_seed: int = 816
    n_crossing: int = Field(409, ge=0)
    n_turnback: int = Field(209, ge=0)
    n_walkby: int = Field(198, ge=0)

    los_distances_m: List[float] = [1.0, 1.5, 2.0, 2.5]
    crossing_offsets_frac: List[float] = [-0.2, -0.1, 0.0, 0.1, 0.2]
    crossing_angles_deg: List[float] = [-12.0, -8.0, -4.0, 0.0, 4.0, 8.0, 12.0]
    turnback_nearest_m: List[float] = [0.2, 0.3, 0.4]
    turnback_hesitations: List[int] = [0, 1]
    turnback_retreat_m: float = Field(0.8, gt=0)
    walkby_standoffs_m: List[float] = [1.0, 1.25, 1.5, 2.0]
    body_len_m: List[float] = [0.4]
    snr_db: List[Optional[float]] = [20.0]
    phase_drift_per_frame_rad: float = Field(0.2, ge=0)

    speed_mps: float = Field(0.8, gt=0)
    approach_dist_m: float = Field(2.0, gt=0)
    lead_in_s: float = Field(1.0, ge=0)
    sample_rate_hz: float = Field(1000.0, gt=0)
    carrier_hz: float = Field(5.24e9, gt=0)
    num_antennas: int = Field(3, ge=2)
    e0: float = Field(0.2, gt=0)
    n_integration_points: int = Field(64, ge=2)

    detector: DetectorSettings = DetectorSettings()
    frontier: FrontierSettings = FrontierSettings()
    accuracy_target: float = Field(0.95, ge=0, le=1)
    false_alarm_target: float = Field(0.05, ge=0, le=1)
    workers: int = Field(1, ge=1)

    @field_validator("snr_db", mode="before")
    @classmethod
    def _listify_snr(cls, value):
        if value is None or isinstance(value, (int, float)):
            return [value]
        return value

    @field_validator(
        "los_distances_m",
        "crossing_offsets_frac",
        "crossing_angles_deg",
        "turnback_nearest_m",
        "turnback_hesitations",
        "walkby_standoffs_m",
        "body_len_m",
        "snr_db",
    )
    @classmethod
    def _non_empty(cls, value):
        if not value:
            raise ValueError("grid axis must not be empty")
        return value

    @field_validator("turnback_hesitations")
    @classmethod
    def _non_negative(cls, value):
        if any(v < 0 for v in value):
            raise ValueError("turnback_hesitations must be non-negative")
        return value

    @field_validator("crossing_offsets_frac")
    @classmethod
    def _inside_doorway(cls, value):
        if any(not -1.0 < v < 1.0 for v in value):
            raise ValueError("crossing offsets are fractions of the half LoS distance, within (-1, 1)")
        return value

    @property
    def n_trials(self) -> int:
        return self.n_crossing + self.n_turnback + self.n_walkby

    @classmethod
    def from_file(cls, path: Union[str, Path], defaults: Optional[Dict[str, Any]] = None) -> "SuiteConfig":
        """
        Load a suite from a YAML or JSON file.

        Args:
            path (Union[str, Path]): Suite file
            defaults (Optional[Dict[str, Any]]): Values used for keys the file leaves out

        Raises:
            TraceParseError: If the file is not valid YAML/JSON
            InvalidArgumentError: If the values fail validation
        """
        try:
            with open(path, "r", encoding="utf-8") as f:
                raw = yaml.safe_load(f) or {}
        except yaml.YAMLError as exc:
            raise TraceParseError(f"Suite file is not valid YAML/JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise TraceParseError("Suite file must contain a mapping")
        return cls.from_mapping({**(defaults or {}), **raw})

    @classmethod
    def from_mapping(cls, raw: Dict[str, Any]) -> "SuiteConfig":
        try:
            return cls.model_validate(raw)
        except ValidationError as exc:
            raise InvalidArgumentError(f"Invalid suite configuration: {exc}") from exc


@dataclass(frozen=True)
class TrialSpec:
    """One planned trial; everything needed to run it in a worker process."""

    index: int
    kind: str
    seed: int
    los_distance_m: float
    body_len_m: float
    snr_db: Optional[float]
    offset_frac: Optional[float] = None
    angle_deg: Optional[float] = None
    nearest_m: Optional[float] = None
    standoff_m: Optional[float] = None
    side: Optional[int] = None
    hesitations: int = 0

    @property
    def truth(self) -> bool:
        return self.kind == "crossing"


def _trial_seed(master_seed: int, index: int) -> int:
    return int(np.random.SeedSequence([master_seed, index]).generate_state(1)[0])


def _pick(values: Sequence, index: int):
    return values[index % len(values)]


def plan_trials(suite: SuiteConfig) -> List[TrialSpec]:
    """
    Deterministic trial grid for a suite.

    Raises:
        InvalidArgumentError: If the suite has zero trials
    """
    if suite.n_trials == 0:
        raise InvalidArgumentError("Suite has zero trials")

    n_dist = len(suite.los_distances_m)
    n_body = len(suite.body_len_m)
    specs: List[TrialSpec] = []

    def common(i: int) -> Dict[str, Any]:
        index = len(specs)
        return {
            "index": index,
            "seed": _trial_seed(suite.master_seed, index),
            "los_distance_m": float(_pick(suite.los_distances_m, i)),
            "body_len_m": float(_pick(suite.body_len_m, i // n_dist)),
            "snr_db": _pick(suite.snr_db, i // (n_dist * n_body)),
        }

    n_off = len(suite.crossing_offsets_frac)
    n_near = len(suite.turnback_nearest_m)
    for i in range(suite.n_crossing):
        specs.append(
            TrialSpec(
                kind="crossing",
                offset_frac=float(_pick(suite.crossing_offsets_frac, i)),
                angle_deg=float(_pick(suite.crossing_angles_deg, i // n_off)),
                **common(i),
            )
        )
    for i in range(suite.n_turnback):
        specs.append(
            TrialSpec(
                kind="turnback",
                offset_frac=float(_pick(suite.crossing_offsets_frac, i)),
                nearest_m=float(_pick(suite.turnback_nearest_m, i // n_off)),
                hesitations=int(_pick(suite.turnback_hesitations, i // (n_off * n_near))),
                **common(i),
            )
        )
    n_stand = len(suite.walkby_standoffs_m)
    for i in range(suite.n_walkby):
        specs.append(
            TrialSpec(
                kind="walkby",
                standoff_m=float(_pick(suite.walkby_standoffs_m, i // n_dist)),
                side=1 if (i // (n_dist * n_stand)) % 2 == 0 else -1,
                **common(i),
            )
        )
    return specs


def build_trial_trajectory(spec: TrialSpec, suite: SuiteConfig, geometry: Geometry):
    """Trajectory of one planned trial, lead-in included."""
    half = geometry.los_distance / 2.0
    motion = {
        "speed": suite.speed_mps,
        "approach_dist": suite.approach_dist_m,
        "sample_rate_hz": suite.sample_rate_hz,
        "body_len_m": spec.body_len_m,
        "lead_in_s": suite.lead_in_s,
    }
    if spec.kind == "crossing":
        return make_crossing(
            geometry, spec.offset_frac * half, math.radians(spec.angle_deg), **motion
        )
    if spec.kind == "turnback":
        return make_turnback(
            geometry,
            spec.nearest_m,
            approach_offset=spec.offset_frac * half,
            hesitations=spec.hesitations,
            hesitation_retreat_m=suite.turnback_retreat_m,
            **motion,
        )
    if spec.kind == "walkby":
        return make_walkby(geometry, spec.standoff_m, side=spec.side, **motion)
    raise InvalidArgumentError(f"Unknown trial kind {spec.kind!r}")


def run_trial(spec: TrialSpec, suite: SuiteConfig) -> Dict[str, Any]:
    """
    Synthesize and detect one trial.

    Returns:
        Dict[str, Any]: Trial-log record
    """
    record: Dict[str, Any] = {
        "trial": spec.index,
        "kind": spec.kind,
        "truth": spec.truth,
        "seed": spec.seed,
        "los_distance_m": spec.los_distance_m,
        "offset_frac": spec.offset_frac,
        "angle_deg": spec.angle_deg,
        "nearest_m": spec.nearest_m,
        "standoff_m": spec.standoff_m,
        "side": spec.side,
        "hesitations": spec.hesitations,
        "body_len_m": spec.body_len_m,
        "snr_db": spec.snr_db,
        "labels": [],
        "predicted": False,
        "error": None,
    }
    try:
        geometry = Geometry.doorway(spec.los_distance_m, suite.carrier_hz, suite.num_antennas)
        trajectory = build_trial_trajectory(spec, suite, geometry)
        cfg = SynthConfig(
            e0=suite.e0,
            n_integration_points=suite.n_integration_points,
            noise_snr_db=spec.snr_db,
            phase_drift_per_frame_rad=suite.phase_drift_per_frame_rad,
            rng_seed=spec.seed,
        )
        trace_id = f"trial-{spec.index:05d}"
        trace = synthesize_trace(
            geometry, trajectory, cfg, meta={"label": spec.kind, "trace_id": trace_id}
        )
        detections = detect(trace, suite.detector.to_params())
    except ZoneCrossError as exc:
        logger.warning("Trial %d (%s) failed: %s", spec.index, spec.kind, exc)
        record["error"] = str(exc)
        return record

    record["labels"] = [d.label.value for d in detections]
    record["predicted"] = any(d.label is BehaviorLabel.CROSSING for d in detections)
    return record


def _run_trial_star(args):
    return run_trial(*args)


@dataclass
class EvalReport:
    """
    Scored outcome of a suite.

    ``trials`` holds the per-trial log; it is written separately from the
    report body.
    """

    n_trials: int
    true_positives: int
    false_positives: int
    true_negatives: int
    false_negatives: int
    accuracy: float
    precision: float
    recall: float
    false_alarm_rate: float
    per_kind: Dict[str, Dict[str, int]]
    per_condition: Dict[str, List[Dict[str, Any]]]
    targets: Dict[str, float]
    target_met: bool
    suite: Dict[str, Any]
    reference_hardware: Dict[str, float] = field(default_factory=lambda: dict(REFERENCE_HARDWARE))
    frontier: Optional[List[Dict[str, Any]]] = None
    trials: List[Dict[str, Any]] = field(default_factory=list, repr=False)

    @property
    def confusion(self) -> List[List[int]]:
        """[[TN, FP], [FN, TP]] with crossing as the positive class."""
        return [
            [self.true_negatives, self.false_positives],
            [self.false_negatives, self.true_positives],
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_trials": self.n_trials,
            "confusion_matrix": {
                "true_positives": self.true_positives,
                "false_positives": self.false_positives,
                "true_negatives": self.true_negatives,
                "false_negatives": self.false_negatives,
            },
            "performance_metrics": {
                "accuracy": self.accuracy,
                "precision": self.precision,
                "recall": self.recall,
                "false_alarm_rate": self.false_alarm_rate,
            },
            "per_kind": self.per_kind,
            "per_condition": self.per_condition,
            "targets": self.targets,
            "target_met": self.target_met,
            "reference_hardware": self.reference_hardware,
            "frontier": self.frontier,
            "suite": self.suite,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EvalReport":
        cm = data["confusion_matrix"]
        perf = data["performance_metrics"]
        return cls(
            n_trials=data["n_trials"],
            true_positives=cm["true_positives"],
            false_positives=cm["false_positives"],
            true_negatives=cm["true_negatives"],
            false_negatives=cm["false_negatives"],
            accuracy=perf["accuracy"],
            precision=perf["precision"],
            recall=perf["recall"],
            false_alarm_rate=perf["false_alarm_rate"],
            per_kind=data["per_kind"],
            per_condition=data["per_condition"],
            targets=data["targets"],
            target_met=data["target_met"],
            suite=data["suite"],
            reference_hardware=data.get("reference_hardware", dict(REFERENCE_HARDWARE)),
            frontier=data.get("frontier"),
        )

    def save(self, report_file: Union[str, Path], trial_log_file: Optional[Union[str, Path]] = None):
        """Write the report JSON and, optionally, the per-trial JSON Lines log."""
        with open(report_file, "w", encoding="utf-8") as f:
            f.write(self.to_json())
        if trial_log_file is not None:
            write_jsonl(self.trials, trial_log_file)


def _ratio(num: int, den: int) -> float:
    return num / den if den else 0.0


def _condition_tables(trials: List[Dict[str, Any]]) -> Dict[str, List[Dict[str, Any]]]:
    frame = pd.DataFrame(trials)
    frame["truth"] = frame["truth"].astype(bool)
    frame["predicted"] = frame["predicted"].astype(bool)
    frame["correct"] = frame["truth"] == frame["predicted"]
    frame["false_alarm"] = frame["predicted"] & ~frame["truth"]
    frame["snr_db"] = frame["snr_db"].map(lambda v: "noiseless" if pd.isna(v) else f"{float(v):g}")
    tables: Dict[str, List[Dict[str, Any]]] = {}
    for axis in CONDITION_AXES:
        column = frame[axis]
        subset = frame[column.notna()]
        if subset.empty:
            tables[axis] = []
            continue
        grouped = subset.groupby(axis, sort=True).agg(
            n=("correct", "size"),
            correct=("correct", "sum"),
            positives=("truth", "sum"),
            false_alarms=("false_alarm", "sum"),
        )
        rows = []
        for value, row in grouped.iterrows():
            negatives = int(row["n"]) - int(row["positives"])
            rows.append(
                {
                    "value": value if isinstance(value, str) else float(value),
                    "n": int(row["n"]),
                    "accuracy": _ratio(int(row["correct"]), int(row["n"])),
                    "false_alarm_rate": _ratio(int(row["false_alarms"]), negatives),
                }
            )
        tables[axis] = rows
    return tables


def score_trials(trials: List[Dict[str, Any]], suite: SuiteConfig) -> EvalReport:
    """Aggregate trial records into an EvalReport."""
    truth = [bool(t["truth"]) for t in trials]
    predicted = [bool(t["predicted"]) for t in trials]
    (tn, fp), (fn, tp) = confusion_matrix(truth, predicted, labels=[False, True]).tolist()

    per_kind: Dict[str, Dict[str, int]] = {}
    for kind in KINDS:
        rows = [t for t in trials if t["kind"] == kind]
        if rows:
            per_kind[kind] = {
                "n": len(rows),
                "predicted_crossing": sum(bool(t["predicted"]) for t in rows),
                "errors": sum(t["error"] is not None for t in rows),
            }

    accuracy = _ratio(tp + tn, len(trials))
    false_alarm_rate = _ratio(fp, fp + tn)
    targets = {"accuracy": suite.accuracy_target, "false_alarm_rate": suite.false_alarm_target}
    return EvalReport(
        n_trials=len(trials),
        true_positives=tp,
        false_positives=fp,
        true_negatives=tn,
        false_negatives=fn,
        accuracy=accuracy,
        precision=_ratio(tp, tp + fp),
        recall=_ratio(tp, tp + fn),
        false_alarm_rate=false_alarm_rate,
        per_kind=per_kind,
        per_condition=_condition_tables(trials),
        targets=targets,
        target_met=accuracy >= suite.accuracy_target and false_alarm_rate <= suite.false_alarm_target,
        suite=suite.model_dump(mode="json"),
        trials=trials,
    )


class SuiteEvaluator:
    """
    Runs evaluation suites and renders their summaries.

    Args:
        workers (Optional[int]): Process count; None uses the suite's setting
        progress (bool): Show a tqdm progress bar
        console (Optional[Console]): rich console for summaries
    """

    def __init__(self, workers: Optional[int] = None, progress: bool = False,
                 console: Optional[Console] = None):
        self.workers = workers
        self.progress = progress
        self.console = console or Console(stderr=True)

    def run_trials(self, specs: List[TrialSpec], suite: SuiteConfig) -> List[Dict[str, Any]]:
        workers = self.workers or suite.workers
        bar = tqdm(total=len(specs), desc="trials", unit="trial", disable=not self.progress)
        records: List[Dict[str, Any]] = []
        try:
            if workers > 1:
                with ProcessPoolExecutor(max_workers=workers) as pool:
                    jobs = [(spec, suite) for spec in specs]
                    for record in pool.map(_run_trial_star, jobs, chunksize=4):
                        records.append(record)
                        bar.update(1)
            else:
                for spec in specs:
                    records.append(run_trial(spec, suite))
                    bar.update(1)
        finally:
            bar.close()
        # reduction order is fixed by trial index
        return sorted(records, key=lambda r: r["trial"])

    def evaluate(self, suite: SuiteConfig, with_frontier: bool = True) -> EvalReport:
        """
        Run a suite end to end.

        Args:
            suite (SuiteConfig): Trial grid and settings
            with_frontier (bool): Attach the prominence × SNR frontier when targets are missed

        Returns:
            EvalReport: Scored report with the trial log attached
        """
        specs = plan_trials(suite)
        logger.info(
            "Evaluating %d trials (%d crossings, %d turn-backs, %d walk-bys)",
            len(specs),
            suite.n_crossing,
            suite.n_turnback,
            suite.n_walkby,
        )
        report = score_trials(self.run_trials(specs, suite), suite)

        if with_frontier and suite.frontier.enabled and not report.target_met:
            from .benchmarks import BenchmarkSuite

            logger.info("Targets missed; computing the prominence/SNR frontier")
            report.frontier = BenchmarkSuite(self).run_frontier(suite)
        return report

    def print_summary(self, report: EvalReport):
        """Render the confusion matrix and per-distance table."""
        console = self.console
        console.print(f"\n📊 [bold]EVALUATION SUMMARY[/bold] ({report.n_trials} trials)")

        cm = Table(title="Confusion matrix (crossing = positive)")
        cm.add_column("")
        cm.add_column("predicted no", justify="right")
        cm.add_column("predicted crossing", justify="right")
        cm.add_row("actual no", str(report.true_negatives), str(report.false_positives))
        cm.add_row("actual crossing", str(report.false_negatives), str(report.true_positives))
        console.print(cm)

        ref = report.reference_hardware
        console.print(
            f"✅ Accuracy: {report.accuracy:.4f} (target ≥ {report.targets['accuracy']:.2f}, "
            f"hardware reference {ref['accuracy']:.3f})"
        )
        console.print(
            f"⚠️  False alarm rate: {report.false_alarm_rate:.4f} "
            f"(target ≤ {report.targets['false_alarm_rate']:.2f}, hardware reference "
            f"{ref['false_alarm_rate']:.3f})"
        )

        rows = report.per_condition.get("los_distance_m", [])
        if rows:
            table = Table(title="Accuracy by LoS distance")
            table.add_column("LoS distance (m)", justify="right")
            table.add_column("trials", justify="right")
            table.add_column("accuracy", justify="right")
            table.add_column("false alarm", justify="right")
            for row in rows:
                table.add_row(
                    f"{row['value']:g}", str(row["n"]), f"{row['accuracy']:.3f}",
                    f"{row['false_alarm_rate']:.3f}",
                )
            console.print(table)

        if report.frontier:
            table = Table(title="Prominence / SNR frontier")
            for name in ("prominence_rel", "snr_db", "accuracy", "false_alarm_rate"):
                table.add_column(name, justify="right")
            for row in report.frontier:
                table.add_row(
                    f"{row['prominence_rel']:g}", f"{row['snr_db']:g}",
                    f"{row['accuracy']:.3f}", f"{row['false_alarm_rate']:.3f}",
                )
            console.print(table)


def run_eval(suite_config: Union[SuiteConfig, Dict[str, Any]], workers: Optional[int] = None,
             progress: bool = False, with_frontier: bool = True) -> EvalReport:
    """
    Evaluate a suite and return its report.

    Args:
        suite_config (Union[SuiteConfig, Dict[str, Any]]): Suite or raw mapping
        workers (Optional[int]): Process count override
        progress (bool): Show a progress bar
        with_frontier (bool): Attach the frontier sweep when targets are missed

    Returns:
        EvalReport: Scored report

    Raises:
        InvalidArgumentError: If the suite is invalid or has zero trials
    """
    suite = suite_config if isinstance(suite_config, SuiteConfig) else SuiteConfig.from_mapping(suite_config)
    return SuiteEvaluator(workers=workers, progress=progress).evaluate(suite, with_frontier=with_frontier)
