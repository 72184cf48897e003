"""
Benchmark sweeps built on the evaluation harness.
"""
import logging
from typing import Any, Dict, List, Optional, Sequence

from .evaluator import EvalReport, SuiteConfig, SuiteEvaluator

logger = logging.getLogger(__name__)


class BenchmarkSuite:
    """
    Parameter sweeps over evaluation suites.

    Provides three benchmarks:
    1. Clean-signal gate: noiseless, drift-free grid that must score perfectly
    2. LoS-distance sweep: accuracy per distance at a fixed SNR
    3. Prominence × SNR frontier for noisy suites
    """

    def __init__(self, evaluator: Optional[SuiteEvaluator] = None):
        self.evaluator = evaluator or SuiteEvaluator()

    def _evaluate(self, suite: SuiteConfig) -> EvalReport:
        return self.evaluator.evaluate(suite, with_frontier=False)

    def run_clean_gate(self, suite: Optional[SuiteConfig] = None, per_class: int = 35) -> EvalReport:
        """
        Noiseless, drift-free suite covering every offset × angle combination.

        Args:
            suite (Optional[SuiteConfig]): Base suite (geometry and detector settings)
            per_class (int): Trials per class

        Returns:
            EvalReport: Expected to show accuracy 1.0 and no false alarms
        """
        base = suite or SuiteConfig()
        clean = base.model_copy(
            update={
                "n_crossing": per_class,
                "n_turnback": per_class,
                "n_walkby": per_class,
                "snr_db": [None],
                "phase_drift_per_frame_rad": 0.0,
            }
        )
        report = self._evaluate(clean)
        logger.info(
            "Clean gate: accuracy %.4f, false alarm %.4f", report.accuracy, report.false_alarm_rate
        )
        return report

    def run_los_sweep(self, suite: Optional[SuiteConfig] = None,
                      distances: Optional[Sequence[float]] = None,
                      trials_per_distance: int = 60) -> Dict[str, Any]:
        """
        Accuracy per LoS distance, each distance run as its own suite.

        Returns:
            Dict[str, Any]: ``rows`` (distance, accuracy, false alarm) and
            ``non_increasing`` (accuracy never rises with distance)
        """
        base = suite or SuiteConfig()
        distances = list(distances or base.los_distances_m)
        per_class = max(1, trials_per_distance // 3)
        rows: List[Dict[str, Any]] = []
        for distance in distances:
            sub = base.model_copy(
                update={
                    "los_distances_m": [float(distance)],
                    "n_crossing": trials_per_distance - 2 * per_class,
                    "n_turnback": per_class,
                    "n_walkby": per_class,
                }
            )
            report = self._evaluate(sub)
            rows.append(
                {
                    "los_distance_m": float(distance),
                    "n": report.n_trials,
                    "accuracy": report.accuracy,
                    "false_alarm_rate": report.false_alarm_rate,
                }
            )
            logger.info("LoS %.2f m: accuracy %.4f", distance, report.accuracy)

        ordered = sorted(rows, key=lambda r: r["los_distance_m"])
        non_increasing = all(
            later["accuracy"] <= earlier["accuracy"] for earlier, later in zip(ordered, ordered[1:])
        )
        return {"rows": rows, "non_increasing": non_increasing}

    def run_frontier(self, suite: SuiteConfig) -> List[Dict[str, Any]]:
        """
        Accuracy and false-alarm rate over the suite's prominence × SNR grid.

        Each grid point runs a reduced suite of ``frontier.trials_per_class``
        trials per class with the suite's other settings.
        """
        settings = suite.frontier
        rows: List[Dict[str, Any]] = []
        for prominence in settings.prominence_rel:
            for snr in settings.snr_db:
                sub = suite.model_copy(
                    update={
                        "n_crossing": settings.trials_per_class,
                        "n_turnback": settings.trials_per_class,
                        "n_walkby": settings.trials_per_class,
                        "snr_db": [float(snr)],
                        "detector": suite.detector.model_copy(update={"prominence_rel": float(prominence)}),
                    }
                )
                report = self._evaluate(sub)
                rows.append(
                    {
                        "prominence_rel": float(prominence),
                        "snr_db": float(snr),
                        "n": report.n_trials,
                        "accuracy": report.accuracy,
                        "false_alarm_rate": report.false_alarm_rate,
                        "target_met": report.target_met,
                    }
                )
        return rows
