"""
Evaluation harness and benchmark sweeps.
"""

from .benchmarks import BenchmarkSuite
from .evaluator import (
    REFERENCE_HARDWARE,
    DetectorSettings,
    EvalReport,
    FrontierSettings,
    SuiteConfig,
    SuiteEvaluator,
    TrialSpec,
    plan_trials,
    run_eval,
    run_trial,
    score_trials,
)

__all__ = [
    "BenchmarkSuite",
    "REFERENCE_HARDWARE",
    "DetectorSettings",
    "FrontierSettings",
    "SuiteConfig",
    "SuiteEvaluator",
    "EvalReport",
    "TrialSpec",
    "plan_trials",
    "run_trial",
    "run_eval",
    "score_trials",
]
