"""
Scenario Runners Package
========================

Contains the pipeline runner, the detection report builder and the CLI
dispatcher.
"""

from .pipeline import PipelineResult, ScenarioRunner, run_corpus, run_pipeline
from .report import DetectionReport, build_report, evaluate, explain, ground_truth

__all__ = [
    "PipelineResult",
    "ScenarioRunner",
    "run_corpus",
    "run_pipeline",
    "DetectionReport",
    "build_report",
    "evaluate",
    "explain",
    "ground_truth",
]
