"""
Detect Package
==============

State summaries, similarity and dominance operators, the TPS check, the
TDoS classifier and lazy-instance clustering. Nothing here mutates a trace.
"""

from .classifier import (
    GrowthCondition,
    TpsEvidence,
    Verdict,
    VerdictClass,
    aggregate_verdicts,
    classify,
    tps_check,
    verdict_from_conditions,
)
from .config import DetectorConfig
from .operators import (
    Similarity,
    dist_similar,
    dominates,
    l1_distance,
    normalize,
    scalar_similar,
)
from .productivity import (
    LazyClusterResult,
    best_split,
    cluster_productivity,
    instance_productivity,
)
from .summary import StateSummary, from_series, summarize

__all__ = [
    "GrowthCondition",
    "TpsEvidence",
    "Verdict",
    "VerdictClass",
    "aggregate_verdicts",
    "classify",
    "tps_check",
    "verdict_from_conditions",
    "DetectorConfig",
    "Similarity",
    "dist_similar",
    "dominates",
    "l1_distance",
    "normalize",
    "scalar_similar",
    "LazyClusterResult",
    "best_split",
    "cluster_productivity",
    "instance_productivity",
    "StateSummary",
    "from_series",
    "summarize",
]
