"""
Orchestrator
============

Telemetry-driven VNF manager: reports, autoscaling, placement and the image
marketplace.
"""

from .autoscaler import (
    HOLD,
    IN,
    OUT,
    AutoscalePolicy,
    ScalingDecision,
    autoscale_step,
    coverage_step,
    pick_scale_in_victim,
    productivity,
)
from .marketplace import Marketplace, pull_image
from .placement import Placement, RoundRobinCursor, eligible_nodes, place_instance
from .telemetry import TelemetryReport, truthful_report, window_means

__all__ = [
    "HOLD",
    "IN",
    "OUT",
    "AutoscalePolicy",
    "ScalingDecision",
    "autoscale_step",
    "coverage_step",
    "pick_scale_in_victim",
    "productivity",
    "Marketplace",
    "pull_image",
    "Placement",
    "RoundRobinCursor",
    "eligible_nodes",
    "place_instance",
    "TelemetryReport",
    "truthful_report",
    "window_means",
]
