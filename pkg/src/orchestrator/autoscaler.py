"""
Threshold Autoscaler
====================

The VNF manager's scaling rule. Decisions are taken on reported telemetry,
one instance per decision. A coverage rule adds an instance where demand
arrives from outside every active instance's radio range.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence, Tuple

from model.entities import Capability, Position, distance

from .placement import Placement, eligible_nodes
from .telemetry import TelemetryReport, group_by_window, window_means

logger = logging.getLogger(__name__)

OUT = "Out"
IN = "In"
HOLD = "Hold"


@dataclass(frozen=True)
class AutoscalePolicy:
    u_hi: float = 0.8
    u_lo: float = 0.2
    k_windows: int = 2
    max_instances: int = 4
    placement: Placement = Placement.LEAST_LOADED
    sanitize_telemetry: bool = False
    coverage: bool = True

    def __post_init__(self):
        if not 0.0 <= self.u_lo < self.u_hi <= 1.0:
            raise ValueError("autoscale thresholds must satisfy 0 <= u_lo < u_hi <= 1")
        if self.k_windows < 1:
            raise ValueError("k_windows must be >= 1")
        if self.max_instances < 1:
            raise ValueError("max_instances must be >= 1")
        object.__setattr__(self, "placement", Placement(self.placement))

    def to_dict(self) -> Dict:
        return {
            "u_hi": self.u_hi,
            "u_lo": self.u_lo,
            "k_windows": self.k_windows,
            "max_instances": self.max_instances,
            "placement": self.placement.value,
            "sanitize_telemetry": self.sanitize_telemetry,
            "coverage": self.coverage,
        }


@dataclass(frozen=True)
class ScalingDecision:
    action: str
    n: int = 0
    reason: str = ""
    window_means: Tuple[float, ...] = field(default=())
    # node chosen by the coverage rule; None lets placement decide
    node: Optional[str] = None

    @property
    def is_hold(self) -> bool:
        return self.action == HOLD


def autoscale_step(
    capability: Capability,
    reports: Sequence[TelemetryReport],
    policy: AutoscalePolicy,
    instance_count: Optional[int] = None,
) -> ScalingDecision:
    """Out(1), In(1) or Hold from the last k windows of reports"""
    count = len(capability.instances) if instance_count is None else instance_count
    windows = group_by_window(reports)
    if len(windows) < policy.k_windows:
        return ScalingDecision(HOLD, reason="not enough telemetry windows")

    means = window_means(reports, policy.k_windows)
    if all(m > policy.u_hi for m in means) and count < policy.max_instances:
        return ScalingDecision(OUT, 1, "reported cpu above u_hi", means)
    if all(m < policy.u_lo for m in means) and count > 1:
        return ScalingDecision(IN, 1, "reported cpu below u_lo", means)
    return ScalingDecision(HOLD, reason="within thresholds", window_means=means)


def coverage_step(
    uncovered_history: Sequence[Mapping[Position, int]],
    nodes: Sequence,
    hosted: Mapping[str, int],
    hosting_capability: Sequence[str],
    instance_count: int,
    policy: AutoscalePolicy,
) -> ScalingDecision:
    """Out(1) on the node covering the most uncovered demand.

    Fires only when each of the last k windows had uncovered requests.
    """
    if not policy.coverage or instance_count >= policy.max_instances:
        return ScalingDecision(HOLD, reason="coverage scaling unavailable")
    recent = list(uncovered_history)[-policy.k_windows:]
    if len(recent) < policy.k_windows or not all(sum(w.values()) > 0 for w in recent):
        return ScalingDecision(HOLD, reason="demand covered")

    demand: Dict[Position, int] = {}
    for window in recent:
        for origin, count in window.items():
            demand[origin] = demand.get(origin, 0) + count

    best_node, best_score = None, 0
    for node in eligible_nodes(nodes, hosted, exclude=hosting_capability):
        score = sum(
            count
            for origin, count in demand.items()
            if distance(node.position, origin) <= node.radio_range
        )
        if score > best_score:
            best_node, best_score = node.id, score
    if best_node is None:
        return ScalingDecision(HOLD, reason="no eligible node covers the demand")
    return ScalingDecision(OUT, 1, f"{best_score} uncovered requests", node=best_node)


def productivity(requests: float, cpu_load: float, tiny: float = 1e-9) -> float:
    return requests / max(cpu_load, tiny)


def pick_scale_in_victim(
    last_window: Mapping[str, Tuple[int, float]], ordinals: Mapping[str, int]
) -> str:
    """Least productive instance over the last window; ties go to the newest.

    `last_window` maps instance id to (requests_served, cpu_load) and
    `ordinals` maps it to the per-capability spawn ordinal.
    """
    if not last_window:
        raise ValueError("no instance to scale in")
    return min(
        last_window,
        key=lambda iid: (productivity(*last_window[iid]), -ordinals[iid], iid),
    )
