"""
Instance Telemetry
==================

Per-window telemetry reports as the VNF manager receives them. Reported
values may differ from ground truth when the channel is poisoned.
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple


@dataclass(frozen=True)
class TelemetryReport:
    instance_id: str
    capability_id: str
    window_index: int
    reported_cpu: float
    reported_requests: int
    # marks a poisoned report for test oracles; the autoscaler never reads it
    poisoned: bool = False

    def __post_init__(self):
        if self.reported_cpu < 0 or self.reported_requests < 0:
            raise ValueError(f"telemetry for {self.instance_id}: negative reported value")


def truthful_report(
    instance_id: str, capability_id: str, window_index: int, cpu_load: float, requests: int
) -> TelemetryReport:
    return TelemetryReport(instance_id, capability_id, window_index, cpu_load, requests)


def group_by_window(reports: Sequence[TelemetryReport]) -> Dict[int, List[TelemetryReport]]:
    grouped: Dict[int, List[TelemetryReport]] = {}
    for report in reports:
        grouped.setdefault(report.window_index, []).append(report)
    return grouped


def window_means(reports: Sequence[TelemetryReport], k: int) -> Tuple[float, ...]:
    """Mean reported CPU per window over the last k windows present"""
    grouped = group_by_window(reports)
    windows = sorted(grouped)[-k:]
    return tuple(
        sum(r.reported_cpu for r in grouped[w]) / len(grouped[w]) for w in windows
    )
