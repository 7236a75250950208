"""
Tactical Cloud Domain Types
===========================

Immutable records for tactical nodes, capabilities, VNF instances,
marketplace images and mission actions. The engine never mutates these;
it replaces them with dataclasses.replace().
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Optional, Tuple

from .lifecycle import LifecycleState

Position = Tuple[float, float]


def distance(a: Position, b: Position) -> float:
    """Euclidean distance between two 2-D points"""
    return math.hypot(a[0] - b[0], a[1] - b[1])


class SpawnReason(str, Enum):
    BOOTSTRAP = "Bootstrap"
    AUTOSCALE_OUT = "AutoscaleOut"
    MARKETPLACE_PULL = "MarketplacePull"


@dataclass(frozen=True)
class TacticalNode:
    """A fixed ICT node or a mobile, battery-fed tactical node"""

    id: str
    position: Position
    radio_range: float
    is_fixed: bool = False
    max_instances: int = 4
    # BatteryState from the energy package; None for mains-powered fixed nodes
    battery: Optional[object] = None
    waypoints: Tuple[Tuple[float, float, float], ...] = ()

    def __post_init__(self):
        if not all(math.isfinite(c) for c in self.position):
            raise ValueError(f"node {self.id}: position must be finite")
        if self.radio_range <= 0:
            raise ValueError(f"node {self.id}: radio_range must be > 0")

    @property
    def recharging(self) -> bool:
        return self.battery is not None and self.battery.recharging

    def in_range(self, point: Position) -> bool:
        return distance(self.position, point) <= self.radio_range


@dataclass(frozen=True)
class Capability:
    """A digital tactical capability and the instances that provide it"""

    id: str
    lifecycle: LifecycleState = LifecycleState.ONBOARDING
    depends_on: FrozenSet[str] = frozenset()
    instances: FrozenSet[str] = frozenset()

    @property
    def surveillance(self) -> bool:
        """Continuous monitoring is on whenever the capability is deployed"""
        return self.lifecycle.surveilled

    @property
    def serving(self) -> bool:
        return self.lifecycle in (LifecycleState.DEPLOYED, LifecycleState.ADAPTATION)


@dataclass(frozen=True)
class VnfInstance:
    id: str
    capability_id: str
    host_node_id: str
    spawn_reason: SpawnReason
    image_id: str
    ordinal: int = 0
    cpu_load: float = 0.0
    requests_served: int = 0
    tainted: bool = False
    alive: bool = True

    def __post_init__(self):
        if self.cpu_load < 0 or self.requests_served < 0:
            raise ValueError(f"instance {self.id}: negative load or request count")


@dataclass(frozen=True)
class MarketplaceImage:
    image_id: str
    capability_id: str
    tainted: bool = False
    provisioning_delay: float = 0.0
    cluster: str = "primary"

    def __post_init__(self):
        if self.provisioning_delay < 0:
            raise ValueError(f"image {self.image_id}: provisioning_delay must be >= 0")
        if self.cluster not in ("primary", "secondary"):
            raise ValueError(f"image {self.image_id}: unknown cluster '{self.cluster}'")


@dataclass(frozen=True)
class MissionAction:
    """One tactical action; decoy actions are endpoint traffic, not actions"""

    action_id: str
    time: float
    required_capability: str
    client_id: str
    request_count: int
    work_per_request: float
    origin: Position = (0.0, 0.0)
    decoy: bool = False

    def __post_init__(self):
        if self.request_count < 1:
            raise ValueError(f"action {self.action_id}: request_count must be >= 1")
        if self.work_per_request <= 0:
            raise ValueError(f"action {self.action_id}: work_per_request must be > 0")

    @property
    def total_work(self) -> float:
        return self.request_count * self.work_per_request


def index_by_id(items) -> Dict[str, object]:
    """Map records by id, rejecting duplicates"""
    result: Dict[str, object] = {}
    for item in items:
        if item.id in result:
            raise ValueError(f"duplicate id '{item.id}'")
        result[item.id] = item
    return result


def live_instances(instances, capability_id: Optional[str] = None):
    """Alive instances sorted by id, optionally filtered by capability"""
    chosen = [
        inst
        for inst in instances
        if inst.alive and (capability_id is None or inst.capability_id == capability_id)
    ]
    return sorted(chosen, key=lambda inst: inst.id)


__all__ = [
    "Position",
    "distance",
    "SpawnReason",
    "TacticalNode",
    "Capability",
    "VnfInstance",
    "MarketplaceImage",
    "MissionAction",
    "index_by_id",
    "live_instances",
]

