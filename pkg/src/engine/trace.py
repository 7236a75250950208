"""
Simulation Trace
================

The single record of a run: the ordered event log plus the per-window
series. Detectors and reports only ever read from it.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from utils.exceptions import UnknownCapability

from .events import EventKind, SimEvent
from .windows import CrownWindow, InstanceWindow, NodeWindow


@dataclass(frozen=True)
class InstanceLineage:
    instance_id: str
    capability: str
    node: str
    spawn_reason: str
    image_id: str
    tainted: bool
    spawned_at: float
    killed_at: Optional[float] = None


@dataclass(frozen=True)
class AttackInterval:
    """Ground truth for evaluation; never handed to detectors"""

    kind: str
    target_capability: Optional[str]
    target_nodes: Tuple[str, ...]
    t_start: float
    t_end: float


@dataclass(frozen=True)
class SimTrace:
    events: Tuple[SimEvent, ...]
    windows: Tuple[CrownWindow, ...]
    seed: int
    scenario_digest: str
    scenario_name: str
    window_length: float
    n_windows: int
    capabilities: Tuple[str, ...]
    nodes: Tuple[str, ...]
    instance_windows: Tuple[InstanceWindow, ...] = ()
    node_windows: Tuple[NodeWindow, ...] = ()
    lineage: Tuple[InstanceLineage, ...] = ()
    attacks: Tuple[AttackInterval, ...] = ()
    final_state: Dict[str, Any] = field(default_factory=dict)

    def windows_for(self, capability: str) -> List[CrownWindow]:
        if capability not in self.capabilities:
            raise UnknownCapability(capability)
        return [w for w in self.windows if w.capability == capability]

    def events_of(self, *kinds: EventKind) -> List[SimEvent]:
        return [e for e in self.events if e.kind in kinds]

    def instance_windows_for(self, capability: str) -> List[InstanceWindow]:
        return [iw for iw in self.instance_windows if iw.capability == capability]

    def node_series(self, node: str) -> List[NodeWindow]:
        return [nw for nw in self.node_windows if nw.node == node]

    def window_of(self, time: float) -> int:
        """Index of the window containing `time`; the horizon maps to the last window"""
        return min(int(time // self.window_length), self.n_windows - 1)
