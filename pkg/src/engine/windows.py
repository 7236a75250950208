"""
CRoWN Window Aggregation
========================

Per-window, per-capability counters: clients (C), requests (R),
workload (W) and network functions (NF), plus the detection metrics nA, nT,
nC and tD that the detectors consume.
"""

from dataclasses import dataclass, field
from typing import Dict, Mapping, Sequence, Set

from model.entities import Position


@dataclass(frozen=True)
class CrownWindow:
    window_index: int
    capability: str
    C: int
    R: int
    W: float
    NF: int
    nA: int
    nT: int
    nC: float
    tD: int
    energy_draw: float = 0.0
    ir_max: float = 0.0
    sinkholed: int = 0
    forged_fraction: float = 0.0
    dropped: int = 0

    def metric(self, name: str):
        return getattr(self, name)


@dataclass(frozen=True)
class InstanceWindow:
    """What one instance did during one window (ground truth and report)"""

    window_index: int
    instance_id: str
    capability: str
    node: str
    requests_served: int
    cpu_load: float
    reported_cpu: float
    poisoned: bool
    tainted: bool
    spawn_reason: str


@dataclass(frozen=True)
class NodeWindow:
    window_index: int
    node: str
    load: float
    ir: float
    energy_draw: float
    soc: float
    recharging: bool


@dataclass
class CapabilityAccumulator:
    """Mutable per-window tallies the engine fills while events run"""

    clients: Set[str] = field(default_factory=set)
    requests: int = 0
    work: float = 0.0
    actions: int = 0
    energy: float = 0.0
    instantiation: float = 0.0
    sinkholed: int = 0
    dropped: int = 0
    uncovered: Dict[Position, int] = field(default_factory=dict)

    def add_uncovered(self, origin: Position, count: int):
        self.uncovered[origin] = self.uncovered.get(origin, 0) + count


@dataclass(frozen=True)
class LiveInstance:
    instance_id: str
    capability: str
    node: str
    tainted: bool


@dataclass(frozen=True)
class WindowState:
    """Snapshot handed to close_window at a window boundary"""

    capabilities: Sequence[str]
    accumulators: Mapping[str, CapabilityAccumulator]
    live: Sequence[LiveInstance]
    n_t: Mapping[str, int]
    node_ir: Mapping[str, float]


def close_window(state: WindowState, window_index: int) -> Dict[str, CrownWindow]:
    """Aggregate one window into a CrownWindow per capability"""
    result: Dict[str, CrownWindow] = {}
    for cap in state.capabilities:
        acc = state.accumulators.get(cap) or CapabilityAccumulator()
        live = [inst for inst in state.live if inst.capability == cap]
        hosts = sorted({inst.node for inst in live})
        tainted = sum(1 for inst in live if inst.tainted)
        result[cap] = CrownWindow(
            window_index=window_index,
            capability=cap,
            C=len(acc.clients),
            R=acc.requests,
            W=acc.work,
            NF=len(live),
            nA=acc.actions,
            nT=state.n_t.get(cap, 0),
            nC=acc.energy + acc.instantiation,
            tD=len(hosts),
            energy_draw=acc.energy,
            ir_max=max((state.node_ir.get(node, 0.0) for node in hosts), default=0.0),
            sinkholed=acc.sinkholed,
            forged_fraction=(tainted / len(live)) if live else 0.0,
            dropped=acc.dropped,
        )
    return result

