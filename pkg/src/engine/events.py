"""
Simulation Events and the Event Queue
=====================================

Events are ordered by (time, sequence). The sequence is assigned at
insertion, so two events with equal timestamps come out in the order they
went in.
"""

import heapq
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, List, Optional, Tuple

from utils.exceptions import InternalScheduleError


class EventKind(str, Enum):
    ACTION_ARRIVAL = "ActionArrival"
    WINDOW_CLOSE = "WindowClose"
    ENERGY_TICK = "EnergyTick"
    ORCHESTRATOR_TICK = "OrchestratorTick"
    ATTACK_START = "AttackStart"
    ATTACK_END = "AttackEnd"
    RECHARGE_START = "RechargeStart"
    RECHARGE_END = "RechargeEnd"
    INSTANCE_SPAWN = "InstanceSpawn"
    INSTANCE_KILL = "InstanceKill"
    LIFECYCLE_EVENT = "LifecycleEvent"
    POSITION_UPDATE = "PositionUpdate"


@dataclass(frozen=True)
class SimEvent:
    time: float
    sequence: int
    kind: EventKind
    capability: str = ""
    node: str = ""
    instance: str = ""
    # ordered (key, value) pairs; kind-specific
    detail: Tuple[Tuple[str, Any], ...] = ()
    # engine-only handle (action, attack, ...) never written to the trace
    payload: Any = None

    def get(self, key: str, default=None):
        for k, v in self.detail:
            if k == key:
                return v
        return default


class EventQueue:
    """Min-heap of events keyed by (time, sequence)"""

    def __init__(self, start_time: float = 0.0):
        self._heap: List[Tuple[float, int, SimEvent]] = []
        self._sequence = 0
        self.now = start_time

    def __len__(self):
        return len(self._heap)

    def schedule(
        self,
        time: float,
        kind: EventKind,
        capability: str = "",
        node: str = "",
        instance: str = "",
        detail: Tuple[Tuple[str, Any], ...] = (),
        payload: Any = None,
    ) -> SimEvent:
        if not math.isfinite(time):
            raise InternalScheduleError(f"non-finite event time for {kind.value}")
        if time < self.now:
            raise InternalScheduleError(
                f"{kind.value} scheduled at t={time} before current time t={self.now}"
            )
        event = SimEvent(
            time, self._sequence, kind, capability, node, instance, detail, payload
        )
        self._sequence += 1
        heapq.heappush(self._heap, (event.time, event.sequence, event))
        return event

    def next_event(self) -> Optional[SimEvent]:
        if not self._heap:
            return None
        _, _, event = heapq.heappop(self._heap)
        self.now = event.time
        return event

    def peek_time(self) -> Optional[float]:
        return self._heap[0][0] if self._heap else None
