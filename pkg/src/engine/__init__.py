"""
Engine Package
==============

Event queue, mission expansion, window aggregation and the deterministic
simulation loop that produces a SimTrace.
"""

from .events import EventKind, EventQueue, SimEvent
from .mission import MissionGenerator, expand_mission
from .rng import RngStreams, stream
from .simulator import Simulator, run
from .trace import AttackInterval, InstanceLineage, SimTrace
from .windows import CrownWindow, InstanceWindow, NodeWindow, close_window

__all__ = [
    "EventKind",
    "EventQueue",
    "SimEvent",
    "MissionGenerator",
    "expand_mission",
    "RngStreams",
    "stream",
    "Simulator",
    "run",
    "AttackInterval",
    "InstanceLineage",
    "SimTrace",
    "CrownWindow",
    "InstanceWindow",
    "NodeWindow",
    "close_window",
]
