"""
Model Package
=============

Domain types, the capability lifecycle machine and the dependency graph.
"""

from .lifecycle import LifecycleState, LifecycleEvent, advance_lifecycle
from .entities import (
    Position,
    distance,
    SpawnReason,
    TacticalNode,
    Capability,
    VnfInstance,
    MarketplaceImage,
    MissionAction,
    live_instances,
)
from .dependency import DependencyGraph, build_dependency_graph

__all__ = [
    "LifecycleState",
    "LifecycleEvent",
    "advance_lifecycle",
    "Position",
    "distance",
    "SpawnReason",
    "TacticalNode",
    "Capability",
    "VnfInstance",
    "MarketplaceImage",
    "MissionAction",
    "live_instances",
    "DependencyGraph",
    "build_dependency_graph",
]
