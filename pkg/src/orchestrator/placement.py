"""
Instance Placement
==================

Chooses the host node for a new instance. Loads are the orchestrator's view
of the nodes, built from reported telemetry.
"""

from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence

from utils.exceptions import NoEligibleNode


class Placement(str, Enum):
    LEAST_LOADED = "LeastLoadedNode"
    ROUND_ROBIN = "RoundRobin"


class RoundRobinCursor:
    """Deterministic position in the sorted node list"""

    def __init__(self, position: int = 0):
        self.position = position


def eligible_nodes(
    nodes: Iterable, hosted: Optional[Mapping[str, int]] = None, exclude: Iterable[str] = ()
):
    """Nodes that are not recharging and still have a free slot"""
    hosted = hosted or {}
    excluded = set(exclude)
    return sorted(
        (
            node
            for node in nodes
            if not node.recharging
            and hosted.get(node.id, 0) < node.max_instances
            and node.id not in excluded
        ),
        key=lambda node: node.id,
    )


def place_instance(
    nodes: Sequence,
    placement: Placement = Placement.LEAST_LOADED,
    loads: Optional[Mapping[str, float]] = None,
    hosted: Optional[Mapping[str, int]] = None,
    cursor: Optional[RoundRobinCursor] = None,
) -> str:
    """Return the id of the node that should host a new instance"""
    candidates = eligible_nodes(nodes, hosted)
    if not candidates:
        raise NoEligibleNode("every node is recharging or at capacity")

    placement = Placement(placement)
    if placement is Placement.LEAST_LOADED:
        loads = loads or {}
        best = min(candidates, key=lambda node: (loads.get(node.id, 0.0), node.id))
        return best.id

    cursor = cursor if cursor is not None else RoundRobinCursor()
    ordered = sorted(node.id for node in nodes)
    allowed = {node.id for node in candidates}
    for step in range(len(ordered)):
        node_id = ordered[(cursor.position + step) % len(ordered)]
        if node_id in allowed:
            cursor.position = (cursor.position + step + 1) % len(ordered)
            return node_id
    raise NoEligibleNode("round robin found no eligible node")
