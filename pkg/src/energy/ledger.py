"""
Energy ledger recomputed from a trace's event log.

For every battery-fed node:

    initial_soc - final_soc + restored == drawn - truncated

where drawn sums EnergyTick and InstanceSpawn draws, truncated is the part
the zero floor cut off, and restored is the energy refilled at RechargeEnd.
"""

from dataclasses import dataclass
from typing import Dict

DRAW_KINDS = ("EnergyTick", "InstanceSpawn")


@dataclass(frozen=True)
class NodeLedger:
    node: str
    initial_soc: float
    final_soc: float
    restored: float
    drawn: float
    truncated: float
    recharges: int

    @property
    def lhs(self) -> float:
        return self.initial_soc - self.final_soc + self.restored

    @property
    def rhs(self) -> float:
        return self.drawn - self.truncated

    def closes(self, rel_tol: float = 1e-9) -> bool:
        scale = max(abs(self.lhs), abs(self.rhs), 1.0)
        return abs(self.lhs - self.rhs) <= rel_tol * scale


def energy_ledger(trace) -> Dict[str, NodeLedger]:
    """Per-node ledger for every node that carries a battery"""
    nodes = trace.final_state.get("nodes", {})
    sums = {
        node: {"drawn": 0.0, "truncated": 0.0, "restored": 0.0, "recharges": 0}
        for node, state in nodes.items()
        if state.get("capacity") is not None
    }
    for event in trace.events:
        if event.node not in sums:
            continue
        row = sums[event.node]
        if event.kind in DRAW_KINDS:
            row["drawn"] += event.get("draw", 0.0)
            row["truncated"] += event.get("truncated", 0.0)
        elif event.kind == "RechargeEnd":
            row["restored"] += event.get("restored", 0.0)
            row["recharges"] += 1

    return {
        node: NodeLedger(
            node=node,
            initial_soc=nodes[node]["initial_soc"],
            final_soc=nodes[node]["soc"],
            restored=row["restored"],
            drawn=row["drawn"],
            truncated=row["truncated"],
            recharges=row["recharges"],
        )
        for node, row in sums.items()
    }
