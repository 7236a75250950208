"""
Horizontal Dependency Graph
===========================

Edges point from a capability to the capabilities it depends on, so the
in-degree of a node is the number of capabilities that request it.
"""

from typing import Iterable, List

import networkx as nx

from utils.exceptions import CycleError, UnknownCapability


class DependencyGraph:
    """Static dependency graph of one scenario"""

    def __init__(self, graph: nx.DiGraph):
        self._graph = graph

    def _require(self, capability_id: str):
        if capability_id not in self._graph:
            raise UnknownCapability(capability_id)

    def dependents(self, capability_id: str, transitive: bool = False) -> List[str]:
        """Capabilities that request capability_id, directly or through a chain"""
        self._require(capability_id)
        if transitive:
            return sorted(nx.ancestors(self._graph, capability_id))
        return sorted(self._graph.predecessors(capability_id))

    def n_t(self, capability_id: str, transitive: bool = False) -> int:
        return len(self.dependents(capability_id, transitive))


def build_dependency_graph(capabilities: Iterable) -> DependencyGraph:
    capabilities = list(capabilities)
    graph = nx.DiGraph()
    declared = set()
    for cap in capabilities:
        if cap.id in declared:
            raise ValueError(f"duplicate capability id '{cap.id}'")
        declared.add(cap.id)
        graph.add_node(cap.id)

    for cap in capabilities:
        for dep in sorted(cap.depends_on):
            if dep not in declared:
                raise UnknownCapability(dep)
            graph.add_edge(cap.id, dep)

    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        return DependencyGraph(graph)
    raise CycleError(cycle)
