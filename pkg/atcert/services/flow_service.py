"""
Flow Service Module
Prescribed-out-degree orientations through networkx maximum flow.
"""

import logging
from typing import Dict, FrozenSet, Mapping, Optional, Tuple

import networkx as nx
from networkx.algorithms import flow as nx_flow

from ..config import get_settings
from ..exceptions import InvalidInputError
from ..graph.plane_graph import Arc, Graph

logger = logging.getLogger(__name__)

_ALGORITHMS = {
    "preflow_push": nx_flow.preflow_push,
    "edmonds_karp": nx_flow.edmonds_karp,
    "shortest_augmenting_path": nx_flow.shortest_augmenting_path,
    "dinitz": nx_flow.dinitz,
    "boykov_kolmogorov": nx_flow.boykov_kolmogorov,
}

_SOURCE = ("s",)
_SINK = ("t",)


class FlowService:
    """
    Solves b-orientation feasibility as a bipartite flow problem.

    Network: source -> one node per edge (capacity 1) -> both endpoints (capacity 1)
    -> sink with capacity ``d(v)``. A saturating flow assigns every edge to the
    endpoint that becomes its tail.
    """

    def __init__(self, algorithm: Optional[str] = None):
        """Initialize the flow service with the configured max-flow algorithm."""
        name = algorithm or get_settings().flow_algorithm
        if name not in _ALGORITHMS:
            raise InvalidInputError(
                f"Unknown flow algorithm '{name}'; choose from {', '.join(sorted(_ALGORITHMS))}"
            )
        self.algorithm = name
        self._flow_func = _ALGORITHMS[name]
        logger.debug(f"Flow service initialized with {name}")

    def build_network(self, graph: Graph, out_degrees: Mapping[int, int]) -> nx.DiGraph:
        network = nx.DiGraph()
        network.add_node(_SOURCE)
        for u, v in graph.sorted_edges:
            edge_node = ("e", u, v)
            network.add_edge(_SOURCE, edge_node, capacity=1)
            network.add_edge(edge_node, ("v", u), capacity=1)
            network.add_edge(edge_node, ("v", v), capacity=1)
        for v in graph.sorted_vertices:
            network.add_edge(("v", v), _SINK, capacity=out_degrees.get(v, 0))
        return network

    def realize(self, graph: Graph, out_degrees: Mapping[int, int]) -> Optional[FrozenSet[Arc]]:
        """
        Find arcs giving every vertex exactly the prescribed out-degree.

        Args:
            graph: Graph to orient
            out_degrees: Target out-degree per vertex (missing vertices mean 0)

        Returns:
            The arc set, or None when no such orientation exists
        """
        if not graph.edges:
            return frozenset() if not any(out_degrees.values()) else None
        if any(out_degrees.get(v, 0) > graph.degree(v) for v in graph.vertices):
            return None
        network = self.build_network(graph, out_degrees)
        value, flow = nx.maximum_flow(network, _SOURCE, _SINK, flow_func=self._flow_func)
        if value != len(graph.edges):
            logger.debug(f"Out-degree vector infeasible: flow {value} < {len(graph.edges)}")
            return None
        arcs = []
        for u, v in graph.sorted_edges:
            routed: Dict[Tuple, int] = flow[("e", u, v)]
            arcs.append((u, v) if routed.get(("v", u), 0) == 1 else (v, u))
        return frozenset(arcs)


# Global instance for reuse across modules
flow_service = None


def get_flow_service() -> FlowService:
    """
    Get or create a global flow service instance.

    Returns:
        FlowService instance
    """
    global flow_service
    if flow_service is None:
        flow_service = FlowService()
    return flow_service
