"""
AT Core Module
Orientations, Eulerian sub-digraph parity counts, graph-polynomial coefficients,
degree budgets and the brute-force Alon-Tarsi oracles.

Sign convention: the graph polynomial is the product over edges ``uv`` with
``u < v`` of ``(x_u - x_v)``. For an orientation ``D`` the coefficient of
``prod x_v^{d+_D(v)}`` equals ``orientation_sign(D) * diff(D)``, where
``orientation_sign(D) = (-1)^{#arcs (t, h) with t > h}``.
"""

import logging
from collections import defaultdict
from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property, lru_cache
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

import networkx as nx

from ..config import get_settings
from ..exceptions import InvalidInputError, OracleTooLargeError, PreconditionError
from ..graph.plane_graph import Arc, Edge, Graph, normalize_edge
from ..services.flow_service import get_flow_service

logger = logging.getLogger(__name__)

OutDegreeVector = Mapping[int, int]
Monomial = Tuple[int, ...]


@dataclass(frozen=True)
class Orientation:
    """
    An orientation of ``base``: exactly one arc per edge.

    ``base`` is an abstract graph; gadget graphs are not plane.
    """

    base: Graph
    arcs: FrozenSet[Arc]

    def __post_init__(self):
        seen = set()
        for t, h in self.arcs:
            edge = normalize_edge(t, h)
            if edge in seen:
                raise InvalidInputError(f"Edge {edge} is oriented twice")
            seen.add(edge)
        if seen != self.base.edges:
            missing = sorted(self.base.edges - seen)
            extra = sorted(seen - self.base.edges)
            raise InvalidInputError(
                f"Arcs must orient exactly the base edges (missing {missing}, extra {extra})"
            )

    @classmethod
    def from_arcs(cls, arcs: Iterable[Tuple[int, int]], vertices: Iterable[int] = ()) -> "Orientation":
        arc_set = frozenset((int(t), int(h)) for t, h in arcs)
        return cls(Graph.from_edges(arc_set, vertices), arc_set)

    @cached_property
    def sorted_arcs(self) -> Tuple[Arc, ...]:
        return tuple(sorted(self.arcs))

    @cached_property
    def by_edge(self) -> Mapping[Edge, Arc]:
        return MappingProxyType({normalize_edge(t, h): (t, h) for t, h in self.arcs})

    @cached_property
    def out_degree(self) -> Mapping[int, int]:
        counts = {v: 0 for v in self.base.sorted_vertices}
        for t, _ in self.arcs:
            counts[t] += 1
        return MappingProxyType(counts)

    @property
    def vertices(self) -> FrozenSet[int]:
        return self.base.vertices

    def arc_for(self, u: int, v: int) -> Arc:
        """The arc orienting edge ``uv``."""
        edge = normalize_edge(u, v)
        if edge not in self.by_edge:
            raise PreconditionError(f"{edge} is not an edge of the oriented graph")
        return self.by_edge[edge]

    def is_sink(self, v: int) -> bool:
        return self.out_degree.get(v, 0) == 0

    def without_arc(self, arc: Arc) -> "Orientation":
        if arc not in self.arcs:
            raise PreconditionError(f"Arc {arc} is not in the orientation")
        return Orientation(self.base.remove_edges([arc]), self.arcs - {arc})

    def with_arcs(self, arcs: Iterable[Arc], vertices: Iterable[int] = ()) -> "Orientation":
        extra = frozenset((int(t), int(h)) for t, h in arcs)
        return Orientation(self.base.add_edges(extra, vertices), self.arcs | extra)

    def without_vertices(self, vertices: Iterable[int]) -> "Orientation":
        doomed = set(vertices)
        return Orientation(
            self.base.remove_vertices(doomed),
            frozenset(a for a in self.arcs if a[0] not in doomed and a[1] not in doomed),
        )

    def restricted_to(self, target: Graph) -> "Orientation":
        """The sub-orientation on ``target`` (which must be a subgraph of the base)."""
        if not target.is_subgraph_of(self.base):
            raise PreconditionError("Restriction target is not a subgraph of the oriented graph")
        return Orientation(target, frozenset(self.by_edge[e] for e in target.edges))

    def __repr__(self) -> str:
        return f"Orientation(|V|={len(self.base.vertices)}, arcs={list(self.sorted_arcs)})"


@dataclass(frozen=True)
class EulerianCount:
    """Numbers of even and odd Eulerian sub-digraphs of an orientation."""

    even_count: int
    odd_count: int

    @property
    def diff(self) -> int:
        return self.even_count - self.odd_count


class DegreeBudget(Mapping):
    """
    The function ``f``: a nonnegative integer per vertex.

    Immutable; every update returns a new budget.
    """

    def __init__(self, values: Mapping[int, int]):
        clean = {}
        for v in sorted(values):
            amount = int(values[v])
            if amount < 0:
                raise InvalidInputError(f"Budget at vertex {v} is negative ({amount})")
            clean[int(v)] = amount
        self._values = MappingProxyType(clean)

    @classmethod
    def constant(cls, vertices: Iterable[int], k: int) -> "DegreeBudget":
        return cls({v: k for v in vertices})

    def __getitem__(self, v: int) -> int:
        return self._values[v]

    def __iter__(self) -> Iterator[int]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other) -> bool:
        if isinstance(other, Mapping):
            return dict(self._values) == dict(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._values.items()))

    def reduce(self, vertices: Union[int, Iterable[int]], amount: int = 1) -> "DegreeBudget":
        """``f_[X,-1]``: lower the budget by ``amount`` on every vertex of ``X``."""
        targets = [vertices] if isinstance(vertices, int) else list(vertices)
        values = dict(self._values)
        for v in targets:
            values[v] = values[v] - amount
            if values[v] < 0:
                raise PreconditionError(f"Budget at vertex {v} would become negative")
        return DegreeBudget(values)

    def raise_at(self, v: int, amount: int = 1) -> "DegreeBudget":
        values = dict(self._values)
        values[v] = values.get(v, 0) + amount
        return DegreeBudget(values)

    def restrict(self, vertices: Iterable[int]) -> "DegreeBudget":
        keep = set(vertices)
        return DegreeBudget({v: f for v, f in self._values.items() if v in keep})

    def merged(self, other: Mapping[int, int]) -> "DegreeBudget":
        """Values of ``other`` override or extend this budget."""
        values = dict(self._values)
        values.update(other)
        return DegreeBudget(values)

    def as_dict(self) -> Dict[int, int]:
        return dict(self._values)

    def __repr__(self) -> str:
        return f"DegreeBudget({dict(self._values)})"


def orientation_sign(d: Orientation) -> int:
    """``(-1)`` to the number of arcs pointing from a larger id to a smaller one."""
    backward = sum(1 for t, h in d.arcs if t > h)
    return -1 if backward % 2 else 1


def elimination_order(graph: Graph) -> Tuple[int, ...]:
    """
    Breadth-first vertex order, restarting at the smallest unvisited vertex.

    Processing edges in this order closes vertices early, which keeps both the
    coefficient frontier and the enumeration balance checks tight.
    """
    nx_graph = graph.to_networkx()
    order: List[int] = []
    seen = set()
    for root in graph.sorted_vertices:
        if root in seen:
            continue
        component = [root] + [w for _, w in nx.bfs_edges(nx_graph, root, sort_neighbors=sorted)]
        seen.update(component)
        order.extend(component)
    return tuple(order)


def _ordered_edges(graph: Graph, position: Mapping[int, int]) -> List[Edge]:
    return sorted(
        graph.edges,
        key=lambda e: (max(position[e[0]], position[e[1]]), min(position[e[0]], position[e[1]])),
    )


def _expand(
    graph: Graph,
    caps: Mapping[int, int],
    targets: Optional[Mapping[int, int]],
    limit: int,
) -> Tuple[Tuple[int, ...], Dict[Monomial, int]]:
    """
    Expand the edge-factor product keeping only monomials that can still reach the targets.

    Exponents are capped at ``caps``; with ``targets`` a monomial is also dropped
    once a vertex can no longer reach its target with its remaining edges.

    Returns:
        ``(order, terms)`` where monomials are exponent tuples indexed by ``order``
    """
    order = elimination_order(graph)
    position = {v: i for i, v in enumerate(order)}
    cap = [caps[v] for v in order]
    need = [targets[v] for v in order] if targets is not None else [0] * len(order)
    remaining = [graph.degree(v) for v in order]

    terms: Dict[Monomial, int] = {(0,) * len(order): 1}
    for u, v in _ordered_edges(graph, position):
        iu, iv = position[u], position[v]
        remaining[iu] -= 1
        remaining[iv] -= 1
        floor_u = need[iu] - remaining[iu]
        floor_v = need[iv] - remaining[iv]
        expanded: Dict[Monomial, int] = defaultdict(int)
        for mono, c in terms.items():
            eu, ev = mono[iu], mono[iv]
            if eu < cap[iu] and ev >= floor_v:
                bumped = list(mono)
                bumped[iu] = eu + 1
                expanded[tuple(bumped)] += c
            if ev < cap[iv] and eu >= floor_u:
                bumped = list(mono)
                bumped[iv] = ev + 1
                expanded[tuple(bumped)] -= c
        terms = {m: c for m, c in expanded.items() if c}
        if len(terms) > limit:
            raise OracleTooLargeError(
                f"Coefficient expansion exceeds {limit} monomials on a graph with {len(graph.edges)} edges"
            )
        if not terms:
            break
    return order, terms


@lru_cache(maxsize=8192)
def _coeff_cached(graph: Graph, degrees: Tuple[int, ...], limit: int) -> int:
    targets = dict(zip(graph.sorted_vertices, degrees))
    order, terms = _expand(graph, targets, targets, limit)
    return terms.get(tuple(targets[v] for v in order), 0)


def coeff(g: Graph, d: OutDegreeVector) -> int:
    """
    Signed coefficient of ``prod x_v^{d(v)}`` in ``prod_{uv, u<v} (x_u - x_v)``.

    Args:
        g: Graph whose polynomial is expanded
        d: Exponent per vertex; missing vertices mean 0

    Raises:
        InvalidInputError: If ``d`` names a vertex outside ``g``
        PreconditionError: If ``sum(d) != |E|``
        OracleTooLargeError: If the monomial map exceeds the configured cap
    """
    unknown = set(d) - g.vertices
    if unknown:
        raise InvalidInputError(f"Exponent vector names unknown vertices {sorted(unknown)}")
    degrees = tuple(int(d.get(v, 0)) for v in g.sorted_vertices)
    if sum(degrees) != len(g.edges):
        raise PreconditionError(f"Exponent sum {sum(degrees)} differs from |E| = {len(g.edges)}")
    if any(e < 0 or e > g.degree(v) for v, e in zip(g.sorted_vertices, degrees)):
        return 0
    return _coeff_cached(g, degrees, get_settings().coeff_term_cap)


def diff_coeff(d: Orientation) -> int:
    """``diff(D)`` through the graph polynomial, sign-normalized to match ``diff_enum``."""
    return orientation_sign(d) * coeff(d.base, d.out_degree)


def diff_enum(d: Orientation, cap: Optional[int] = None) -> EulerianCount:
    """
    Count even and odd Eulerian sub-digraphs by backtracking over the arcs.

    A vertex's in/out balance is checked as soon as its last incident arc has
    been decided, which prunes most branches early.

    Raises:
        OracleTooLargeError: If the orientation has more arcs than the cap
    """
    cap = get_settings().enum_arc_cap if cap is None else cap
    if len(d.arcs) > cap:
        raise OracleTooLargeError(f"Enumeration capped at {cap} arcs, orientation has {len(d.arcs)}")

    position = {v: i for i, v in enumerate(elimination_order(d.base))}
    arcs = [d.by_edge[e] for e in _ordered_edges(d.base, position)]
    closing: List[List[int]] = [[] for _ in arcs]
    last_seen: Dict[int, int] = {}
    for i, (t, h) in enumerate(arcs):
        last_seen[t] = i
        last_seen[h] = i
    for v, i in last_seen.items():
        closing[i].append(v)

    balance: Dict[int, int] = defaultdict(int)
    counts = [0, 0]

    def explore(i: int, size: int) -> None:
        if i == len(arcs):
            counts[size % 2] += 1
            return
        t, h = arcs[i]
        for take in (False, True):
            if take:
                balance[t] += 1
                balance[h] -= 1
            if all(balance[v] == 0 for v in closing[i]):
                explore(i + 1, size + take)
            if take:
                balance[t] -= 1
                balance[h] += 1

    explore(0, 0)
    return EulerianCount(counts[0], counts[1])


def diff_value(d: Orientation) -> int:
    """``diff(D)`` via the coefficient oracle, falling back to enumeration when the expansion is too large."""
    try:
        return diff_coeff(d)
    except OracleTooLargeError as exc:
        logger.warning(f"Coefficient oracle gave up ({exc}); falling back to enumeration")
        return diff_enum(d).diff


def is_f_AT(d: Orientation, f: Mapping[int, int]) -> bool:
    """True iff ``d+(v) <= f(v) - 1`` everywhere and ``diff(D) != 0``."""
    for v in d.vertices:
        if d.out_degree[v] > f.get(v, 0) - 1:
            return False
    return diff_value(d) != 0


def orientation_with_outdegrees(g: Graph, d: OutDegreeVector) -> Optional[Orientation]:
    """
    Realize a prescribed out-degree vector, or return None if none exists.

    Raises:
        PreconditionError: If ``sum(d) != |E|``
    """
    total = sum(d.get(v, 0) for v in g.vertices)
    if total != len(g.edges):
        raise PreconditionError(f"Out-degree sum {total} differs from |E| = {len(g.edges)}")
    if any(d.get(v, 0) < 0 for v in g.vertices):
        return None
    arcs = get_flow_service().realize(g, d)
    if arcs is None:
        return None
    return Orientation(g, arcs)


def _check_brute_force_size(g: Graph, cap: Optional[int]) -> None:
    cap = get_settings().brute_force_edge_cap if cap is None else cap
    if len(g.edges) > cap:
        raise OracleTooLargeError(f"Brute-force AT oracle capped at {cap} edges, graph has {len(g.edges)}")


def find_f_AT_orientation(g: Graph, f: Mapping[int, int], cap: Optional[int] = None) -> Optional[Orientation]:
    """
    Exhaustively look for an f-Alon-Tarsi orientation.

    Every monomial with ``d(v) <= f(v) - 1`` is expanded at once; the
    lexicographically smallest one with a nonzero coefficient is realized by flow.

    Returns:
        An orientation with nonzero diff and out-degrees below ``f``, or None
    """
    _check_brute_force_size(g, cap)
    if any(f.get(v, 0) <= 0 for v in g.vertices):
        return None
    caps = {v: min(f[v] - 1, g.degree(v)) for v in g.vertices}
    if sum(caps.values()) < len(g.edges):
        return None
    order, terms = _expand(g, caps, None, get_settings().coeff_term_cap)
    if not terms:
        return None
    position = {v: i for i, v in enumerate(order)}
    best = min(tuple(mono[position[v]] for v in g.sorted_vertices) for mono in terms)
    witness = orientation_with_outdegrees(g, dict(zip(g.sorted_vertices, best)))
    if witness is None:
        raise PreconditionError(f"Nonzero monomial {best} has no realizing orientation")
    logger.debug(f"f-AT witness with out-degrees {best}, diff {diff_coeff(witness)}")
    return witness


def at_number(g: Graph, cap: Optional[int] = None) -> int:
    """Smallest ``k`` such that ``g`` is ``k``-AT (1 for an edgeless graph)."""
    _check_brute_force_size(g, cap)
    if not g.edges:
        return 1
    top = max(g.degree(v) for v in g.vertices) + 1
    for k in range(2, top + 1):
        if find_f_AT_orientation(g, DegreeBudget.constant(g.vertices, k), cap) is not None:
            return k
    return top
