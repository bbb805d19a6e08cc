"""
Witness Operations Module
Constructive versions of the edge-removal lemma, its forced and degree-2 variants,
one-way-cut unions and no-Eulerian arc insertion/removal.

Every operation consumes ``WitnessedGraph`` objects and returns new ones; each result
is revalidated on construction, so a wrong step surfaces as ``CertificateViolation``.
"""

import logging
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

from ..config import get_settings
from ..exceptions import CertificateViolation, PreconditionError
from ..graph.plane_graph import Arc, Graph, normalize_edge
from .at_core import DegreeBudget, Orientation, diff_enum, diff_value, orientation_with_outdegrees

logger = logging.getLogger(__name__)

Trace = Optional[List[Dict[str, Any]]]


def _record(trace: Trace, step: str, **data) -> None:
    if trace is not None:
        trace.append({"step": step, **data})


class WitnessedGraph:
    """
    A graph, a degree budget and an orientation certifying that the graph is budget-AT.

    Construction checks ``d+(v) <= f(v) - 1`` at every vertex and recomputes ``diff``
    with an independent oracle call; ``expected_diff`` pins the value a caller has
    derived by other means.
    """

    def __init__(
        self,
        graph: Graph,
        budget: Mapping[int, int],
        witness: Orientation,
        expected_diff: Optional[int] = None,
    ):
        if witness.base != graph:
            raise CertificateViolation("Witness does not orient the witnessed graph")
        missing = graph.vertices - set(budget)
        if missing:
            raise CertificateViolation(f"Budget undefined on vertices {sorted(missing)}")
        budget = DegreeBudget(budget).restrict(graph.vertices)
        over = [v for v in graph.sorted_vertices if witness.out_degree[v] > budget[v] - 1]
        if over:
            detail = {v: (witness.out_degree[v], budget[v]) for v in over}
            raise CertificateViolation(f"Out-degree exceeds budget - 1 at (out-degree, budget) {detail}")
        value = diff_value(witness)
        if value == 0:
            raise CertificateViolation("Witness orientation has diff 0")
        if expected_diff is not None and value != expected_diff:
            raise CertificateViolation(f"Witness diff {value} differs from the derived value {expected_diff}")
        self._graph = graph
        self._budget = budget
        self._witness = witness
        self._diff = value

    @property
    def graph(self) -> Graph:
        return self._graph

    @property
    def budget(self) -> DegreeBudget:
        return self._budget

    @property
    def witness(self) -> Orientation:
        return self._witness

    @property
    def diff_value(self) -> int:
        return self._diff

    def out_degree(self, v: int) -> int:
        return self._witness.out_degree[v]

    def with_budget(self, budget: Mapping[int, int]) -> "WitnessedGraph":
        """Same witness under another budget (fails if the witness no longer fits)."""
        return WitnessedGraph(self._graph, budget, self._witness, expected_diff=self._diff)

    def without_isolated(self, vertices: Iterable[int]) -> "WitnessedGraph":
        doomed = set(vertices)
        busy = [v for v in doomed if v in self._graph.vertices and self._graph.degree(v) > 0]
        if busy:
            raise PreconditionError(f"Vertices {sorted(busy)} are not isolated")
        return WitnessedGraph(
            self._graph.remove_vertices(doomed),
            self._budget.restrict(self._graph.vertices - doomed),
            self._witness.without_vertices(doomed),
            expected_diff=self._diff,
        )

    def __repr__(self) -> str:
        return (
            f"WitnessedGraph(|V|={len(self._graph.vertices)}, |E|={len(self._graph.edges)}, "
            f"diff={self._diff})"
        )


def remove_edge_keep_AT(w: WitnessedGraph, e: Tuple[int, int], trace: Trace = None) -> Tuple[WitnessedGraph, int]:
    """
    Delete edge ``uv`` and lower the budget at exactly one endpoint.

    The tail of the witness arc is tried first (same witness minus one arc). If that
    coefficient vanishes, ``coeff_G(d) = coeff_{G-e}(d - 1_u) - coeff_{G-e}(d - 1_v)``
    forces the head-reduced vector to be nonzero, and it is realized by flow.

    Returns:
        ``(witnessed G - e, reduced endpoint)``

    Raises:
        PreconditionError: If ``e`` is not an edge of the graph
        CertificateViolation: If neither branch yields a nonzero diff
    """
    edge = normalize_edge(*e)
    if edge not in w.graph.edges:
        raise PreconditionError(f"{edge} is not an edge of the witnessed graph")
    tail, head = w.witness.arc_for(*edge)
    reduced_graph = w.graph.remove_edges([edge])

    tail_witness = w.witness.without_arc((tail, head))
    value = diff_value(tail_witness)
    if value != 0:
        _record(trace, "edge-removal", edge=list(edge), branch="tail", reduced=tail)
        logger.debug(f"Removed {edge}: tail branch, reduced at {tail}")
        return WitnessedGraph(reduced_graph, w.budget.reduce(tail), tail_witness, expected_diff=value), tail

    target = dict(w.witness.out_degree)
    target[head] -= 1
    head_witness = orientation_with_outdegrees(reduced_graph, target) if target[head] >= 0 else None
    if head_witness is None:
        raise CertificateViolation(f"Neither endpoint of {edge} can absorb the removal")
    _record(trace, "edge-removal", edge=list(edge), branch="head", reduced=head)
    logger.debug(f"Removed {edge}: head branch, reduced at {head}")
    return WitnessedGraph(reduced_graph, w.budget.reduce(head), head_witness), head


def forced_edge_removal(w: WitnessedGraph, e: Tuple[int, int], trace: Trace = None) -> WitnessedGraph:
    """
    Delete edge ``e = (u, v)`` with the reduction forced onto ``u``.

    Valid when ``f(v) = 1``, or when ``f(v) = 2`` and ``v`` has another neighbour
    with budget 1.
    """
    u, v = e
    f = w.budget
    if v not in f or u not in f:
        raise PreconditionError(f"{e} has an endpoint outside the witnessed graph")
    partner_sink = any(f[x] == 1 for x in w.graph.neighbors(v) if x != u)
    if not (f[v] == 1 or (f[v] == 2 and partner_sink)):
        raise PreconditionError(f"Forced removal of {e} needs f({v}) = 1, or f({v}) = 2 with a budget-1 neighbour")
    result, reduced = remove_edge_keep_AT(w, e, trace)
    if reduced != u:
        raise CertificateViolation(f"Forced removal of {e} reduced at {reduced} instead of {u}")
    return result


def remove_arc_no_euler(w: WitnessedGraph, arc: Arc, trace: Trace = None) -> WitnessedGraph:
    """
    Delete an arc that lies in no Eulerian sub-digraph; the diff must not change.

    Raises:
        CertificateViolation: If the diff changes (the arc was on an Eulerian sub-digraph)
    """
    arc = (int(arc[0]), int(arc[1]))
    if arc not in w.witness.arcs:
        raise PreconditionError(f"Arc {arc} is not in the witness")
    _record(trace, "arc-remove", arc=list(arc))
    return WitnessedGraph(
        w.graph.remove_edges([arc]),
        w.budget,
        w.witness.without_arc(arc),
        expected_diff=w.diff_value,
    )


def add_arc_no_euler(
    w: WitnessedGraph,
    arc: Arc,
    new_budget: Optional[Mapping[int, int]] = None,
    trace: Trace = None,
) -> WitnessedGraph:
    """
    Add an arc into a sink. The diff is unchanged; the tail's budget rises by one by default.
    """
    tail, head = int(arc[0]), int(arc[1])
    if tail not in w.graph.vertices:
        raise PreconditionError(f"Tail {tail} is not a vertex of the witnessed graph")
    if w.graph.has_edge(tail, head):
        raise PreconditionError(f"Edge {normalize_edge(tail, head)} is already present")
    if head in w.graph.vertices and not w.witness.is_sink(head):
        raise PreconditionError(f"Head {head} is not a sink (out-degree {w.out_degree(head)})")
    if new_budget is None:
        new_budget = w.budget.raise_at(tail)
        if head not in new_budget:
            new_budget = new_budget.merged({head: 1})
    _record(trace, "arc-add", arc=[tail, head])
    return WitnessedGraph(
        w.graph.add_edges([(tail, head)], [head]),
        new_budget,
        w.witness.with_arcs([(tail, head)], [head]),
        expected_diff=w.diff_value,
    )


def remove_deg2_vertex_keep_AT(
    w: WitnessedGraph,
    x: int,
    first: Optional[int] = None,
    trace: Trace = None,
) -> Tuple[WitnessedGraph, int]:
    """
    Delete a degree-2 vertex ``x`` with ``f(x) = 2``, lowering the budget of one neighbour.

    Edge ``x-first`` goes first. If that reduces at ``first``, ``x`` is left pendant:
    its last arc lies in no Eulerian sub-digraph and is dropped together with ``x``.
    If it reduces at ``x`` (now ``f(x) = 1``), the other edge is removed with the
    reduction forced onto the other neighbour.

    Args:
        w: Witnessed graph containing ``x``
        x: Vertex to delete
        first: Neighbour whose edge is removed first (smallest neighbour by default)
        trace: Optional list collecting step records

    Returns:
        ``(witnessed G - x, neighbour whose budget dropped)``
    """
    if x not in w.graph.vertices or w.graph.degree(x) != 2:
        raise PreconditionError(f"Vertex {x} does not have degree 2")
    if w.budget[x] != 2:
        raise PreconditionError(f"Vertex {x} has budget {w.budget[x]}, expected 2")
    a, b = sorted(w.graph.neighbors(x))
    first = a if first is None else first
    if first not in (a, b):
        raise PreconditionError(f"{first} is not a neighbour of {x}")
    other = b if first == a else a

    step, reduced = remove_edge_keep_AT(w, (x, first), trace)
    if reduced == first:
        pendant = step.witness.arc_for(x, other)
        step = remove_arc_no_euler(step, pendant)
        _record(trace, "pendant-drop", vertex=x, arc=list(pendant))
        absorbed = first
    else:
        step = forced_edge_removal(step, (other, x), trace)
        absorbed = other
    _record(trace, "degree2-removal", vertex=x, reduced=absorbed)
    return step.without_isolated([x]), absorbed


def union_one_way(
    wX: WitnessedGraph,
    wY: WitnessedGraph,
    cross_arcs: Iterable[Arc] = (),
    shared: Iterable[int] = (),
    budget: Optional[Mapping[int, int]] = None,
    trace: Trace = None,
) -> WitnessedGraph:
    """
    Glue two witnessed graphs whose connecting arcs all point from the X side to Y.

    ``shared`` vertices belong to both parts; they must be sinks in ``wX`` so that
    every arc of ``wX`` touching them is also a cut arc. The combined diff is the
    product of the two parts' diffs.

    Args:
        wX: Source side
        wY: Target side
        cross_arcs: Extra arcs from X-only vertices to vertices of Y
        shared: Vertices present in both parts
        budget: Budget of the union; by default shared vertices get ``fX + fY - 1``
            and X-only vertices gain one per cross arc they send
        trace: Optional list collecting step records
    """
    shared_set = set(shared)
    overlap = wX.graph.vertices & wY.graph.vertices
    if overlap != shared_set:
        raise PreconditionError(f"Parts overlap in {sorted(overlap)}, declared {sorted(shared_set)}")
    if wX.graph.edges & wY.graph.edges:
        raise PreconditionError("Parts share edges")
    not_sinks = [v for v in sorted(shared_set) if not wX.witness.is_sink(v)]
    if not_sinks:
        raise PreconditionError(f"Shared vertices {not_sinks} are not sinks on the source side")

    x_only = wX.graph.vertices - shared_set
    cross = [(int(t), int(h)) for t, h in cross_arcs]
    for t, h in cross:
        if t not in x_only or h not in wY.graph.vertices:
            raise PreconditionError(f"Cross arc {(t, h)} does not point from X to Y")

    witness = Orientation(
        wX.graph.union(wY.graph).add_edges(cross),
        wX.witness.arcs | wY.witness.arcs | frozenset(cross),
    )
    if budget is None:
        values = wY.budget.as_dict()
        for v in x_only:
            values[v] = wX.budget[v] + sum(1 for t, _ in cross if t == v)
        for v in shared_set:
            values[v] = wX.budget[v] + wY.budget[v] - 1
        budget = values

    expected = wX.diff_value * wY.diff_value
    if len(witness.arcs) <= get_settings().enum_assert_arc_limit:
        enumerated = diff_enum(witness).diff
        if enumerated != expected:
            raise CertificateViolation(f"One-way union diff {enumerated} is not the product {expected}")
    _record(trace, "one-way-union", shared=sorted(shared_set), cross=len(cross), diff=expected)
    return WitnessedGraph(witness.base, budget, witness, expected_diff=expected)


def restrict_witness(w: WitnessedGraph, target: Graph, trace: Trace = None) -> WitnessedGraph:
    """
    Restrict a witness to a subgraph by removing the extra edges one at a time.

    Budgets only decrease, so the original budget (restricted) still dominates.
    """
    if not target.is_subgraph_of(w.graph):
        raise PreconditionError("Restriction target is not a subgraph of the witnessed graph")
    for edge in sorted(w.graph.edges - target.edges):
        w, _ = remove_edge_keep_AT(w, edge, trace)
    extra = w.graph.vertices - target.vertices
    if extra:
        w = w.without_isolated(extra)
    return w
