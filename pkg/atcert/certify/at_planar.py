"""
AT Planar Module
The boundary induction on near-triangulations and the top-level planar pipelines
producing AT <= 5 and matching AT <= 4 certificates.

The induction carries a ``WitnessedGraph`` for ``G - e1`` (or ``G - M``) whose budget
is the boundary budget of ``G``; general inputs are triangulated first and the final
witness is restricted back to the input graph.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

from ..config import get_settings
from ..exceptions import CertificateViolation, InvalidInputError, PreconditionError
from ..graph.plane_graph import (
    Arc,
    BoundaryWalk,
    Edge,
    PlaneGraph,
    boundary,
    delete_boundary_vertex,
    find_chord,
    is_2_connected,
    is_near_triangulation,
    normalize_edge,
    split_at_chord,
    triangulate_all_faces,
    triangulate_inner_faces,
    walk_darts,
)
from ..schemas import Certificate, TraceStep, graph_digest
from .at_core import DegreeBudget, Orientation, diff_enum
from .witness_ops import (
    WitnessedGraph,
    add_arc_no_euler,
    remove_arc_no_euler,
    remove_deg2_vertex_keep_AT,
    restrict_witness,
    union_one_way,
)

logger = logging.getLogger(__name__)

AT5 = "AT5"
AT4M = "AT4M"


class Matching:
    """A set of pairwise vertex-disjoint edges."""

    def __init__(self, edges: Iterable[Tuple[int, int]] = ()):
        normalized = sorted({normalize_edge(u, v) for u, v in edges})
        covered: Dict[int, Edge] = {}
        for edge in normalized:
            for x in edge:
                if x in covered:
                    raise InvalidInputError(f"Edges {covered[x]} and {edge} share vertex {x}")
                covered[x] = edge
        self._edges = frozenset(normalized)
        self._covered = covered

    @property
    def edges(self) -> FrozenSet[Edge]:
        return self._edges

    @property
    def sorted_edges(self) -> List[Edge]:
        return sorted(self._edges)

    def covers(self, v: int) -> int:
        """``d_M(v)``: 1 if ``v`` is covered, else 0."""
        return 1 if v in self._covered else 0

    def add(self, edge: Tuple[int, int]) -> "Matching":
        return Matching(self._edges | {normalize_edge(*edge)})

    def union(self, other: "Matching") -> "Matching":
        return Matching(self._edges | other.edges)

    def without(self, edge: Tuple[int, int]) -> "Matching":
        return Matching(self._edges - {normalize_edge(*edge)})

    def restricted_to(self, edges: Iterable[Edge]) -> "Matching":
        return Matching(self._edges & frozenset(edges))

    def __contains__(self, edge: Tuple[int, int]) -> bool:
        return normalize_edge(*edge) in self._edges

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.sorted_edges)

    def __len__(self) -> int:
        return len(self._edges)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matching) and self._edges == other.edges

    def __hash__(self) -> int:
        return hash(self._edges)

    def __repr__(self) -> str:
        return f"Matching({self.sorted_edges})"


class BoundaryBudget(DegreeBudget):
    """
    The boundary budget of a plane graph with designated outer edge ``v1v2``.

    Plain: 1 on ``v1, v2``, 3 on the other boundary vertices, 5 inside.
    With a matching: 1 on ``v1, v2``, ``3 - d_M`` on the other boundary vertices, 4 inside.
    """

    def __init__(self, g: PlaneGraph, walk: BoundaryWalk, matching: Optional[Matching] = None):
        self.walk = walk
        self.matching = matching
        on_boundary = set(walk.vertices)
        interior = 5 if matching is None else 4
        values = {}
        for v in g.vertices:
            if v in (walk.v1, walk.v2):
                values[v] = 1
            elif v in on_boundary:
                values[v] = 3 - (matching.covers(v) if matching is not None else 0)
            else:
                values[v] = interior
        super().__init__(values)


@dataclass(frozen=True)
class GadgetRecord:
    """
    The paths added around a peeled boundary vertex ``vn``.

    ``interior[i]`` is ``u_{i+1}`` and ``gadget[i]`` its path vertex ``w_{i+1}``.
    """

    vn: int
    v1: int
    v_prev: int
    interior: Tuple[int, ...]
    gadget: Tuple[int, ...]

    @property
    def direct_arcs(self) -> Tuple[Arc, ...]:
        return tuple((u, self.vn) for u in self.interior)

    @property
    def path_in_arcs(self) -> Tuple[Arc, ...]:
        return tuple((u, w) for u, w in zip(self.interior, self.gadget))

    @property
    def path_out_arcs(self) -> Tuple[Arc, ...]:
        return tuple((w, self.vn) for w in self.gadget)

    @property
    def b1(self) -> Arc:
        return (self.vn, self.v_prev)

    @property
    def b2(self) -> Arc:
        return (self.vn, self.v1)

    @property
    def arcs(self) -> Tuple[Arc, ...]:
        """The arc set ``Z``."""
        return self.direct_arcs + self.path_in_arcs + self.path_out_arcs + (self.b1, self.b2)

    def to_json(self) -> Dict[str, Any]:
        return {
            "vn": self.vn,
            "interior": list(self.interior),
            "gadget": list(self.gadget),
            "b1": list(self.b1),
            "b2": list(self.b2),
        }


@dataclass(frozen=True)
class BudgetCheck:
    """Pointwise comparison ``d+(v) + 1 <= target(v)``; falsy when some vertex exceeds its target."""

    ok: bool
    offending: Tuple[int, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok


def budget_check(w: WitnessedGraph, target: Mapping[int, int]) -> BudgetCheck:
    offending = tuple(
        v for v in w.graph.sorted_vertices if w.out_degree(v) + 1 > target.get(v, 0)
    )
    return BudgetCheck(not offending, offending)


def case2_gadget_build(w: WitnessedGraph, peel: GadgetRecord, trace: Optional[List[Dict[str, Any]]] = None) -> WitnessedGraph:
    """
    Extend a witness on ``G' - (e1 or M1)`` by the arc set ``Z`` of a peel.

    Eulerian sub-digraphs through ``vn`` pair up (direct arc against the two-arc
    path) with opposite parities, so the diff is unchanged. The returned budget is
    tight: ``g(v) = d+(v) + 1``.
    """
    fresh = {peel.vn, *peel.gadget}
    clash = sorted(fresh & w.graph.vertices)
    if clash:
        raise PreconditionError(f"Gadget vertices {clash} already occur in the witnessed graph")
    arcs = peel.arcs
    witness = w.witness.with_arcs(arcs, fresh)
    if len(witness.arcs) <= get_settings().enum_assert_arc_limit:
        before = diff_enum(w.witness).diff
        after = diff_enum(witness).diff
        if before != after:
            raise CertificateViolation(f"Gadget changed the enumerated diff from {before} to {after}")
        logger.debug(f"Gadget parity confirmed by enumeration (diff {after})")
    tight = {v: witness.out_degree[v] + 1 for v in witness.vertices}
    if trace is not None:
        trace.append({"step": "gadget", "arcs": len(arcs), **peel.to_json()})
    return WitnessedGraph(witness.base, tight, witness, expected_diff=w.diff_value)


@dataclass
class InductionStats:
    base_cases: int = 0
    chord_splits: int = 0
    peels: int = 0
    vn_reductions: int = 0
    matching_extensions: int = 0


class InductionRun:
    """
    One run of the boundary induction; collects the replay trace and step counts.

    Each recursive call returns a witnessed graph whose budget is exactly the
    boundary budget of its near-triangulation.
    """

    def __init__(self):
        self.trace: List[Dict[str, Any]] = []
        self.stats = InductionStats()

    def _record(self, step: str, **data) -> None:
        self.trace.append({"step": step, **data})

    @staticmethod
    def _check_input(g: PlaneGraph, e1: Tuple[int, int]) -> BoundaryWalk:
        if not is_near_triangulation(g):
            raise PreconditionError("The induction runs on 2-connected near-triangulations only")
        return boundary(g, e1)

    def _base_witness(self, g: PlaneGraph, b: BoundaryWalk) -> WitnessedGraph:
        v1, v2, v3 = b.vertices
        base = g.graph.remove_edges([b.e1])
        witness = Orientation(base, frozenset({(v3, v1), (v3, v2)}))
        self.stats.base_cases += 1
        self._record("base", vertices=[v1, v2, v3])
        return WitnessedGraph(base, BoundaryBudget(g, b), witness, expected_diff=1)

    def _relax(self, w: WitnessedGraph, target: BoundaryBudget, where: str) -> WitnessedGraph:
        check = budget_check(w, target)
        if not check:
            raise CertificateViolation(
                f"{where}: witness exceeds the boundary budget at {list(check.offending)}"
            )
        return w.with_budget(target)

    def _peel_record(self, g: PlaneGraph, b: BoundaryWalk) -> Tuple[PlaneGraph, GadgetRecord]:
        reduced, around = delete_boundary_vertex(g, b.vn, b)
        interior = tuple(around[1:-1])
        top = max(g.vertices)
        gadget = tuple(top + 1 + i for i in range(len(interior)))
        return reduced, GadgetRecord(b.vn, b.v1, b.v_prev, interior, gadget)

    def prove_at(self, g: PlaneGraph, e1: Tuple[int, int]) -> WitnessedGraph:
        """Witnessed ``G - e1`` under the plain boundary budget."""
        b = self._check_input(g, e1)
        target = BoundaryBudget(g, b)
        if len(g.vertices) == 3:
            return self._base_witness(g, b)

        chord = find_chord(g, b)
        if chord is not None:
            split = split_at_chord(g, chord, b)
            self.stats.chord_splits += 1
            self._record(
                "chord-split",
                chord=list(chord),
                sizes=[len(g.vertices), len(split.part1.vertices), len(split.part2.vertices)],
            )
            w1 = self.prove_at(split.part1, b.e1)
            w2 = self.prove_at(split.part2, chord)
            combined = union_one_way(w2, w1, shared=chord, trace=self.trace)
            return self._relax(combined, target, f"chord {chord}")

        reduced, peel = self._peel_record(g, b)
        self.stats.peels += 1
        self._record("peel", vertex=peel.vn, sizes=[len(g.vertices), len(reduced.vertices)])
        w1 = self.prove_at(reduced, b.e1)
        extended = case2_gadget_build(w1, peel, self.trace)
        restricted = restrict_witness(extended, g.graph.remove_edges([b.e1]), self.trace)
        return self._relax(restricted, target, f"peel {peel.vn}")

    def prove_matching(self, g: PlaneGraph, e1: Tuple[int, int]) -> Tuple[Matching, WitnessedGraph]:
        """A matching ``M`` containing ``e1`` and witnessed ``G - M`` under the matching boundary budget."""
        b = self._check_input(g, e1)
        if len(g.vertices) == 3:
            matching = Matching([b.e1])
            w = self._base_witness(g, b)
            return matching, w.with_budget(BoundaryBudget(g, b, matching))

        chord = find_chord(g, b)
        if chord is not None:
            split = split_at_chord(g, chord, b)
            self.stats.chord_splits += 1
            self._record(
                "chord-split",
                chord=list(chord),
                sizes=[len(g.vertices), len(split.part1.vertices), len(split.part2.vertices)],
            )
            m1, w1 = self.prove_matching(split.part1, b.e1)
            m2, w2 = self.prove_matching(split.part2, chord)
            matching = m1.union(m2.without(chord))
            combined = union_one_way(w2, w1, shared=chord, trace=self.trace)
            return matching, self._relax(combined, BoundaryBudget(g, b, matching), f"chord {chord}")

        reduced, peel = self._peel_record(g, b)
        self.stats.peels += 1
        self._record("peel", vertex=peel.vn, sizes=[len(g.vertices), len(reduced.vertices)])
        m1, w1 = self.prove_matching(reduced, b.e1)
        current = case2_gadget_build(w1, peel, self.trace)

        vn_hits: List[int] = []
        for u, x in reversed(list(zip(peel.interior, peel.gadget))):
            current, reduced_at = remove_deg2_vertex_keep_AT(current, x, first=u, trace=self.trace)
            if reduced_at == peel.vn:
                vn_hits.append(u)
                if len(vn_hits) > 1 or current.budget[peel.vn] < 2:
                    raise CertificateViolation(
                        f"Peel of {peel.vn}: budget reduced at {peel.vn} more than once ({vn_hits})"
                    )
        self.stats.vn_reductions += len(vn_hits)

        matching = m1
        if vn_hits and not m1.covers(vn_hits[0]):
            u = vn_hits[0]
            arc = current.witness.arc_for(u, peel.vn)
            if arc != (u, peel.vn):
                raise CertificateViolation(f"Edge {u}-{peel.vn} is not oriented into {peel.vn}")
            matching = m1.add((u, peel.vn))
            current = remove_arc_no_euler(current, arc, self.trace)
            self.stats.matching_extensions += 1
            self._record("matching-extend", edge=list(normalize_edge(u, peel.vn)))
        return matching, self._relax(current, BoundaryBudget(g, b, matching), f"peel {peel.vn}")


def thm_main_at(g: PlaneGraph, e1: Tuple[int, int], run: Optional[InductionRun] = None) -> WitnessedGraph:
    """
    Witness that ``G - e1`` is AT under the plain boundary budget.

    Args:
        g: A 2-connected near-triangulation
        e1: Outer edge ``(v1, v2)``
        run: Run collecting the trace (a fresh one by default)
    """
    return (run or InductionRun()).prove_at(g, e1)


def thm_main_matching(
    g: PlaneGraph, e1: Tuple[int, int], run: Optional[InductionRun] = None
) -> Tuple[Matching, WitnessedGraph]:
    """Matching ``M`` containing ``e1`` with ``G - M`` witnessed under the matching boundary budget."""
    return (run or InductionRun()).prove_matching(g, e1)


@dataclass(frozen=True)
class PreparedGraph:
    """The input graph, its near-triangulation and the chosen outer edge."""

    graph: PlaneGraph
    triangulation: PlaneGraph
    e1: Tuple[int, int]
    two_connected: bool


def prepare(g: PlaneGraph) -> PreparedGraph:
    """
    Triangulate ``g`` and pick ``e1``: the smallest edge of ``g`` on the triangulation's outer face.

    2-connected inputs keep their outer face; connected ones are fully triangulated.
    """
    if len(g.vertices) < 3:
        raise PreconditionError("Certificates need a plane graph with at least 3 vertices")
    two_connected = is_2_connected(g)
    if two_connected:
        triangulation = triangulate_inner_faces(g)
    else:
        triangulation = triangulate_all_faces(g)
    candidates = [
        normalize_edge(u, v)
        for u, v in walk_darts(triangulation.outer_face)
        if g.graph.has_edge(u, v)
    ]
    if not candidates:
        raise PreconditionError("No edge of the input lies on the triangulated outer face")
    e1 = min(candidates)
    logger.info(
        f"Triangulated {len(g.edges)} -> {len(triangulation.edges)} edges, "
        f"e1={e1}, 2-connected={two_connected}"
    )
    return PreparedGraph(g, triangulation, e1, two_connected)


def certificate_budget(g: PlaneGraph, kind: str, e1: Tuple[int, int], matching: Optional[Matching] = None) -> DegreeBudget:
    """
    The budget a certificate of ``kind`` claims on ``g``.

    2-connected inputs get the boundary budget of ``g`` (for AT5 with ``v1`` raised
    to 2 because the arc ``v1 -> v2`` is part of the orientation); other inputs get
    the constant 5 or 4.
    """
    if not is_2_connected(g):
        return DegreeBudget.constant(g.vertices, 5 if kind == AT5 else 4)
    b = boundary(g, e1)
    if kind == AT5:
        return BoundaryBudget(g, b).raise_at(b.v1)
    return BoundaryBudget(g, b, matching or Matching([e1]))


def _build_certificate(
    prepared: PreparedGraph,
    kind: str,
    w: WitnessedGraph,
    matching: Optional[Matching],
    run: InductionRun,
) -> Certificate:
    budget = certificate_budget(prepared.graph, kind, prepared.e1, matching)
    final = w.with_budget(budget)
    run.trace.append({"step": "final", "kind": kind, "diff": final.diff_value})
    logger.info(f"Induction steps: {asdict(run.stats)}")
    logger.info(
        f"{kind} certificate: |V|={len(final.graph.vertices)}, arcs={len(final.witness.arcs)}, "
        f"max out-degree={max(final.witness.out_degree.values(), default=0)}, diff={final.diff_value}"
    )
    return Certificate(
        kind=kind,
        graph_sha256=graph_digest(prepared.graph),
        e1=prepared.e1,
        arcs=list(final.witness.sorted_arcs),
        budget=final.budget.as_dict(),
        matching=matching.sorted_edges if matching is not None else [],
        diff=final.diff_value,
        trace=[TraceStep(**record) for record in run.trace],
    )


def at5_certificate(g: PlaneGraph) -> Certificate:
    """
    Orientation of ``g`` with maximum out-degree at most 4 and nonzero diff.

    The induction witnesses ``T - e1``; ``e1`` goes back in as ``v1 -> v2`` (``v2``
    is a sink) and the witness is restricted to ``g``.
    """
    prepared = prepare(g)
    run = InductionRun()
    logger.info("Running the boundary induction (AT5)")
    w = thm_main_at(prepared.triangulation, prepared.e1, run)
    v1, v2 = prepared.e1
    w = add_arc_no_euler(w, (v1, v2), trace=run.trace)
    logger.info("Restricting the witness to the input graph")
    w = restrict_witness(w, prepared.graph.graph, run.trace)
    return _build_certificate(prepared, AT5, w, None, run)


def at4_matching_certificate(g: PlaneGraph) -> Certificate:
    """
    A matching ``M`` of ``g`` and an orientation of ``g - M`` with maximum out-degree
    at most 3 and nonzero diff.
    """
    prepared = prepare(g)
    run = InductionRun()
    logger.info("Running the boundary induction (AT4M)")
    matching, w = thm_main_matching(prepared.triangulation, prepared.e1, run)
    kept = matching.restricted_to(prepared.graph.edges)
    logger.info(f"Matching {matching.sorted_edges} keeps {kept.sorted_edges} in the input graph")
    w = restrict_witness(w, prepared.graph.graph.remove_edges(kept.edges), run.trace)
    return _build_certificate(prepared, AT4M, w, kept, run)


def build_certificate(g: PlaneGraph, kind: str) -> Certificate:
    if kind == AT5:
        return at5_certificate(g)
    if kind == AT4M:
        return at4_matching_certificate(g)
    raise InvalidInputError(f"Unknown certificate kind '{kind}'")
