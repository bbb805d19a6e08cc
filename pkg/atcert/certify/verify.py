"""
Verify Module
Trust-nothing certificate checker.

The budget is rebuilt from the graph alone; the construction code is never
consulted, and the replay trace is ignored.
"""

import logging
from typing import Any, Dict, List, Optional, Set, Tuple

from ..config import get_settings
from ..exceptions import AtCertError, OracleTooLargeError
from ..graph.plane_graph import Edge, PlaneGraph, is_2_connected, normalize_edge, walk_darts
from ..schemas import Certificate, Verdict, graph_digest
from .at_core import Orientation, diff_coeff, diff_enum

logger = logging.getLogger(__name__)

CLAUSES = (
    "graph_digest",
    "e1_on_boundary",
    "matching_valid",
    "e1_in_matching",
    "arc_set",
    "budget_consistent",
    "out_degree",
    "diff_nonzero",
    "diff_matches",
    "oracle_agreement",
)


def expected_budget(g: PlaneGraph, kind: str, e1: Tuple[int, int], matching: Set[Edge]) -> Dict[int, int]:
    """
    Budget claimed by a certificate of ``kind``.

    On a 2-connected graph: ``v1`` gets 2 (AT5, the arc ``v1 -> v2`` is included) or 1
    (AT4M), ``v2`` gets 1, other outer vertices 3 (minus 1 if covered by the matching
    for AT4M), inner vertices 5 (AT5) or 4 (AT4M). Otherwise the constant 5 or 4.
    """
    plain = kind == "AT5"
    if not is_2_connected(g):
        return {v: 5 if plain else 4 for v in g.vertices}
    v1, v2 = e1
    outer = set(g.outer_face)
    covered = {x for e in matching for x in e}
    values = {}
    for v in g.vertices:
        if v == v1:
            values[v] = 2 if plain else 1
        elif v == v2:
            values[v] = 1
        elif v in outer:
            values[v] = 3 if plain or v not in covered else 2
        else:
            values[v] = 5 if plain else 4
    return values


def _matching_problems(g: PlaneGraph, edges: List[Edge]) -> List[str]:
    problems = []
    seen: Dict[int, Edge] = {}
    for edge in edges:
        if edge not in g.edges:
            problems.append(f"matching edge {list(edge)} is not an edge of the graph")
        for x in edge:
            if x in seen:
                problems.append(f"matching edges {list(seen[x])} and {list(edge)} share vertex {x}")
            seen[x] = edge
    if len(set(edges)) != len(edges):
        problems.append("matching lists an edge twice")
    return problems


def check_certificate(c: Certificate, g: PlaneGraph) -> Verdict:
    """
    Check every clause of a certificate against the graph it claims to describe.

    Returns:
        Verdict listing each clause as passed or failed; never raises on a bad
        certificate (only on oracle resource limits)
    """
    clauses: Dict[str, bool] = {}
    failures: List[str] = []
    details: Dict[str, Any] = {}

    def judge(name: str, ok: bool, message: Optional[str] = None) -> None:
        clauses[name] = ok
        if not ok:
            failures.append(f"{name}: {message}" if message else name)

    judge("graph_digest", c.graph_sha256 == graph_digest(g), "certificate belongs to another graph")

    e1 = normalize_edge(*c.e1) if c.e1[0] != c.e1[1] else None
    if e1 is None or e1 not in g.edges:
        judge("e1_on_boundary", False, f"{list(c.e1)} is not an edge")
    elif is_2_connected(g):
        outer_edges = {normalize_edge(u, v) for u, v in walk_darts(g.outer_face)}
        judge("e1_on_boundary", e1 in outer_edges, f"{list(c.e1)} is not on the outer face")
    else:
        details["e1_on_boundary"] = "skipped: graph is not 2-connected, e1 only checked to be an edge"
        judge("e1_on_boundary", True)

    matching = [normalize_edge(u, v) for u, v in c.matching if u != v]
    if c.kind == "AT5":
        judge("matching_valid", not c.matching, "AT5 certificates carry no matching")
        judge("e1_in_matching", True)
    else:
        problems = _matching_problems(g, matching) if len(matching) == len(c.matching) else ["loop in matching"]
        judge("matching_valid", not problems, "; ".join(problems))
        judge("e1_in_matching", e1 is not None and e1 in matching, "e1 is not matched")

    removed = set(matching) if c.kind == "AT4M" else set()
    base = g.graph.remove_edges(removed & g.edges)
    try:
        orientation: Optional[Orientation] = Orientation(base, frozenset((int(t), int(h)) for t, h in c.arcs))
        if len(c.arcs) != len(orientation.arcs):
            raise AtCertError("duplicate arcs")
        judge("arc_set", True)
    except AtCertError as exc:
        orientation = None
        judge("arc_set", False, str(exc))

    budget = expected_budget(g, c.kind, c.e1, removed) if e1 is not None else {}
    details["budget"] = budget
    judge("budget_consistent", dict(c.budget) == budget, "stored budget differs from the rebuilt one")

    if orientation is None or not budget:
        for name in ("out_degree", "diff_nonzero", "diff_matches", "oracle_agreement"):
            judge(name, False, "no valid orientation to check")
        return _verdict(c, clauses, failures, None, details)

    over = [v for v in sorted(g.vertices) if orientation.out_degree[v] > budget[v] - 1]
    judge("out_degree", not over, f"out-degree too large at {over}")
    details["max_out_degree"] = max(orientation.out_degree.values(), default=0)

    enumerated = None
    if len(orientation.arcs) <= get_settings().enum_arc_cap:
        enumerated = diff_enum(orientation).diff
    try:
        value = diff_coeff(orientation)
    except OracleTooLargeError:
        if enumerated is None:
            raise
        logger.warning("Coefficient oracle too large; using the enumerated diff alone")
        value = enumerated
    judge("diff_nonzero", value != 0, "diff is 0")
    judge("diff_matches", value == c.diff, f"recomputed diff {value}, certificate says {c.diff}")
    if enumerated is None:
        details["oracle_agreement"] = "skipped: above the enumeration cap"
        judge("oracle_agreement", True)
    else:
        judge("oracle_agreement", enumerated == value, f"enumeration {enumerated} vs coefficient {value}")
    return _verdict(c, clauses, failures, value, details)


def _verdict(c: Certificate, clauses: Dict[str, bool], failures: List[str], diff: Optional[int], details: Dict[str, Any]) -> Verdict:
    ok = all(clauses.get(name, False) for name in CLAUSES)
    if ok:
        logger.info(f"{c.kind} certificate verified (diff {diff})")
    else:
        logger.warning(f"{c.kind} certificate rejected: {failures}")
    return Verdict(ok=ok, kind=c.kind, clauses=clauses, failures=failures, diff=diff, details=details)
