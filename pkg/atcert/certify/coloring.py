"""
Coloring Module
List-coloring oracles used to test consequences of certified AT budgets:
an f-AT graph is f-choosable.
"""

import logging
import random
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from ..config import get_settings
from ..exceptions import InvalidInputError, OracleTooLargeError
from ..graph.plane_graph import Graph
from ..schemas import ChoosabilityReport

logger = logging.getLogger(__name__)

Lists = Mapping[int, Iterable[int]]


def _check_vertex_cap(g: Graph, cap: int) -> None:
    if len(g.vertices) > cap:
        raise OracleTooLargeError(f"Coloring oracle capped at {cap} vertices, graph has {len(g.vertices)}")


def find_list_coloring(g: Graph, lists: Lists) -> Optional[Dict[int, int]]:
    """
    Backtracking search for a proper coloring with ``color(v) in lists[v]``.

    The uncolored vertex with the fewest remaining options is branched on first.
    """
    _check_vertex_cap(g, get_settings().coloring_vertex_cap)
    missing = g.vertices - set(lists)
    if missing:
        raise InvalidInputError(f"No list given for vertices {sorted(missing)}")
    options = {v: frozenset(lists[v]) for v in g.sorted_vertices}
    coloring: Dict[int, int] = {}

    def available(v: int) -> List[int]:
        taken = {coloring[u] for u in g.neighbors(v) if u in coloring}
        return sorted(options[v] - taken)

    def search() -> bool:
        if len(coloring) == len(options):
            return True
        best, best_choices = None, None
        for v in g.sorted_vertices:
            if v in coloring:
                continue
            choices = available(v)
            if best_choices is None or len(choices) < len(best_choices):
                best, best_choices = v, choices
                if not choices:
                    return False
        for color in best_choices:
            coloring[best] = color
            if search():
                return True
            del coloring[best]
        return False

    return dict(coloring) if search() else None


def list_coloring_exists(g: Graph, lists: Lists) -> bool:
    return find_list_coloring(g, lists) is not None


def sampled_choosability_check(g: Graph, f: Mapping[int, int], samples: int = 200, seed: int = 0) -> ChoosabilityReport:
    """
    Draw random list assignments with ``|L(v)| = f(v)`` from ``{0 .. sum(f) - 1}``.

    Any uncolorable assignment is returned as a counterexample; for a budget
    certified by an AT orientation that can only come from a bug.
    """
    _check_vertex_cap(g, get_settings().coloring_vertex_cap)
    universe = sum(f.get(v, 0) for v in g.vertices)
    empty = sorted(v for v in g.vertices if f.get(v, 0) <= 0)
    if empty:
        return ChoosabilityReport(
            ok=False, samples=0, seed=seed, universe=universe,
            reason=f"vertices {empty} have an empty list",
        )
    rng = random.Random(seed)
    for i in range(samples):
        lists = {v: sorted(rng.sample(range(universe), f[v])) for v in g.sorted_vertices}
        if not list_coloring_exists(g, lists):
            logger.error(f"Sample {i} (seed {seed}) is not colorable: {lists}")
            return ChoosabilityReport(
                ok=False, samples=i + 1, seed=seed, universe=universe,
                counterexample=lists, reason="uncolorable list assignment",
            )
    logger.info(f"All {samples} sampled list assignments colorable (seed {seed})")
    return ChoosabilityReport(ok=True, samples=samples, seed=seed, universe=universe)


def _assignments(order: Tuple[int, ...], f: Mapping[int, int]) -> Iterator[Dict[int, Tuple[int, ...]]]:
    """
    All list assignments up to renaming colors.

    Colors are introduced in increasing order: a vertex's list takes some already
    used colors plus the next unused ones.
    """
    lists: Dict[int, Tuple[int, ...]] = {}

    def extend(i: int, used: int) -> Iterator[Dict[int, Tuple[int, ...]]]:
        if i == len(order):
            yield dict(lists)
            return
        v = order[i]
        size = f[v]
        for reused in range(min(size, used) + 1):
            fresh = size - reused
            for old in combinations(range(used), reused):
                lists[v] = old + tuple(range(used, used + fresh))
                yield from extend(i + 1, used + fresh)
        lists.pop(v, None)

    yield from extend(0, 0)


def exhaustive_choosability(g: Graph, f: Mapping[int, int]) -> bool:
    """
    True iff every assignment of lists of sizes ``f`` admits a proper coloring.

    Raises:
        OracleTooLargeError: Above the vertex or total-budget caps
    """
    settings = get_settings()
    _check_vertex_cap(g, settings.exhaustive_vertex_cap)
    total = sum(f.get(v, 0) for v in g.vertices)
    if total > settings.exhaustive_budget_cap:
        raise OracleTooLargeError(f"Exhaustive choosability capped at total budget {settings.exhaustive_budget_cap}, got {total}")
    if any(f.get(v, 0) <= 0 for v in g.vertices):
        return False
    checked = 0
    for lists in _assignments(g.sorted_vertices, f):
        checked += 1
        if not list_coloring_exists(g, lists):
            logger.debug(f"Uncolorable assignment after {checked} checks: {lists}")
            return False
    logger.debug(f"Checked {checked} list assignments")
    return True
