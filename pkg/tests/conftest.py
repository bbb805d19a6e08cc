"""Shared fixtures for the atcert test-suite."""

import random
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple

import pytest

from atcert.certify.at_core import DegreeBudget, Orientation
from atcert.certify.at_planar import at4_matching_certificate, at5_certificate
from atcert.config import reset_settings
from atcert.graph.generators import corpus, cycle, named
from atcert.graph.plane_graph import Graph, PlaneGraph
from atcert.schemas import Certificate

CORPUS = dict(corpus())


@pytest.fixture(autouse=True)
def fresh_settings():
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def triangle() -> PlaneGraph:
    return cycle(3)


@pytest.fixture
def tetrahedron() -> PlaneGraph:
    return named("tetrahedron")


def graph_of(edges: Iterable[Tuple[int, int]], vertices: Iterable[int] = ()) -> Graph:
    return Graph.from_edges(edges, vertices)


def complete_graph(n: int) -> Graph:
    return graph_of([(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])


def cycle_graph(n: int) -> Graph:
    return graph_of([(i, i % n + 1) for i in range(1, n + 1)])


def directed(arcs: Iterable[Tuple[int, int]], vertices: Iterable[int] = ()) -> Orientation:
    return Orientation.from_arcs(arcs, vertices)


def directed_cycle(n: int) -> Orientation:
    return directed([(i, i % n + 1) for i in range(1, n + 1)])


def random_orientation(g: Graph, rng: random.Random) -> Orientation:
    arcs = [(u, v) if rng.random() < 0.5 else (v, u) for u, v in g.sorted_edges]
    return Orientation(g, frozenset(arcs))


def random_subgraph(g: Graph, size: int, rng: random.Random) -> Graph:
    edges = rng.sample(list(g.sorted_edges), min(size, len(g.edges)))
    return Graph.from_edges(edges)


def all_orientations(g: Graph) -> List[Orientation]:
    edges = g.sorted_edges
    result = []
    for mask in range(2 ** len(edges)):
        arcs = [(u, v) if mask >> i & 1 else (v, u) for i, (u, v) in enumerate(edges)]
        result.append(Orientation(g, frozenset(arcs)))
    return result


def tight_budget(d: Orientation) -> DegreeBudget:
    return DegreeBudget({v: d.out_degree[v] + 1 for v in d.vertices})


@lru_cache(maxsize=None)
def corpus_certificate(label: str, kind: str) -> Certificate:
    g = CORPUS[label]
    return at5_certificate(g) if kind == "AT5" else at4_matching_certificate(g)


def out_degrees(c: Certificate) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    for t, _ in c.arcs:
        counts[t] = counts.get(t, 0) + 1
    return counts
