"""
Generators Module
Deterministic plane-graph families used as the test and acceptance corpus.

All graphs use vertex ids starting at 1 and are built from consistently oriented
face lists (see ``PlaneGraph.from_faces``).
"""

import logging
import random
from typing import List, Optional, Sequence, Tuple

from ..exceptions import InvalidInputError
from .plane_graph import PlaneGraph

logger = logging.getLogger(__name__)

NAMED_GRAPHS = ("tetrahedron", "octahedron", "icosahedron", "cube")
KINDS = ("cycle", "wheel", "fan", "stacked", "named")

_SEED_MIN = -(2 ** 63)
_SEED_MAX = 2 ** 64 - 1


def _require_order(kind: str, n: Optional[int], minimum: int = 3) -> int:
    if n is None or n < minimum:
        raise InvalidInputError(f"{kind} needs n >= {minimum}, got {n}")
    return n


def cycle(n: int) -> PlaneGraph:
    """The cycle ``C_n`` on ``1..n``."""
    _require_order("cycle", n)
    inner = list(range(1, n + 1))
    return PlaneGraph.from_faces([inner, list(reversed(inner))], outer=1)


def wheel(n: int) -> PlaneGraph:
    """Rim ``1..n`` plus hub ``n+1``; the rim is the outer face."""
    _require_order("wheel", n)
    hub = n + 1
    faces = [[i, i % n + 1, hub] for i in range(1, n + 1)]
    faces.append(list(range(n, 0, -1)))
    return PlaneGraph.from_faces(faces)


def fan(n: int) -> PlaneGraph:
    """Path ``1..n-1`` plus apex ``n`` joined to every path vertex."""
    _require_order("fan", n)
    apex = n
    faces = [[i, i + 1, apex] for i in range(1, n - 1)]
    faces.append(list(range(n, 0, -1)))
    return PlaneGraph.from_faces(faces)


def stacked_triangulation(n: int, seed: int = 0) -> PlaneGraph:
    """
    Stacked (Apollonian) triangulation on ``n`` vertices.

    Starting from the triangle ``(1, 2, 3)``, each new vertex is inserted into an
    inner face chosen uniformly by a generator seeded with ``seed``.
    """
    _require_order("stacked", n)
    if not _SEED_MIN <= seed <= _SEED_MAX:
        raise InvalidInputError(f"Seed {seed} is not a 64-bit value")
    rng = random.Random(seed)
    inner: List[Tuple[int, int, int]] = [(1, 2, 3)]
    for v in range(4, n + 1):
        i = rng.randrange(len(inner))
        a, b, c = inner[i]
        inner[i] = (a, b, v)
        inner.append((b, c, v))
        inner.append((c, a, v))
    faces = [list(f) for f in inner] + [[3, 2, 1]]
    return PlaneGraph.from_faces(faces)


def _tetrahedron() -> List[List[int]]:
    return [[1, 2, 3], [1, 3, 4], [1, 4, 2], [2, 4, 3]]


def _octahedron() -> List[List[int]]:
    top, bottom, ring = 1, 6, [2, 3, 4, 5]
    faces = []
    for i in range(4):
        a, b = ring[i], ring[(i + 1) % 4]
        faces.append([top, a, b])
        faces.append([bottom, b, a])
    return faces


def _icosahedron() -> List[List[int]]:
    top, bottom = 1, 12
    upper = [2, 3, 4, 5, 6]
    lower = [7, 8, 9, 10, 11]
    faces = []
    for i in range(5):
        a, a_next = upper[i], upper[(i + 1) % 5]
        b, b_next = lower[i], lower[(i + 1) % 5]
        faces.append([top, a, a_next])
        faces.append([a, b, a_next])
        faces.append([a_next, b, b_next])
        faces.append([bottom, b_next, b])
    return faces


def _cube() -> List[List[int]]:
    return [
        [5, 6, 7, 8],
        [1, 2, 6, 5],
        [2, 3, 7, 6],
        [3, 4, 8, 7],
        [4, 1, 5, 8],
        [4, 3, 2, 1],
    ]


def named(name: str) -> PlaneGraph:
    """
    One of the named plane graphs.

    Polyhedra use their last listed face as the outer face (a triangle for the
    three triangulations, the square ``1234`` for the cube).
    """
    builders = {
        "tetrahedron": _tetrahedron,
        "octahedron": _octahedron,
        "icosahedron": _icosahedron,
        "cube": _cube,
    }
    if name not in builders:
        raise InvalidInputError(f"Unknown named graph '{name}'; choose from {', '.join(NAMED_GRAPHS)}")
    return PlaneGraph.from_faces(builders[name]())


def generate(kind: str, n: Optional[int] = None, seed: int = 0, name: Optional[str] = None) -> PlaneGraph:
    """
    Dispatch to a generator by kind.

    Args:
        kind: One of ``cycle``, ``wheel``, ``fan``, ``stacked``, ``named``
        n: Order parameter (``n >= 3``) for the parametric families
        seed: Seed for ``stacked``
        name: Graph name for ``named``

    Returns:
        The generated plane graph
    """
    if kind == "cycle":
        return cycle(_require_order(kind, n))
    if kind == "wheel":
        return wheel(_require_order(kind, n))
    if kind == "fan":
        return fan(_require_order(kind, n))
    if kind == "stacked":
        return stacked_triangulation(_require_order(kind, n), seed)
    if kind == "named":
        return named(name or "")
    raise InvalidInputError(f"Unknown generator kind '{kind}'; choose from {', '.join(KINDS)}")


def corpus(seeds: Sequence[int] = tuple(range(1, 11))) -> List[Tuple[str, PlaneGraph]]:
    """
    The acceptance corpus as ``(label, graph)`` pairs.

    Contains the named graphs, wheels W4..W9, fans on 4..9 vertices, stacked
    triangulations on 8 and 12 vertices for every seed, and cycles C4..C8.
    """
    graphs: List[Tuple[str, PlaneGraph]] = [(name, named(name)) for name in NAMED_GRAPHS]
    graphs += [(f"wheel-{n}", wheel(n)) for n in range(4, 10)]
    graphs += [(f"fan-{n}", fan(n)) for n in range(4, 10)]
    for n in (8, 12):
        graphs += [(f"stacked-{n}-s{seed}", stacked_triangulation(n, seed)) for seed in seeds]
    graphs += [(f"cycle-{n}", cycle(n)) for n in range(4, 9)]
    logger.debug(f"Built corpus of {len(graphs)} graphs")
    return graphs
