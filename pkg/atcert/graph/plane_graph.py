"""
Plane Graph Module
Immutable graphs with rotation systems and the structural operations the induction needs.

Conventions:
    - Edges are stored normalized as ``(u, v)`` with ``u < v``.
    - ``rotation[v]`` lists the neighbours of ``v`` counterclockwise.
    - Faces are traced with the face on the left: arriving at ``v`` from ``u`` the walk
      leaves along the neighbour that precedes ``u`` in ``rotation[v]``. Inner faces of a
      drawing therefore come out counterclockwise and the outer face clockwise.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from ..exceptions import (
    EmbeddingError,
    InvalidInputError,
    NotTwoConnectedError,
    PreconditionError,
)

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
Arc = Tuple[int, int]
Dart = Tuple[int, int]
Walk = Tuple[int, ...]


def normalize_edge(u: int, v: int) -> Edge:
    """Return the edge ``uv`` as ``(min, max)``."""
    if u == v:
        raise InvalidInputError(f"Loop at vertex {u} is not allowed")
    return (u, v) if u < v else (v, u)


def walk_darts(walk: Sequence[int]) -> List[Dart]:
    """Consecutive (closing) dart pairs of a closed walk."""
    m = len(walk)
    return [(walk[i], walk[(i + 1) % m]) for i in range(m)]


def _canonical_cycle(seq: Sequence[int]) -> Tuple[int, ...]:
    """Rotate a cyclic sequence so that it starts at its smallest element."""
    if not seq:
        return ()
    i = seq.index(min(seq))
    return tuple(seq[i:]) + tuple(seq[:i])


def _canonical_walk(walk: Sequence[int]) -> Walk:
    """Rotate a closed walk so that it starts with its smallest dart."""
    if len(walk) < 2:
        return tuple(walk)
    darts = walk_darts(walk)
    i = darts.index(min(darts))
    return tuple(walk[i:]) + tuple(walk[:i])


@dataclass(frozen=True)
class Graph:
    """
    Abstract simple undirected graph.

    Used wherever no embedding is needed: ``G - e1``, ``G - M`` and the gadget
    graphs of the peeling step.
    """

    vertices: FrozenSet[int]
    edges: FrozenSet[Edge]

    def __post_init__(self):
        for u, v in self.edges:
            if u >= v:
                raise InvalidInputError(f"Edge {(u, v)} is not normalized")
            if u not in self.vertices or v not in self.vertices:
                raise InvalidInputError(f"Edge {(u, v)} has an endpoint outside the vertex set")

    @classmethod
    def from_edges(cls, edges: Iterable[Tuple[int, int]], vertices: Iterable[int] = ()) -> "Graph":
        normalized = frozenset(normalize_edge(u, v) for u, v in edges)
        vertex_set = frozenset(vertices) | {x for e in normalized for x in e}
        return cls(vertex_set, normalized)

    @cached_property
    def adjacency(self) -> Mapping[int, FrozenSet[int]]:
        adj: Dict[int, set] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return MappingProxyType({v: frozenset(adj[v]) for v in sorted(adj)})

    @cached_property
    def sorted_vertices(self) -> Tuple[int, ...]:
        return tuple(sorted(self.vertices))

    @cached_property
    def sorted_edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and normalize_edge(u, v) in self.edges

    def remove_edges(self, edges: Iterable[Tuple[int, int]]) -> "Graph":
        doomed = {normalize_edge(u, v) for u, v in edges}
        return Graph(self.vertices, self.edges - doomed)

    def remove_vertices(self, vertices: Iterable[int]) -> "Graph":
        doomed = set(vertices)
        return Graph(
            self.vertices - doomed,
            frozenset(e for e in self.edges if e[0] not in doomed and e[1] not in doomed),
        )

    def add_edges(self, edges: Iterable[Tuple[int, int]], vertices: Iterable[int] = ()) -> "Graph":
        extra = Graph.from_edges(edges, vertices)
        return self.union(extra)

    def union(self, other: "Graph") -> "Graph":
        return Graph(self.vertices | other.vertices, self.edges | other.edges)

    def is_subgraph_of(self, other: "Graph") -> bool:
        return self.vertices <= other.vertices and self.edges <= other.edges

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.sorted_vertices)
        g.add_edges_from(self.sorted_edges)
        return g

    def __repr__(self) -> str:
        return f"Graph(|V|={len(self.vertices)}, |E|={len(self.edges)})"


def _next_dart(rotation: Mapping[int, Sequence[int]], dart: Dart) -> Dart:
    u, v = dart
    around = rotation[v]
    return (v, around[(around.index(u) - 1) % len(around)])


def _trace_face_from(rotation: Mapping[int, Sequence[int]], start: Dart) -> Walk:
    """Trace the face to the left of ``start``."""
    limit = 2 * sum(len(r) for r in rotation.values()) + 1
    walk = []
    dart = start
    for _ in range(limit):
        walk.append(dart[0])
        dart = _next_dart(rotation, dart)
        if dart == start:
            return tuple(walk)
    raise EmbeddingError(f"Face walk from dart {start} does not close")


def _trace_all_faces(rotation: Mapping[int, Sequence[int]]) -> Tuple[Walk, ...]:
    visited = set()
    faces = []
    for u in sorted(rotation):
        for v in rotation[u]:
            if (u, v) in visited:
                continue
            walk = _trace_face_from(rotation, (u, v))
            visited.update(walk_darts(walk))
            faces.append(walk)
    return tuple(faces)


class PlaneGraph:
    """
    Immutable plane graph given by a rotation system and a designated outer face.

    Vertex ids are stable across every structural operation; subgraphs keep the ids
    of the graph they came from.
    """

    def __init__(self, rotation: Mapping[int, Sequence[int]], outer_face: Sequence[int]):
        """
        Build and validate a plane graph.

        Args:
            rotation: Mapping vertex -> neighbours in counterclockwise order
            outer_face: Closed walk of the outer face (first vertex not repeated)

        Raises:
            EmbeddingError: If the rotation system or outer face is inconsistent
        """
        self._rotation = MappingProxyType(
            {int(v): _canonical_cycle([int(x) for x in rotation[v]]) for v in sorted(rotation)}
        )
        self._outer_face = _canonical_walk([int(x) for x in outer_face])
        self._validate()

    @classmethod
    def from_faces(cls, faces: Sequence[Sequence[int]], outer: int = -1) -> "PlaneGraph":
        """
        Build the rotation system from a consistently oriented list of face walks.

        Every dart must be used by exactly one face; ``faces[outer]`` becomes the
        outer face.
        """
        successor: Dict[int, Dict[int, int]] = {}
        for face in faces:
            m = len(face)
            for i in range(m):
                u, v, w = face[i - 1], face[i], face[(i + 1) % m]
                slot = successor.setdefault(v, {})
                if w in slot:
                    raise EmbeddingError(f"Dart ({v}, {w}) appears in two faces")
                slot[w] = u
        rotation = {}
        for v, slot in successor.items():
            start = min(slot)
            order = [start]
            x = slot[start]
            while x != start:
                order.append(x)
                if len(order) > len(slot):
                    break
                x = slot[x]
            if len(order) != len(slot):
                raise EmbeddingError(f"Faces around vertex {v} do not form a single disk")
            rotation[v] = order
        return cls(rotation, faces[outer])

    def _validate(self) -> None:
        rotation = self._rotation
        for v, around in rotation.items():
            if len(set(around)) != len(around):
                raise EmbeddingError(f"Rotation at {v} repeats a neighbour (multi-edge)")
            for u in around:
                if u == v:
                    raise EmbeddingError(f"Loop at vertex {v}")
                if u not in rotation:
                    raise EmbeddingError(f"Neighbour {u} of {v} is not a vertex")
                if v not in rotation[u]:
                    raise EmbeddingError(f"Edge {v}-{u} is not listed at {u}")
        faces = _trace_all_faces(rotation)
        self._check_euler(faces)
        self._outer_index = self._locate_outer(faces)
        self._faces = faces

    def _check_euler(self, faces: Sequence[Walk]) -> None:
        members = [sorted(c) for c in nx.connected_components(self.graph.to_networkx())]
        component = {v: i for i, vs in enumerate(members) for v in vs}
        face_count: Dict[int, int] = {}
        for walk in faces:
            c = component[walk[0]]
            face_count[c] = face_count.get(c, 0) + 1
        for c, vs in enumerate(members):
            n = len(vs)
            m = sum(len(self._rotation[v]) for v in vs) // 2
            f = face_count.get(c, 1)
            if n - m + f != 2:
                raise EmbeddingError(
                    f"Rotation system is not planar on component {sorted(vs)}: V-E+F = {n - m + f}"
                )

    def _locate_outer(self, faces: Sequence[Walk]) -> Optional[int]:
        if not self._outer_face:
            if any(self._rotation.values()):
                raise EmbeddingError("A graph with edges needs an outer face")
            return None
        if len(self._outer_face) == 1:
            if self._outer_face[0] not in self._rotation or self._rotation[self._outer_face[0]]:
                raise EmbeddingError("Single-vertex outer face only allowed for an isolated vertex")
            return None
        wanted = set(walk_darts(self._outer_face))
        for i, walk in enumerate(faces):
            if len(walk) == len(self._outer_face) and set(walk_darts(walk)) == wanted:
                return i
        raise EmbeddingError(f"Outer face {list(self._outer_face)} is not a face of the rotation system")

    @property
    def rotation(self) -> Mapping[int, Tuple[int, ...]]:
        return self._rotation

    @property
    def outer_face(self) -> Walk:
        return self._outer_face

    @property
    def faces(self) -> Tuple[Walk, ...]:
        return self._faces

    @property
    def inner_faces(self) -> Tuple[Walk, ...]:
        return tuple(f for i, f in enumerate(self._faces) if i != self._outer_index)

    @cached_property
    def graph(self) -> Graph:
        edges = set()
        for v, around in self._rotation.items():
            for u in around:
                edges.add(normalize_edge(u, v))
        return Graph(frozenset(self._rotation), frozenset(edges))

    @property
    def vertices(self) -> FrozenSet[int]:
        return self.graph.vertices

    @property
    def edges(self) -> FrozenSet[Edge]:
        return self.graph.edges

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return dict(self._rotation) == dict(other._rotation) and self._outer_face == other._outer_face

    def __hash__(self) -> int:
        return hash((tuple(self._rotation.items()), self._outer_face))

    def __repr__(self) -> str:
        return (
            f"PlaneGraph(|V|={len(self.vertices)}, |E|={len(self.edges)}, "
            f"outer={list(self._outer_face)})"
        )


@dataclass(frozen=True)
class BoundaryWalk:
    """Outer cycle ``(v1, v2, ..., vn)`` starting at ``v1`` and heading to ``v2``."""

    vertices: Walk
    e1: Arc

    @property
    def v1(self) -> int:
        return self.vertices[0]

    @property
    def v2(self) -> int:
        return self.vertices[1]

    @property
    def vn(self) -> int:
        return self.vertices[-1]

    @property
    def v_prev(self) -> int:
        """``v_{n-1}``, the boundary neighbour of ``vn`` other than ``v1``."""
        return self.vertices[-2]

    @cached_property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(normalize_edge(u, v) for u, v in walk_darts(self.vertices))

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class ChordSplit:
    """The two sides of a plane graph cut along a boundary chord ``xy``."""

    chord: Edge
    part1: PlaneGraph
    part2: PlaneGraph


def trace_faces(g: PlaneGraph) -> Tuple[Walk, ...]:
    """Every face walk of ``g``; each dart appears in exactly one walk."""
    return g.faces


def is_2_connected(g: PlaneGraph) -> bool:
    if len(g.vertices) < 3:
        return False
    return nx.is_biconnected(g.graph.to_networkx())


def is_near_triangulation(g: PlaneGraph) -> bool:
    """2-connected and every inner face is a triangle."""
    return is_2_connected(g) and all(len(f) == 3 for f in g.inner_faces)


def boundary(g: PlaneGraph, e1: Optional[Tuple[int, int]] = None) -> BoundaryWalk:
    """
    Return the outer cycle started at ``v1`` and heading to ``v2``.

    Args:
        g: A 2-connected plane graph
        e1: Ordered pair ``(v1, v2)``; defaults to the smallest outer edge

    Raises:
        NotTwoConnectedError: If the outer face is not a simple cycle
        PreconditionError: If ``e1`` is not an edge of the outer face
    """
    walk = g.outer_face
    if len(walk) < 3 or len(set(walk)) != len(walk):
        raise NotTwoConnectedError(f"Outer face {list(walk)} is not a simple cycle")
    if e1 is None:
        e1 = min(normalize_edge(u, v) for u, v in walk_darts(walk))
    v1, v2 = e1
    darts = walk_darts(walk)
    if (v1, v2) in darts:
        seq = list(walk)
    elif (v2, v1) in darts:
        seq = list(reversed(walk))
    else:
        raise PreconditionError(f"{(v1, v2)} is not an edge of the outer face")
    i = seq.index(v1)
    return BoundaryWalk(tuple(seq[i:] + seq[:i]), (v1, v2))


def find_chord(g: PlaneGraph, b: BoundaryWalk) -> Optional[Edge]:
    """Smallest edge joining two boundary vertices that is not a boundary edge."""
    on_boundary = set(b.vertices)
    for edge in g.graph.sorted_edges:
        if edge[0] in on_boundary and edge[1] in on_boundary and edge not in b.edge_set:
            return edge
    return None


def _restricted_rotation(g: PlaneGraph, vertices: Iterable[int], edges: FrozenSet[Edge]) -> Dict[int, List[int]]:
    return {
        v: [u for u in g.rotation[v] if normalize_edge(u, v) in edges]
        for v in vertices
    }


def _outer_from_original(g: PlaneGraph, rotation: Mapping[int, Sequence[int]], edges: FrozenSet[Edge]) -> Walk:
    """The face of ``rotation`` lying on the outer side of a surviving outer dart of ``g``."""
    for u, v in walk_darts(g.outer_face):
        if u in rotation and v in rotation and normalize_edge(u, v) in edges:
            return _trace_face_from(rotation, (u, v))
    raise EmbeddingError("No outer edge survives in the subgraph")


def split_at_chord(g: PlaneGraph, chord: Tuple[int, int], b: Optional[BoundaryWalk] = None) -> ChordSplit:
    """
    Cut ``g`` along the boundary chord ``xy``.

    ``part1`` is the side containing ``e1``; both parts keep the chord.

    Raises:
        PreconditionError: If ``chord`` is not a chord of the boundary
    """
    b = b or boundary(g)
    chord = normalize_edge(*chord)
    if (
        chord not in g.edges
        or chord[0] not in b
        or chord[1] not in b
        or chord in b.edge_set
    ):
        raise PreconditionError(f"{chord} is not a boundary chord")

    inner = g.inner_faces
    face_edges = [frozenset(normalize_edge(u, v) for u, v in walk_darts(f)) for f in inner]
    faces_by_edge: Dict[Edge, List[int]] = {}
    for i, edges in enumerate(face_edges):
        for e in edges:
            faces_by_edge.setdefault(e, []).append(i)

    dual = nx.Graph()
    dual.add_nodes_from(range(len(inner)))
    for e, shared in faces_by_edge.items():
        if e != chord and len(shared) == 2:
            dual.add_edge(*shared)
    side = nx.node_connected_component(dual, faces_by_edge[normalize_edge(*b.e1)][0])
    other = set(range(len(inner))) - side
    if not other:
        raise EmbeddingError(f"Chord {chord} does not separate the inner faces")

    parts = []
    for group in (sorted(side), sorted(other)):
        edges = frozenset().union(*(face_edges[i] for i in group))
        vertices = sorted({x for e in edges for x in e})
        rotation = _restricted_rotation(g, vertices, edges)
        parts.append(PlaneGraph(rotation, _outer_from_original(g, rotation, edges)))
    logger.debug(
        f"Split at chord {chord}: |V1|={len(parts[0].vertices)}, |V2|={len(parts[1].vertices)}"
    )
    return ChordSplit(chord, parts[0], parts[1])


def delete_boundary_vertex(
    g: PlaneGraph, v: int, b: Optional[BoundaryWalk] = None
) -> Tuple[PlaneGraph, Tuple[int, ...]]:
    """
    Delete ``v = vn`` from a chordless near-triangulation.

    Returns:
        ``(G - vn, (v1, u1, ..., uk, v_{n-1}))`` where the neighbours follow the
        rotation at ``vn`` from ``v1`` to ``v_{n-1}``; ``u1 .. uk`` are exactly the
        interior neighbours of ``vn``.
    """
    b = b or boundary(g)
    if len(g.vertices) < 4:
        raise PreconditionError("Boundary vertex deletion needs at least 4 vertices")
    if v != b.vn:
        raise PreconditionError(f"Vertex {v} is not vn={b.vn} of the boundary walk")
    if find_chord(g, b) is not None:
        raise PreconditionError("Boundary has a chord")
    if not is_near_triangulation(g):
        raise PreconditionError("Graph is not a near-triangulation")

    around = list(g.rotation[v])
    i = around.index(b.v1)
    seq = around[i:] + around[:i]
    if len(seq) > 2 and seq[1] == b.v_prev:
        seq = [seq[0]] + list(reversed(seq[1:]))
    if seq[-1] != b.v_prev:
        raise EmbeddingError(f"Outer face does not pass {b.v_prev} -> {v} -> {b.v1}")

    edges = frozenset(e for e in g.edges if v not in e)
    vertices = [x for x in g.vertices if x != v]
    rotation = _restricted_rotation(g, vertices, edges)
    reduced = PlaneGraph(rotation, _outer_from_original(g, rotation, edges))
    return reduced, tuple(seq)


def _insert_ear_chord(rotation: Dict[int, List[int]], walk: List[int], i: int) -> Edge:
    """Add the chord cutting ``walk[i]`` off the face and shorten the walk."""
    m = len(walk)
    a, b, c, d = walk[(i - 1) % m], walk[i], walk[(i + 1) % m], walk[(i + 2) % m]
    around_a = rotation[a]
    around_a.insert(around_a.index(b) + 1, c)
    around_c = rotation[c]
    around_c.insert(around_c.index(d) + 1, a)
    del walk[i]
    return normalize_edge(a, c)


def _triangulate_face(rotation: Dict[int, List[int]], edges: set, face: Sequence[int]) -> None:
    walk = list(face)
    while len(walk) > 3:
        start = walk.index(min(walk))
        walk = walk[start:] + walk[:start]
        m = len(walk)
        for i in [1] + list(range(2, m)) + [0]:
            a, c = walk[(i - 1) % m], walk[(i + 1) % m]
            if a != c and normalize_edge(a, c) not in edges:
                edges.add(_insert_ear_chord(rotation, walk, i))
                break
        else:
            raise EmbeddingError(f"Face {list(face)} cannot be triangulated without a multi-edge")


def triangulate_inner_faces(g: PlaneGraph) -> PlaneGraph:
    """
    Add chords until every inner face is a triangle; the outer face is untouched.

    Each face is fanned from its lowest-id vertex; a fan chord that would duplicate
    an existing edge is skipped in favour of the next admissible ear.
    """
    if not is_2_connected(g):
        raise NotTwoConnectedError("Inner triangulation needs a 2-connected plane graph")
    rotation = {v: list(around) for v, around in g.rotation.items()}
    edges = set(g.edges)
    for face in g.inner_faces:
        if len(face) > 3:
            _triangulate_face(rotation, edges, face)
    result = PlaneGraph(rotation, g.outer_face)
    logger.debug(f"Triangulated inner faces: {len(g.edges)} -> {len(result.edges)} edges")
    return result


def triangulate_all_faces(g: PlaneGraph) -> PlaneGraph:
    """
    Triangulate every face, the outer one included, of a connected plane graph.

    The new outer face is the triangle on the outer side of the smallest original
    outer edge.
    """
    if len(g.vertices) < 3 or not nx.is_connected(g.graph.to_networkx()):
        raise PreconditionError("Full triangulation needs a connected graph with at least 3 vertices")
    rotation = {v: list(around) for v, around in g.rotation.items()}
    edges = set(g.edges)
    anchor = min(walk_darts(g.outer_face), key=lambda d: normalize_edge(*d))
    for face in g.faces:
        if len(face) > 3:
            _triangulate_face(rotation, edges, face)
    return PlaneGraph(rotation, _trace_face_from(rotation, anchor))
