"""
Graph Package
Plane graphs with rotation systems, their structural operations, and generators.
"""

from .plane_graph import (
    BoundaryWalk,
    ChordSplit,
    Graph,
    PlaneGraph,
    boundary,
    delete_boundary_vertex,
    find_chord,
    is_2_connected,
    is_near_triangulation,
    normalize_edge,
    split_at_chord,
    trace_faces,
    triangulate_all_faces,
    triangulate_inner_faces,
)
from .generators import corpus, generate

__all__ = [
    'BoundaryWalk', 'ChordSplit', 'Graph', 'PlaneGraph', 'boundary', 'delete_boundary_vertex',
    'find_chord', 'is_2_connected', 'is_near_triangulation', 'normalize_edge', 'split_at_chord',
    'trace_faces', 'triangulate_all_faces', 'triangulate_inner_faces', 'corpus', 'generate',
]
