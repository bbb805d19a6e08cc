"""
Certify Package
Alon-Tarsi oracles, witnessed-graph operations, the planar induction and the verifier.
"""

from .at_core import (
    DegreeBudget,
    EulerianCount,
    Orientation,
    at_number,
    coeff,
    diff_coeff,
    diff_enum,
    find_f_AT_orientation,
    is_f_AT,
    orientation_sign,
    orientation_with_outdegrees,
)
from .witness_ops import (
    WitnessedGraph,
    add_arc_no_euler,
    forced_edge_removal,
    remove_arc_no_euler,
    remove_deg2_vertex_keep_AT,
    remove_edge_keep_AT,
    restrict_witness,
    union_one_way,
)
from .at_planar import (
    BoundaryBudget,
    GadgetRecord,
    Matching,
    at4_matching_certificate,
    at5_certificate,
    budget_check,
    case2_gadget_build,
    thm_main_at,
    thm_main_matching,
)
from .verify import check_certificate
from .coloring import exhaustive_choosability, list_coloring_exists, sampled_choosability_check

__all__ = [
    'DegreeBudget', 'EulerianCount', 'Orientation', 'at_number', 'coeff', 'diff_coeff', 'diff_enum',
    'find_f_AT_orientation', 'is_f_AT', 'orientation_sign', 'orientation_with_outdegrees',
    'WitnessedGraph', 'add_arc_no_euler', 'forced_edge_removal', 'remove_arc_no_euler',
    'remove_deg2_vertex_keep_AT', 'remove_edge_keep_AT', 'restrict_witness', 'union_one_way',
    'BoundaryBudget', 'GadgetRecord', 'Matching', 'at4_matching_certificate', 'at5_certificate',
    'budget_check', 'case2_gadget_build', 'thm_main_at', 'thm_main_matching',
    'check_certificate', 'exhaustive_choosability', 'list_coloring_exists', 'sampled_choosability_check',
]
