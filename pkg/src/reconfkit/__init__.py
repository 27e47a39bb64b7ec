"""Token addition/removal reconfiguration toolkit.

Exact solving and verification for (connected) dominating set and colored
connected subgraph reconfiguration, generators for the hardness gadget
pipeline with explicit witness sequences, and a planar kernelizer whose
reduction rules are cross-validated against the exact solver.
"""

from .graph import (
    Graph,
    degeneracy,
    is_connected_induced,
    is_dominating,
    max_vertex_disjoint_paths,
    pendant_neighbors,
)
from .planar import (
    FaceSet,
    NonPlanarError,
    RotationSystem,
    classify_by_cycle,
    compute_or_validate_embedding,
    enumerate_faces,
    touch_set,
)
from .reconfig import (
    BudgetExceededError,
    Move,
    ReconfInstance,
    ReconfSequence,
    Variant,
    VerificationReport,
    feasible_successors,
    is_feasible,
    solve_tar,
    verify_sequence,
)
from .gadgets import (
    GadgetLayout,
    MccInstance,
    build_ccsr,
    ccsr_to_cdsr,
    color_restrict_subdivide,
    forward_sequence,
    tree_edge_exchange,
)
from .kernel import (
    CoreCert,
    Diamond,
    KernelTrace,
    compute_core,
    find_thick_diamond,
    is_domination_core,
    kernelize,
    projection_classes,
    rule_path_region,
    rule_remove_diamond_region,
    rule_strip_diamond_edges,
    rule_strip_high_degree_neighborhood,
    rule_trim_pendants,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
