"""Exact crossing structures and the homomorphism order of small drawings."""

from .exact_geometry import (
    COORDINATE_LIMIT,
    GeneralPositionViolation,
    Point,
    Segment,
    in_general_position,
    orient,
    proper_cross,
)
from .graph_core import (
    AbstractGraph,
    ParseError,
    TwoColoredGraph,
    canonical_label,
    chromatic_number,
    graph_isomorphism,
    subgraph_embeds,
    two_colored_isomorphism,
)
from .realization import (
    CrossingStructure,
    GeometricRealization,
    bipartitions_of_6,
    complete_to_k6,
    crossing_structure,
    make_realization,
)
from .invariants import (
    InvariantSignature,
    UnknownEdge,
    cr_edge,
    cr_total,
    edge_crossing_graph,
    edge_thickness,
    line_crossing_graph,
    signature,
    uncrossed_subgraph,
)
from .morphisms import (
    AbstractMismatch,
    NotApplicable,
    PropReport,
    VertexMap,
    explain_non_precedence,
    find_geo_homomorphisms,
    geo_isomorphic,
    is_geo_homomorphism,
    prop_conditions,
)
from .atlas import (
    AnchorConflict,
    Atlas,
    BudgetExhausted,
    EnumerationConfig,
    RealizationClass,
    UnknownLabel,
    assign_paper_labels,
    crossing_histogram,
    enumerate_classes,
    load_atlas,
    save_atlas,
)
from .poset import (
    HomPoset,
    build_poset,
    check_graded,
    check_lattice,
    extrema_and_thickness_check,
    minimal_upper_bounds,
)

__version__ = "0.1.0"
