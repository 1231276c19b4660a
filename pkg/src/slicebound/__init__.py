"""Diagram-dependent bounds for the Rasmussen invariant and slice genus.

Parse a knot or link diagram (PD code or braid word), compute the upper
bound U and error width Delta from its Seifert graph, detect the tight
cases, emit Bennequin-type slice-genus bounds, and - for small knots -
verify everything against an exact Lee-homology computation of s.
"""

from .bounds import (
    BoundsReport,
    bound_Delta,
    bound_U,
    bounds_report,
    classic_bennequin,
    genus_bound_knot,
    genus_bound_link,
    report_json_dict,
    s_window,
)
from .diagram import (
    ConsistencyError,
    Crossing,
    Diagram,
    ValidationError,
    braid_sign_condition,
    is_alternating,
    is_negative,
    is_positive,
    mirror,
    validate,
)
from .lee_oracle import (
    CanonicalCycle,
    CrossingLimitError,
    LeeComplexSlice,
    build_slice,
    canonical_cycles,
    filtration_profile,
    profile_jumps,
    s_invariant,
)
from .notation import (
    BraidWord,
    ParseError,
    PdCode,
    braid_closure,
    braid_text,
    diagram_from_pd,
    parse_braid,
    parse_pd,
    pd_code,
    pd_text,
    random_braid,
)
from .seifert import (
    AuxGraph,
    DisconnectedDiagramError,
    SeifertCircles,
    SeifertGraph,
    aux_graph,
    betti1,
    betti1_components,
    component_count,
    oriented_resolution,
    seifert_graph,
    two_coloring,
)

__version__ = "0.1.0"

__all__ = [
    "AuxGraph",
    "BoundsReport",
    "BraidWord",
    "CanonicalCycle",
    "ConsistencyError",
    "Crossing",
    "CrossingLimitError",
    "Diagram",
    "DisconnectedDiagramError",
    "LeeComplexSlice",
    "ParseError",
    "PdCode",
    "SeifertCircles",
    "SeifertGraph",
    "ValidationError",
    "aux_graph",
    "betti1",
    "betti1_components",
    "bound_Delta",
    "bound_U",
    "bounds_report",
    "braid_closure",
    "braid_sign_condition",
    "braid_text",
    "build_slice",
    "canonical_cycles",
    "classic_bennequin",
    "component_count",
    "diagram_from_pd",
    "filtration_profile",
    "genus_bound_knot",
    "genus_bound_link",
    "is_alternating",
    "is_negative",
    "is_positive",
    "mirror",
    "oriented_resolution",
    "parse_braid",
    "parse_pd",
    "pd_code",
    "pd_text",
    "profile_jumps",
    "random_braid",
    "report_json_dict",
    "s_invariant",
    "s_window",
    "seifert_graph",
    "two_coloring",
    "validate",
]
