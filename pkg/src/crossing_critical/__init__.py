"""Crossing-critical graphs with a vertex of arbitrarily large degree.

Builds the 171-crossing special-graph family, emits and checks drawing
certificates, and runs the critical-subgraph machinery over an exact
small-scale crossing-number solver.
"""

from .critical import (
    AssemblyBundle,
    CrossingOracle,
    NotAboveThreshold,
    OracleInconclusive,
    ThickEdgeError,
    assemble,
    crit_set,
    eliminate_thick,
    extract_critical,
    is_critical_edge,
    lift_drawing,
)
from .drawing import (
    CertError,
    CertFormatError,
    DrawingCert,
    ValidationReport,
    Violation,
    cert_from_json,
    cert_to_json,
    planarize,
    validate,
)
from .family import (
    FamilyInstance,
    build_family,
    canonical_drawing,
    deleted_edge_drawing,
    verify_structure,
    witness_paths,
)
from .graph import (
    CyclePath,
    Graph,
    GraphError,
    SpecialGraph,
    disjoint_union,
    is_induced_nonseparating_cycle,
    is_planar,
    standard_graph,
)
from .layout import layout, to_svg
from .solver import AtLeast, Exact, Infinite, SolveLimits, euler_lower_bound, solve_exact

__all__ = [
    "AssemblyBundle",
    "AtLeast",
    "CertError",
    "CertFormatError",
    "CrossingOracle",
    "CyclePath",
    "DrawingCert",
    "Exact",
    "FamilyInstance",
    "Graph",
    "GraphError",
    "Infinite",
    "NotAboveThreshold",
    "OracleInconclusive",
    "SolveLimits",
    "SpecialGraph",
    "ThickEdgeError",
    "ValidationReport",
    "Violation",
    "assemble",
    "build_family",
    "canonical_drawing",
    "cert_from_json",
    "cert_to_json",
    "crit_set",
    "deleted_edge_drawing",
    "disjoint_union",
    "eliminate_thick",
    "euler_lower_bound",
    "extract_critical",
    "is_critical_edge",
    "is_induced_nonseparating_cycle",
    "is_planar",
    "layout",
    "lift_drawing",
    "planarize",
    "solve_exact",
    "standard_graph",
    "to_svg",
    "validate",
    "verify_structure",
    "witness_paths",
]
