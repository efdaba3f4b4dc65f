"""Combinatorics of m-stable genus-one maps to projective space."""

from .graph import (
    DualGraph,
    EllipticPoint,
    InvalidGraphError,
    SchemaError,
    ValidationReport,
    Vertex,
    from_dict,
    from_json,
    graph,
    to_dict,
    to_dot,
    to_json,
    validate,
)
from .stability import (
    MInterval,
    StabilityParams,
    Verdict,
    arithmetic_genus,
    augment_with_hyperplane_marks,
    canonical_degree,
    core,
    core_kind,
    distinguished_points,
    fundamental_decomposition,
    genus_one_subcurves,
    is_canonically_polarized,
    is_m_stable_curve,
    is_m_stable_map,
    level,
    polarization_power_bound,
    stability_interval,
)

__version__ = "0.1.0"

__all__ = [
    "DualGraph",
    "EllipticPoint",
    "InvalidGraphError",
    "MInterval",
    "SchemaError",
    "StabilityParams",
    "ValidationReport",
    "Verdict",
    "Vertex",
    "arithmetic_genus",
    "augment_with_hyperplane_marks",
    "canonical_degree",
    "core",
    "core_kind",
    "distinguished_points",
    "from_dict",
    "from_json",
    "fundamental_decomposition",
    "genus_one_subcurves",
    "graph",
    "is_canonically_polarized",
    "is_m_stable_curve",
    "is_m_stable_map",
    "level",
    "polarization_power_bound",
    "stability_interval",
    "to_dict",
    "to_dot",
    "to_json",
    "validate",
]
