"""clutterforge: exact idealness and max-flow min-cut analysis for
multipartite clutters built from subspaces of GF(q)^n."""
from __future__ import annotations

from .errors import (
    BadIndex,
    BudgetExceeded,
    ClutterforgeError,
    DimensionMismatch,
    DivisionByZero,
    FieldMismatch,
    NoSeriesPair,
    NotConnectedComponent,
    NotPrimePower,
    OverlapError,
    ParseError,
    PreconditionViolated,
    TooLarge,
    UnsupportedField,
    VerificationFailure,
    WrongField,
    WrongFieldClass,
    WrongShape,
)
from .clutter import (
    Clutter,
    MinorSpec,
    apply_chain,
    builtin,
    find_minor,
    format_clutter,
    format_minor_certificate,
    incidence_matrix,
    is_isomorphic,
    localization,
    minor,
    mult,
    parse_clutter,
    parse_minor_certificate,
    projection_minor_spec,
    restriction_minor_spec,
)
from .clutter import product as clutter_product
from .gf import GF, build_field
from .graphs import (
    MultiGraph,
    blocks,
    enumerate_connected_multigraphs,
    format_graph,
    has_K4e_graph_minor,
    is_subdivision_of_At,
    parse_graph,
)
from .polyhedral import (
    INFINITY,
    IdealnessCertificate,
    LPCertificate,
    extreme_points,
    has_packing_property,
    is_ideal,
    lp_certificate,
    mfmc_check,
    nu,
    packs,
    tau,
    tau_star,
)
from .matroid import (
    TARGETS,
    CircuitMatroid,
    StructureReport,
    circuits_isomorphic,
    classify,
    components,
    has_minor,
    intersecting_circuits,
    matroid_minor,
    matroid_of,
    series_classes,
)
from .verify import (
    LocalizationComponent,
    LocalizationProfile,
    ReplicationReport,
    TheoremReport,
    c5sq_witness,
    count_subspaces,
    delta3_witness_k4e,
    delta3_witness_u24,
    enumerate_subspaces,
    gaussian_binomial,
    instance_id,
    localization_profile,
    replication_tau2_report,
    series_extension_pair,
    summarize_certificate,
    sweep_theorem,
    triple_condition_probe,
    verify_theorem,
)
from .vspace import (
    SetSystem,
    Subspace,
    SunflowerWitness,
    disjoint_support_basis,
    enumerate_points,
    factor,
    format_subspace,
    parse_subspace,
    permute,
    product,
    project,
    restrict,
    span,
    subspace_minor,
    subspace_to_json,
    sunflower_basis,
    support,
)

__all__ = [
    "GF",
    "build_field",
    "Subspace",
    "SetSystem",
    "SunflowerWitness",
    "span",
    "enumerate_points",
    "product",
    "project",
    "permute",
    "restrict",
    "subspace_minor",
    "disjoint_support_basis",
    "sunflower_basis",
    "factor",
    "support",
    "parse_subspace",
    "format_subspace",
    "subspace_to_json",
    "Clutter",
    "MinorSpec",
    "mult",
    "minor",
    "apply_chain",
    "clutter_product",
    "localization",
    "projection_minor_spec",
    "restriction_minor_spec",
    "is_isomorphic",
    "find_minor",
    "builtin",
    "incidence_matrix",
    "format_clutter",
    "parse_clutter",
    "format_minor_certificate",
    "parse_minor_certificate",
    "MultiGraph",
    "blocks",
    "is_subdivision_of_At",
    "has_K4e_graph_minor",
    "enumerate_connected_multigraphs",
    "format_graph",
    "parse_graph",
    "INFINITY",
    "IdealnessCertificate",
    "LPCertificate",
    "extreme_points",
    "is_ideal",
    "tau",
    "nu",
    "tau_star",
    "lp_certificate",
    "packs",
    "has_packing_property",
    "mfmc_check",
    "CircuitMatroid",
    "StructureReport",
    "TARGETS",
    "matroid_of",
    "matroid_minor",
    "components",
    "series_classes",
    "classify",
    "has_minor",
    "intersecting_circuits",
    "circuits_isomorphic",
    "LocalizationComponent",
    "LocalizationProfile",
    "ReplicationReport",
    "TheoremReport",
    "c5sq_witness",
    "count_subspaces",
    "delta3_witness_k4e",
    "delta3_witness_u24",
    "enumerate_subspaces",
    "gaussian_binomial",
    "instance_id",
    "localization_profile",
    "replication_tau2_report",
    "series_extension_pair",
    "summarize_certificate",
    "sweep_theorem",
    "triple_condition_probe",
    "verify_theorem",
    "ClutterforgeError",
    "NotPrimePower",
    "UnsupportedField",
    "DivisionByZero",
    "DimensionMismatch",
    "FieldMismatch",
    "BadIndex",
    "TooLarge",
    "OverlapError",
    "BudgetExceeded",
    "NotConnectedComponent",
    "WrongShape",
    "WrongField",
    "WrongFieldClass",
    "PreconditionViolated",
    "NoSeriesPair",
    "ParseError",
    "VerificationFailure",
]

__version__ = "0.1.0"
