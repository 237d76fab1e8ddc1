"""cheeger-forge: exact circular-arc geometry, Cheeger solver, constructions,
and a raster verification oracle for planar domains."""

from .cantor import (
    CantorStage,
    DimensionReport,
    StaircaseParams,
    alpha,
    box_count,
    cantor_stage,
    estimate_dimension,
    staircase_eval,
)
from .constructions import (
    CantorDomainSpec,
    ContactSet,
    KgonSpec,
    PerturbationSpec,
    build_cantor_domain,
    build_dumbbell_domain,
    build_kgon_domain,
    build_perturbed_domain,
    contact_set,
    delta_max,
    inner_area_kgon,
    solve_ell0,
    solve_rho0,
)
from .errors import (
    CheegerForgeError,
    DeltaTooLarge,
    EmptyRegion,
    FallbackRequired,
    InsufficientScales,
    InvalidGeometry,
    InvalidInput,
    InvalidParameter,
    NoSolution,
    NotConnected,
    NumericalFailure,
    ResolutionTooCoarse,
)
from .geometry import (
    ArcEdge,
    ArcGon,
    Point,
    RegionSet,
    arc_through,
    boundary_distances,
    contains_disc,
    edge_intersections,
    hausdorff_distance,
    inner_parallel,
    load_arcgon,
    minkowski_disc,
    save_arcgon,
)
from .profile import (
    AngleReport,
    Profile,
    TangentBallCertificate,
    arc_angles,
    tangent_ball,
    u_arc_chain,
    u_quadrature,
    verify_tangent_balls,
)
from .solver import (
    CheegerSolution,
    SelfCheegerReport,
    cheeger_constant,
    cheeger_ratio,
    steiner_check,
    verify_self_cheeger,
)

__version__ = "0.1.0"

__all__ = [
    "AngleReport",
    "ArcEdge",
    "ArcGon",
    "CantorDomainSpec",
    "CantorStage",
    "CheegerForgeError",
    "CheegerSolution",
    "ContactSet",
    "DeltaTooLarge",
    "DimensionReport",
    "EmptyRegion",
    "FallbackRequired",
    "InsufficientScales",
    "InvalidGeometry",
    "InvalidInput",
    "InvalidParameter",
    "KgonSpec",
    "NoSolution",
    "NotConnected",
    "NumericalFailure",
    "PerturbationSpec",
    "Point",
    "Profile",
    "RegionSet",
    "ResolutionTooCoarse",
    "SelfCheegerReport",
    "StaircaseParams",
    "TangentBallCertificate",
    "alpha",
    "arc_angles",
    "arc_through",
    "boundary_distances",
    "box_count",
    "build_cantor_domain",
    "build_dumbbell_domain",
    "build_kgon_domain",
    "build_perturbed_domain",
    "cantor_stage",
    "cheeger_constant",
    "cheeger_ratio",
    "contact_set",
    "contains_disc",
    "delta_max",
    "edge_intersections",
    "estimate_dimension",
    "hausdorff_distance",
    "inner_area_kgon",
    "inner_parallel",
    "load_arcgon",
    "minkowski_disc",
    "save_arcgon",
    "solve_ell0",
    "solve_rho0",
    "staircase_eval",
    "steiner_check",
    "tangent_ball",
    "u_arc_chain",
    "u_quadrature",
    "verify_self_cheeger",
    "verify_tangent_balls",
    "__version__",
]
