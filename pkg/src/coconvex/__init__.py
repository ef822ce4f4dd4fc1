"""Covolumes, surface measures and the Minkowski problem for polyhedral coconvex sets."""
from .config import DEFAULT_TOL, ToleranceConfig
from .errors import GeometryError
from .geometry import (
    Facet,
    HalfSpace,
    Polytope,
    facet_measure,
    intersect_halfspaces,
    minkowski_sum_truncated,
    polytope_volume,
    support_value,
    unit,
)
from .sets import ConvexSetSpec
from .asymptotic import (
    ValidationReport,
    asymptotic_of_sum,
    asymptotic_set,
    asymptotic_slice,
    check_irreducible,
    validate_spec,
    wulff_shape,
)
from .covolume import (
    DirectionSet,
    DiscreteMeasure,
    SphericalCap,
    cosum,
    covolume,
    covolume_mc,
    scale,
    settle_height,
    surface_measure,
)
from .variational import (
    InequalityReport,
    check_brunn_minkowski,
    check_minkowski,
    mixed_covolume,
    mixed_covolume_fd,
    uniqueness_check,
    variational_derivative,
    variational_fd,
)
from .solver import (
    MinkowskiProblem,
    SolverConfig,
    SolverResult,
    Status,
    lemma51_height_bound,
    phi,
    phi_gradient,
    sigma_finite_driver,
    solve_cone_normalized,
    solve_minkowski,
)

__all__ = [
    "DEFAULT_TOL",
    "ToleranceConfig",
    "GeometryError",
    "Facet",
    "HalfSpace",
    "Polytope",
    "facet_measure",
    "intersect_halfspaces",
    "minkowski_sum_truncated",
    "polytope_volume",
    "support_value",
    "unit",
    "ConvexSetSpec",
    "ValidationReport",
    "asymptotic_of_sum",
    "asymptotic_set",
    "asymptotic_slice",
    "check_irreducible",
    "validate_spec",
    "wulff_shape",
    "DirectionSet",
    "DiscreteMeasure",
    "SphericalCap",
    "cosum",
    "covolume",
    "covolume_mc",
    "scale",
    "settle_height",
    "surface_measure",
    "InequalityReport",
    "check_brunn_minkowski",
    "check_minkowski",
    "mixed_covolume",
    "mixed_covolume_fd",
    "uniqueness_check",
    "variational_derivative",
    "variational_fd",
    "MinkowskiProblem",
    "SolverConfig",
    "SolverResult",
    "Status",
    "lemma51_height_bound",
    "phi",
    "phi_gradient",
    "sigma_finite_driver",
    "solve_cone_normalized",
    "solve_minkowski",
]
