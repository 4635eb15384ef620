"""Poisson integral formula and pluriharmonic measure on the once-punctured torus Teichmüller space."""

from .measures import (
    BoundaryMeasure,
    SphereMeasure,
    boundary_line_density,
    change_of_basepoint_density,
    cone_mass,
    fiber_angle_measure,
    pluriharmonic_kernel,
    sphere_measure,
    thurston_density,
)
from .potential import (
    BoundaryFunction,
    Decomposition,
    TestFunction,
    builtin_families,
    mean_value,
    poisson_gradient,
    poisson_integral,
    radial_limit,
    radial_limit_isometry_check,
    riesz_disk_bound,
    riesz_teich_bound,
)
from .quadrature import McConfig, QuadResult, integrate_circle_pml, integrate_interval, mc_integrate
from .surface import (
    GeodesicRay,
    HalfPlanePoint,
    Lamination,
    ProjectiveLamination,
    QuadDifferential,
    extremal_length,
    geodesic_ray,
    hm_differential,
    intersection_number,
    lamination_of_angle,
    ray_endpoint,
    teich_distance,
    teichmuller_disk,
    vertical_lamination,
)
from .verify import VerificationReport

__version__ = "0.1.0"

__all__ = [
    "BoundaryFunction",
    "BoundaryMeasure",
    "Decomposition",
    "GeodesicRay",
    "HalfPlanePoint",
    "Lamination",
    "McConfig",
    "ProjectiveLamination",
    "QuadDifferential",
    "QuadResult",
    "SphereMeasure",
    "TestFunction",
    "VerificationReport",
    "boundary_line_density",
    "builtin_families",
    "change_of_basepoint_density",
    "cone_mass",
    "extremal_length",
    "fiber_angle_measure",
    "geodesic_ray",
    "hm_differential",
    "integrate_circle_pml",
    "integrate_interval",
    "intersection_number",
    "lamination_of_angle",
    "mc_integrate",
    "mean_value",
    "pluriharmonic_kernel",
    "poisson_gradient",
    "poisson_integral",
    "radial_limit",
    "radial_limit_isometry_check",
    "ray_endpoint",
    "riesz_disk_bound",
    "riesz_teich_bound",
    "sphere_measure",
    "teich_distance",
    "teichmuller_disk",
    "thurston_density",
    "vertical_lamination",
]
