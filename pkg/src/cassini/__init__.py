"""Cassinian metric toolkit.

Point-pair metrics on canonical Euclidean domains (Cassinian, distance
ratio, hyperbolic, visual angle, and the p quantity), Moebius distortion of
the unit ball with sharp bounds, the inner Cassinian metric via numerical
geodesics, and a seeded verification harness for all the comparison
inequalities.
"""

from .geometry import (
    Ball,
    BoundaryWitness,
    DimensionError,
    Domain,
    DomainError,
    HalfSpace,
    PuncturedSpace,
    boundary_distance,
    boundary_sample,
    contains,
    domain_from_json,
    domain_to_json,
    unit_ball,
    upper_halfplane,
)
from .inner import (
    GeodesicOptions,
    GeodesicResult,
    Path,
    closed_form_inner,
    inner_cassinian,
    inner_upper_bound,
    path_length_integral,
    path_length_partition,
)
from .metrics import (
    InequalityConfig,
    MetricValue,
    cassinian,
    distance_ratio_j,
    hyperbolic_ball,
    hyperbolic_halfplane,
    p_quantity,
    visual_angle,
)
from .moebius import (
    MoebiusMap,
    SphereInversion,
    apply,
    check_inversion_identity,
    distortion_bounds,
    distortion_ratio,
    inversion_sending_to_zero,
    sharpness_witness,
)

__version__ = "0.1.0"

__all__ = [
    "Ball", "BoundaryWitness", "DimensionError", "Domain", "DomainError",
    "HalfSpace", "PuncturedSpace", "boundary_distance", "boundary_sample",
    "contains", "domain_from_json", "domain_to_json", "unit_ball",
    "upper_halfplane",
    "GeodesicOptions", "GeodesicResult", "Path", "closed_form_inner",
    "inner_cassinian", "inner_upper_bound", "path_length_integral",
    "path_length_partition",
    "InequalityConfig", "MetricValue", "cassinian", "distance_ratio_j",
    "hyperbolic_ball", "hyperbolic_halfplane", "p_quantity", "visual_angle",
    "MoebiusMap", "SphereInversion", "apply", "check_inversion_identity",
    "distortion_bounds", "distortion_ratio", "inversion_sending_to_zero",
    "sharpness_witness",
]
