"""Exact lattice widths, width directions and lattice point theorem checks."""

from .errors import (
    DimensionError,
    EmptyPolyhedronError,
    HypothesisError,
    LatwidthError,
    ParseError,
    TheoremViolation,
    WidthInfiniteError,
)
from .io import parse_instance, serialize_instance
from .lattice import enumerate_lattice_points, lattice_points
from .minkowski import (
    facet_layering,
    mod3_complete,
    recognize_cross_polytope,
    recognize_standard_cube,
    verify_3d_bound,
    verify_mink_equality,
    verify_packing,
    verify_vertex_bound,
)
from .polytope import HPolyhedron, VPolytope, cross_polytope, cube, hull_canonicalize, polytope, simplex
from .width import check_direction_bound, dual_body, lattice_width, width_in_direction

__version__ = "0.1.0"

__all__ = [
    "DimensionError", "EmptyPolyhedronError", "HypothesisError", "LatwidthError", "ParseError",
    "TheoremViolation", "WidthInfiniteError",
    "parse_instance", "serialize_instance",
    "enumerate_lattice_points", "lattice_points",
    "facet_layering", "mod3_complete", "recognize_cross_polytope", "recognize_standard_cube",
    "verify_3d_bound", "verify_mink_equality", "verify_packing", "verify_vertex_bound",
    "HPolyhedron", "VPolytope", "cross_polytope", "cube", "hull_canonicalize", "polytope", "simplex",
    "check_direction_bound", "dual_body", "lattice_width", "width_in_direction",
]
