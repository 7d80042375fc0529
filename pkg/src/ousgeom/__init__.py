"""Exact computational geometry of finite-dimensional order unit spaces."""

from .cones import ConeHRep, ConeVRep, Polytope, UnboundedError, dual_description, vertex_enumeration
from .constructions import (
    PolyhedralNormedSpace,
    adjoin_normed,
    adjoin_region_member,
    direct_sum,
    direct_sum_region_member,
    linf_space,
    semi_periphery_member,
)
from .core import (
    classify,
    find_state,
    infty_orthogonal,
    line_norm,
    periphery_certificates,
    periphery_components,
    peripheral_projection,
    segment_in_periphery,
)
from .embeddings import (
    axis_decomposition,
    find_linf_embedding,
    plane_coordinates,
    plane_relation,
    verify_linf_embedding,
)
from .exact import RationalParseError, ShapeError, to_fraction
from .lp import LpProblem, LpResult, lp_solve
from .skeleton import SkeletonError, SkeletonSpec, generate_space, verify_skeleton
from .space import OrderUnitSpace, PreconditionError, SpaceError, make_space, order_norm

__all__ = [name for name, value in globals().items() if not name.startswith("_") and not hasattr(value, "__path__") and getattr(value, "__module__", "").startswith("ousgeom")]
