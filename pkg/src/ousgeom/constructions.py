"""Builders for l-infinity spaces, max direct sums and l1-adjunctions.

Each composite carries a :class:`ConstructionTag` so that the closed-form
canopy and periphery predicates for that construction can be evaluated from
the operands and compared with direct classification.
"""

from __future__ import annotations

import dataclasses
import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import classify, periphery_components
from .exact import ShapeError, basis_vector, dot, matrix, ones, rank, scale, sub, vector
from .space import (
    ConstructionTag,
    OrderUnitSpace,
    PreconditionError,
    make_space,
    order_norm,
)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class PolyhedralNormedSpace:
    """``(Q^k, ||x|| = max_j |g_j(x)|)``."""

    dim: int
    functionals: tuple

    def __post_init__(self):
        G = matrix(self.functionals, self.dim)
        if rank(G) != self.dim:
            raise ShapeError("functionals must have full rank to define a norm")
        object.__setattr__(self, "functionals", G)

    def norm(self, x: Sequence) -> Fraction:
        x = vector(x, self.dim)
        return max(abs(dot(g, x)) for g in self.functionals)


def abs_line() -> PolyhedralNormedSpace:
    return PolyhedralNormedSpace(1, ((1,),))


def max_norm(k: int) -> PolyhedralNormedSpace:
    return PolyhedralNormedSpace(k, tuple(basis_vector(i, k) for i in range(k)))


def linf_space(n: int) -> OrderUnitSpace:
    if n < 1:
        raise ValueError("l-infinity space needs n >= 1")
    space = make_space([basis_vector(i, n) for i in range(n)], ones(n))
    return dataclasses.replace(space, construction=ConstructionTag("linf", (n,)))


def direct_sum(V1: OrderUnitSpace, V2: OrderUnitSpace) -> OrderUnitSpace:
    """``V1 x V2`` with the product cone and unit ``(e1, e2)``."""
    d1, d2 = V1.dim, V2.dim
    rows = [tuple(f) + (Fraction(0),) * d2 for f in V1.states]
    rows += [(Fraction(0),) * d1 + tuple(f) for f in V2.states]
    space = make_space(rows, tuple(V1.unit) + tuple(V2.unit))
    return dataclasses.replace(space, construction=ConstructionTag("direct_sum", (V1, V2)))


def adjoin_normed(V: OrderUnitSpace, X: PolyhedralNormedSpace) -> OrderUnitSpace:
    """``V (+)_1 X``: cone ``{(v, x) : ||x|| e <= v}``, unit ``(e, 0)``.

    For a polyhedral norm the cone is cut out by ``f_i(v) +- g_j(x) >= 0``.
    """
    rows = []
    for f in V.states:
        for g in X.functionals:
            rows.append(tuple(f) + tuple(g))
            rows.append(tuple(f) + scale(-1, g))
    unit = tuple(V.unit) + (Fraction(0),) * X.dim
    space = make_space(rows, unit)
    return dataclasses.replace(space, construction=ConstructionTag("adjoin", (V, X)))


@dataclass(frozen=True)
class RegionPrediction:
    canopy: bool
    periphery: bool


def _tag(space_or_tag, kind) -> ConstructionTag:
    tag = space_or_tag.construction if isinstance(space_or_tag, OrderUnitSpace) else space_or_tag
    if tag is None or tag.kind != kind:
        raise PreconditionError(f"expected a {kind} construction tag, got {tag!r}")
    return tag


def direct_sum_region_member(tag, v: Sequence) -> RegionPrediction:
    """Canopy / periphery of ``V1 x V2`` from the operand regions.

    ``C = (C1 x [0,e2]) u ([0,e1] x C2)`` and
    ``R = (R1 x [0,e2]) u ([0,e1] x R2) u (C1 x (e2 - C2)) u ((e1 - C1) x C2)``.
    """
    V1, V2 = _tag(tag, "direct_sum").operands
    v = vector(v, V1.dim + V2.dim)
    v1, v2 = v[: V1.dim], v[V1.dim :]
    r1, r2 = classify(V1, v1), classify(V2, v2)
    c1, c2 = r1.in_canopy, r2.in_canopy
    k1, k2 = r1.in_order_interval, r2.in_order_interval
    p1, p2 = r1.in_periphery, r2.in_periphery
    cc1 = classify(V1, sub(V1.unit, v1)).in_canopy  # v1 in e1 - C1
    cc2 = classify(V2, sub(V2.unit, v2)).in_canopy
    canopy = (c1 and k2) or (k1 and c2)
    periphery = (p1 and k2) or (k1 and p2) or (c1 and cc2) or (cc1 and c2)
    return RegionPrediction(canopy, periphery)


# -- semi-periphery -----------------------------------------------------------


@functools.lru_cache(maxsize=64)
def _components(V: OrderUnitSpace):
    return tuple(periphery_components(V))


def semi_periphery_member(V: OrderUnitSpace, u: Sequence) -> bool:
    """``u in [0, e]`` and ``||u|| = ||e - u||``."""
    u = V.check(u)
    return classify(V, u).in_order_interval and order_norm(V, u) == order_norm(V, sub(V.unit, u))


def semi_periphery_certificate(V: OrderUnitSpace, u: Sequence) -> Optional[tuple]:
    """``(w, alpha)`` with ``w`` peripheral and ``u = alpha (e - w) + (1 - alpha) w``.

    The central element ``e/2`` is returned as ``(None, 1/2)``.  For a face
    pair ``(i, j)`` the equations force ``alpha = f_i(u)`` and
    ``f_j(u) = 1 - alpha``, after which ``w`` is determined and checked.
    """
    u = V.check(u)
    if u == scale(HALF, V.unit):
        return (None, HALF)
    vals = V.values(u)
    for comp in _components(V):
        i, j = comp.zero_state, comp.unit_state
        alpha = vals[i]
        if not (0 <= alpha <= 1) or vals[j] != 1 - alpha or alpha == HALF:
            continue
        c = 1 - 2 * alpha
        w = tuple((x - alpha * ei) / c for x, ei in zip(u, V.unit))
        if comp.contains(w):
            # report the representation with alpha < 1/2 (swap w and e - w)
            if alpha > HALF:
                return (sub(V.unit, w), 1 - alpha)
            return (w, alpha)
    return None


def adjoin_region_member(tag, point: Sequence) -> RegionPrediction:
    """Canopy / periphery of ``V (+)_1 X`` from operand norms.

    Canopy: ``||x|| e <= u`` and ``||u|| + ||x|| = 1``.
    Periphery: ``u`` semi-peripheral and ``||u|| + ||x|| = 1``.
    """
    V, X = _tag(tag, "adjoin").operands
    point = vector(point, V.dim + X.dim)
    u, x = point[: V.dim], point[V.dim :]
    nx = X.norm(x)
    nu = order_norm(V, u)
    dominated = classify(V, sub(u, scale(nx, V.unit))).in_positive_cone
    canopy = dominated and nu + nx == 1
    periphery = semi_periphery_member(V, u) and nu + nx == 1
    return RegionPrediction(canopy, periphery)
