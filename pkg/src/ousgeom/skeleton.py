"""Skeletons with a head: axiom checks and the order unit space they generate."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cones import ConeVRep, Polytope, dual_description, vertex_enumeration
from .core import classify, periphery_components
from .exact import (
    rref,
    is_zero,
    lincomb,
    matrix,
    ones,
    scale,
    solve,
    sub,
    transpose,
    vector,
    zeros,
)
from .lp import LpProblem, lp_solve
from .space import OrderUnitSpace, PreconditionError, make_space, order_norm

ONE = Fraction(1)
ZERO = Fraction(0)


class SkeletonError(ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class SkeletonSpec:
    dim: int
    head: tuple
    points: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise SkeletonError("dimension must be at least 1")
        head = vector(self.head, self.dim)
        if is_zero(head):
            raise SkeletonError("head must be nonzero")
        pts = []
        for p in matrix(self.points, self.dim if self.points else None):
            if p not in pts:
                pts.append(p)
        zero = tuple(zeros(self.dim))
        for must, name in ((zero, "0"), (head, "head")):
            if must not in pts:
                warnings.warn(f"skeleton point set lacks {name}; inserting it", stacklevel=3)
                pts.append(must)
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "points", tuple(pts))

    @property
    def periphery(self) -> tuple:
        """``S_0``: the points other than 0 and the head."""
        zero = tuple(zeros(self.dim))
        return tuple(p for p in self.points if p != zero and p != self.head)


@dataclass(frozen=True)
class Axiom2Violation:
    u: tuple
    v: tuple
    interval: tuple  # (lo, hi), an uncovered subinterval of [0, 1]
    lo_closed: bool
    hi_closed: bool
    witness: Fraction  # a rational lambda inside the uncovered part


@dataclass(frozen=True)
class Axiom3Violation:
    coefficients: tuple  # (index into S_0, coefficient) pairs, all positive
    j: int  # index into S_0 whose complement sum drops below 1
    complement_sum: Fraction


@dataclass(frozen=True)
class AxiomReport:
    axiom1: bool
    axiom2: bool
    axiom3: bool
    head_on_axis_conflict: bool
    axiom1_violation: Optional[tuple] = None
    axiom2_violation: Optional[Axiom2Violation] = None
    axiom3_violation: Optional[Axiom3Violation] = None
    axiom3_recession: Optional[tuple] = None
    axis_points: tuple = field(default=())

    @property
    def all_hold(self) -> bool:
        return self.axiom1 and self.axiom2 and self.axiom3


# -- axiom (2): covering [0, 1] by lambda-intervals ---------------------------


def _cone_interval(u, v, gens, dim) -> Optional[tuple]:
    """``{lam in [0,1] : lam u + (1-lam) v in cone(gens)}`` as (lo, hi) or None."""
    # variables: lam, then one coefficient per generator
    d = sub(u, v)
    A = [[d[k]] + [-g[k] for g in gens] for k in range(dim)]
    b = [-x for x in v]
    bound = [[-ONE] + [ZERO] * len(gens)]
    c = [ONE] + [ZERO] * len(gens)
    lo = lp_solve(LpProblem(c, "min", A, b, bound, [-ONE]))
    if not lo.feasible:
        return None
    hi = lp_solve(LpProblem(c, "max", A, b, bound, [-ONE]))
    return lo.optimum, hi.optimum


def axiom2_intervals(spec: SkeletonSpec, u, v) -> list[tuple]:
    """Closed lambda-intervals where ``lam u + (1-lam) v = a e + b w``, ``a, b >= 0``.

    One interval per ``w`` in ``S_0`` plus the axis case ``b = 0``.
    """
    e = spec.head
    out = []
    gens_list = [[e]] + [[e, w] for w in spec.periphery]
    for gens in gens_list:
        iv = _cone_interval(u, v, gens, spec.dim)
        if iv is not None:
            out.append(iv)
    return out


def _uncovered(intervals: list[tuple]) -> Optional[tuple]:
    """First uncovered piece of [0, 1] as (lo, hi, lo_closed, hi_closed)."""
    pos, pos_covered = ZERO, False
    for lo, hi in sorted(intervals):
        if lo > pos:
            return (pos, lo, not pos_covered, False)
        if hi >= pos:
            pos, pos_covered = hi, True
    if pos < 1 or not pos_covered:
        return (pos, ONE, not pos_covered, True)
    return None


def axiom2_covered(spec: SkeletonSpec, u, v, lam) -> bool:
    lam = Fraction(lam)
    return any(lo <= lam <= hi for lo, hi in axiom2_intervals(spec, u, v))


def _check_axiom2(spec: SkeletonSpec) -> Optional[Axiom2Violation]:
    pts = spec.points
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            u, v = pts[a], pts[b]
            gap = _uncovered(axiom2_intervals(spec, u, v))
            if gap is not None:
                lo, hi, lc, hc = gap
                return Axiom2Violation(u, v, (lo, hi), lc, hc, (lo + hi) / 2)
    return None


# -- axiom (3): coefficient bound for representations of e -------------------


def _rep_problem(spec, objective, sense, extra_ineq=(), extra_rhs=()):
    S0 = spec.periphery
    A = [[w[k] for w in S0] for k in range(spec.dim)]
    return lp_solve(LpProblem(objective, sense, A, spec.head, extra_ineq, extra_rhs))


def _check_axiom3(spec: SkeletonSpec):
    S0 = spec.periphery
    n = len(S0)
    if n == 0:
        return None, None
    # recession directions of P = {a >= 0 : sum a_i u_i = e}
    A = [[w[k] for w in S0] for k in range(spec.dim)] + [list(ones(n))]
    rec = lp_solve(LpProblem(zeros(n), "min", A, list(zeros(spec.dim)) + [ONE]))
    if rec.feasible:
        return None, rec.witness
    for j in range(n):
        # is there a representation with a_j > 0 and some other a_k > 0?
        support = None
        for k in range(n):
            if k == j:
                continue
            # maximize t subject to a in P, a_j >= t, a_k >= t, t <= 1
            Aeq = [[w[c] for w in S0] + [ZERO] for c in range(spec.dim)]
            G = []
            for idx in (j, k):
                row = [ZERO] * (n + 1)
                row[idx] = ONE
                row[n] = -ONE
                G.append(row)
            G.append([ZERO] * n + [-ONE])
            obj = [ZERO] * n + [ONE]
            res = lp_solve(LpProblem(obj, "max", Aeq, spec.head, G, [ZERO, ZERO, -ONE]))
            if res.status == "optimal" and res.optimum > 0:
                support = res.witness[:n]
                break
        if support is None:
            continue
        obj = [ONE if i != j else ZERO for i in range(n)]
        low = _rep_problem(spec, obj, "min")
        m = low.optimum
        if m >= 1:
            continue
        q = low.witness
        s_p = sum(a for i, a in enumerate(support) if i != j)
        if s_p < 1:
            alpha = tuple(support)
        else:
            t = min(Fraction(1, 2), (1 - m) / (2 * (s_p - m)))
            alpha = tuple((1 - t) * a + t * b for a, b in zip(q, support))
        coeffs = tuple((i, a) for i, a in enumerate(alpha) if a > 0)
        csum = sum(a for i, a in coeffs if i != j)
        return Axiom3Violation(coeffs, j, csum), None
    return None, None


def verify_skeleton(spec: SkeletonSpec) -> AxiomReport:
    pts = set(spec.points)
    e = spec.head
    ax1 = next((u for u in spec.points if sub(e, u) not in pts), None)
    ax2 = _check_axiom2(spec)
    ax3, rec = _check_axiom3(spec)
    axis = tuple(
        s
        for s in spec.periphery
        if (lam := _axis_multiple(s, e)) is not None and 0 <= lam <= 1
    )
    return AxiomReport(
        axiom1=ax1 is None,
        axiom2=ax2 is None,
        axiom3=ax3 is None and rec is None,
        head_on_axis_conflict=bool(axis),
        axiom1_violation=ax1,
        axiom2_violation=ax2,
        axiom3_violation=ax3,
        axiom3_recession=rec,
        axis_points=axis,
    )


def _axis_multiple(s, e) -> Optional[Fraction]:
    k = next(i for i, x in enumerate(e) if x)
    lam = s[k] / e[k]
    return lam if scale(lam, e) == tuple(s) else None


# -- the generated space ------------------------------------------------------


@dataclass(frozen=True)
class GeneratedSpace:
    space: OrderUnitSpace
    basis: tuple  # ambient vectors spanning V
    periphery_match: str  # "exact" | "superset" | "mismatch"
    unmatched: tuple  # ambient periphery points outside S_0
    missing: tuple  # points of S_0 that are not peripheral

    def to_coords(self, v) -> tuple:
        x = solve(transpose(self.basis), vector(v))
        if x is None:
            raise PreconditionError("vector is outside the span of the skeleton")
        return x

    def to_ambient(self, c) -> tuple:
        return lincomb(c, self.basis, len(self.basis[0]))


def generate_space(spec: SkeletonSpec) -> GeneratedSpace:
    """The order unit space ``(span S, cone S, e)`` of a valid skeleton.

    All computation happens in coordinates of the row-reduced basis of ``span S``.  The
    periphery of the result is compared against ``S_0``: ``exact`` means they
    coincide, ``superset`` means extra peripheral points turned up, and
    ``mismatch`` means some point of ``S_0`` is not peripheral at all.
    """
    report = verify_skeleton(spec)
    if not report.all_hold:
        raise SkeletonError("skeleton axioms fail", report)
    if report.head_on_axis_conflict:
        raise SkeletonError("a peripheral point lies on the segment [0, e]", report)
    R, pivots = rref(spec.points)
    basis = tuple(tuple(r) for r in R)

    def coords(v):
        return tuple(v[p] for p in pivots)

    gens = [coords(p) for p in spec.points if not is_zero(p)]
    r = len(basis)
    hrep = dual_description(ConeVRep(tuple(gens), r))
    space = make_space(hrep.rows, coords(spec.head))

    def ambient(c):
        return lincomb(c, basis, spec.dim)

    S0 = set(spec.periphery)
    missing = tuple(s for s in spec.periphery if not classify(space, coords(s)).in_periphery)
    found = set()
    unmatched = []
    for comp in periphery_components(space):
        verts = vertex_enumeration(comp.polytope)
        for vtx in verts:
            a = ambient(vtx)
            found.add(a)
            if a not in S0 and a not in unmatched:
                unmatched.append(a)
        if len(verts) > 1:
            mid = ambient(tuple(sum(xs) / len(verts) for xs in zip(*verts)))
            if mid not in S0 and mid not in unmatched:
                unmatched.append(mid)
    if missing:
        match = "mismatch"
    elif unmatched:
        match = "superset"
        warnings.warn("generated periphery is larger than S_0", stacklevel=2)
    else:
        match = "exact"
    return GeneratedSpace(space, basis, match, tuple(unmatched), missing)


# -- structure results on the generated interval ------------------------------


def k_membership_closed_form(alpha, beta) -> bool:
    alpha, beta = Fraction(alpha), Fraction(beta)
    return alpha >= 0 and alpha + beta >= 0 and max(alpha, alpha + beta) <= 1


def k_membership(space: OrderUnitSpace, u, alpha, beta) -> bool:
    """Whether ``alpha e + beta u`` lies in ``[0, e]`` for peripheral ``u``."""
    u = space.check(u)
    if not classify(space, u).in_periphery:
        raise PreconditionError("k_membership needs a peripheral u")
    alpha, beta = Fraction(alpha), Fraction(beta)
    x = tuple(alpha * a + beta * b for a, b in zip(space.unit, u))
    return classify(space, x).in_order_interval


@dataclass(frozen=True)
class LeadCheck:
    is_lead: bool
    lead_by_definition: bool
    e_extreme_in_K: bool


def order_interval(space: OrderUnitSpace) -> Polytope:
    F = space.states
    G = [tuple(f) for f in F] + [scale(-1, f) for f in F]
    h = [ZERO] * len(F) + [-ONE] * len(F)
    return Polytope(space.dim, G, h)


def lead_and_extreme_checks(space: OrderUnitSpace, v) -> LeadCheck:
    """Lead-point status of ``v`` in ``K = [0, e]`` and extremality of ``e``.

    ``is_lead`` uses the norm; ``lead_by_definition`` maximizes the stretch
    factor ``t`` with ``t v`` still in ``[0, e]`` by LP (lead iff it is 1).
    """
    v = space.check(v)
    if not classify(space, v).in_order_interval:
        raise PreconditionError("v must lie in [0, e]")
    is_lead = order_norm(space, v) == 1
    vals = space.values(v)
    # max t s.t. t f_i(v) >= 0 and t f_i(v) <= 1
    G = [[x] for x in vals] + [[-x] for x in vals]
    h = [ZERO] * len(vals) + [-ONE] * len(vals)
    res = lp_solve(LpProblem([ONE], "max", (), (), G, h, lower=(ZERO,)))
    by_def = res.status == "optimal" and res.optimum == 1
    e_ext = order_interval(space).is_vertex(space.unit)
    return LeadCheck(is_lead, by_def, e_ext)
