"""Pointwise geometry of an order unit space.

Norms, canopy / periphery / boundary classification, infinity-orthogonality,
the lines ``L(u)`` through the order unit, and segment tests inside the
periphery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cones import Polytope
from .exact import lincomb, ones, scale, sub, zeros
from .lp import LpProblem, lp_solve
from .space import OrderUnitSpace, PreconditionError, order_norm

ONE = Fraction(1)


@dataclass(frozen=True)
class RegionReport:
    vector: tuple
    in_positive_cone: bool
    in_order_interval: bool
    norm: Fraction
    in_canopy: bool
    in_periphery: bool
    on_cone_boundary: bool
    zero_state_index: Optional[int]
    unit_state_index: Optional[int]


def classify(V: OrderUnitSpace, v: Sequence) -> RegionReport:
    v = V.check(v)
    vals = V.values(v)
    pos = all(x >= 0 for x in vals)
    below_e = all(x <= 1 for x in vals)
    norm = max(abs(x) for x in vals)
    zero = next((i for i, x in enumerate(vals) if x == 0), None)
    unit = next((i for i, x in enumerate(vals) if x == 1), None)
    comp = sub(V.unit, v)
    periphery = (
        pos
        and below_e
        and norm == 1
        and order_norm(V, comp) == 1
    )
    return RegionReport(
        vector=v,
        in_positive_cone=pos,
        in_order_interval=pos and below_e,
        norm=norm,
        in_canopy=pos and norm == 1,
        in_periphery=periphery,
        on_cone_boundary=pos and zero is not None,
        zero_state_index=zero,
        unit_state_index=unit,
    )


def is_peripheral(V: OrderUnitSpace, v: Sequence) -> bool:
    return classify(V, v).in_periphery


def in_canopy(V: OrderUnitSpace, v: Sequence) -> bool:
    return classify(V, v).in_canopy


# -- infinity-orthogonality ---------------------------------------------------


def infty_orthogonal(V: OrderUnitSpace, x: Sequence, y: Sequence) -> bool:
    """Decide ``||x + k y|| = max{||x||, ||k y||}`` for every real ``k``.

    Both sides are convex and piecewise linear in ``k``.  Between consecutive
    breakpoints the right side is linear and every piece of the left side has
    slope at most ``||y||`` in absolute value, so agreement at the breakpoints
    plus one point beyond each extreme breakpoint is equivalent to agreement
    everywhere.
    """
    x, y = V.check(x), V.check(y)
    a, b = V.values(x), V.values(y)
    nx = max(abs(t) for t in a)
    ny = max(abs(t) for t in b)
    if nx == 0 or ny == 0:
        return True
    ks = {-ai / bi for ai, bi in zip(a, b) if bi}
    ks |= {nx / ny, -nx / ny, Fraction(0)}
    lo, hi = min(ks), max(ks)
    ks |= {lo - 1, hi + 1}
    for k in ks:
        lhs = max(abs(ai + k * bi) for ai, bi in zip(a, b))
        if lhs != max(nx, abs(k) * ny):
            return False
    return True


def positive_pair_criterion(V: OrderUnitSpace, u: Sequence, v: Sequence) -> bool:
    """``|| u/||u|| + v/||v|| || = 1`` for nonzero positive ``u, v``."""
    nu, nv = order_norm(V, u), order_norm(V, v)
    if nu == 0 or nv == 0:
        raise PreconditionError("positive-pair criterion needs nonzero vectors")
    w = tuple(p / nu + q / nv for p, q in zip(u, v))
    return order_norm(V, w) == 1


# -- lines through the order unit --------------------------------------------


@dataclass(frozen=True)
class LineAnalysis:
    base: tuple
    norm_of_gap: Fraction
    projection: tuple


def _line_base(V: OrderUnitSpace, u: Sequence) -> tuple:
    u = V.check(u)
    if u == V.unit:
        raise PreconditionError("L(u) undefined for u = e: no unique projection")
    if not classify(V, u).in_canopy:
        raise PreconditionError("u must lie in the canopy (positive with norm 1)")
    return u


def peripheral_projection(V: OrderUnitSpace, u: Sequence) -> LineAnalysis:
    """The unique point of ``L(u)`` that is peripheral."""
    u = _line_base(V, u)
    gap = sub(V.unit, u)
    n = order_norm(V, gap)
    ubar = sub(V.unit, scale(1 / n, gap))
    assert classify(V, ubar).in_periphery
    return LineAnalysis(u, n, ubar)


def line_point(V: OrderUnitSpace, u: Sequence, lam) -> tuple:
    """``u_lambda = e - lambda (e - u)``."""
    return sub(V.unit, scale(lam, sub(V.unit, V.check(u))))


def line_norm(V: OrderUnitSpace, u: Sequence, lam) -> Fraction:
    """Closed form ``max{1, |lambda ||e - u|| - 1|}`` for ``||u_lambda||``."""
    u = _line_base(V, u)
    lam = Fraction(lam)
    n = order_norm(V, sub(V.unit, u))
    return max(ONE, abs(lam * n - 1))


def line_point_positive(V: OrderUnitSpace, u: Sequence, lam) -> bool:
    """Closed form for ``u_lambda in V+``: ``lambda ||e - u|| <= 1``."""
    u = _line_base(V, u)
    return Fraction(lam) * order_norm(V, sub(V.unit, u)) <= 1


# -- states as convex combinations of the rows --------------------------------


@dataclass(frozen=True)
class StateWitness:
    weights: tuple  # convex weights on the state rows
    functional: tuple

    def __call__(self, v: Sequence) -> Fraction:
        return sum((a * b for a, b in zip(self.functional, v)), Fraction(0))


def find_state(V: OrderUnitSpace, conditions: Sequence[tuple]) -> Optional[StateWitness]:
    """A state ``f`` with ``f(x) = c`` for every ``(x, c)`` in ``conditions``.

    States are exactly the convex combinations of the rows, so this is an LP
    over the simplex of row weights.
    """
    m = V.nstates
    A = [ones(m)]
    b = [ONE]
    for x, c in conditions:
        A.append(V.values(V.check(x)))
        b.append(Fraction(c))
    res = lp_solve(LpProblem(zeros(m), "min", A, b))
    if not res.feasible:
        return None
    w = res.witness
    return StateWitness(w, lincomb(w, V.states, V.dim))


# -- five-way periphery certificates -----------------------------------------


@dataclass(frozen=True)
class PeripheryCertificates:
    peripheral: bool  # u in (S_V)_0
    orthogonal_to_complement: bool  # u _|_oo (e - u)
    has_orthogonal_pair: bool  # some v in C_V with u _|_oo v
    canopy_sum: bool  # some v in C_V with u + v in C_V
    vanishing_state: bool  # some state f with f(u) = 0
    pair_witness: Optional[tuple] = None
    sum_witness: Optional[tuple] = None
    state_witness: Optional[StateWitness] = None

    def as_tuple(self) -> tuple:
        return (
            self.peripheral,
            self.orthogonal_to_complement,
            self.has_orthogonal_pair,
            self.canopy_sum,
            self.vanishing_state,
        )

    @property
    def agree(self) -> bool:
        return len(set(self.as_tuple())) == 1


def _canopy_sum_partner(V: OrderUnitSpace, u: tuple, j: int) -> Optional[tuple]:
    """Some ``v`` with ``0 <= v <= e - u`` and ``f_j(v) = 1``, by exact LP."""
    F, d = V.states, V.dim
    vals = V.values(u)
    G = [tuple(f) for f in F] + [scale(-1, f) for f in F]
    h = list(zeros(len(F))) + [v - 1 for v in vals]
    res = lp_solve(LpProblem(zeros(d), "min", [F[j]], [ONE], G, h, lower=(None,) * d))
    return res.witness if res.feasible else None


def periphery_certificates(V: OrderUnitSpace, u: Sequence) -> PeripheryCertificates:
    """Evaluate five conditions on a canopy point that should all agree.

    1. ``u`` is peripheral;
    2. ``u`` is infinity-orthogonal to ``e - u``;
    3. ``u`` has an infinity-orthogonal partner in the canopy;
    4. some canopy ``v`` has ``u + v`` in the canopy;
    5. some state vanishes at ``u``.

    Each is computed by its own route.  For (3) and (4) the LP search only
    visits rows ``j`` with ``f_j(u) = 0``: ``v <= e - u`` caps ``f_j(v)`` at
    ``1 - f_j(u)``, so other rows cannot reach 1.
    """
    u = V.check(u)
    rep = classify(V, u)
    if not rep.in_canopy:
        raise PreconditionError("periphery certificates need u in the canopy")
    comp = sub(V.unit, u)
    c1 = rep.in_periphery
    # at u = e the partner e - u is 0, which is orthogonal to everything but
    # is not a canopy point; the equivalence is only meaningful for u != e
    c2 = any(comp) and infty_orthogonal(V, u, comp)

    vals = V.values(u)
    candidates_j = [j for j, x in enumerate(vals) if x == 0]

    pair = None
    if classify(V, comp).in_canopy and c2:
        pair = comp
    else:
        for j in candidates_j:
            v = _canopy_sum_partner(V, u, j)
            if v is not None and classify(V, v).in_canopy and infty_orthogonal(V, u, v):
                pair = v
                break
    c3 = pair is not None

    summ = None
    for j in candidates_j:
        v = _canopy_sum_partner(V, u, j)
        if v is not None:
            assert classify(V, v).in_canopy and classify(V, tuple(a + b for a, b in zip(u, v))).in_canopy
            summ = v
            break
    c4 = summ is not None

    state = None
    zero_rows = [i for i, x in enumerate(vals) if x == 0]
    if zero_rows:
        w = tuple(ONE if i == zero_rows[0] else Fraction(0) for i in range(V.nstates))
        state = StateWitness(w, V.states[zero_rows[0]])
    else:
        state = find_state(V, [(u, 0)])
    c5 = state is not None
    return PeripheryCertificates(c1, c2, c3, c4, c5, pair, summ, state)


# -- periphery as a union of face-pair polytopes ------------------------------


@dataclass(frozen=True)
class PeripheryComponent:
    zero_state: int
    unit_state: int
    polytope: Polytope

    def contains(self, v: Sequence) -> bool:
        return self.polytope.contains(v)


def component_polytope(V: OrderUnitSpace, i: int, j: int) -> Polytope:
    """``{v : F v >= 0, F (e - v) >= 0, f_i(v) = 0, f_j(v) = 1}``."""
    F = V.states
    G = [tuple(f) for f in F] + [scale(-1, f) for f in F]
    h = list(zeros(len(F))) + [-ONE] * len(F)
    return Polytope(V.dim, G, h, [F[i], F[j]], [Fraction(0), ONE])


def periphery_components(V: OrderUnitSpace) -> list[PeripheryComponent]:
    out = []
    for i in range(V.nstates):
        for j in range(V.nstates):
            if i == j:
                continue
            P = component_polytope(V, i, j)
            if P.is_nonempty():
                out.append(PeripheryComponent(i, j, P))
    return out


@dataclass(frozen=True)
class SegmentVerdict:
    verdict: bool
    f_witness: Optional[StateWitness] = None
    g_witness: Optional[StateWitness] = None


def segment_in_periphery(V: OrderUnitSpace, u: Sequence, v: Sequence) -> SegmentVerdict:
    """Whether ``[u, v]`` lies in the periphery.

    Decided by the existence of states ``f, g`` with ``f(u) = f(v) = 1`` and
    ``g(u) = g(v) = 0``.
    """
    u, v = V.check(u), V.check(v)
    if not (classify(V, u).in_periphery and classify(V, v).in_periphery):
        raise PreconditionError("segment endpoints must be peripheral")
    if u == v:
        raise PreconditionError("segment endpoints must be distinct")
    f = find_state(V, [(u, 1), (v, 1)])
    g = find_state(V, [(u, 0), (v, 0)])
    ok = f is not None and g is not None
    return SegmentVerdict(ok, f, g)
