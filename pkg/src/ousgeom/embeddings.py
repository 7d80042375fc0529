"""Axis planes, the axis decomposition and l-infinity^n embeddings."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cones import vertex_enumeration
from .core import classify, find_state, infty_orthogonal
from .exact import ShapeError, add, lincomb, rank, scale, solve, sub, transpose, zeros
from .skeleton import order_interval
from .space import OrderUnitSpace, PreconditionError, order_norm

EQUAL = "equal"
AXIS_ONLY = "axis_only"


def _require_peripheral(V, *vs):
    for v in vs:
        if not classify(V, v).in_periphery:
            raise PreconditionError(f"{v} is not peripheral")


@dataclass(frozen=True)
class PlaneEmbedding:
    """The map ``alpha e + beta u -> (alpha, alpha + beta)`` onto l-infinity^2."""

    base: tuple

    def __call__(self, alpha, beta) -> tuple:
        alpha, beta = Fraction(alpha), Fraction(beta)
        return (alpha, alpha + beta)


def plane_coordinates(V: OrderUnitSpace, u: Sequence, v: Sequence) -> Optional[tuple]:
    """l-infinity^2 coordinates of ``v`` in ``P_u = span{e, u}``, or None off the plane."""
    u, v = V.check(u), V.check(v)
    _require_peripheral(V, u)
    ab = solve(transpose([V.unit, u]), v)
    if ab is None:
        return None
    return PlaneEmbedding(u)(*ab)


@dataclass(frozen=True)
class AxisDecomposition:
    lam: Fraction
    mu: Fraction
    w: tuple

    def reconstruct(self, e: Sequence) -> tuple:
        return add(scale(self.lam, e), scale(self.mu, self.w))


def _decompose_with_sign(V, v, sign):
    s = scale(sign, v)
    n = order_norm(V, s)
    gap = sub(scale(n, V.unit), s)
    m = order_norm(V, gap)
    w = scale(1 / m, gap)
    return AxisDecomposition(sign * n, -sign * m, w)


def axis_decomposition(V: OrderUnitSpace, v: Sequence) -> AxisDecomposition:
    """``v = lam e + mu w`` with ``w`` peripheral, for ``v`` off the axis.

    The row of lowest index attaining ``||v||`` fixes the sign.  Other
    attaining rows (possibly of the opposite sign) must give the same plane.
    """
    v = V.check(v)
    if rank([V.unit, v]) < 2:
        raise PreconditionError("axis vector: decomposition non-unique")
    vals = V.values(v)
    n = max(abs(x) for x in vals)
    signs = [1 if x == n else -1 for x in vals if abs(x) == n]
    dec = _decompose_with_sign(V, v, signs[0])
    assert classify(V, dec.w).in_periphery
    assert dec.reconstruct(V.unit) == v
    for s in set(signs[1:]) - {signs[0]}:
        other = _decompose_with_sign(V, v, s)
        assert plane_relation(V, dec.w, other.w) == EQUAL
    return dec


def plane_relation(V: OrderUnitSpace, w: Sequence, w2: Sequence) -> str:
    """``equal`` when ``P_w = P_w2``, otherwise ``axis_only``."""
    w, w2 = V.check(w), V.check(w2)
    _require_peripheral(V, w, w2)
    rel = EQUAL if rank([V.unit, w, w2]) == 2 else AXIS_ONLY
    assert (rel == EQUAL) == (w2 in (w, sub(V.unit, w)))
    return rel


# -- l-infinity^n embeddings --------------------------------------------------


@dataclass(frozen=True)
class EmbeddingCandidate:
    elements: tuple
    biorthogonal_states: Optional[tuple] = None


@dataclass(frozen=True)
class EmbeddingVerdict:
    accepted: bool
    failures: tuple
    biorthogonal_states: Optional[tuple] = None


def verify_linf_embedding(V: OrderUnitSpace, candidate) -> EmbeddingVerdict:
    """Check that ``u_1, ..., u_n`` span a unital copy of l-infinity^n.

    (a) every ``u_i`` is peripheral; (b) they sum to ``e``; (c) they are
    pairwise infinity-orthogonal; (d) states ``g_i`` with ``g_i(u_j) = delta_ij``
    exist; (e) ``||sum s_i u_i|| = 1`` for every sign vector ``s``.

    Given (d), ``||sum a_i u_i|| >= max |a_i|``, and the norm is convex, so
    its maximum over the cube ``max |a_i| <= 1`` sits at a sign vector; (e)
    then gives equality for all coefficient vectors.
    """
    elems = candidate.elements if isinstance(candidate, EmbeddingCandidate) else tuple(candidate)
    elems = tuple(V.check(u) for u in elems)
    n = len(elems)
    if n < 2:
        raise ShapeError("an embedding candidate needs at least two elements")
    failures = []
    for i, u in enumerate(elems):
        if not classify(V, u).in_periphery:
            failures.append(f"(a) element {i} is not peripheral")
    total = lincomb([1] * n, elems, V.dim)
    if total != V.unit:
        failures.append("(b) elements do not sum to e")
    for i, j in itertools.combinations(range(n), 2):
        if not infty_orthogonal(V, elems[i], elems[j]):
            failures.append(f"(c) elements {i} and {j} are not infinity-orthogonal")
    states = []
    for i in range(n):
        g = find_state(V, [(u, 1 if k == i else 0) for k, u in enumerate(elems)])
        if g is None:
            failures.append(f"(d) no state separates element {i}")
        states.append(g)
    for signs in itertools.product((1, -1), repeat=n):
        if order_norm(V, lincomb(signs, elems, V.dim)) != 1:
            failures.append(f"(e) sign pattern {signs} has norm != 1")
            break
    ok = not failures
    return EmbeddingVerdict(ok, tuple(failures), tuple(states) if ok else None)


def embedding_spot_check(V: OrderUnitSpace, elements, coefficients) -> list[str]:
    """Check the coordinate map ``sum a_i u_i -> a`` on sample coefficient vectors.

    It must send ``e`` to the all-ones vector, preserve norms (max of
    ``|a_i|``) and preserve positivity (all ``a_i >= 0``).
    """
    n = len(elements)
    problems = []
    if lincomb([1] * n, elements, V.dim) != V.unit:
        problems.append("not unital")
    for a in coefficients:
        x = lincomb(a, elements, V.dim)
        if order_norm(V, x) != max(abs(t) for t in a):
            problems.append(f"norm mismatch at {a}")
        if classify(V, x).in_positive_cone != all(t >= 0 for t in a):
            problems.append(f"order mismatch at {a}")
    return problems


def find_linf_embedding(V: OrderUnitSpace, n: int) -> Optional[EmbeddingCandidate]:
    """Search vertices of ``[0, e]`` for an accepted l-infinity^n candidate.

    Returns the first accepted subset in lexicographic order.  None means
    "not found at vertex resolution", not that no embedding exists.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if n > V.dim:
        return None
    verts = [x for x in vertex_enumeration(order_interval(V)) if classify(V, x).in_periphery]
    e = V.unit

    def search(start, chosen, partial):
        if len(chosen) == n:
            if partial == e:
                cand = EmbeddingCandidate(tuple(chosen))
                verdict = verify_linf_embedding(V, cand)
                if verdict.accepted:
                    return EmbeddingCandidate(tuple(chosen), verdict.biorthogonal_states)
            return None
        for k in range(start, len(verts)):
            nxt = add(partial, verts[k])
            # remaining elements are positive, so the partial sum must stay <= e
            if not classify(V, sub(e, nxt)).in_positive_cone:
                continue
            found = search(k + 1, chosen + [verts[k]], nxt)
            if found is not None:
                return found
        return None

    return search(0, [], tuple(zeros(V.dim)))
