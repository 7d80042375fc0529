"""Polyhedral cones and polytopes: double description and vertex enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import (
    ShapeError,
    basis_vector,
    dot,
    is_zero,
    matrix,
    primitive,
    rank,
    scale,
    sub,
    vector,
    zeros,
)
from .lp import LpProblem, is_feasible


class UnboundedError(ValueError):
    """The polyhedron handed to vertex enumeration is not bounded."""


@dataclass(frozen=True)
class ConeHRep:
    """The cone ``{x : A x >= 0}``."""

    rows: tuple
    dim: int

    def __post_init__(self):
        rows = matrix(self.rows, self.dim if self.rows else None)
        if any(is_zero(r) for r in rows):
            raise ShapeError("H-representation rows must be nonzero")
        object.__setattr__(self, "rows", rows)

    def contains(self, x: Sequence) -> bool:
        x = vector(x, self.dim)
        return all(dot(r, x) >= 0 for r in self.rows)


@dataclass(frozen=True)
class ConeVRep:
    """The cone of nonnegative combinations of ``generators``."""

    generators: tuple
    dim: int

    def __post_init__(self):
        gens = matrix(self.generators, self.dim if self.generators else None)
        if any(is_zero(g) for g in gens):
            raise ShapeError("V-representation generators must be nonzero")
        object.__setattr__(self, "generators", gens)

    def contains(self, x: Sequence) -> bool:
        x = vector(x, self.dim)
        if not self.generators:
            return is_zero(x)
        k = len(self.generators)
        cols = [[g[i] for g in self.generators] for i in range(self.dim)]
        return is_feasible(LpProblem(zeros(k), "min", cols, x))


def _generators(constraints: Sequence[Sequence], dim: int):
    """Lineality basis and extreme rays of ``{x : a.x >= 0 for a in constraints}``.

    Incremental double description: constraints are inserted one at a time,
    lineality is consumed first, and new rays come from pairs of rays that
    pass the combinatorial adjacency test.
    """
    lin = [basis_vector(i, dim) for i in range(dim)]
    rays: list[tuple] = []
    zsets: list[frozenset] = []
    for k, h in enumerate(constraints):
        if is_zero(h):
            continue
        pick = next((i for i, l in enumerate(lin) if dot(h, l) != 0), None)
        if pick is not None:
            l = lin.pop(pick)
            hl = dot(h, l)
            if hl < 0:
                l, hl = scale(-1, l), -hl
            lin = [primitive(sub(m, scale(dot(h, m) / hl, l))) for m in lin]
            rays = [primitive(sub(r, scale(dot(h, r) / hl, l))) for r in rays]
            zsets = [z | {k} for z in zsets]
            rays.append(primitive(l))
            zsets.append(frozenset(range(k)))
            continue
        vals = [dot(h, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zero]
        new_z = [zsets[i] for i in pos] + [zsets[i] | {k} for i in zero]
        for p in pos:
            for q in neg:
                common = zsets[p] & zsets[q]
                if any(
                    i != p and i != q and common <= zsets[i] for i in range(len(rays))
                ):
                    continue
                r = sub(scale(vals[p], rays[q]), scale(vals[q], rays[p]))
                new_rays.append(primitive(r))
                new_z.append(common | {k})
        rays, zsets = new_rays, new_z
    return lin, rays


def cone_generators(h: ConeHRep) -> tuple[list[tuple], list[tuple]]:
    """(lineality basis, extreme rays) of an H-represented cone."""
    return _generators(h.rows, h.dim)


def _dedupe(rows):
    seen, out = set(), []
    for r in rows:
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


def remove_redundant(rows: Sequence[Sequence], dim: int) -> list[tuple]:
    """Drop every row that is a nonnegative combination of the remaining ones.

    For cones this is exactly the set of redundant inequalities (Farkas).
    Rows are examined in order, so the output is deterministic.
    """
    kept = list(rows)
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1 :]
        if others and in_cone(kept[i], others, dim):
            del kept[i]
        else:
            i += 1
    return kept


def in_cone(x: Sequence, gens: Sequence[Sequence], dim: int) -> bool:
    if not gens:
        return is_zero(x)
    cols = [[g[i] for g in gens] for i in range(dim)]
    return is_feasible(LpProblem(zeros(len(gens)), "min", cols, tuple(x)))


def dual_description(c: ConeVRep) -> ConeHRep:
    """Irredundant inequality description of a generated cone.

    Works for cones that are not full dimensional: the orthogonal complement
    of the span shows up as pairs of opposite rows.
    """
    if not c.generators:
        raise ValueError("dual_description needs at least one generator")
    lin, rays = _generators(c.generators, c.dim)
    rows = [primitive(r) for r in rays]
    for l in lin:
        l = primitive(l)
        rows += [l, scale(-1, l)]
    rows = _dedupe([r for r in rows if not is_zero(r)])
    rows = remove_redundant(sorted(rows, reverse=True), c.dim)
    return ConeHRep(tuple(rows), c.dim)


@dataclass(frozen=True)
class Polytope:
    """``{x : ineq_matrix x >= ineq_rhs, eq_matrix x == eq_rhs}``."""

    dim: int
    ineq_matrix: tuple = ()
    ineq_rhs: tuple = ()
    eq_matrix: tuple = ()
    eq_rhs: tuple = ()

    def __post_init__(self):
        G = matrix(self.ineq_matrix, self.dim if self.ineq_matrix else None)
        A = matrix(self.eq_matrix, self.dim if self.eq_matrix else None)
        object.__setattr__(self, "ineq_matrix", G)
        object.__setattr__(self, "ineq_rhs", vector(self.ineq_rhs, len(G)))
        object.__setattr__(self, "eq_matrix", A)
        object.__setattr__(self, "eq_rhs", vector(self.eq_rhs, len(A)))

    def contains(self, x: Sequence) -> bool:
        x = vector(x, self.dim)
        return all(dot(g, x) >= h for g, h in zip(self.ineq_matrix, self.ineq_rhs)) and all(
            dot(a, x) == b for a, b in zip(self.eq_matrix, self.eq_rhs)
        )

    def is_nonempty(self) -> bool:
        return is_feasible(
            LpProblem(
                zeros(self.dim),
                "min",
                self.eq_matrix,
                self.eq_rhs,
                self.ineq_matrix,
                self.ineq_rhs,
                lower=(None,) * self.dim,
            )
        )

    def active_rank(self, x: Sequence) -> int:
        x = vector(x, self.dim)
        active = [g for g, h in zip(self.ineq_matrix, self.ineq_rhs) if dot(g, x) == h]
        return rank(list(self.eq_matrix) + active)

    def is_vertex(self, x: Sequence) -> bool:
        return self.contains(x) and self.active_rank(x) == self.dim


def vertex_enumeration(p: Polytope) -> list[tuple]:
    """All vertices of a bounded polytope, sorted lexicographically.

    Raises UnboundedError if the region is nonempty but unbounded; an empty
    region yields an empty list.
    """
    d = p.dim
    cons = [tuple(g) + (-h,) for g, h in zip(p.ineq_matrix, p.ineq_rhs)]
    for a, b in zip(p.eq_matrix, p.eq_rhs):
        row = tuple(a) + (-b,)
        cons += [row, scale(-1, row)]
    cons.append(basis_vector(d, d + 1))
    lin, rays = _generators(cons, d + 1)
    verts = [tuple(x / r[d] for x in r[:d]) for r in rays if r[d] > 0]
    if not verts:
        return []
    if lin or any(r[d] == 0 for r in rays):
        raise UnboundedError("polyhedron is unbounded")
    return sorted(set(verts))


def box(lower: Sequence, upper: Sequence) -> Polytope:
    n = len(lower)
    G = [basis_vector(i, n) for i in range(n)] + [scale(-1, basis_vector(i, n)) for i in range(n)]
    h = [Fraction(x) for x in lower] + [-Fraction(x) for x in upper]
    return Polytope(n, G, h)
