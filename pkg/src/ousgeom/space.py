"""Finite-dimensional order unit spaces with polyhedral positive cones.

A space is stored by its state matrix ``F`` (one row per extreme state) and
its order unit ``e``.  The positive cone is ``{v : F v >= 0}`` and the order
unit norm is ``max_i |f_i(v)|``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exact import ShapeError, dot, matrix, rank, scale, vector
from .cones import remove_redundant


class SpaceError(ValueError):
    """Invalid order unit space data."""


class PreconditionError(ValueError):
    """An operation was called outside its domain."""


@dataclass(frozen=True)
class ConstructionTag:
    """How a composite space was assembled from its operands."""

    kind: str  # "linf" | "direct_sum" | "adjoin"
    operands: tuple = ()


@dataclass(frozen=True)
class OrderUnitSpace:
    dim: int
    states: tuple
    unit: tuple
    construction: Optional[ConstructionTag] = field(default=None, compare=False, repr=False)

    @property
    def nstates(self) -> int:
        return len(self.states)

    def values(self, v: Sequence) -> tuple:
        """State values ``(f_1(v), ..., f_m(v))``."""
        if len(v) != self.dim:
            raise ShapeError(f"vector of length {len(v)} in a space of dimension {self.dim}")
        return tuple(dot(f, v) for f in self.states)

    def check(self, v: Sequence) -> tuple:
        return vector(v, self.dim)


def make_space(states: Sequence[Sequence], unit: Sequence) -> OrderUnitSpace:
    """Validate and normalize a state matrix / order unit pair.

    Rows are rescaled so that ``f_i(e) = 1``; duplicate rows and rows that
    are nonnegative combinations of the others are dropped.
    """
    e = vector(unit)
    d = len(e)
    if d < 1:
        raise SpaceError("dimension must be at least 1")
    F = matrix(states, d if states else None)
    if not F:
        raise SpaceError("at least one state row is required")
    rows = []
    for i, f in enumerate(F):
        fe = dot(f, e)
        if fe <= 0:
            raise SpaceError(f"unit not interior: state row {i} has f(e) = {fe}")
        rows.append(scale(1 / fe, f))
    if rank(rows) < d:
        raise SpaceError("cone not proper: state matrix has rank below the dimension")
    seen, uniq = set(), []
    for r in rows:
        if r not in seen:
            seen.add(r)
            uniq.append(r)
    uniq = remove_redundant(uniq, d)
    return OrderUnitSpace(d, tuple(uniq), e)


def order_norm(V: OrderUnitSpace, v: Sequence) -> Fraction:
    """``inf{a >= 0 : a e +- v in V+}``, i.e. the largest ``|f_i(v)|``."""
    return max(abs(x) for x in V.values(v))


def in_positive_cone(V: OrderUnitSpace, v: Sequence) -> bool:
    return all(x >= 0 for x in V.values(v))


def in_order_interval(V: OrderUnitSpace, v: Sequence) -> bool:
    return all(0 <= x <= 1 for x in V.values(v))
