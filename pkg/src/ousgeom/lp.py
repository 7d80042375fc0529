"""Exact two-phase simplex over the rationals.

Pivoting follows Bland's rule (lowest eligible index enters, lowest basic
index leaves on ratio ties), so a given problem always produces the same
witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact import ShapeError, matrix, to_fraction, vector

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"

_ZERO = Fraction(0)


@dataclass(frozen=True)
class LpProblem:
    """Optimize ``objective . x`` subject to

    * ``eq_matrix @ x == eq_rhs``
    * ``ineq_matrix @ x >= ineq_rhs``
    * ``x[j] >= lower[j]`` for every ``j`` whose bound is not None.

    ``lower=None`` means every variable is nonnegative.
    """

    objective: tuple
    sense: str = "min"
    eq_matrix: tuple = ()
    eq_rhs: tuple = ()
    ineq_matrix: tuple = ()
    ineq_rhs: tuple = ()
    lower: Optional[tuple] = None

    def __post_init__(self):
        c = vector(self.objective)
        n = len(c)
        if self.sense not in ("min", "max"):
            raise ShapeError(f"sense must be 'min' or 'max', not {self.sense!r}")
        A = matrix(self.eq_matrix, n if self.eq_matrix else None)
        G = matrix(self.ineq_matrix, n if self.ineq_matrix else None)
        b = vector(self.eq_rhs, len(A))
        h = vector(self.ineq_rhs, len(G))
        if self.lower is None:
            lower = (_ZERO,) * n
        else:
            if len(self.lower) != n:
                raise ShapeError(f"expected {n} lower bounds, got {len(self.lower)}")
            lower = tuple(None if l is None else to_fraction(l) for l in self.lower)
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "eq_matrix", A)
        object.__setattr__(self, "eq_rhs", b)
        object.__setattr__(self, "ineq_matrix", G)
        object.__setattr__(self, "ineq_rhs", h)
        object.__setattr__(self, "lower", lower)

    @property
    def nvars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpResult:
    status: str
    optimum: Optional[Fraction] = None
    witness: Optional[tuple] = None
    # improving direction from ``witness`` when unbounded
    ray: Optional[tuple] = field(default=None)

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


class _Tableau:
    def __init__(self, rows, rhs, basis, ncols):
        self.T = [list(r) + [b] for r, b in zip(rows, rhs)]
        self.basis = list(basis)
        self.ncols = ncols
        self.z = [_ZERO] * (ncols + 1)

    def set_costs(self, cost):
        z = list(cost) + [_ZERO]
        for i, bv in enumerate(self.basis):
            cb = cost[bv]
            if cb:
                row = self.T[i]
                z = [zj - cb * rj for zj, rj in zip(z, row)]
        self.z = z

    def pivot(self, r, c):
        row = self.T[r]
        p = row[c]
        if p != 1:
            row = [x / p for x in row]
            self.T[r] = row
        nz = [(j, x) for j, x in enumerate(row) if x]
        for i, other in enumerate(self.T):
            if i != r:
                f = other[c]
                if f:
                    for j, x in nz:
                        other[j] -= f * x
        f = self.z[c]
        if f:
            for j, x in nz:
                self.z[j] -= f * x
        self.basis[r] = c

    def run(self, allowed):
        """Iterate to optimality; returns the unbounded column or None."""
        while True:
            c = next((j for j in allowed if self.z[j] < 0), None)
            if c is None:
                return None
            best = None
            for i, row in enumerate(self.T):
                a = row[c]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return c
            self.pivot(best[1], c)


def lp_solve(p: LpProblem) -> LpResult:
    """Solve ``p`` exactly."""
    n = p.nvars
    # column layout: one column per bounded variable, two per free variable
    colmap: list[list[tuple[int, int]]] = []  # per original var: (col, sign)
    offset = []
    ncols = 0
    for l in p.lower:
        if l is None:
            colmap.append([(ncols, 1), (ncols + 1, -1)])
            ncols += 2
            offset.append(_ZERO)
        else:
            colmap.append([(ncols, 1)])
            ncols += 1
            offset.append(l)

    def expand(row):
        out = [_ZERO] * ncols
        for j, a in enumerate(row):
            if a:
                for col, s in colmap[j]:
                    out[col] = a if s > 0 else -a
        return out

    def shift(row, rhs):
        return rhs - sum((a * o for a, o in zip(row, offset) if a and o), _ZERO)

    rows, rhs = [], []
    for row, b in zip(p.eq_matrix, p.eq_rhs):
        rows.append(expand(row))
        rhs.append(shift(row, b))
    nslack = len(p.ineq_matrix)
    for row, h in zip(p.ineq_matrix, p.ineq_rhs):
        rows.append(expand(row))
        rhs.append(shift(row, h))
    total = ncols + nslack
    for k in range(len(rows)):
        rows[k] = rows[k] + [_ZERO] * nslack
    for s in range(nslack):
        rows[len(p.eq_matrix) + s][ncols + s] = Fraction(-1)
    for k in range(len(rows)):
        if rhs[k] < 0:
            rows[k] = [-x for x in rows[k]]
            rhs[k] = -rhs[k]

    m = len(rows)
    art0 = total
    for k in range(m):
        rows[k] = rows[k] + [Fraction(1) if i == k else _ZERO for i in range(m)]
    tab = _Tableau(rows, rhs, [art0 + k for k in range(m)], total + m)

    # phase 1
    tab.set_costs([_ZERO] * total + [Fraction(1)] * m)
    tab.run(range(total + m))
    if tab.z[-1] != 0:
        return LpResult(INFEASIBLE)
    i = 0
    while i < len(tab.T):
        if tab.basis[i] >= art0:
            c = next((j for j in range(total) if tab.T[i][j]), None)
            if c is None:
                del tab.T[i]
                del tab.basis[i]
                continue
            tab.pivot(i, c)
        i += 1
    tab.T = [row[:total] + [row[-1]] for row in tab.T]
    tab.ncols = total

    # phase 2
    c = list(p.objective)
    if p.sense == "max":
        c = [-x for x in c]
    tab.set_costs(expand(c) + [_ZERO] * nslack)
    unbounded_col = tab.run(range(total))

    y = [_ZERO] * total
    for i, bv in enumerate(tab.basis):
        y[bv] = tab.T[i][-1]

    def collapse(vals, with_offset):
        x = []
        for j in range(n):
            v = offset[j] if with_offset else _ZERO
            for col, s in colmap[j]:
                v += vals[col] if s > 0 else -vals[col]
            x.append(v)
        return tuple(x)

    point = collapse(y, True)
    value = sum((a * b for a, b in zip(p.objective, point) if a and b), _ZERO)
    if unbounded_col is not None:
        d = [_ZERO] * total
        d[unbounded_col] = Fraction(1)
        for i, bv in enumerate(tab.basis):
            d[bv] = -tab.T[i][unbounded_col]
        return LpResult(UNBOUNDED, None, point, collapse(d, False))
    return LpResult(OPTIMAL, value, point)


def is_feasible(p: LpProblem) -> bool:
    return lp_solve(p).feasible
