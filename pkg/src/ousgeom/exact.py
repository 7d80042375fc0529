"""Exact rational vectors and matrices.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions and
matrices are tuples of row vectors.  Nothing in here ever touches a float.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class ShapeError(ValueError):
    """Raised when vector or matrix dimensions do not line up."""


class RationalParseError(ValueError):
    """Raised for text that is not an exact rational literal."""


def to_fraction(x) -> Fraction:
    """Coerce ``x`` to a Fraction.

    Accepts ints, Fractions and strings of the form ``"p"`` or ``"p/q"``.
    Floats, decimal strings and booleans are rejected so that inexact input
    can never leak in.
    """
    if isinstance(x, bool):
        raise RationalParseError(f"boolean {x!r} is not a rational")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        m = _RATIONAL.match(x)
        if not m:
            raise RationalParseError(f"not an exact rational literal: {x!r}")
        num, den = m.group(1), m.group(2)
        if den is not None and int(den) == 0:
            raise RationalParseError(f"zero denominator in {x!r}")
        return Fraction(int(num), int(den) if den is not None else 1)
    raise RationalParseError(f"cannot use {type(x).__name__} {x!r} as an exact rational")


def vector(entries: Iterable, dim: int | None = None) -> Vector:
    v = tuple(to_fraction(x) for x in entries)
    if dim is not None and len(v) != dim:
        raise ShapeError(f"expected vector of length {dim}, got {len(v)}")
    return v


def matrix(rows: Iterable[Iterable], ncols: int | None = None) -> Matrix:
    m = tuple(vector(r) for r in rows)
    widths = {len(r) for r in m}
    if len(widths) > 1:
        raise ShapeError(f"ragged matrix with row lengths {sorted(widths)}")
    if ncols is not None and m and len(m[0]) != ncols:
        raise ShapeError(f"expected {ncols} columns, got {len(m[0])}")
    return m


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def ones(n: int) -> Vector:
    return (Fraction(1),) * n


def basis_vector(i: int, n: int) -> Vector:
    return tuple(Fraction(1 if k == i else 0) for k in range(n))


def _check(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise ShapeError(f"length mismatch: {len(a)} vs {len(b)}")


def dot(a: Sequence, b: Sequence) -> Fraction:
    _check(a, b)
    s = Fraction(0)
    for x, y in zip(a, b):
        if x and y:
            s += x * y
    return s


def add(a: Sequence, b: Sequence) -> Vector:
    _check(a, b)
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> Vector:
    _check(a, b)
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> Vector:
    c = to_fraction(c)
    return tuple(c * x for x in a)


def lincomb(coeffs: Sequence, vectors: Sequence[Sequence], dim: int) -> Vector:
    out = [Fraction(0)] * dim
    for c, v in zip(coeffs, vectors):
        if c:
            if len(v) != dim:
                raise ShapeError(f"length mismatch: {len(v)} vs {dim}")
            for k, x in enumerate(v):
                if x:
                    out[k] += c * x
    return tuple(out)


def matvec(A: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in A)


def transpose(A: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    if not A:
        return tuple(() for _ in range(ncols or 0))
    return tuple(tuple(col) for col in zip(*A))


def is_zero(v: Sequence) -> bool:
    return not any(v)


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with deterministic left-to-right pivoting."""
    R = [[to_fraction(x) for x in r] for r in rows]
    if not R:
        return R, []
    ncols = len(R[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(R)) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        piv = R[r][c]
        if piv != 1:
            R[r] = [x / piv for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {x : Ax = 0}."""
    if not rows:
        return [basis_vector(i, ncols) for i in range(ncols)]
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -R[i][f]
        basis.append(tuple(x))
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One exact solution of Ax = b (free variables set to 0), or None."""
    if not A:
        return None if any(b) else ()
    ncols = len(A[0])
    _check(A, b)
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = R[i][-1]
    return tuple(x)


def independent_subset(vectors: Sequence[Sequence]) -> list[int]:
    """Indices of the first maximal linearly independent subfamily, in order."""
    chosen: list[int] = []
    basis_rows: list[Sequence] = []
    for i, v in enumerate(vectors):
        if rank(basis_rows + [v]) > len(basis_rows):
            chosen.append(i)
            basis_rows.append(v)
    return chosen


def primitive(v: Sequence) -> Vector:
    """Positive rescaling of ``v`` to a primitive integer vector."""
    if is_zero(v):
        return tuple(v)
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = 0
    for n in ints:
        g = gcd(g, n)
    return tuple(Fraction(n // g) for n in ints)


def fmt(x) -> str:
    x = to_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_vector(v: Sequence) -> str:
    return "(" + ", ".join(fmt(x) for x in v) + ")"


def parse_vector(text: str) -> Vector:
    """Parse ``"0,1/2,1"`` or ``"(0, 1/2, 1)"``."""
    body = text.strip()
    if body[:1] in "([" and body[-1:] in ")]":
        body = body[1:-1]
    if not body.strip():
        return ()
    return tuple(to_fraction(tok) for tok in body.split(","))
