"""Seeded random spaces, samplers and property campaigns.

A campaign runs a registered property over a number of trials.  Trial ``i``
of a campaign seeded with ``s`` uses the seed ``trial_seed(s, i)``, and a
failure records that seed so :func:`replay` can rerun it alone.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .constructions import (
    PolyhedralNormedSpace,
    abs_line,
    adjoin_normed,
    adjoin_region_member,
    direct_sum,
    direct_sum_region_member,
    linf_space,
    max_norm,
    semi_periphery_certificate,
    semi_periphery_member,
)
from .core import (
    classify,
    infty_orthogonal,
    line_norm,
    line_point,
    line_point_positive,
    periphery_certificates,
    positive_pair_criterion,
)
from .embeddings import (
    EQUAL,
    axis_decomposition,
    embedding_spot_check,
    find_linf_embedding,
    plane_coordinates,
    plane_relation,
    verify_linf_embedding,
)
from .exact import add, basis_vector, fmt, fmt_vector, ones, rank, scale, solve, sub, transpose
from .skeleton import k_membership, k_membership_closed_form
from .space import OrderUnitSpace, SpaceError, make_space, order_norm

MAX_RETRIES = 200


class GenerationError(RuntimeError):
    def __init__(self, message, seed):
        super().__init__(f"{message} (seed {seed})")
        self.seed = seed


# -- random data --------------------------------------------------------------


def random_space(seed: int, dim: int, state_count: int) -> OrderUnitSpace:
    """A valid space from integer rows in ``[-9, 9]`` with unit all-ones.

    Rows with ``r . e <= 0`` are resampled, and the whole matrix is resampled
    until it has full rank.  Redundant rows are then dropped by
    :func:`make_space`, so the result may have fewer states than requested.
    """
    if dim < 1 or state_count < dim:
        raise ValueError("need dim >= 1 and state_count >= dim")
    rng = random.Random(seed)
    e = ones(dim)
    for _ in range(MAX_RETRIES):
        rows = []
        while len(rows) < state_count:
            r = tuple(rng.randint(-9, 9) for _ in range(dim))
            if sum(r) > 0:
                rows.append(r)
        if rank(rows) == dim:
            try:
                return make_space(rows, e)
            except SpaceError:
                continue
    raise GenerationError("could not sample a full-rank state matrix", seed)


def random_fraction(rng: random.Random, lo, hi, max_den: int = 6) -> Fraction:
    lo, hi = Fraction(lo), Fraction(hi)
    while True:
        q = rng.randint(1, max_den)
        lo_n, hi_n = math.ceil(lo * q), math.floor(hi * q)
        if lo_n <= hi_n:
            return Fraction(rng.randint(lo_n, hi_n), q)


def random_vector(rng: random.Random, dim: int, lo=-3, hi=3, max_den: int = 6) -> tuple:
    return tuple(random_fraction(rng, lo, hi, max_den) for _ in range(dim))


def _nonaxis_direction(rng, V):
    while True:
        d = tuple(Fraction(rng.randint(-4, 4)) for _ in range(V.dim))
        if rank([V.unit, d]) == 2:
            return d


def random_peripheral(rng: random.Random, V: OrderUnitSpace) -> tuple:
    """Push ``e`` along a random direction until it hits the cone boundary, then normalize."""
    if V.dim < 2:
        raise ValueError("a one-dimensional space has no peripheral points")
    while True:
        d = _nonaxis_direction(rng, V)
        vals = V.values(d)
        if max(vals) <= 0:
            d, vals = scale(-1, d), tuple(-x for x in vals)
        t = min(1 / x for x in vals if x > 0)
        p = sub(V.unit, scale(t, d))
        n = order_norm(V, p)
        if n:
            return scale(1 / n, p)


def random_canopy(rng: random.Random, V: OrderUnitSpace) -> tuple:
    """A canopy point: peripheral, strictly inside, or ``e`` itself."""
    if V.dim < 2:
        return V.unit
    kind = rng.random()
    w = random_peripheral(rng, V)
    if kind < 0.45:
        return w
    if kind < 0.9:
        lam = random_fraction(rng, Fraction(1, 8), Fraction(7, 8), 8)
        return add(scale(lam, V.unit), scale(1 - lam, w))
    return V.unit


def random_order_interval_point(rng: random.Random, V: OrderUnitSpace) -> tuple:
    """A point of ``[0, e]`` drawn from a few structured families."""
    kind = rng.randrange(6)
    if kind == 0:
        return scale(0, V.unit)
    if kind == 1:
        return V.unit
    if V.dim < 2:
        return scale(random_fraction(rng, 0, 1, 4), V.unit)
    c = random_canopy(rng, V)
    if kind == 2:
        return c
    if kind == 3:
        return sub(V.unit, c)
    if kind == 4:
        return scale(random_fraction(rng, 0, 1, 4), c)
    a = random_fraction(rng, 0, 1, 4)
    return add(scale(a, c), scale(random_fraction(rng, 0, 1 - a, 4), V.unit))


def random_space_params(rng: random.Random, max_dim: int = 4, max_states: int = 12):
    dim = rng.randint(2, max_dim)
    return rng.randrange(2**31), dim, rng.randint(dim + 1, min(max_states, 2 * dim + 2))


def random_test_space(rng: random.Random, max_dim: int = 4) -> OrderUnitSpace:
    return random_space(*random_space_params(rng, max_dim))


def random_norm(rng: random.Random, dim: int) -> PolyhedralNormedSpace:
    while True:
        rows = [tuple(rng.randint(-3, 3) for _ in range(dim)) for _ in range(rng.randint(dim, dim + 2))]
        if rank(rows) == dim:
            return PolyhedralNormedSpace(dim, rows)


# -- reports ------------------------------------------------------------------


@dataclass
class CampaignReport:
    property: str
    trials: int
    failures: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def render(self, timing: bool = False) -> str:
        lines = [f"property: {self.property}", f"trials: {self.trials}", f"failures: {len(self.failures)}"]
        for f in self.failures:
            lines.append(
                f"  seed={f['seed']} inputs={f['inputs']} expected={f['expected']} actual={f['actual']}"
            )
        if timing:
            lines.append(f"elapsed: {self.elapsed:.3f}s")
        return "\n".join(lines)


def _fail(inputs, expected, actual) -> dict:
    return {"inputs": inputs, "expected": str(expected), "actual": str(actual)}


def _space_str(V: OrderUnitSpace) -> str:
    return "states=[" + ", ".join(fmt_vector(f) for f in V.states) + "]"


# -- properties ---------------------------------------------------------------


def prop_five_way_equivalence(rng, points: int = 20):
    V = random_test_space(rng, 5)
    out = []
    for _ in range(points):
        u = random_canopy(rng, V)
        cert = periphery_certificates(V, u)
        if not cert.agree:
            out.append(_fail(f"{_space_str(V)} u={fmt_vector(u)}", "all equal", cert.as_tuple()))
    return out


def prop_boundary(rng, points: int = 20):
    V = random_test_space(rng, 5)
    out = []
    for _ in range(points):
        u = random_canopy(rng, V) if rng.random() < 0.7 else random_order_interval_point(rng, V)
        r = classify(V, u)
        predicted = r.in_canopy and r.on_cone_boundary
        if r.in_periphery != predicted:
            out.append(_fail(f"{_space_str(V)} u={fmt_vector(u)}", predicted, r.in_periphery))
    return out


def prop_line_norm(rng):
    V = random_test_space(rng)
    u = random_canopy(rng, V)
    while u == V.unit:
        u = random_canopy(rng, V)
    lam = random_fraction(rng, -4, 4, 8)
    p = line_point(V, u, lam)
    inputs = f"{_space_str(V)} u={fmt_vector(u)} lambda={fmt(lam)}"
    out = []
    if line_norm(V, u, lam) != order_norm(V, p):
        out.append(_fail(inputs, order_norm(V, p), line_norm(V, u, lam)))
    if line_point_positive(V, u, lam) != classify(V, p).in_positive_cone:
        out.append(_fail(inputs, classify(V, p).in_positive_cone, line_point_positive(V, u, lam)))
    return out


def linf_closed_form(v) -> tuple:
    """(canopy, periphery) for ``v`` in l-infinity^n."""
    lo, hi = min(v), max(v)
    return (lo >= 0 and hi == 1, lo == 0 and hi == 1)


def prop_linf_closed_forms(rng):
    n = rng.randint(2, 5)
    V = linf_space(n)
    v = tuple(random_fraction(rng, 0, 1, 4) for _ in range(n))
    if rng.random() < 0.5:
        v = tuple(Fraction(1) if i == 0 else x for i, x in enumerate(v))
    if rng.random() < 0.5:
        v = tuple(Fraction(0) if i == n - 1 else x for i, x in enumerate(v))
    r = classify(V, v)
    if (r.in_canopy, r.in_periphery) != linf_closed_form(v):
        return [_fail(f"n={n} v={fmt_vector(v)}", linf_closed_form(v), (r.in_canopy, r.in_periphery))]
    return []


def _random_operand(rng):
    if rng.random() < 0.25:
        return linf_space(rng.randint(1, 2))
    return random_space(*random_space_params(rng, 3, 6))


def prop_direct_sum(rng, points: int = 50):
    V1, V2 = _random_operand(rng), _random_operand(rng)
    S = direct_sum(V1, V2)
    out = []
    for _ in range(points):
        v = random_order_interval_point(rng, V1) + random_order_interval_point(rng, V2)
        if rng.random() < 0.1:
            v = random_vector(rng, S.dim, -1, 2, 4)
        pred = direct_sum_region_member(S, v)
        r = classify(S, v)
        if (pred.canopy, pred.periphery) != (r.in_canopy, r.in_periphery):
            out.append(
                _fail(
                    f"V1 {_space_str(V1)} V2 {_space_str(V2)} v={fmt_vector(v)}",
                    (r.in_canopy, r.in_periphery),
                    (pred.canopy, pred.periphery),
                )
            )
    return out


def _adjoin_point(rng, V, X):
    u = random_order_interval_point(rng, V)
    x = random_vector(rng, X.dim, -2, 2, 4)
    nx = X.norm(x)
    room = 1 - order_norm(V, u)
    if nx and rng.random() < 0.7:
        x = scale(room / nx, x)  # land on ||u|| + ||x|| = 1
    return u + x


def check_adjoin_point(A, point) -> list:
    """Closed-form predicates, the l1 norm identity and both semi-periphery forms at one point."""
    V, X = A.construction.operands
    u, x = point[: V.dim], point[V.dim :]
    out = []
    pred = adjoin_region_member(A, point)
    r = classify(A, point)
    inputs = f"V {_space_str(V)} X={[fmt_vector(g) for g in X.functionals]} point={fmt_vector(point)}"
    if (pred.canopy, pred.periphery) != (r.in_canopy, r.in_periphery):
        out.append(_fail(inputs, (r.in_canopy, r.in_periphery), (pred.canopy, pred.periphery)))
    if r.norm != order_norm(V, u) + X.norm(x):
        out.append(_fail(inputs, order_norm(V, u) + X.norm(x), r.norm))
    if classify(V, u).in_order_interval:
        by_norm = semi_periphery_member(V, u)
        by_cert = semi_periphery_certificate(V, u) is not None
        if by_norm != by_cert:
            out.append(_fail(inputs + " (semi-periphery)", by_norm, by_cert))
    return out


def prop_adjoin(rng, points: int = 20):
    V = _random_operand(rng)
    X = abs_line() if rng.random() < 0.3 else random_norm(rng, rng.randint(1, 2))
    A = adjoin_normed(V, X)
    out = []
    for _ in range(points):
        out += check_adjoin_point(A, _adjoin_point(rng, V, X))
    return out


def prop_semi_periphery(rng, points: int = 10):
    V = random_test_space(rng, 3)
    out = []
    for _ in range(points):
        w = random_peripheral(rng, V)
        a = random_fraction(rng, 0, 1, 6)
        u = add(scale(a, sub(V.unit, w)), scale(1 - a, w)) if rng.random() < 0.6 else random_order_interval_point(rng, V)
        by_norm = semi_periphery_member(V, u)
        cert = semi_periphery_certificate(V, u)
        if by_norm != (cert is not None):
            out.append(_fail(f"{_space_str(V)} u={fmt_vector(u)}", by_norm, cert))
    return out


def prop_char_k(rng):
    V = random_test_space(rng)
    u = random_peripheral(rng, V)
    a, b = random_fraction(rng, -1, 2, 6), random_fraction(rng, -2, 2, 6)
    got, want = k_membership(V, u, a, b), k_membership_closed_form(a, b)
    if got != want:
        return [_fail(f"{_space_str(V)} u={fmt_vector(u)} alpha={fmt(a)} beta={fmt(b)}", want, got)]
    return []


def prop_plane_isometry(rng):
    V = random_test_space(rng)
    u = random_peripheral(rng, V)
    a, b = random_fraction(rng, -3, 3, 6), random_fraction(rng, -3, 3, 6)
    v = add(scale(a, V.unit), scale(b, u))
    c = plane_coordinates(V, u, v)
    inputs = f"{_space_str(V)} u={fmt_vector(u)} alpha={fmt(a)} beta={fmt(b)}"
    out = []
    if c != (a, a + b):
        out.append(_fail(inputs, (a, a + b), c))
    if order_norm(V, v) != max(abs(a), abs(a + b)):
        out.append(_fail(inputs, max(abs(a), abs(a + b)), order_norm(V, v)))
    if classify(V, v).in_positive_cone != (a >= 0 and a + b >= 0):
        out.append(_fail(inputs, a >= 0 and a + b >= 0, classify(V, v).in_positive_cone))
    return out


def in_plane(V, w, v) -> bool:
    return solve(transpose([V.unit, w]), v) is not None


def prop_axis_decomposition(rng, alternatives: int = 20):
    V = random_test_space(rng)
    v = random_vector(rng, V.dim)
    while rank([V.unit, v]) < 2:
        v = random_vector(rng, V.dim)
    dec = axis_decomposition(V, v)
    inputs = f"{_space_str(V)} v={fmt_vector(v)}"
    out = []
    if dec.reconstruct(V.unit) != v:
        out.append(_fail(inputs, fmt_vector(v), fmt_vector(dec.reconstruct(V.unit))))
    if not classify(V, dec.w).in_periphery:
        out.append(_fail(inputs, "w peripheral", fmt_vector(dec.w)))
    if not in_plane(V, dec.w, v):
        out.append(_fail(inputs, "v in P_w", "not in plane"))
    alts = [dec.w, sub(V.unit, dec.w)] + [random_peripheral(rng, V) for _ in range(alternatives - 2)]
    for w2 in alts:
        contains = in_plane(V, w2, v)
        rel = plane_relation(V, dec.w, w2)
        if contains != (rel == EQUAL):
            out.append(_fail(inputs + f" w2={fmt_vector(w2)}", contains, rel))
    return out


SAMPLE_KS = tuple(Fraction(i, 20) for i in range(-500, 500))


def sampled_refutation(V, x, y) -> bool:
    """True when some sampled ``k`` violates ``||x + k y|| = max(||x||, ||k y||)``."""
    nx, ny = order_norm(V, x), order_norm(V, y)
    a, b = V.values(x), V.values(y)
    for k in SAMPLE_KS:
        if max(abs(p + k * q) for p, q in zip(a, b)) != max(nx, abs(k) * ny):
            return True
    return False


def _random_positive(rng, V):
    c = random_canopy(rng, V) if rng.random() < 0.7 else random_order_interval_point(rng, V)
    return scale(random_fraction(rng, Fraction(1, 4), 3, 4), c)


def prop_infty_orthogonality(rng):
    V = random_test_space(rng)
    kind = rng.random()
    if kind < 0.4:
        w = random_peripheral(rng, V)
        x, y = scale(random_fraction(rng, 1, 3, 3), w), scale(random_fraction(rng, 1, 3, 3), sub(V.unit, w))
    elif kind < 0.8:
        x, y = _random_positive(rng, V), _random_positive(rng, V)
    else:
        x, y = random_vector(rng, V.dim), random_vector(rng, V.dim)
    inputs = f"{_space_str(V)} x={fmt_vector(x)} y={fmt_vector(y)}"
    decided = infty_orthogonal(V, x, y)
    out = []
    refuted = sampled_refutation(V, x, y)
    if decided == refuted:
        out.append(_fail(inputs + " (sampled)", not refuted, decided))
    px, py = classify(V, x), classify(V, y)
    if px.in_positive_cone and py.in_positive_cone and any(x) and any(y):
        crit = positive_pair_criterion(V, x, y)
        if crit != decided:
            out.append(_fail(inputs + " (positive pair)", crit, decided))
    return out


def prop_embedding(rng, spot_checks: int = 100):
    if rng.random() < 0.4:
        V = linf_space(rng.randint(2, 5))
        cand = tuple(basis_vector(i, V.dim) for i in range(V.dim))
    else:
        V = random_test_space(rng, 3)
        w = random_peripheral(rng, V)
        cand = (w, sub(V.unit, w))
    verdict = verify_linf_embedding(V, cand)
    inputs = f"{_space_str(V)} candidate={[fmt_vector(u) for u in cand]}"
    out = []
    if V.construction is not None and not verdict.accepted:
        out.append(_fail(inputs, "accepted", verdict.failures))
    if verdict.accepted:
        for i, g in enumerate(verdict.biorthogonal_states):
            for j, u in enumerate(cand):
                if g(u) != (1 if i == j else 0):
                    out.append(_fail(inputs, "biorthogonal", (i, j, g(u))))
        coeffs = [random_vector(rng, len(cand), -2, 2, 4) for _ in range(spot_checks)]
        problems = embedding_spot_check(V, cand, coeffs)
        if problems:
            out.append(_fail(inputs, "isometric order embedding", problems[:3]))
    return out


def prop_find_embedding(rng):
    n = rng.randint(2, 4)
    V = linf_space(n)
    found = find_linf_embedding(V, n)
    want = sorted(basis_vector(i, n) for i in range(n))
    if found is None or sorted(found.elements) != want:
        return [_fail(f"n={n}", want, found)]
    return []


PROPERTIES: dict[str, Callable] = {
    "lemma33-equivalence": prop_five_way_equivalence,
    "boundary-theorem": prop_boundary,
    "line-norm": prop_line_norm,
    "linf-closed-forms": prop_linf_closed_forms,
    "direct-sum": prop_direct_sum,
    "adjoin-periphery": prop_adjoin,
    "semi-periphery": prop_semi_periphery,
    "charK": prop_char_k,
    "plane-isometry": prop_plane_isometry,
    "axis-decomposition": prop_axis_decomposition,
    "infty-orthogonality": prop_infty_orthogonality,
    "embedding-verifier": prop_embedding,
    "find-embedding": prop_find_embedding,
}


def trial_seed(seed: int, index: int) -> int:
    return random.Random(f"{seed}/{index}").randrange(2**63)


def replay(prop: str, seed: int) -> list:
    """Rerun one trial from its recorded seed; returns its failures."""
    if prop not in PROPERTIES:
        raise KeyError(f"unknown property {prop!r}; known: {', '.join(sorted(PROPERTIES))}")
    return PROPERTIES[prop](random.Random(seed))


def run_campaign(prop: str, trials: int, seed: int = 0) -> CampaignReport:
    if prop not in PROPERTIES:
        raise KeyError(f"unknown property {prop!r}; known: {', '.join(sorted(PROPERTIES))}")
    start = time.perf_counter()
    report = CampaignReport(prop, trials)
    for i in range(trials):
        s = trial_seed(seed, i)
        for f in replay(prop, s):
            report.failures.append({"seed": s, **f})
    report.elapsed = time.perf_counter() - start
    return report


# -- exhaustive grids ---------------------------------------------------------


def farey(max_den: int, lo=0, hi=1) -> list[Fraction]:
    """Sorted rationals in ``[lo, hi]`` with denominator at most ``max_den``."""
    lo, hi = Fraction(lo), Fraction(hi)
    pts = set()
    for q in range(1, max_den + 1):
        for p in range(math.ceil(lo * q), math.floor(hi * q) + 1):
            pts.add(Fraction(p, q))
    return sorted(pts)


def linf_grid_check(n: int, max_den: int = 4) -> list:
    """Closed forms for l-infinity^n at every grid point of ``[0, e]``."""
    V = linf_space(n)
    out = []
    for v in itertools.product(farey(max_den), repeat=n):
        r = classify(V, v)
        if (r.in_canopy, r.in_periphery) != linf_closed_form(v):
            out.append(_fail(f"n={n} v={fmt_vector(v)}", linf_closed_form(v), (r.in_canopy, r.in_periphery)))
    return out


def adjoin_grid_points(A: OrderUnitSpace, max_den: int = 8):
    """Grid points with denominator at most ``max_den`` inside ``[0, e]`` of ``V (+)_1 X``.

    In ``V (+)_1 X`` the interval ``[0, e]`` is ``||x|| e <= u <= e - ||x|| e``,
    so ``||x|| <= 1/2``.  The x-grid is taken in ``[-1/2, 1/2]^k``, which
    covers every admissible ``x`` when each coordinate is bounded by the norm.
    """
    V, X = A.construction.operands
    for i in range(X.dim):
        if X.norm(basis_vector(i, X.dim)) < 1:
            raise ValueError("grid needs a norm with |x_i| <= ||x||")
    half = Fraction(1, 2)
    xs = [(x, X.norm(x)) for x in itertools.product(farey(max_den, -half, half), repeat=X.dim)]
    for u in itertools.product(farey(max_den), repeat=V.dim):
        vals = V.values(u)
        room = min(min(vals), 1 - max(vals))
        for x, nx in xs:
            if nx <= room:
                yield tuple(u) + tuple(x)


def adjoin_grid_check(V: OrderUnitSpace, X: PolyhedralNormedSpace, max_den: int = 8) -> tuple[int, list]:
    A = adjoin_normed(V, X)
    count, out = 0, []
    for p in adjoin_grid_points(A, max_den):
        count += 1
        out += check_adjoin_point(A, p)
    return count, out


def standard_adjoin_cases():
    """V in {R, l-infinity^2} paired with X in {|.| on R, max norm on R^2}."""
    for V in (linf_space(1), linf_space(2)):
        for X in (abs_line(), max_norm(2)):
            yield V, X
