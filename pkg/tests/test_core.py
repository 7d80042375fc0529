import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import rational_vectors, seeded_space, space_seeds
from ousgeom.campaign import random_canopy, random_order_interval_point, random_peripheral, sampled_refutation
from ousgeom.cones import vertex_enumeration
from ousgeom.constructions import linf_space
from ousgeom.core import (
    classify,
    infty_orthogonal,
    line_norm,
    line_point,
    line_point_positive,
    periphery_certificates,
    periphery_components,
    peripheral_projection,
    positive_pair_criterion,
    segment_in_periphery,
)
from ousgeom.exact import rank, scale, sub
from ousgeom.space import PreconditionError, order_norm

F = Fraction
L2, L3 = linf_space(2), linf_space(3)


def test_classify_examples():
    r = classify(L3, (0, F(1, 2), 1))
    assert r.in_periphery and r.zero_state_index == 0 and r.unit_state_index == 2
    r = classify(L3, (F(1, 2),) * 3)
    assert r.in_order_interval and not r.in_canopy
    r = classify(L2, (1, 1))
    assert r.in_canopy and not r.in_periphery


@pytest.mark.parametrize(
    "space,u,expected",
    [(L2, (1, 0), (True,) * 5), (L2, (1, F(1, 2)), (False,) * 5), (L3, (1, F(1, 3), 0), (True,) * 5)],
)
def test_certificate_examples(space, u, expected):
    assert periphery_certificates(space, u).as_tuple() == expected


def test_certificates_need_canopy_points():
    with pytest.raises(PreconditionError):
        periphery_certificates(L2, (F(1, 2), 0))


def test_certificate_witnesses_are_checkable():
    c = periphery_certificates(L3, (1, F(1, 3), 0))
    v = c.pair_witness
    assert classify(L3, v).in_canopy and infty_orthogonal(L3, (1, F(1, 3), 0), v)
    s = c.sum_witness
    assert classify(L3, tuple(a + b for a, b in zip((1, F(1, 3), 0), s))).in_canopy
    assert c.state_witness((1, F(1, 3), 0)) == 0


def test_infty_orthogonal_examples():
    assert infty_orthogonal(L2, (1, 0), (0, 1))
    assert not infty_orthogonal(L2, (1, 0), (1, 1))
    assert infty_orthogonal(L2, (2, 0), (0, 3))
    assert positive_pair_criterion(L2, (2, 0), (0, 3))
    assert infty_orthogonal(L2, (0, 0), (1, 5))


def test_line_examples():
    assert peripheral_projection(L2, (1, F(1, 2))).projection == (1, 0)
    assert peripheral_projection(L3, (1, F(2, 3), F(1, 3))).projection == (1, F(1, 2), 0)
    assert peripheral_projection(L3, (0, F(1, 2), 1)).projection == (0, F(1, 2), 1)
    assert line_norm(L2, (1, F(1, 2)), 0) == 1
    assert line_norm(L2, (1, 0), 3) == 2 == order_norm(L2, line_point(L2, (1, 0), 3))
    assert line_norm(L2, (1, 0), -1) == 2
    with pytest.raises(PreconditionError):
        peripheral_projection(L2, (1, 1))
    with pytest.raises(PreconditionError):
        line_norm(L2, (F(1, 2), 0), 1)


def test_component_examples():
    comps = periphery_components(L2)
    assert len(comps) == 2
    assert sorted(vertex_enumeration(c.polytope)[0] for c in comps) == [(0, 1), (1, 0)]
    assert len(periphery_components(L3)) == 6
    assert periphery_components(linf_space(1)) == []


def test_segment_examples():
    s = segment_in_periphery(L3, (0, 1, 1), (0, F(1, 2), 1))
    assert s.verdict and s.f_witness.functional == (0, 0, 1) and s.g_witness.functional == (1, 0, 0)
    s = segment_in_periphery(L3, (1, 0, 0), (0, 1, 0))
    assert not s.verdict and order_norm(L3, (F(1, 2), F(1, 2), 0)) == F(1, 2)
    assert segment_in_periphery(L3, (1, 0, 0), (1, 1, 0)).verdict
    with pytest.raises(PreconditionError):
        segment_in_periphery(L3, (1, 0, 0), (1, 1, 1))


def test_one_dimensional_space_is_total():
    V = linf_space(1)
    r = classify(V, (1,))
    assert r.in_canopy and not r.in_periphery
    assert periphery_certificates(V, (1,)).as_tuple() == (False,) * 5


# -- properties over random spaces -------------------------------------------


@given(space_seeds)
def test_five_conditions_agree(seed):
    V = seeded_space(seed)
    rng = random.Random(seed)
    for _ in range(5):
        assert periphery_certificates(V, random_canopy(rng, V)).agree


@given(space_seeds, rational_vectors(4, -1, 2, 4))
def test_periphery_is_canopy_on_the_boundary(seed, raw):
    V = seeded_space(seed)
    rng = random.Random(seed)
    for v in (raw[: V.dim], random_canopy(rng, V), random_order_interval_point(rng, V)):
        r = classify(V, v)
        assert r.in_periphery == (r.in_canopy and r.on_cone_boundary)
        assert r.in_canopy == (r.in_positive_cone and r.norm == 1)
        if r.in_periphery:
            assert r.zero_state_index is not None and r.unit_state_index is not None


def _noncentral_canopy(rng, V):
    u = random_canopy(rng, V)
    while u == V.unit:
        u = random_canopy(rng, V)
    return u


@given(space_seeds, st.lists(st.fractions(-5, 5, max_denominator=6), min_size=3, max_size=3))
def test_line_norm_formula_and_monotone_tails(seed, lams):
    V = seeded_space(seed)
    u = _noncentral_canopy(random.Random(seed), V)
    n = order_norm(V, sub(V.unit, u))
    for lam in lams:
        p = line_point(V, u, lam)
        assert line_norm(V, u, lam) == order_norm(V, p)
        assert line_point_positive(V, u, lam) == classify(V, p).in_positive_cone
        assert (order_norm(V, p) == 1) == (0 <= lam * n <= 2)
    # strictly decreasing on (-inf, 0], strictly increasing on [2/n, inf)
    left = sorted(-abs(l) for l in lams)
    right = sorted(2 / n + abs(l) for l in lams)
    for side, sign in ((left, -1), (right, 1)):
        norms = [order_norm(V, line_point(V, u, l)) for l in side]
        for (l1, a), (l2, b) in zip(zip(side, norms), zip(side[1:], norms[1:])):
            if l1 != l2:
                assert (b - a) * sign > 0


@given(space_seeds)
def test_lines_coincide_or_meet_only_at_the_unit(seed):
    V = seeded_space(seed)
    rng = random.Random(seed)
    u, v = _noncentral_canopy(rng, V), _noncentral_canopy(rng, V)
    du, dv = sub(V.unit, u), sub(V.unit, v)
    if rank([du, dv]) == 1:
        # same line: the peripheral projections coincide
        assert peripheral_projection(V, u).projection == peripheral_projection(V, v).projection
    else:
        # e - a du = e - b dv forces a = b = 0
        assert rank([du, dv]) == 2


@given(space_seeds)
def test_projection_is_peripheral_and_on_the_line(seed):
    V = seeded_space(seed)
    u = _noncentral_canopy(random.Random(seed), V)
    a = peripheral_projection(V, u)
    assert classify(V, a.projection).in_periphery
    assert rank([sub(V.unit, u), sub(V.unit, a.projection)]) == 1


@given(space_seeds)
def test_distinct_peripheral_points_lie_on_distinct_rays(seed):
    V = seeded_space(seed)
    rng = random.Random(seed)
    pts = {random_peripheral(rng, V) for _ in range(8)}
    for u, v in itertools.permutations(pts, 2):
        k = next(a / b for a, b in zip(u, v) if b)
        assert not (k > 0 and scale(k, v) == u)


@given(space_seeds)
def test_orthogonality_decision_matches_sampling_and_pair_criterion(seed):
    V = seeded_space(seed, 3)
    rng = random.Random(seed)
    w = random_peripheral(rng, V)
    pairs = [(w, sub(V.unit, w)), (random_canopy(rng, V), random_canopy(rng, V))]
    pairs.append((random_order_interval_point(rng, V), w))
    for x, y in pairs:
        decided = infty_orthogonal(V, x, y)
        assert decided != sampled_refutation(V, x, y)
        if any(x) and any(y):
            assert decided == positive_pair_criterion(V, x, y)


@given(space_seeds)
def test_components_cover_exactly_the_periphery(seed):
    V = seeded_space(seed, 3)
    rng = random.Random(seed)
    comps = periphery_components(V)
    for c in comps:
        verts = vertex_enumeration(c.polytope)
        mid = tuple(sum(xs) / len(verts) for xs in zip(*verts))
        for p in verts + [mid]:
            assert classify(V, p).in_periphery
    for _ in range(5):
        w = random_peripheral(rng, V)
        assert any(c.contains(w) for c in comps)
        p = random_order_interval_point(rng, V)
        assert classify(V, p).in_periphery == any(c.contains(p) for c in comps)


@given(space_seeds)
def test_segment_verdict_matches_midpoints(seed):
    V = seeded_space(seed, 3)
    rng = random.Random(seed)
    u, v = random_peripheral(rng, V), random_peripheral(rng, V)
    if u == v:
        return
    verdict = segment_in_periphery(V, u, v).verdict
    for t in (F(1, 3), F(1, 2), F(3, 4)):
        p = tuple(t * a + (1 - t) * b for a, b in zip(u, v))
        assert classify(V, p).in_periphery == verdict
