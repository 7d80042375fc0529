import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import brute_force_vertices, rational_vectors
from ousgeom.cones import (
    ConeHRep,
    ConeVRep,
    Polytope,
    UnboundedError,
    box,
    cone_generators,
    dual_description,
    in_cone,
    vertex_enumeration,
)
from ousgeom.core import component_polytope
from ousgeom.constructions import linf_space
from ousgeom.exact import ShapeError


def rows_of(gens, dim):
    return set(dual_description(ConeVRep(tuple(gens), dim)).rows)


def test_quadrant_is_self_dual():
    assert rows_of([(1, 0), (0, 1)], 2) == {(1, 0), (0, 1)}


def test_redundant_generator_is_dropped():
    assert rows_of([(1, 1), (1, 0), (0, 1)], 2) == {(1, 0), (0, 1)}


def test_orthant_in_three_dimensions():
    assert rows_of([(1, 1, 1), (1, 0, 0), (0, 1, 0), (0, 0, 1)], 3) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_lower_dimensional_cone_gets_opposite_row_pair():
    h = dual_description(ConeVRep(((1, 0, 0), (0, 1, 0)), 3))
    assert (0, 0, 1) in h.rows and (0, 0, -1) in h.rows
    assert h.contains((2, 3, 0)) and not h.contains((1, 1, 1)) and not h.contains((-1, 0, 0))


def test_empty_and_zero_generators_are_errors():
    with pytest.raises(ValueError):
        dual_description(ConeVRep((), 2))
    with pytest.raises(ShapeError):
        ConeVRep(((0, 0),), 2)
    with pytest.raises(ShapeError):
        ConeHRep(((0, 0),), 2)


generator_sets = st.integers(2, 3).flatmap(
    lambda d: st.tuples(
        st.just(d),
        st.lists(rational_vectors(d, -2, 2, 2).filter(any), min_size=1, max_size=5),
        st.lists(rational_vectors(d, -3, 3, 4), min_size=5, max_size=5),
    )
)


@given(generator_sets)
def test_dual_description_membership_matches_generators(data):
    d, gens, probes = data
    V = ConeVRep(tuple(gens), d)
    H = dual_description(V)
    # generator sums land inside; probes agree between both predicates
    probes = list(probes) + [tuple(sum(c) for c in zip(*gens))]
    for x in probes:
        assert H.contains(x) == V.contains(x)


@given(generator_sets)
def test_redualization_preserves_membership(data):
    d, gens, probes = data
    H = dual_description(ConeVRep(tuple(gens), d))
    lin, rays = cone_generators(H)
    regen = ConeVRep(tuple(rays + lin + [tuple(-x for x in l) for l in lin]), d)
    for x in probes:
        assert regen.contains(x) == H.contains(x)


def test_vertex_examples():
    assert vertex_enumeration(box((0, 0), (1, 1))) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    simplex = Polytope(2, [(1, 0), (0, 1)], [0, 0], [(1, 1)], [1])
    assert vertex_enumeration(simplex) == [(0, 1), (1, 0)]
    V = linf_space(3)
    cube = Polytope(3, list(V.states) + [tuple(-x for x in f) for f in V.states], [0] * 3 + [-1] * 3)
    assert vertex_enumeration(cube) == sorted(itertools.product((0, 1), repeat=3))


def test_unbounded_and_empty_regions():
    with pytest.raises(UnboundedError):
        vertex_enumeration(Polytope(2, [(1, 0), (0, 1)], [0, 0]))
    assert vertex_enumeration(Polytope(1, [(1,), (-1,)], [1, 0])) == []


polytopes = st.integers(2, 3).flatmap(
    lambda d: st.lists(rational_vectors(d, -2, 2, 2), min_size=1, max_size=3).map(lambda rows: (d, rows))
)


@given(polytopes, st.data())
def test_vertices_match_brute_force_and_are_not_interior(pd, data):
    d, rows = pd
    rhs = data.draw(st.lists(st.integers(-2, 1), min_size=len(rows), max_size=len(rows)))
    G = list(rows) + [tuple(1 if i == j else 0 for i in range(d)) for j in range(d)]
    G += [tuple(-1 if i == j else 0 for i in range(d)) for j in range(d)]
    h = [Fraction(x) for x in rhs] + [-2] * d + [-2] * d
    P = Polytope(d, G, h)
    verts = vertex_enumeration(P)
    assert verts == brute_force_vertices(G, h)
    for v in verts:
        assert P.contains(v) and P.is_vertex(v)
    for a, b in itertools.combinations(verts, 2):
        mid = tuple((x + y) / 2 for x, y in zip(a, b))
        assert mid not in verts


def test_component_polytope_of_linf3_is_bounded():
    V = linf_space(3)
    verts = vertex_enumeration(component_polytope(V, 0, 2))
    assert verts == [(0, 0, 1), (0, 1, 1)]


def test_in_cone_uses_nonnegative_combinations():
    assert in_cone((1, 1), [(1, 0), (0, 1)], 2)
    assert not in_cone((-1, 1), [(1, 0), (0, 1)], 2)
