from fractions import Fraction

import pytest

from quasiord.errors import EmptyInput, NotAVertex, NotWeierstrass, ZeroWeight
from quasiord.polyhedra import (WeightMap, associated_polyhedron, extend_weight, in_hull_plus_orthant,
                                initial_form, vertices, weierstrass_validate, weight_of)

from cases import F, G1, G2, G3, P, POLY_TWO, W_TWO


def test_weight_of():
    W = WeightMap.from_columns(W_TWO)
    assert weight_of(W, (0, 0, 1)) == F(2, 1)
    assert weight_of(WeightMap.identity(3), (1, 2, 3)) == F(1, 2, 3)
    Ws = WeightMap.identity(3).extend(F("1/2", "1/2", "1/2"))
    assert weight_of(Ws, (0, 0, 0, 2)) == F(1, 1, 1)


def test_extend_weight():
    W = extend_weight(WeightMap.identity(3), F("1/2", "1/2", "1/2"))
    assert len(W) == 4
    W2 = extend_weight(W, F("13/6", "5/2", "7/6"))
    assert len(W2) == 5 and W2.columns[:4] == W.columns
    with pytest.raises(ZeroWeight):
        extend_weight(W, F(0, 0, 0))


def test_weierstrass_validate():
    assert weierstrass_validate(P(POLY_TWO), "z") == 2
    assert weierstrass_validate(P("z", G1), "z") == 1
    with pytest.raises(NotWeierstrass):
        weierstrass_validate(P("x*z^2 + z", G1), "z")
    with pytest.raises(NotWeierstrass):
        weierstrass_validate(P("z^2 + 1", G1), "z")


def test_two_component_polyhedron():
    poly = associated_polyhedron(P(POLY_TWO), WeightMap.from_columns(W_TWO), "z")
    assert sorted(poly.points) == sorted([F(1, 3), F(1, 3), F("5/2", "1/2"), F(3, "5/2")])
    assert list(poly.vertices) == [F(1, 3), F("5/2", "1/2")]
    assert poly.contains(F(3, "5/2"))


def test_empty_and_single_vertex():
    assert associated_polyhedron(P("z^3", G1), WeightMap.identity(1), "z").empty
    poly = associated_polyhedron(P("z^2 - x^3", G1), WeightMap.identity(1), "z")
    assert list(poly.vertices) == [F("3/2")]


def test_vertices_examples():
    assert vertices([(1, 2), (2, 1), (2, 2)]) == [F(1, 2), F(2, 1)]
    assert vertices([F(1, 3), F("5/2", "1/2"), F(3, "5/2")]) == [F(1, 3), F("5/2", "1/2")]
    assert vertices([(0, 4), (1, 1), (4, 0), (2, 2)]) == [F(0, 4), F(1, 1), F(4, 0)]
    # on the segment but not a vertex
    assert vertices([(0, 2), (1, 1), (2, 0)]) == [F(0, 2), F(2, 0)]
    with pytest.raises(EmptyInput):
        vertices([])


def test_hull_membership():
    assert in_hull_plus_orthant(F(1, 1), [F(0, 2), F(2, 0)])
    assert not in_hull_plus_orthant(F("1/2", "1/2"), [F(0, 2), F(2, 0)])


def test_initial_forms():
    GU = ("x", "u", "z")
    f = P("z^2 - x^21 - x^18*u^3", GU)
    W = WeightMap.from_columns([(1,), (1,)])
    assert initial_form(f, W, F("21/2"), "z") == f
    assert initial_form(P("z^2 - x^3", G1), WeightMap.identity(1), F("3/2"), "z") == P("z^2 - x^3", G1)
    g = P(POLY_TWO)
    assert initial_form(g, WeightMap.from_columns(W_TWO), F(1, 3), "z") == P("z^2 + 2*z*x1*x2^3 + x1^2*x2^6")
    with pytest.raises(NotAVertex):
        initial_form(g, WeightMap.from_columns(W_TWO), F(3, "5/2"), "z")
