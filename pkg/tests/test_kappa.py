from fractions import Fraction
from math import prod

import pytest

from quasiord.errors import NotWeierstrass
from quasiord.kappa import (INFINITY, MINUS_ONE, BinomialPower, CycleState, canonical_representative,
                            factor_initial_form, run_construction, star_check, unfold_to_base)
from quasiord.polyhedra import WeightMap, initial_form
from quasiord.tower import RingTower, TowerRelation, normalize_tower

from cases import (CURVE, CURVE_GENS, F, G1, G2, G3, P, POLY_PROJ, POLY_THREE, THREE_V1, THREE_V2,
                   THREE_V2_PRINTED)

GU = ("x", "u", "z")


def curve_tower():
    return RingTower(("x",), ("u",), "z", (F("3/2"),), (2,), (TowerRelation(0, 2, P("z + x^3", GU)),))


def test_three_variable_kappa():
    r = run_construction(P(POLY_THREE), "z")
    assert r.terminal == INFINITY
    assert r.vertices == [THREE_V1, THREE_V2]
    assert r.vertices[1] != THREE_V2_PRINTED
    assert r.state.indices == [2, 3]
    assert [str(q) for q in unfold_to_base(r)] == ["z", "-x1*x2*x3 + z^2"]


def test_curve_kappa_and_approximate_roots():
    r = run_construction(P(CURVE, CURVE_GENS), "u")
    assert r.terminal == INFINITY
    assert r.vertices == [F("3/2"), F("13/4"), F("53/8")]
    assert r.state.indices == [2, 2, 2]
    q = unfold_to_base(r)
    gens = ("x", "u")
    assert q[0] == P("u", gens)
    assert q[1] == P("u^2 - x^3", gens)
    assert q[2] == P("(u^2 - x^3)^2 - x^5*u", gens)


def test_projection_dependence():
    r = run_construction(P(POLY_PROJ, G2), "z")
    assert r.terminal == MINUS_ONE
    assert r.diagnostics[0]["kind"] == "several_vertices"
    r2 = run_construction(P(POLY_PROJ, G2), "x1", base=("z", "x2"))
    assert r2.terminal == INFINITY
    assert r2.vertices == [F(1, "1/2")]
    assert [c.describe() for c in r2.base_changes] == ["x2 -> x2 + (-z)"]
    # in the new coordinates the polynomial is x1^2 + z^2 x2 (up to ordering)
    assert r2.coordinates_poly.with_gens(G2) == P("x1^2 + z^2*x2", G2)


def test_smooth_input():
    r = run_construction(P("z + x1*x2", G2), "z")
    assert r.terminal == INFINITY and r.vertices == []
    assert unfold_to_base(r) == [P("z + x1*x2", G2)]


def test_not_weierstrass():
    with pytest.raises(NotWeierstrass):
        run_construction(P("x1*z^2 + z", G2), "z")


def test_reducible_inputs_surface_as_minus_one():
    r = run_construction(P("((z^7 - x^7)^2 - x^21 - x^18*z^3)^2 + x^43", G1), "z")
    assert r.terminal == MINUS_ONE and r.diagnostics[0]["condition"] == "2"
    r = run_construction(P("(z^2 - x^3)^2 - x^7", G1), "z")
    assert r.terminal == MINUS_ONE and r.vertices == [F("3/2")]
    assert r.diagnostics[0]["condition"] == "2"
    r = run_construction(P("z^2 - x1^2*x2^2", G2), "z")
    assert r.terminal == MINUS_ONE


def test_factor_initial_forms():
    tower = curve_tower()
    W = WeightMap.from_columns([(1,), F("3/2")])
    f = P("z^4 - 2*x^5*u*z^2 + x^13", GU)
    Fin = initial_form(f, W, F("13/4"), "z")
    assert factor_initial_form(Fin, W, tower, F("13/4"), "z") == [BinomialPower(2, Fraction(1), (5, 1), 2)]
    t0 = RingTower(("x",), (), "z")
    W0 = WeightMap.identity(1)
    assert factor_initial_form(P("z^2 - x^3", G1), W0, t0, F("3/2"), "z") == [BinomialPower(2, Fraction(1), (3,), 1)]
    t3 = RingTower(("x1", "x2", "x3"), (), "z")
    Fin = initial_form(P(POLY_THREE), WeightMap.identity(3), THREE_V1, "z")
    assert Fin == P("(z^2 - x1*x2*x3)^3")
    assert factor_initial_form(Fin, WeightMap.identity(3), t3, THREE_V1, "z") == [
        BinomialPower(2, Fraction(1), (1, 1, 1), 3)]


def test_canonical_representative():
    tower = curve_tower()
    W = WeightMap.from_columns([(1,), F("3/2")])
    f = P("z^4 - 2*x^5*u*z^2 + x^13", GU)
    factors = factor_initial_form(initial_form(f, W, F("13/4"), "z"), W, tower, F("13/4"), "z")
    rep = canonical_representative(f, tower, factors, "z")
    assert rep == P("(z^2 - x^5*u)^2 - x^10*z", GU)
    assert normalize_tower(rep - f, tower).is_zero()


def test_star_check():
    t0 = RingTower(("x",), (), "z")
    state = CycleState(0, t0, WeightMap.identity(1), P("z^2 - x^3", G1), 2)
    one = [BinomialPower(2, Fraction(1), (3,), 1)]
    assert star_check(F("3/2"), state, one) is None
    assert star_check(F(1), state, one) == "2"
    two = [BinomialPower(2, Fraction(1), (3,), 1), BinomialPower(2, Fraction(2), (3,), 1)]
    assert star_check(F("3/2"), state, two) == "0"
    state.vertices, state.indices = [F("3/2")], [2]
    state.tower = curve_tower()
    assert star_check(F(3), state, one) == "1"
    assert star_check(F("13/4"), state, one) is None


def test_degree_bookkeeping():
    for text, gens, main in [(POLY_THREE, G3, "z"), (CURVE, CURVE_GENS, "u")]:
        r = run_construction(P(text, gens), main)
        st = r.state
        assert prod(st.indices) * st.degrees[-1] == st.degrees[0]
        assert all(n >= 2 for n in st.indices)
        for k, q in enumerate(unfold_to_base(r)):
            assert q.degree(main) == prod(st.indices[:k])
            if q.degree(main) > 1:
                assert q.coeff(main, q.degree(main) - 1).is_zero()


def test_earlier_rho_enters_the_collapse():
    # u0^2 = 2 x^3 at leading weight: the x^20 term of the cycle-1 initial form
    # only factors once the 2 is accounted for
    f = P("((z^2 - 2*x^3)^2 - x^7*z)^2 - x^13*(z^2 - 2*x^3)", G1)
    r = run_construction(f, "z")
    assert r.terminal == INFINITY
    assert r.vertices == [F("3/2"), F("17/4"), F("69/8")]
    assert r.state.rhos == [2, 1, 1]
    assert r.state.tower.leads[0] == (2, (3,))


def test_torus_value():
    from quasiord.tower import torus_value
    t = RingTower(("x",), ("u",), "z", (F("3/2"),), (2,), (), ((Fraction(2), (3,)),))
    assert torus_value((-3, 2), t) == 2
    assert torus_value((6, -4), t) == Fraction(1, 4)
    assert torus_value((0, 0), t) == 1
    with pytest.raises(Exception):
        torus_value((-1, 1), t)
