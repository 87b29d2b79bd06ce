from quasiord.minimize import minimize_base, minimize_main, tschirnhausen
from quasiord.polyhedra import WeightMap
from quasiord.tower import RingTower, TowerRelation

from cases import F, G1, G2, P, POLY_TWO, W_TWO


def test_tschirnhausen_two_component():
    change, g = tschirnhausen(P(POLY_TWO), "z")
    assert change.shift == P("x1*x2^3").with_gens(change.shift.gens)
    assert g == P("z^2 + x1^3*x3 + x2^2*x3^3")


def test_tschirnhausen_noop_and_linear_shift():
    f = P("z^2 - x1*x2", G2)
    change, g = tschirnhausen(f, "z")
    assert change.shift.is_zero() and g == f
    change, g = tschirnhausen(P("z^2 + 2*z*x + x^3", G1), "z")
    assert g == P("z^2 + x^3 - x^2", G1)


def test_minimize_main_two_component():
    _, g, poly = minimize_main(P(POLY_TWO), WeightMap.from_columns(W_TWO), None, "z")
    assert list(poly.vertices) == [F("5/2", "1/2")]


def test_minimize_main_perfect_square():
    _, g, poly = minimize_main(P("z^2 + 2*z*x + x^2", G1), WeightMap.identity(1), None, "z")
    assert poly.empty and g == P("z^2", G1)


def test_minimize_main_inside_tower():
    GU = ("x", "u", "z")
    tower = RingTower(("x",), ("u",), "z", (F("3/2"),), (2,), (TowerRelation(0, 2, P("z + x^3", GU)),))
    f = P("z^4 - 2*x^5*u*z^2 + x^13", GU)
    W = WeightMap.from_columns([(1,), F("3/2")])
    _, g, poly = minimize_main(f, W, tower, "z")
    assert g == f
    assert list(poly.vertices) == [F("13/4")]


def test_minimize_base_examples():
    W0 = WeightMap.identity(2)
    changes, g, _, exhausted = minimize_base(P("z^2 + x1^3 + x1^2*x2", G2), W0, 16, "z")
    assert [c.describe() for c in changes] == ["x2 -> x2 + (-x1)"]
    assert g == P("z^2 + x1^2*x2", G2) and not exhausted
    changes, g, _, _ = minimize_base(P("z^2 - x1*x2", G2), W0, 16, "z")
    assert changes == [] and g == P("z^2 - x1*x2", G2)
    changes, g, _, _ = minimize_base(P("z^2 + x1^2*(x1 + x2)^2", G2), W0, 16, "z")
    assert g == P("z^2 + x1^2*x2^2", G2)


def test_minimize_base_budget_zero_reports_exhaustion():
    changes, g, _, exhausted = minimize_base(P("z^2 + x1^3 + x1^2*x2", G2), WeightMap.identity(2), 0, "z")
    assert changes == [] and exhausted
