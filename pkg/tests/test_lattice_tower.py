from fractions import Fraction

import pytest

from quasiord.errors import AmbiguousWeight, DegenerateLattice
from quasiord.lattice import Lattice, hermite_rows, lattice_indices, lattice_membership
from quasiord.tower import RingTower, TowerRelation, is_restricted, monomial_of_weight, normalize_tower

from cases import F, P, THREE_V1, THREE_V2

GU = ("x", "u", "z")


def curve_tower():
    """u^2 = z + x^3 with W(u) = 3/2."""
    return RingTower(("x",), ("u",), "z", (F("3/2"),), (2,), (TowerRelation(0, 2, P("z + x^3", GU)),))


def test_membership_examples():
    assert not lattice_membership(THREE_V2, [THREE_V1])
    assert lattice_membership((2, -1, 0), [THREE_V1])
    assert lattice_membership(F("7/2"), [F("3/2")])
    assert not lattice_membership(F("1/3"), [F("3/2")])


def test_indices():
    assert lattice_indices([THREE_V1]) == [2]
    assert lattice_indices([THREE_V1, THREE_V2]) == [2, 3]
    with pytest.raises(DegenerateLattice):
        lattice_indices([(1, 2, 0)])


def test_lattice_order_and_determinant():
    L = Lattice(2)
    assert L.determinant() == 1
    assert L.order_of(F("1/4", "1/2")) == 4
    L2 = L.extend(F("1/2", "1/2"))
    assert L2.order_of(F("1/4", "3/4")) == 2
    assert F("1/2", "1/2") in L2


def test_hermite_rows_are_echelon():
    H = hermite_rows([[4, 6], [6, 9], [2, 3]], 2)
    assert H == [[2, 3]]


def test_normalize_examples():
    t = curve_tower()
    assert normalize_tower(P("x^10*u^2", GU), t) == P("x^10*z + x^13", GU)
    assert normalize_tower(P("u^4", GU), t) == P("z^2 + 2*x^3*z + x^6", GU)
    p = P("x*u + z^5", GU)
    assert normalize_tower(p, t) == p


def test_normalize_matches_numeric_substitution():
    # u = sqrt(z + x^3) at sample points
    t = curve_tower()
    p = P("u^5 - 3*x*u^4 + u^2*z", GU)
    q = normalize_tower(p, t)
    assert is_restricted(q, t)
    for xv, zv in [(Fraction(1, 3), Fraction(2)), (Fraction(2), Fraction(1, 5))]:
        s = (zv + xv ** 3)
        # compare even and odd parts in u separately: q = A + B u, p(u) with u^2 = s
        pe = sum(c * xv ** e[0] * s ** (e[1] // 2) * zv ** e[2] for e, c in p.terms.items() if e[1] % 2 == 0)
        po = sum(c * xv ** e[0] * s ** (e[1] // 2) * zv ** e[2] for e, c in p.terms.items() if e[1] % 2 == 1)
        qe = sum(c * xv ** e[0] * zv ** e[2] for e, c in q.terms.items() if e[1] == 0)
        qo = sum(c * xv ** e[0] * zv ** e[2] for e, c in q.terms.items() if e[1] == 1)
        assert (pe, po) == (qe, qo)


def test_monomial_of_weight_examples():
    t = curve_tower()
    assert monomial_of_weight(F("13/2"), t) == (5, 1)
    assert monomial_of_weight(F(0), t) == (0, 0)
    assert monomial_of_weight(F("1/2"), t) is None  # would need a negative x exponent
    integral = RingTower(("x",), ("u",), "z", (F(1),), (2,), ())
    with pytest.raises(AmbiguousWeight):
        monomial_of_weight(F(21), integral)
