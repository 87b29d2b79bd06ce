import random
from fractions import Fraction

import numpy as np
import pytest

from quasiord.algebra import Poly
from quasiord.errors import NotWeierstrass
from quasiord.resultant import bareiss_determinant, discriminant_main

from cases import G2, G3, P, POLY_THREE

GX = ("x1", "x2")


def cubic_formula(b, c, d):
    # discriminant of z^3 + b z^2 + c z + d
    return 18 * b * c * d - 4 * b ** 3 * d + b ** 2 * c ** 2 - 4 * c ** 3 - 27 * d ** 2


def test_quadratic():
    assert discriminant_main(P("z^2 - x1*x2", G2), "z") == P("4*x1*x2", GX)


def test_cubic_against_formula():
    f = P("z^3 + x2*z^2 + x1^2", G2)
    got = discriminant_main(f, "z")
    b, c, d = P("x2", GX), Poly.zero(GX), P("x1^2", GX)
    assert got == cubic_formula(b, c, d)
    assert got == P("-4*x1^2*x2^3 - 27*x1^4", GX)


def test_degree_one():
    assert discriminant_main(P("z - x1*x2", G2), "z") == Poly.one(GX)


def test_methods_agree():
    f = P(POLY_THREE)
    assert discriminant_main(f, "z") == discriminant_main(f, "z", method="bareiss")


def test_not_monic():
    with pytest.raises(NotWeierstrass):
        discriminant_main(P("x1*z^2 + z", G2), "z")


def _ints(rows):
    return [[{(): v} if v else {} for v in r] for r in rows]


def test_bareiss_small():
    assert bareiss_determinant(_ints([[2, 1], [7, 4]]), 0) == {(): 1}
    assert bareiss_determinant(_ints([[0, 1], [1, 0]]), 0) == {(): -1}
    assert bareiss_determinant(_ints([[1, 2], [2, 4]]), 0) == {}
    assert bareiss_determinant(_ints([[2, 0, 1], [1, 3, 2], [1, 1, 2]]), 0) == {(): 6}
    # zero pivot in the second step forces a row swap
    assert bareiss_determinant(_ints([[1, 1, 0], [1, 1, 1], [0, 1, 1]]), 0) == {(): -1}


def test_random_cubics_against_formula():
    rng = random.Random(17)
    for _ in range(40):
        coeffs = [Poly(GX, {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-3, 3) for _ in range(2)})
                  for _ in range(3)]
        b, c, d = coeffs
        z = Poly.var(G2, "z")
        f = z ** 3 + b.with_gens(G2) * z ** 2 + c.with_gens(G2) * z + d.with_gens(G2)
        assert discriminant_main(f, "z") == cubic_formula(b, c, d)


def test_numeric_root_products():
    """Delta equals prod_{i<j} (r_i - r_j)^2 at random rational points, degree <= 4."""
    rng = random.Random(23)
    for _ in range(60):
        n = rng.randint(2, 4)
        z = Poly.var(G2, "z")
        f = z ** n
        for k in range(n):
            c = Poly(G2, {(rng.randint(0, 2), rng.randint(0, 2), 0): rng.randint(-4, 4) for _ in range(2)})
            f = f + c * z ** k
        disc = discriminant_main(f, "z")
        for _ in range(2):
            pt = {"x1": Fraction(rng.randint(-5, 5), rng.randint(1, 3)),
                  "x2": Fraction(rng.randint(-5, 5), rng.randint(1, 3))}
            uni = [float(f.coeff("z", k).evaluate({**pt, "z": 0})) for k in range(n, -1, -1)]
            roots = np.roots(uni)
            prod = 1
            for i in range(n):
                for j in range(i + 1, n):
                    prod *= (roots[i] - roots[j]) ** 2
            exact = float(disc.evaluate(pt))
            scale = max(1.0, abs(exact))
            assert abs(prod - exact) <= 1e-6 * scale
