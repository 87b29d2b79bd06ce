"""Randomized property suites.

Each suite runs ``cases`` random checks and returns the number performed;
a violated property raises AssertionError with the offending input.
"""
import math
import random
from fractions import Fraction
from itertools import combinations, product

from quasiord.algebra import Poly, product_compare
from quasiord.analysis import gamma_to_lambda
from quasiord.corpus import recursion_instances
from quasiord.kappa import BinomialPower, factor_initial_form, run_construction
from quasiord.lattice import Lattice, lattice_indices
from quasiord.minimize import tschirnhausen
from quasiord.polyhedra import (WeightMap, associated_polyhedron, in_hull_plus_orthant, initial_form, vertices,
                                weight_of)
from quasiord.tower import RingTower, TowerRelation, is_restricted, monomial_of_weight, normalize_tower

CASES = 200


def _names(d):
    return tuple(f"x{i + 1}" for i in range(d))


def _rand_q(rng, lo=0, hi=6, dens=(1, 2, 3)):
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def _rand_weierstrass(rng, d, n, terms=4, max_exp=4, with_sub=True):
    base = _names(d)
    gens = base + ("z",)
    f = Poly.var(gens, "z") ** n
    for _ in range(terms):
        b = rng.randrange(n - 1 if not with_sub and n > 1 else n)
        a = [rng.randint(0, max_exp) for _ in range(d)]
        if not any(a):
            a[rng.randrange(d)] = 1
        f = f + Poly.monomial(gens, tuple(a) + (b,), Fraction(rng.choice([1, -1, 2, -3, 5]), rng.choice([1, 2])))
    return f


def vertex_suite(cases=CASES, seed=1):
    rng = random.Random(seed)
    for _ in range(cases):
        d = rng.randint(1, 3)
        pts = [tuple(_rand_q(rng) for _ in range(d)) for _ in range(rng.randint(1, 8))]
        V = vertices(pts)
        assert V and all(v in pts for v in V), pts
        for v, w in combinations(V, 2):
            assert product_compare(v, w) == "incomparable", (pts, V)
        for p in pts:
            assert in_hull_plus_orthant(p, V), (pts, V, p)
        for v in V:
            rest = [w for w in V if w != v]
            assert not rest or not in_hull_plus_orthant(v, rest), (pts, V, v)
    return cases


def image_identity_suite(cases=CASES, seed=2):
    """Vertices of the W-polyhedron equal the vertices of W applied to the W0-vertices."""
    rng = random.Random(seed)
    for _ in range(cases):
        d = rng.randint(1, 3)
        c = rng.randint(1, 3)
        f = _rand_weierstrass(rng, d, rng.randint(2, 4))
        cols = []
        for _ in range(d):
            col = [_rand_q(rng, 0, 4) for _ in range(c)]
            if not any(col):
                col[rng.randrange(c)] = Fraction(1)
            cols.append(col)
        W = WeightMap.from_columns(cols)
        P0 = associated_polyhedron(f, WeightMap.identity(d), "z")
        PW = associated_polyhedron(f, W, "z")
        assert P0.empty == PW.empty
        if P0.empty:
            continue
        assert sorted(PW.vertices) == sorted(vertices([weight_of(W, v) for v in P0.vertices])), (f, cols)
    return cases


def tschirnhausen_suite(cases=CASES, seed=3):
    rng = random.Random(seed)
    for _ in range(cases):
        d = rng.randint(1, 3)
        n = rng.randint(2, 5)
        f = _rand_weierstrass(rng, d, n, terms=5, max_exp=3)
        change, g = tschirnhausen(f, "z")
        assert g.coeff("z", n - 1).is_zero(), f
        assert g.degree("z") == n
        h = change.shift.with_gens(f.gens)
        # g(z) = f(z - h), so the inverse shift recovers f
        assert g.substitute("z", Poly.var(f.gens, "z") + h) == f, f
    return cases


def _rand_tower(rng):
    d = rng.randint(1, 2)
    depth = rng.randint(1, 2)
    base = _names(d)
    names = tuple(f"u{j}" for j in range(depth))
    gens = base + names + ("z",)
    indices = tuple(rng.randint(2, 3) for _ in range(depth))
    rels = []
    for j in range(depth):
        nxt = names[j + 1] if j + 1 < depth else "z"
        a = [rng.randint(0, 3) for _ in range(d)]
        a[rng.randrange(d)] += 1
        b = [rng.randrange(indices[k]) if k < j else 0 for k in range(depth)]
        m = Poly.monomial(gens, tuple(a) + tuple(b) + (0,), rng.choice([1, -1, 2]))
        rels.append(TowerRelation(j, indices[j], Poly.var(gens, nxt) + m))
    return RingTower(base, names, "z", (), indices, tuple(rels)), gens


def _rand_poly(rng, gens, terms, max_exp):
    p = Poly.zero(gens)
    for _ in range(terms):
        e = tuple(rng.randint(0, max_exp) for _ in gens)
        p = p + Poly.monomial(gens, e, rng.randint(-3, 3) or 1)
    return p


def normalize_suite(cases=CASES, seed=4):
    rng = random.Random(seed)
    for _ in range(cases):
        tower, gens = _rand_tower(rng)
        p = _rand_poly(rng, gens, 3, 4)
        q = normalize_tower(p, tower)
        assert is_restricted(q, tower), p
        assert normalize_tower(q, tower) == q, p
        rel = rng.choice(tower.relations)
        u = Poly.var(gens, tower.tower[rel.level])
        r = _rand_poly(rng, gens, 2, 2)
        assert normalize_tower(p + (u ** rel.power - rel.rhs) * r, tower) == q, (p, r)
    return cases


def factor_suite(cases=CASES, seed=5):
    """Product of the reported binomial powers equals the initial form."""
    rng = random.Random(seed)
    for _ in range(cases):
        d = rng.randint(1, 3)
        base = _names(d)
        gens = base + ("z",)
        while True:
            n = rng.randint(1, 4)
            a = tuple(rng.randint(0, 5) for _ in range(d))
            v = tuple(Fraction(x, n) for x in a)
            if any(a) and Lattice(d).order_of(v) == n:
                break
        rhos = rng.sample([Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(-3)], rng.randint(1, 2))
        z0 = rng.randint(0, 1)
        F = Poly.var(gens, "z") ** z0
        for rho in rhos:
            F = F * BinomialPower(n, rho, a, rng.randint(1, 2)).expand(gens, "z")
        W0 = WeightMap.identity(d)
        Fin = initial_form(F, W0, v, "z")
        assert Fin == F
        factors = factor_initial_form(Fin, W0, RingTower(base, (), "z"), v, "z")
        prod = Poly.const(gens, 1)
        for bp in factors:
            prod = prod * bp.expand(gens, "z")
        assert prod == Fin, (F, factors)
    return cases


def monomial_suite(cases=CASES, seed=6, box=4):
    """monomial_of_weight against brute-force enumeration of restricted monomials."""
    rng = random.Random(seed)
    towers = [inst for inst in recursion_instances(cases, seed, max_degree=8, max_vars=2)]
    for inst in towers:
        d = len(inst.base)
        g = len(inst.indices)
        tower = RingTower(inst.base, tuple(f"u{j}" for j in range(g)), "z", tuple(inst.gammas), tuple(inst.indices))
        seen = {}
        for A in product(range(box + 1), repeat=d):
            for B in product(*[range(n) for n in inst.indices]):
                w = tower.weight(A + B)
                assert w not in seen, (inst.gammas, A + B, seen.get(w))
                seen[w] = A + B
        for _ in range(5):
            w, e = rng.choice(list(seen.items()))
            assert monomial_of_weight(w, tower) == e, (inst.gammas, w, e)
        # a weight off the lattice has no monomial
        off = tuple(Fraction(1, 7 * math.prod(inst.indices)) for _ in range(d))
        if off not in tower.lattice(g):
            assert monomial_of_weight(off, tower) is None
    return len(towers)


def _qo_results(cases, seed):
    for inst in recursion_instances(cases, seed):
        yield inst, run_construction(inst.poly, inst.main, base=inst.base)


def lattice_indices_suite(cases=CASES, seed=8):
    count = 0
    for inst, r in _qo_results(cases, seed):
        assert r.terminal == "infinity", inst.poly
        assert r.state.indices == inst.indices, inst.poly
        assert lattice_indices(r.vertices) == r.state.indices, inst.poly
        assert math.prod(r.state.indices) == inst.degree
        count += 1
    return count


def lambda_suite(cases=CASES, seed=9):
    count = 0
    for inst, r in _qo_results(cases, seed):
        n = inst.degree
        lam = gamma_to_lambda(r.vertices, r.state.indices)
        for a, b in zip(lam, lam[1:]):
            assert product_compare(b, a) == "greater", (inst.poly, lam)
        for v in lam:
            assert all((n * x).denominator == 1 for x in v), (inst.poly, lam)
        count += 1
    return count


SUITES = {
    "vertex incomparability and hull membership": vertex_suite,
    "image identity for random W": image_identity_suite,
    "Tschirnhausen zero subleading coefficient": tschirnhausen_suite,
    "normalize_tower quotient equality and idempotence": normalize_suite,
    "factor expansion reproduces initial forms": factor_suite,
    "monomial_of_weight uniqueness by brute force": monomial_suite,
    "lattice_indices equals n_i": lattice_indices_suite,
    "lambda strict increase and (1/n)-integrality": lambda_suite,
}
