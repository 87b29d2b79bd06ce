"""Making the associated polyhedron small by changes of coordinates.

Three moves are available: the Tschirnhausen shift of the main variable, a
defensive sweep that removes vertices whose initial form is a perfect power
of a binomial in the main variable, and (first cycle only) a bounded search
over substitutions x_i -> x_i + c*m of the base variables.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Optional, Tuple

from .algebra import Poly
from .errors import AmbiguousWeight, NotWeierstrass
from .polyhedra import CharPolyhedron, WeightMap, associated_polyhedron, polyhedron_points, weierstrass_validate
from .tower import RingTower, monomial_of_weight, normalize_tower, torus_value
from . import univariate as U


@dataclass(frozen=True)
class ChangeRecord:
    """A coordinate change: ``variable -> variable + shift``."""

    kind: str  # "main-shift" or "base-shift"
    variable: str
    shift: Poly

    def describe(self) -> str:
        return f"{self.variable} -> {self.variable} + ({self.shift})"


def _main_free_tower(tower: RingTower) -> RingTower:
    """The relations that do not involve the main variable."""
    keep = [r for r in tower.relations if not r.rhs.involves(tower.main)]
    return tower.with_relations(keep)


def tschirnhausen(f: Poly, main: str, tower: Optional[RingTower] = None) -> Tuple[ChangeRecord, Poly]:
    """Shift main -> main - h with h = coeff(main^(n-1))/n, killing that coefficient.

    The ChangeRecord stores h: the new main variable equals old main + h.
    Only relations not involving the main variable are used to normalize,
    so the subleading coefficient stays exactly zero.
    """
    n = weierstrass_validate(f, main)
    h = f.coeff(main, n - 1).scale(Fraction(1, n))
    if h.is_zero():
        return ChangeRecord("main-shift", main, h), f
    z = Poly.var(f.gens, main)
    g = f.substitute(main, z - h)
    if tower is not None and tower.relations:
        g = normalize_tower(g, _main_free_tower(tower))
    assert g.coeff(main, n - 1).is_zero()
    return ChangeRecord("main-shift", main, h), g


def _lattice_initial_coeffs(f: Poly, W: WeightMap, v, main: str, mono, tower: Optional[RingTower]):
    """Coefficients c_k of Z^k after collapsing the initial form at v onto powers of x^mono."""
    i = f.index(main)
    n = f.degree(main)
    names = (tower.base + tower.tower) if tower is not None else tuple(g for g in f.gens if g != main)
    idx = [f.index(g) for g in names]
    coeffs = {}
    for p, e in polyhedron_points(f, W, main):
        if p != v:
            continue
        m = n - e[i]
        c = f.terms[e]
        if tower is not None and tower.depth:
            c = c * torus_value([e[j] - m * mono[q] for q, j in enumerate(idx)], tower)
        coeffs[e[i]] = coeffs.get(e[i], Fraction(0)) + c
    return coeffs


def minimize_main(f: Poly, W: WeightMap, tower: Optional[RingTower] = None, main: Optional[str] = None):
    """Tschirnhausen followed by the defensive vertex sweep.

    Returns (ChangeRecord, polynomial, polyhedron); the record's shift is the
    accumulated h with new main = old main + h.
    """
    main = main or (tower.main if tower is not None else f.gens[-1])
    change, g = tschirnhausen(f, main, tower)
    total = change.shift
    poly = associated_polyhedron(g, W, main)
    n = g.degree(main)
    z = Poly.var(g.gens, main)
    for _ in range(4 * n + 4):
        improved = False
        for v in poly.vertices:
            if tower is None:
                mono = tuple(int(x) for x in v) if all(x.denominator == 1 for x in v) else None
            else:
                try:
                    mono = monomial_of_weight(v, tower)
                except AmbiguousWeight:
                    mono = None
            if mono is None:
                continue
            try:
                c = _lattice_initial_coeffs(g, W, v, main, mono, tower)
            except AmbiguousWeight:
                continue
            # initial form equal to (Z + mu M)^n after the collapse?
            mu = c.get(n - 1, Fraction(0)) / n
            if not mu:
                continue
            if any(c.get(k, Fraction(0)) != comb(n, k) * mu ** (n - k) for k in range(n)):
                continue
            M = Poly.monomial(g.gens, tuple(mono) + (0,), 1)
            cand = g.substitute(main, z - M.scale(mu))
            if tower is not None and tower.relations:
                cand = normalize_tower(cand, _main_free_tower(tower))
            new = associated_polyhedron(cand, W, main)
            if new.within(poly) and new.vertices != poly.vertices:
                g, poly = cand, new
                total = total + M.scale(mu)
                improved = True
                break
        if not improved:
            break
    return ChangeRecord("main-shift", main, total), g, poly


# -- base coordinate search ---------------------------------------------

def _candidates(f: Poly, v, W0: WeightMap, main: str, max_degree: int):
    """Monomials m and indices i such that x_i -> x_i + c*m can hit the vertex v."""
    i_main = f.index(main)
    d = len(f.gens) - 1
    pts = list(polyhedron_points(f, W0, main))
    at_v = [e for p, e in pts if p == v]
    found = []
    for e in at_v:
        a = e[:i_main] + e[i_main + 1:]
        for p2, e2 in pts:
            if e2 == e or e2[i_main] != e[i_main]:
                continue
            a2 = e2[:i_main] + e2[i_main + 1:]
            for i in range(d):
                k = a2[i] - a[i]
                if k < 1:
                    continue
                mu = []
                ok = True
                for j in range(d):
                    if j == i:
                        mu.append(0)
                        continue
                    diff = a[j] - a2[j]
                    if diff < 0 or diff % k:
                        ok = False
                        break
                    mu.append(diff // k)
                if not ok or not any(mu) or sum(mu) > max_degree:
                    continue
                cand = (i, tuple(mu))
                if cand not in found:
                    found.append(cand)
    return found


def _fresh(name: str, taken) -> str:
    k = 0
    cand = name
    while cand in taken:
        k += 1
        cand = f"{name}{k}"
    return cand


def _solve_shift(f: Poly, i: int, mu, v, W0: WeightMap, main: str) -> List[Fraction]:
    """Nonzero rational c making every term at v vanish after x_i -> x_i + c*m."""
    cname = _fresh("c", f.gens)
    gens = f.gens + (cname,)
    F = f.with_gens(gens)
    xi = f.gens[[k for k, g in enumerate(f.gens) if g != main][i]]
    i_main = f.index(main)
    m_exp = [0] * len(gens)
    base_idx = [k for k, g in enumerate(f.gens) if g != main]
    for j, a in enumerate(mu):
        m_exp[base_idx[j]] = a
    m_exp[-1] = 1
    shifted = F.substitute(xi, Poly.var(gens, xi) + Poly.monomial(gens, m_exp))
    n = f.degree(main)
    polys = {}
    for e, c in shifted.terms.items():
        b = e[i_main]
        if b >= n:
            continue
        a = [e[k] for k in base_idx]
        p = tuple(x / (n - b) for x in W0(a))
        if p == tuple(v):
            key = e[:-1]
            arr = polys.setdefault(key, {})
            arr[e[-1]] = arr.get(e[-1], Fraction(0)) + c
    if not polys:
        return []
    g = None
    for arr in polys.values():
        up = U.trim([arr.get(k, 0) for k in range(max(arr) + 1)])
        g = up if g is None else U.gcd_poly(g, up)
    if not g or len(g) <= 1:
        return []
    try:
        return [r for r in U.rational_roots(g) if r]
    except OverflowError:
        return []


def minimize_base(f: Poly, W0: WeightMap, budget: int = 16, main: Optional[str] = None):
    """Bounded search over base substitutions that shrink the W0-polyhedron.

    Returns (changes, polynomial, main_shift, exhausted).  ``changes`` lists
    the applied base substitutions in order; ``main_shift`` is the extra
    shift of the main variable from re-running Tschirnhausen (expressed in
    the final coordinates); ``exhausted`` is True when the budget ran out
    with two or more vertices left.
    """
    main = main or f.gens[-1]
    weierstrass_validate(f, main)
    base = [g for g in f.gens if g != main]
    max_degree = max(f.total_degree(), 1)
    poly = associated_polyhedron(f, W0, main)
    changes: List[ChangeRecord] = []
    shift = Poly.zero(f.gens)
    attempts = 0
    while len(poly.vertices) >= 2 and attempts < budget:
        applied = False
        for v in poly.vertices[:2]:
            for i, mu in _candidates(f, v, W0, main, max_degree):
                for c in _solve_shift(f, i, mu, v, W0, main):
                    if attempts >= budget:
                        break
                    attempts += 1
                    exp = [0] * len(f.gens)
                    for j, a in zip([k for k, g in enumerate(f.gens) if g != main], mu):
                        exp[j] = a
                    m = Poly.monomial(f.gens, exp, c)
                    xi = base[i]
                    g = f.substitute(xi, Poly.var(f.gens, xi) + m)
                    change, g = tschirnhausen(g, main)
                    new = associated_polyhedron(g, W0, main)
                    if new.within(poly) and new.vertices != poly.vertices:
                        changes.append(ChangeRecord("base-shift", xi, m))
                        shift = shift.substitute(xi, Poly.var(f.gens, xi) + m) + change.shift
                        f, poly = g, new
                        applied = True
                        break
                if applied or attempts >= budget:
                    break
            if applied or attempts >= budget:
                break
        if not applied:
            break
    exhausted = len(poly.vertices) >= 2 and attempts >= budget
    return changes, f, shift, exhausted
