"""The cycle construction of the polyhedral invariant kappa(f; x; z).

Each cycle minimizes the associated polyhedron of the current transform,
reads its unique vertex, factors the initial form into binomial powers,
checks the star conditions, replaces f by its canonical representative and
introduces the next main variable through a new tower relation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebra import Exponent, FracVector, Poly, product_compare, vec_scale
from .errors import AmbiguousWeight, IrrationalRoots, NotWeierstrass
from .minimize import ChangeRecord, minimize_base, minimize_main
from .polyhedra import WeightMap, associated_polyhedron, extend_weight, initial_form, polyhedron_points, weierstrass_validate
from .tower import RingTower, TowerRelation, monomial_of_weight, normalize_tower, torus_value
from . import univariate as U

INFINITY = "infinity"
MINUS_ONE = "minus_one"


@dataclass(frozen=True)
class BinomialPower:
    """(main^n - rho * x^a u^b)^multiplicity; rho = 0 encodes a bare main^multiplicity."""

    n: int
    rho: Fraction
    exponent: Exponent
    multiplicity: int

    def expand(self, gens: Sequence[str], main: str) -> Poly:
        z = Poly.var(gens, main)
        full = list(self.exponent)
        full.insert(gens.index(main), 0)
        m = Poly.monomial(gens, full, self.rho)
        return (z ** self.n - m) ** self.multiplicity


@dataclass
class CycleState:
    t: int
    tower: RingTower
    W: WeightMap
    f: Poly
    e: int
    vertices: List[FracVector] = field(default_factory=list)
    indices: List[int] = field(default_factory=list)
    rhos: List[Fraction] = field(default_factory=list)
    monomials: List[Exponent] = field(default_factory=list)
    shifts: List[Poly] = field(default_factory=list)
    degrees: List[int] = field(default_factory=list)


@dataclass
class KappaResult:
    vertices: List[FracVector]
    terminal: str
    diagnostics: List[dict]
    state: CycleState
    base_changes: List[ChangeRecord]
    input_poly: Poly
    final_poly: Poly
    main: str

    @property
    def coordinates_poly(self) -> Poly:
        """The input after the applied base substitutions (same main variable)."""
        g = self.input_poly
        for ch in self.base_changes:
            g = g.substitute(ch.variable, Poly.var(g.gens, ch.variable) + ch.shift.with_gens(g.gens))
        return g

    @property
    def quasi_ordinary(self) -> bool:
        return self.terminal == INFINITY

    @property
    def g(self) -> int:
        return len(self.vertices)


def _fresh_names(prefix: str, count: int, taken) -> List[str]:
    out = []
    k = 0
    while len(out) < count:
        name = f"{prefix}{k}"
        if name not in taken:
            out.append(name)
        k += 1
    return out


def _collapsed_coefficients(F: Poly, W: WeightMap, tower: RingTower, v, N: int, main: str):
    """Coefficients of main^k in the initial form, each term rescaled to c * mono^m.

    A term x^A u^B main^k of weight v has the weight of mono^m (m = (e-k)/N);
    the quotient is a weight-zero monomial whose leading value is a product
    of the rhos of the tower.
    """
    i = F.index(main)
    e = F.degree(main)
    idx = [F.index(g) for g in tower.base + tower.tower]
    coeffs = {e: Fraction(1)}
    mono = None
    for p, ex in polyhedron_points(F, W, main, e):
        if p != v:
            continue
        k = ex[i]
        m, rem = divmod(e - k, N)
        if rem:
            raise AmbiguousWeight("initial form exponents are not compatible with the lattice order")
        if mono is None:
            mono = monomial_of_weight(vec_scale(N, v), tower)
            if mono is None:
                raise AmbiguousWeight("no restricted monomial has the weight of the binomial")
        diff = [ex[j] - m * mono[q] for q, j in enumerate(idx)]
        c = F.terms[ex] * torus_value(diff, tower)
        coeffs[k] = coeffs.get(k, Fraction(0)) + c
    return {k: c for k, c in coeffs.items() if c}, mono


def factor_initial_form(F: Poly, W: WeightMap, tower: RingTower, v: Sequence, main: Optional[str] = None) -> List[BinomialPower]:
    """Factor an initial form at the vertex v into powers of binomials.

    Every term is rewritten as a multiple of a power of the restricted
    monomial M of weight N v (N the order of v modulo the lattice of the
    tower), using u_j^{n_j} = rho_j M_j at leading weight.  The collapsed
    form is main^i * P(main^N / M); distinct rational roots r of P give the
    binomials main^N - r * M.
    """
    main = main or tower.main
    v = tuple(Fraction(x) for x in v)
    e = F.degree(main)
    N = tower.lattice(tower.depth).order_of(v)
    coeffs, mono = _collapsed_coefficients(F, W, tower, v, N, main)
    low = min(coeffs)
    top_m = (e - low) // N
    # P(w) = sum c_{e - N m} w^(top_m - m), monic of degree top_m
    P = [Fraction(0)] * (top_m + 1)
    for k, c in coeffs.items():
        m = (e - k) // N
        P[top_m - m] = c
    factors: List[BinomialPower] = []
    d = tower.d
    zero_exp = (0,) * (d + tower.depth)
    if low > 0:
        factors.append(BinomialPower(1, Fraction(0), zero_exp, low))
    if top_m == 0:
        return factors
    # single root fast path: P = (w - r)^top_m
    r = -P[top_m - 1] / top_m
    if _is_power_of_linear(P, r, top_m):
        factors.append(BinomialPower(N, r, mono, top_m))
        return factors
    for part, mult in U.squarefree_decomposition(P):
        roots = U.rational_roots(part)
        if len(roots) != len(part) - 1:
            raise IrrationalRoots(
                f"binomial factor polynomial has roots outside Q (degree {len(part) - 1}, {len(roots)} rational)"
            )
        for root in roots:
            if root == 0:
                factors.append(BinomialPower(1, Fraction(0), zero_exp, N * mult))
            else:
                factors.append(BinomialPower(N, root, mono, mult))
    return factors


def _is_power_of_linear(P, r, k) -> bool:
    from math import comb
    for j in range(k + 1):
        # coefficient of w^j in (w - r)^k
        if P[j] != comb(k, j) * (-r) ** (k - j):
            return False
    return True


def star_check(v_next: Sequence, state: CycleState, factors: List[BinomialPower]):
    """Return None when the star conditions hold, else '0', '1' or '2'."""
    v_next = tuple(Fraction(x) for x in v_next)
    distinct = [f for f in factors]
    if len(distinct) != 1 or distinct[0].rho == 0:
        return "0"
    if state.vertices:
        prev = vec_scale(state.indices[-1], state.vertices[-1])
        if product_compare(v_next, prev) != "greater":
            return "1"
    if v_next in state.tower.lattice(len(state.vertices)):
        return "2"
    return None


def canonical_representative(f_tilde: Poly, tower: RingTower, factors: List[BinomialPower], main: Optional[str] = None) -> Poly:
    """f* + NF(f_tilde - f*) with f* the product of the binomial powers."""
    main = main or tower.main
    fstar = Poly.one(f_tilde.gens)
    for b in factors:
        fstar = fstar * b.expand(f_tilde.gens, main)
    return fstar + normalize_tower(f_tilde - fstar, tower)


def unfold_to_base(result: "KappaResult") -> List[Poly]:
    """Approximate roots q_0..q_{g-1} as polynomials in (x, z) (final base coordinates)."""
    st = result.state
    base = st.tower.base
    main = result.main
    gens = base + (main,)
    z = Poly.var(gens, main)
    tower = st.tower
    g = len(st.vertices)
    tower_names = tower.tower
    qs: List[Poly] = []
    # u_0 = z + h_0
    h0 = st.shifts[0]
    qs.append(z + _embed(h0, gens, {}))
    for j in range(g - 1):
        # u_{j+1} = u_j^{n_{j+1}} - rho M + h_{j+1}
        M = _monomial_poly(st.monomials[j], base, tower_names)
        h = st.shifts[j + 1]
        sub = {tower_names[k]: qs[k] for k in range(j + 1)}
        nxt = qs[j] ** st.indices[j] - _embed(M, gens, sub).scale(st.rhos[j]) + _embed(h, gens, sub)
        qs.append(nxt)
    return qs


def _monomial_poly(exponent, base, tower_names) -> Poly:
    gens = tuple(base) + tuple(tower_names)
    exp = tuple(exponent) + (0,) * (len(gens) - len(exponent))
    return Poly.monomial(gens, exp)


def _embed(p: Poly, gens, sub) -> Poly:
    """Rewrite p (over base + tower [+ main]) into gens by substituting tower variables."""
    names = [g for g in p.gens if g not in gens]
    if not names:
        return p.with_gens(gens)
    big = tuple(gens) + tuple(names)
    q = p.with_gens(big)
    mapping = {}
    for name in names:
        if name in sub:
            mapping[name] = sub[name].with_gens(big)
        elif not q.involves(name):
            continue
        else:
            raise ValueError(f"cannot eliminate {name}")
    if mapping:
        q = q.compose(mapping)
    return q.with_gens(gens)


def run_construction(f: Poly, main: str, base_budget: int = 16, base: Optional[Sequence[str]] = None) -> KappaResult:
    """Compute kappa(f; x; main).

    ``base`` fixes the order of the base variables x (default: the order in
    f's signature with ``main`` removed).
    """
    if base is None:
        base = tuple(g for g in f.gens if g != main)
    base = tuple(base)
    if main in base or len(set(base)) != len(base):
        raise NotWeierstrass("main variable must be distinct from the base variables")
    gens0 = base + (main,)
    f = f.with_gens(gens0)
    n = weierstrass_validate(f, main)
    taken = set(gens0)
    tower_pool = _fresh_names("u", 64, taken)
    main_pool = [main] + _fresh_names("z", 64, taken | set(tower_pool))[1:]
    d = len(base)
    W0 = WeightMap.identity(d)

    tower = RingTower(base, (), main)
    state = CycleState(0, tower, W0, f, n, degrees=[n])
    relations: List[TowerRelation] = []
    diagnostics: List[dict] = []
    base_changes: List[ChangeRecord] = []
    cur = f
    terminal = None
    final_poly = f
    t = 0
    while True:
        cur_main = tower.main
        e = cur.degree(cur_main)
        W = state.W
        pending = tower.with_relations(relations[:-1] if t else [])
        change, cur, poly = minimize_main(cur, W, pending, cur_main)
        h_total = change.shift
        if t == 0 and len(poly.vertices) >= 2 and d >= 2:
            changes, cur, extra, exhausted = minimize_base(cur, W0, base_budget, cur_main)
            if changes:
                for ch in changes:
                    h_total = h_total.substitute(ch.variable, Poly.var(cur.gens, ch.variable) + ch.shift)
                h_total = h_total + extra
                base_changes.extend(changes)
                poly = associated_polyhedron(cur, W, cur_main)
            if exhausted:
                diagnostics.append({"kind": "base_budget_exhausted", "cycle": t, "budget": base_budget})
        state.shifts.append(h_total)
        if t:
            # the pending relation u_{t-1}^{n_t} = z_t + rho M now reads with z_t = main - h_t
            last = relations[-1]
            relations[-1] = TowerRelation(last.level, last.power, last.rhs - h_total)
        full_tower = tower.with_relations(relations)
        state.tower = full_tower
        state.f = cur
        if poly.empty:
            terminal = INFINITY
            if e >= 2:
                diagnostics.append({"kind": "pure_power", "cycle": t, "degree": e,
                                    "detail": "transform is a pure power of the main variable; f is reducible"})
            final_poly = cur
            break
        if len(poly.vertices) >= 2:
            terminal = MINUS_ONE
            diagnostics.append({"kind": "several_vertices", "cycle": t,
                                "vertices": [[str(x) for x in v] for v in poly.vertices]})
            final_poly = cur
            break
        v = poly.vertices[0]
        F = initial_form(cur, W, v, cur_main, check=False)
        # conditions that only depend on the vertex
        if state.vertices:
            prev = vec_scale(state.indices[-1], state.vertices[-1])
            if product_compare(v, prev) != "greater":
                terminal = MINUS_ONE
                diagnostics.append({"kind": "star_failed", "condition": "1", "cycle": t,
                                    "vertex": [str(x) for x in v]})
                final_poly = cur
                break
        if v in full_tower.lattice(t):
            terminal = MINUS_ONE
            diagnostics.append({"kind": "star_failed", "condition": "2", "cycle": t,
                                "vertex": [str(x) for x in v],
                                "detail": "vertex lies in the lattice of the previous ones"})
            final_poly = cur
            break
        try:
            factors = factor_initial_form(F, W, full_tower, v, cur_main)
        except (AmbiguousWeight, IrrationalRoots) as exc:
            terminal = MINUS_ONE
            diagnostics.append({"kind": type(exc).__name__, "cycle": t, "vertex": [str(x) for x in v],
                                "detail": str(exc)})
            final_poly = cur
            break
        fail = star_check(v, state, factors)
        if fail is not None:
            terminal = MINUS_ONE
            diagnostics.append({"kind": "star_failed", "condition": fail, "cycle": t,
                                "vertex": [str(x) for x in v], "factors": len(factors)})
            final_poly = cur
            break
        b = factors[0]
        N = b.n
        f_can = canonical_representative(cur, full_tower, factors, cur_main)
        # open the next cycle
        new_u = tower_pool[t]
        new_main = main_pool[t + 1]
        new_tower_names = tower.tower + (new_u,)
        new_gens = base + new_tower_names + (new_main,)
        g = f_can.rename({cur_main: new_u}).with_gens(new_gens)
        mono_full = tuple(b.exponent) + (0, 0)
        rhs = Poly.var(new_gens, new_main) + Poly.monomial(new_gens, mono_full, b.rho)
        rel = TowerRelation(t, N, rhs)
        relations = [TowerRelation(r.level, r.power, r.rhs.rename({cur_main: new_u}).with_gens(new_gens))
                     for r in relations] + [rel]
        state.vertices.append(v)
        state.indices.append(N)
        state.rhos.append(b.rho)
        state.monomials.append(tuple(b.exponent))
        state.shifts = [s.rename({cur_main: new_u}).with_gens(new_gens) if cur_main in s.gens else s.with_gens(new_gens)
                        for s in state.shifts]
        tower = RingTower(base, new_tower_names, new_main, tuple(state.vertices), tuple(state.indices), tuple(relations),
                          tuple(zip(state.rhos, state.monomials)))
        nxt = normalize_tower(g, tower)
        e_next = e // N
        if nxt.degree(new_main) != e_next or nxt.coeff(new_main, e_next) != 1:
            raise AssertionError("transform lost the Weierstrass shape")
        cur = nxt
        t += 1
        state.t = t
        state.W = extend_weight(state.W, v)
        state.e = e_next
        state.degrees.append(e_next)
        state.tower = tower
        state.f = cur
        assert (1 << t) <= n, "more cycles than log2(n)"
    state.tower = state.tower.with_relations(relations)
    return KappaResult(list(state.vertices), terminal, diagnostics, state, base_changes, f, final_poly, main)
