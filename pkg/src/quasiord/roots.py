"""Fractional power series roots of a quasi-ordinary polynomial.

With x_i = s_i^n the tower relations become equations in k[[s]] that are
solved coefficient by coefficient.  Writing u_r = sum_K U_{r,K} s^(n g_{r+1} + K)
(g_{r+1} the r-th kappa vertex), the coefficient of relation r at
s^(n n_{r+1} g_{r+1} + K) is linear in U_{r,K} with the invertible factor
n_{r+1} c_r^(n_{r+1}-1), and otherwise involves only unknowns that come
earlier in the order (|K|_1, K, r).  Exponents are kept as integer vectors
in s (so x-exponents are these divided by n).  Public truncation bounds B
are on the x-degree |E/n|_1; internally the s-degree bound is n*B.

Only one branch (the principal one) is solved; the remaining roots are its
images under s_i -> w^(k_i) s_i with w a primitive n-th root of unity.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import prod
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import FracVector, Poly
from .errors import BoundTooSmall, NoDominantTerm, NotQuasiOrdinaryState
from .extension import ExtensionTower, cyclotomic
from .kappa import INFINITY, KappaResult

SExp = Tuple[int, ...]


def _norm(e) -> int:
    return sum(e)


def _leq(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _add_e(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub_e(a, b):
    return tuple(x - y for x, y in zip(a, b))


def rational_nth_root(q: Fraction, n: int) -> Optional[Fraction]:
    """Exact rational n-th root (the positive one when possible), or None."""
    q = Fraction(q)
    if q == 0:
        return Fraction(0)
    sign = 1
    if q < 0:
        if n % 2 == 0:
            return None
        sign = -1
        q = -q

    def iroot(m: int) -> Optional[int]:
        r = round(m ** (1.0 / n)) if m < 2 ** 1000 else None
        if r is None:
            lo, hi = 0, 1 << (m.bit_length() // n + 1)
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if mid ** n <= m:
                    lo = mid
                else:
                    hi = mid - 1
            r = lo
        for c in (r - 1, r, r + 1):
            if c >= 0 and c ** n == m:
                return c
        return None

    a, b = iroot(q.numerator), iroot(q.denominator)
    if a is None or b is None:
        return None
    return sign * Fraction(a, b)


class _Arith:
    """Ring operations on an ExtensionTower with a fast path for plain rationals."""

    def __init__(self, ring: ExtensionTower):
        self.ring = ring
        self.flat = ring.depth == 0
        self.zero = ring.zero()
        self.one = ring.one()

    def add(self, a, b):
        return a + b if self.flat else self.ring.add(a, b)

    def sub(self, a, b):
        return a - b if self.flat else self.ring.sub(a, b)

    def mul(self, a, b):
        return a * b if self.flat else self.ring.mul(a, b)

    def scale(self, q, a):
        return q * a if self.flat else self.ring.scale(Fraction(q), a)

    def is_zero(self, a):
        return a == 0 if self.flat else self.ring.is_zero(a)

    def power(self, a, k):
        return a ** k if self.flat else self.ring.power(a, k)

    def const(self, q):
        return Fraction(q) if self.flat else self.ring.const(q)

    def neg(self, a):
        return -a if self.flat else self.ring.neg(a)


@dataclass
class RootSeries:
    """Truncated series sum coeffs[E] s^E with x_i = s_i^n; exponent in x is E/n."""

    n: int
    coeffs: Dict[SExp, object]
    bound: Fraction  # on the x-degree
    ring: ExtensionTower

    @property
    def s_bound(self) -> int:
        return _s_bound(self.bound, self.n)

    def x_exponents(self) -> List[FracVector]:
        return [tuple(Fraction(a, self.n) for a in e) for e in sorted(self.coeffs, key=lambda e: (_norm(e), e))]

    def items(self):
        for e in sorted(self.coeffs, key=lambda e: (_norm(e), e)):
            yield tuple(Fraction(a, self.n) for a in e), self.coeffs[e]

    def render(self, max_terms: int = 12) -> str:
        parts = []
        for k, (ex, c) in enumerate(self.items()):
            if k >= max_terms:
                parts.append("...")
                break
            mono = "*".join(f"x{i + 1}^({a})" for i, a in enumerate(ex) if a)
            parts.append(f"({self.ring.to_str(c)})*{mono}" if mono else f"({self.ring.to_str(c)})")
        return " + ".join(parts) if parts else "0"


def _s_bound(bound, n: int) -> int:
    return int(Fraction(bound) * n)


def _series_mul(ar: _Arith, a: Dict, b: Dict, bound: int) -> Dict:
    out: Dict = {}
    bl = sorted(b.items(), key=lambda it: _norm(it[0]))
    for ea, ca in a.items():
        na = _norm(ea)
        for eb, cb in bl:
            if na + _norm(eb) > bound:
                break
            e = _add_e(ea, eb)
            t = ar.mul(ca, cb)
            out[e] = ar.add(out[e], t) if e in out else t
    return {e: c for e, c in out.items() if not ar.is_zero(c)}


class RootExpander:
    """Solves the principal branch of a terminal-Infinity construction."""

    def __init__(self, result: KappaResult, bound=None):
        if result.terminal != INFINITY:
            raise NotQuasiOrdinaryState("root expansion needs a terminal-Infinity construction")
        st = result.state
        if st.degrees[-1] != 1:
            raise NotQuasiOrdinaryState("the last transform is not linear; f is reducible")
        self.result = result
        self.d = d = st.tower.d
        self.g = g = len(st.vertices)
        self.indices = list(st.indices)
        self.n = n = prod(self.indices) if g else 1
        self.gammas = list(st.vertices)
        self.gam_s = [tuple(int(n * x) for x in gm) for gm in self.gammas]
        from .analysis import gamma_to_lambda
        lam = gamma_to_lambda(self.gammas, self.indices) if g else []
        self.lam_norm = int(n * sum(lam[-1])) if lam else 0
        # lam_norm = n |lambda_g|_1; the default x-degree bound is 3 n |lambda_g|_1
        if bound is None:
            bound = 3 * self.lam_norm if g else 0
        bound = Fraction(bound)
        if g and bound < self.lam_norm:
            raise BoundTooSmall(f"bound {bound} is below n*|lambda_g|_1 = {self.lam_norm}")
        self.bound = bound
        self.s_bound = _s_bound(bound, n)
        self.base = st.tower.base
        self._build_ring()
        self._solve()

    # -- leading coefficients -------------------------------------------
    def _build_ring(self):
        st = self.result.state
        d, g = self.d, self.g
        ring = ExtensionTower()
        thetas: List = []
        for t in range(g):
            ar = _Arith(ring)
            y = ar.const(st.rhos[t])
            for j, bj in enumerate(st.monomials[t][d:]):
                if bj:
                    y = ar.mul(y, ar.power(thetas[j], bj))
            N = self.indices[t]
            q = ring.rational_value(y)
            root = rational_nth_root(q, N) if q is not None else None
            if root is not None:
                thetas.append(ring.const(root))
            else:
                mod = [ring.neg(y)] + [ring.zero()] * (N - 1) + [ring.one()]
                new = ring.adjoin(f"c{t}", mod)
                thetas = [new.embed(th, ring.depth) for th in thetas] + [new.gen(new.depth - 1)]
                ring = new
        self.ring = ring
        self.ar = _Arith(ring)
        self.c = thetas
        # inverses: c_j^{-1} = c_j^{n_{j+1}-1} / y_j with y_j = rho_j prod c^b
        ar = self.ar
        cinv = []
        for t in range(g):
            yinv = ar.const(1 / Fraction(st.rhos[t]))
            for j, bj in enumerate(st.monomials[t][d:]):
                if bj:
                    yinv = ar.mul(yinv, ar.power(cinv[j], bj))
            cinv.append(ar.mul(ar.power(thetas[t], self.indices[t] - 1), yinv))
        self.cinv = cinv

    def leading_coefficients(self):
        return list(self.c)

    # -- equations ------------------------------------------------------
    def _equation_terms(self):
        """Per level r: list of (coefficient, s-shift, factor levels) with the u_{r+1} term separate."""
        st = self.result.state
        d, g, n = self.d, self.g, self.n
        shifts = st.shifts
        eqs = []
        gens_main = st.tower.gens[-1]
        for r in range(g):
            terms = [(Fraction(1), (0,) * d, [r] * self.indices[r])]
            mono = st.monomials[r]
            levels = []
            for j, bj in enumerate(mono[d:]):
                levels += [j] * bj
            terms.append((-Fraction(st.rhos[r]), tuple(n * a for a in mono[:d]), levels))
            h = shifts[r + 1]
            mi = h.index(gens_main) if gens_main in h.gens else None
            for e, c in h.terms.items():
                if mi is not None and e[mi]:
                    raise NotQuasiOrdinaryState("shift involves the main variable")
                lv = []
                for j in range(g):
                    if e[d + j]:
                        if j > r:
                            raise NotQuasiOrdinaryState("shift involves a higher tower variable")
                        lv += [j] * e[d + j]
                terms.append((c, tuple(n * a for a in e[:d]), lv))
            eqs.append(terms)
        return eqs

    def _generators(self, eqs):
        gens = set()
        for r in range(self.g - 1):
            delta = _sub_e(self.gam_s[r + 1], tuple(self.indices[r] * a for a in self.gam_s[r]))
            if min(delta) < 0 or not any(delta):
                raise NotQuasiOrdinaryState("kappa vertices do not increase")
            gens.add(delta)
        for r, terms in enumerate(eqs):
            base = tuple(self.indices[r] * a for a in self.gam_s[r])
            for c, shift, lv in terms[2:]:
                w = shift
                for j in lv:
                    w = _add_e(w, self.gam_s[j])
                ex = _sub_e(w, base)
                if min(ex) < 0 or not any(ex):
                    raise NotQuasiOrdinaryState("a tail term is not of higher weight")
                gens.add(ex)
        return sorted(gens)

    def _solve(self):
        g, d = self.g, self.d
        ar = self.ar
        self.u: List[Dict[SExp, object]] = [dict() for _ in range(g)]
        if g == 0:
            return
        eqs = self._equation_terms()
        gens = self._generators(eqs)
        kmax = []
        acc = self.s_bound - _norm(self.gam_s[0])
        for r in range(g):
            if r:
                delta = _sub_e(self.gam_s[r], tuple(self.indices[r - 1] * a for a in self.gam_s[r - 1]))
                acc -= _norm(delta)
            kmax.append(acc)
        top = max(kmax)
        # monoid elements up to the largest bound
        cands = {(0,) * d}
        frontier = [(0,) * d]
        while frontier:
            nxt = []
            for k in frontier:
                for gv in gens:
                    m = _add_e(k, gv)
                    if _norm(m) <= top and m not in cands:
                        cands.add(m)
                        nxt.append(m)
            frontier = nxt
        order = sorted(cands, key=lambda k: (_norm(k), k))
        for r in range(g):
            self.u[r][self.gam_s[r]] = self.c[r]
        self._sorted = [[(self.gam_s[r], self.c[r])] for r in range(g)]
        self.equations = eqs
        for K in order:
            if not any(K):
                continue
            nk = _norm(K)
            for r in range(g):
                if nk > kmax[r]:
                    continue
                N = _add_e(tuple(self.indices[r] * a for a in self.gam_s[r]), K)
                R = self._coefficient(r, N)
                if ar.is_zero(R):
                    continue
                # C = n_{r+1} c_r^{n_{r+1}-1}; U = -R / C
                Cinv = ar.scale(Fraction(1, self.indices[r]), ar.power(self.cinv[r], self.indices[r] - 1))
                U = ar.neg(ar.mul(R, Cinv))
                E = _add_e(self.gam_s[r], K)
                self.u[r][E] = U
                self._sorted[r].append((E, U))

    def _coefficient(self, r: int, N: SExp):
        ar = self.ar
        total = ar.zero
        for coeff, shift, levels in self.equations[r]:
            tgt = _sub_e(N, shift)
            if min(tgt) < 0:
                continue
            val = self._product_coefficient(levels, tgt)
            if val is not None:
                total = ar.add(total, ar.scale(coeff, val))
        if r + 1 < self.g:
            nxt = self.u[r + 1].get(N)
            if nxt is not None:
                total = ar.sub(total, nxt)
        return total

    def _product_coefficient(self, levels: List[int], target: SExp):
        """Coefficient of s^target in prod_j u_{levels[j]} (None when zero)."""
        ar = self.ar
        k = len(levels)
        if k == 0:
            return ar.one if not any(target) else None
        rest_min = [None] * (k + 1)
        rest_min[k] = (0,) * self.d
        for i in range(k - 1, -1, -1):
            rest_min[i] = _add_e(rest_min[i + 1], self.gam_s[levels[i]])
        if not _leq(rest_min[0], target):
            return None
        memo = {}

        def rec(i, tgt):
            if i == k:
                return ar.one if not any(tgt) else None
            key = (i, tgt)
            if key in memo:
                return memo[key]
            budget = _norm(tgt) - _norm(rest_min[i + 1])
            acc = None
            for e, c in self._sorted[levels[i]]:
                if _norm(e) > budget:
                    break
                rem = _sub_e(tgt, e)
                if not _leq(rest_min[i + 1], rem):
                    continue
                sub = rec(i + 1, rem)
                if sub is not None:
                    t = ar.mul(c, sub)
                    acc = t if acc is None else ar.add(acc, t)
            memo[key] = acc
            return acc

        return rec(0, target)

    # -- results --------------------------------------------------------
    def principal(self) -> RootSeries:
        """The branch with all selectors zero: z = u_0 - h_0(x)."""
        ar = self.ar
        coeffs = {}
        if self.g:
            for e, c in self.u[0].items():
                if _norm(e) <= self.s_bound:
                    coeffs[e] = c
        h0 = self.result.state.shifts[0]
        d, n = self.d, self.n
        for e, c in h0.terms.items():
            E = tuple(n * a for a in e[:d])
            if _norm(E) <= self.s_bound:
                val = ar.sub(coeffs.get(E, ar.zero), ar.const(c))
                if ar.is_zero(val):
                    coeffs.pop(E, None)
                else:
                    coeffs[E] = val
        return RootSeries(n, coeffs, self.bound, self.ring)

    # -- branches -------------------------------------------------------
    def branch_ring(self) -> Tuple[ExtensionTower, object]:
        """Ring with a primitive n-th root of unity w adjoined on top, and w."""
        n = self.n
        if n <= 2:
            return self.ring, self.ring.const(1 if n == 1 else -1)
        mod = [self.ring.const(c) for c in cyclotomic(n)]
        ring = self.ring.adjoin("w", mod)
        return ring, ring.gen(ring.depth - 1)

    def branch_table(self) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        """List of (eta selectors, Galois shift k) for all n branches, principal first."""
        n, g, d = self.n, self.g, self.d
        if g == 0:
            return [((), (0,) * d)]
        # exponent tuple a(k)_t = k . n g_t mod n, realised by generators e_i
        def signature(k):
            return tuple(sum(ki * gi for ki, gi in zip(k, gm)) % n for gm in self.gam_s)

        found = {signature((0,) * d): (0,) * d}
        frontier = [(0,) * d]
        while frontier:
            nxt = []
            for k in frontier:
                for i in range(d):
                    k2 = list(k)
                    k2[i] = (k2[i] + 1) % n
                    k2 = tuple(k2)
                    sg = signature(k2)
                    if sg not in found:
                        found[sg] = k2
                        nxt.append(k2)
            frontier = nxt
        if len(found) != n:
            raise NotQuasiOrdinaryState(f"found {len(found)} conjugate branches, expected {n}")
        sigs = sorted(found)
        table = []
        for sg in sigs:
            eta = []
            for t in range(g):
                prefix = sg[:t]
                opts = sorted({s[t] for s in sigs if s[:t] == prefix})
                eta.append(opts.index(sg[t]))
            table.append((tuple(eta), found[sg]))
        return table

    def branch(self, eta: Optional[Sequence[int]] = None) -> RootSeries:
        base = self.principal()
        table = self.branch_table()
        eta = tuple(eta) if eta is not None else (0,) * self.g
        match = [k for e, k in table if e == eta]
        if not match:
            raise ValueError(f"selector {eta} is out of range for indices {self.indices}")
        k = match[0]
        ring, w = self.branch_ring()
        return self._act(base, k, ring, w)

    def _act(self, series: RootSeries, k, ring, w) -> RootSeries:
        n = self.n
        powers = [ring.power(w, j) for j in range(n)]
        out = {}
        for e, c in series.coeffs.items():
            c2 = ring.embed(c, self.ring.depth) if ring is not self.ring else c
            j = sum(a * b for a, b in zip(k, e)) % n
            out[e] = ring.mul(c2, powers[j]) if j else c2
        return RootSeries(n, out, series.bound, ring)

    def all_branches(self) -> List[Tuple[Tuple[int, ...], RootSeries]]:
        base = self.principal()
        ring, w = self.branch_ring()
        return [(eta, self._act(base, k, ring, w)) for eta, k in self.branch_table()]


def expand_root(result: KappaResult, eta: Optional[Sequence[int]] = None, bound=None) -> RootSeries:
    """Root of f in z (in the final base coordinates) for the selected branch."""
    return RootExpander(result, bound).branch(eta)


def initial_coefficients(result: KappaResult, eta: Optional[Sequence[int]] = None):
    """(ring, [c_0..c_{g-1}]) for the selected branch."""
    ex = RootExpander(result, bound=None)
    table = ex.branch_table()
    eta = tuple(eta) if eta is not None else (0,) * ex.g
    k = [kk for e, kk in table if e == eta][0]
    ring, w = ex.branch_ring()
    cs = []
    n = ex.n
    for t, c in enumerate(ex.c):
        c2 = ring.embed(c, ex.ring.depth) if ring is not ex.ring else c
        j = sum(a * b for a, b in zip(k, ex.gam_s[t])) % n
        cs.append(ring.mul(c2, ring.power(w, j)))
    return ring, cs


@dataclass
class Residual:
    passed: bool
    lowest: Optional[FracVector]
    count: int


def verify_root(f: Poly, main: str, root: RootSeries, bound=None) -> Residual:
    """Substitute the truncated root into f; pass iff no term of x-degree <= bound survives."""
    bound = _s_bound(root.bound if bound is None else bound, root.n)
    ring = root.ring
    ar = _Arith(ring)
    n = root.n
    i = f.index(main)
    base_idx = [k for k in range(len(f.gens)) if k != i]
    z = {e: c for e, c in root.coeffs.items() if _norm(e) <= bound}
    top = f.degree(main)
    d = len(base_idx)
    powers = [{(0,) * d: ar.one}]
    for _ in range(top):
        powers.append(_series_mul(ar, powers[-1], z, bound))
    total: Dict = {}
    for e, c in f.terms.items():
        shift = tuple(n * e[k] for k in base_idx)
        if _norm(shift) > bound:
            continue
        for E, v in powers[e[i]].items():
            F = _add_e(E, shift)
            if _norm(F) > bound:
                continue
            t = ar.scale(c, v)
            total[F] = ar.add(total[F], t) if F in total else t
    bad = [E for E, v in total.items() if not ar.is_zero(v)]
    if not bad:
        return Residual(True, None, 0)
    low = min(bad, key=lambda E: (_norm(E), E))
    return Residual(False, tuple(Fraction(a, n) for a in low), len(bad))


def product_of_branches(f: Poly, main: str, branches: Sequence[RootSeries], bound) -> bool:
    """Does prod (z - zeta) agree with f on every coefficient of x-degree <= bound?"""
    ring = branches[0].ring
    ar = _Arith(ring)
    n = branches[0].n
    bound = _s_bound(bound, n)
    i = f.index(main)
    base_idx = [k for k in range(len(f.gens)) if k != i]
    d = len(base_idx)
    zero_e = (0,) * d
    poly = [{zero_e: ar.one}]  # coefficients of z^0, z^1, ...
    for br in branches:
        negz = {e: ar.neg(c) for e, c in br.coeffs.items() if _norm(e) <= bound}
        new = [dict() for _ in range(len(poly) + 1)]
        for k, coeff in enumerate(poly):
            for e, c in coeff.items():
                new[k + 1][e] = ar.add(new[k + 1][e], c) if e in new[k + 1] else c
            for e, c in _series_mul(ar, coeff, negz, bound).items():
                new[k][e] = ar.add(new[k][e], c) if e in new[k] else c
        poly = [{e: c for e, c in m.items() if not ar.is_zero(c)} for m in new]
    target = [dict() for _ in range(len(poly))]
    for e, c in f.terms.items():
        if e[i] >= len(target):
            return False
        E = tuple(n * e[k] for k in base_idx)
        if _norm(E) <= bound:
            target[e[i]][E] = ar.const(c)
    for k in range(len(poly)):
        keys = set(poly[k]) | set(target[k])
        for E in keys:
            if _norm(E) > bound:
                continue
            a = poly[k].get(E, ar.zero)
            b = target[k].get(E, ar.zero)
            if not ar.is_zero(ar.sub(a, b)):
                return False
    return True


def root_difference_valuation(z1: RootSeries, z2: RootSeries) -> FracVector:
    """Unique product-minimal exponent (in x units) of z1 - z2."""
    if z1.ring is not z2.ring and z1.ring.levels != z2.ring.levels:
        raise ValueError("series live in different rings")
    ar = _Arith(z1.ring)
    bound = min(z1.s_bound, z2.s_bound)
    support = []
    for e in set(z1.coeffs) | set(z2.coeffs):
        if _norm(e) > bound:
            continue
        diff = ar.sub(z1.coeffs.get(e, ar.zero), z2.coeffs.get(e, ar.zero))
        if not ar.is_zero(diff):
            support.append(e)
    if not support:
        raise NoDominantTerm("the two series agree up to the bound")
    minimal = [e for e in support if not any(o != e and _leq(o, e) for o in support)]
    if len(minimal) != 1:
        raise NoDominantTerm(f"{len(minimal)} product-minimal exponents in the difference")
    return tuple(Fraction(a, z1.n) for a in minimal[0])
