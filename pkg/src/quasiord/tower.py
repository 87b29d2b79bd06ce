"""Ring towers k[x][u_0]...[u_{t-1}][main] with relations u_j^{n_{j+1}} = ...

Each relation rewrites a power of ``u_j`` into an expression that is linear
in the next variable of the chain.  Normal forms have every ``u_j`` exponent
strictly below ``n_{j+1}`` (restricted powers).
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Exponent, FracVector, Poly, vec_scale, vec_sub
from .errors import AmbiguousWeight, SignatureMismatch
from .lattice import Lattice


@dataclass(frozen=True)
class TowerRelation:
    """``u_level ** power == rhs``; rhs is linear in the next chain variable."""

    level: int
    power: int
    rhs: Poly


@dataclass(frozen=True)
class RingTower:
    base: Tuple[str, ...]
    tower: Tuple[str, ...] = ()
    main: str = "z"
    weights: Tuple[FracVector, ...] = ()
    indices: Tuple[int, ...] = ()
    relations: Tuple[TowerRelation, ...] = ()
    # (rho_j, M_j) with u_j^{n_j} = rho_j M_j at leading weight; M_j over base + lower u's
    leads: Tuple[Tuple[Fraction, Exponent], ...] = ()
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def gens(self) -> Tuple[str, ...]:
        return self.base + self.tower + (self.main,)

    @property
    def d(self) -> int:
        return len(self.base)

    @property
    def depth(self) -> int:
        return len(self.tower)

    def lattice(self, level: int) -> Lattice:
        """Z^d + Z v(1) + ... + Z v(level)."""
        key = ("lattice", level)
        if key not in self._cache:
            self._cache[key] = Lattice(self.d, self.weights[:level])
        return self._cache[key]

    def with_relations(self, relations: Sequence[TowerRelation]) -> "RingTower":
        return RingTower(self.base, self.tower, self.main, self.weights, self.indices, tuple(relations),
                         self.leads)

    def weight(self, exponent: Sequence[int]) -> FracVector:
        """Weight of a monomial without the main variable (or ignoring it)."""
        d = self.d
        w = [Fraction(a) for a in exponent[:d]]
        for j, b in enumerate(exponent[d:d + self.depth]):
            if b:
                for i in range(d):
                    w[i] += b * self.weights[j][i]
        return tuple(w)

    def normalize(self, p: Poly) -> Poly:
        return normalize_tower(p, self)


def leading_data(tower: RingTower, level: int) -> Optional[Tuple[Fraction, Exponent]]:
    """(rho, M) for one level: from ``leads`` or read off the relation."""
    if level < len(tower.leads):
        rho, M = tower.leads[level]
        return Fraction(rho), tuple(M)
    d = tower.d
    target = vec_scale(tower.indices[level], tower.weights[level])
    for rel in tower.relations:
        if rel.level != level:
            continue
        hits = []
        for e, c in rel.rhs.terms.items():
            sub = [rel.rhs.gens.index(g) for g in tower.base + tower.tower[:level]]
            if any(e[k] for k in range(len(e)) if k not in sub):
                continue
            if tower.weight(tuple(e[k] for k in sub)) == target:
                hits.append((c, tuple(e[k] for k in sub)))
        if len(hits) == 1:
            return hits[0]
    return None


def torus_value(diff: Sequence[int], tower: RingTower) -> Fraction:
    """Leading-order value of the weight-zero monomial x^A u^B (diff = (A, B)).

    Uses u_j^{n_j} = rho_j M_j top-down; raises AmbiguousWeight when diff
    is not a combination of these relations or a needed rho is unknown.
    """
    d, t = tower.d, tower.depth
    D = list(diff) + [0] * (d + t - len(diff))
    val = Fraction(1)
    for j in range(t - 1, -1, -1):
        k, rem = divmod(D[d + j], tower.indices[j])
        if rem:
            raise AmbiguousWeight(f"weight-zero monomial not generated by the relations at level {j}")
        if not k:
            continue
        lead = leading_data(tower, j)
        if lead is None:
            raise AmbiguousWeight(f"no leading binomial known for level {j}")
        rho, M = lead
        val *= rho ** k
        D[d + j] = 0
        for i, m in enumerate(M):
            D[i] += k * m
    if any(D):
        raise AmbiguousWeight("weight-zero monomial is not a product of tower relations")
    return val


def _rel_powers(rel: TowerRelation, cache: Dict, q: int) -> Dict[Exponent, Fraction]:
    key = (rel.level, q)
    if key not in cache:
        cache[key] = (rel.rhs ** q).terms
    return cache[key]


def normalize_tower(p: Poly, tower: RingTower) -> Poly:
    """Rewrite ``p`` into restricted-powers normal form using the tower relations."""
    if p.gens != tower.gens:
        raise SignatureMismatch(f"polynomial over {p.gens}, tower over {tower.gens}")
    rels = {r.level: r for r in tower.relations}
    if not rels or not p.terms:
        return p
    d = tower.d
    # chain weights: rewriting never increases (key, -digit sum)
    k = len(tower.gens)
    delta = [0] * k
    scale = 1
    for j in range(tower.depth):
        delta[d + j] = scale
        if j in rels:
            scale *= rels[j].power
        else:
            break
    else:
        delta[k - 1] = scale
    if tower.depth and (tower.depth - 1) not in rels:
        delta[k - 1] = 0
    slots = [(d + j, rels[j]) for j in sorted(rels)]

    def key(e):
        return (-sum(a * w for a, w in zip(e, delta)), -sum(e[d:d + tower.depth]))

    acc: Dict[Exponent, Fraction] = dict(p.terms)
    heap = [(key(e), e) for e in acc]
    heapq.heapify(heap)
    out: Dict[Exponent, Fraction] = {}
    cache: Dict = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = acc.pop(e, None)
        if not c:
            continue
        for pos, rel in slots:
            if e[pos] >= rel.power:
                q, r = divmod(e[pos], rel.power)
                stem = list(e)
                stem[pos] = r
                for re, rc in _rel_powers(rel, cache, q).items():
                    ne = tuple([a + b for a, b in zip(stem, re)])
                    prev = acc.get(ne)
                    if prev is None:
                        acc[ne] = c * rc
                        heapq.heappush(heap, (key(ne), ne))
                    else:
                        acc[ne] = prev + c * rc
                break
        else:
            out[e] = c
    return Poly._raw(p.gens, {e: c for e, c in out.items() if c})


def is_restricted(p: Poly, tower: RingTower) -> bool:
    d = tower.d
    for e in p.terms:
        for j, n in enumerate(tower.indices):
            if j < tower.depth and e[d + j] >= n:
                return False
    return True


def monomial_of_weight(weight: Sequence, tower: RingTower) -> Optional[Exponent]:
    """Unique restricted monomial x^A u^B (no main variable) with W(A, B) = weight.

    Digits B_j are found from the top level down: B_j is the unique residue
    in [0, n_{j+1}) with weight - B_j v(j+1) in the lattice of the lower
    levels.  Returns None if no such monomial has nonnegative integral A.
    """
    lam = tuple(Fraction(x) for x in weight)
    d, t = tower.d, tower.depth
    if len(lam) != d:
        raise SignatureMismatch("weight vector has the wrong length")
    digits = [0] * t
    for j in range(t - 1, -1, -1):
        g = tower.weights[j]
        n = tower.indices[j]
        lower = tower.lattice(j)
        hits = [b for b in range(n) if vec_sub(lam, vec_scale(b, g)) in lower]
        if len(hits) > 1:
            raise AmbiguousWeight(
                f"weight {tuple(map(str, lam))} has {len(hits)} digit choices at level {j}"
            )
        if not hits:
            return None
        digits[j] = hits[0]
        lam = vec_sub(lam, vec_scale(hits[0], g))
    if any(x.denominator != 1 or x < 0 for x in lam):
        return None
    return tuple(int(x) for x in lam) + tuple(digits)


def weight_vector(exponent: Sequence[int], d: int, weights: Sequence[FracVector]) -> FracVector:
    w = [Fraction(a) for a in exponent[:d]]
    for j, b in enumerate(exponent[d:d + len(weights)]):
        if b:
            for i in range(d):
                w[i] += b * weights[j][i]
    return tuple(w)
