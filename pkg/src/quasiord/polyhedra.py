"""Weighted associated polyhedra and their vertices.

For a monic f in the main variable of degree n and a weight map W, the
associated polyhedron is the convex hull of the points W(a)/(n-b), taken over
the terms x^a main^b with b < n, plus the nonnegative orthant.  Everything is
exact: vertex tests are rational linear programs solved by a small simplex.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .algebra import FracVector, Poly, product_compare, product_leq
from .errors import EmptyInput, NotAVertex, NotWeierstrass, SignatureMismatch, ZeroWeight


@dataclass(frozen=True)
class WeightMap:
    """Rational c x m matrix given by one column per non-main variable."""

    columns: Tuple[FracVector, ...]

    @classmethod
    def identity(cls, d: int) -> "WeightMap":
        cols = tuple(tuple(Fraction(int(i == j)) for i in range(d)) for j in range(d))
        return cls(cols)

    @classmethod
    def from_columns(cls, columns) -> "WeightMap":
        cols = tuple(tuple(Fraction(x) for x in c) for c in columns)
        if not cols:
            raise ZeroWeight("a weight map needs at least one column")
        c = len(cols[0])
        if any(len(col) != c for col in cols):
            raise SignatureMismatch("weight columns of different lengths")
        if any(not any(col) for col in cols):
            raise ZeroWeight("weight columns must be nonzero")
        return cls(cols)

    @property
    def codim(self) -> int:
        return len(self.columns[0]) if self.columns else 0

    def __len__(self):
        return len(self.columns)

    def extend(self, v: Sequence) -> "WeightMap":
        return extend_weight(self, v)

    def __call__(self, exponent: Sequence[int]) -> FracVector:
        return weight_of(self, exponent)


def weight_of(W: WeightMap, exponent: Sequence[int]) -> FracVector:
    """Exact product W * exponent; the exponent covers the non-main variables."""
    if len(exponent) != len(W.columns):
        raise SignatureMismatch(f"exponent of length {len(exponent)} for {len(W.columns)} columns")
    out = [Fraction(0)] * W.codim
    for a, col in zip(exponent, W.columns):
        if a:
            for i, w in enumerate(col):
                if w:
                    out[i] += a * w
    return tuple(out)


def extend_weight(W: WeightMap, v: Sequence) -> WeightMap:
    v = tuple(Fraction(x) for x in v)
    if not any(v) or any(x < 0 for x in v):
        raise ZeroWeight("appended weight must be nonzero and nonnegative")
    if len(v) != W.codim:
        raise SignatureMismatch("appended weight has the wrong length")
    return WeightMap(W.columns + (v,))


def weierstrass_validate(f: Poly, main: str) -> int:
    """Return the degree n when f is monic in ``main`` with f(0) = 0."""
    if f.is_zero():
        raise NotWeierstrass("zero polynomial")
    n = f.degree(main)
    if n < 1:
        raise NotWeierstrass(f"{main} does not occur")
    lead = f.coeff(main, n)
    if lead != 1:
        raise NotWeierstrass(f"not monic in {main}: leading coefficient {lead}")
    if f.constant_term():
        raise NotWeierstrass("nonzero constant term")
    return n


# -- exact linear feasibility -------------------------------------------

def _feasible(A: List[List[Fraction]], b: List[Fraction]) -> bool:
    """Is there x >= 0 with A x = b?  Phase-one simplex with Bland's rule."""
    m = len(A)
    k = len(A[0]) if A else 0
    T = []
    for i in range(m):
        sgn = -1 if b[i] < 0 else 1
        row = [sgn * a for a in A[i]] + [Fraction(int(j == i)) for j in range(m)] + [sgn * b[i]]
        T.append(row)
    width = k + m + 1
    basis = [k + i for i in range(m)]
    obj = [Fraction(0)] * width
    for i in range(m):
        for j in range(k):
            obj[j] -= T[i][j]
        obj[-1] -= T[i][-1]
    while True:
        enter = next((j for j in range(k + m) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded direction cannot happen in phase one
            break
        r = best[1]
        piv = T[r][enter]
        T[r] = [x / piv for x in T[r]]
        for i in range(m):
            if i != r and T[i][enter]:
                fac = T[i][enter]
                T[i] = [x - fac * y for x, y in zip(T[i], T[r])]
        fac = obj[enter]
        obj = [x - fac * y for x, y in zip(obj, T[r])]
        basis[r] = enter
    return obj[-1] == 0


def in_hull_plus_orthant(p: Sequence, qs: Sequence[Sequence]) -> bool:
    """Exact test of p in conv(qs) + R_{>=0}^c."""
    if not qs:
        return False
    if any(product_leq(q, p) for q in qs):
        return True
    c = len(p)
    k = len(qs)
    # variables: lambda_1..lambda_k, slack_1..slack_c
    A = []
    b = []
    for j in range(c):
        A.append([Fraction(q[j]) for q in qs] + [Fraction(int(i == j)) for i in range(c)])
        b.append(Fraction(p[j]))
    A.append([Fraction(1)] * k + [Fraction(0)] * c)
    b.append(Fraction(1))
    return _feasible(A, b)


def vertices(points) -> List[FracVector]:
    """Vertices of conv(points) + orthant, in lexicographic order."""
    pts = sorted(set(tuple(Fraction(x) for x in p) for p in points))
    if not pts:
        raise EmptyInput("vertex enumeration of an empty point set")
    survivors = [p for p in pts if not any(q != p and product_leq(q, p) for q in pts)]
    out = []
    for p in survivors:
        others = [q for q in survivors if q != p]
        if not in_hull_plus_orthant(p, others):
            out.append(p)
    return out


@dataclass(frozen=True)
class CharPolyhedron:
    points: Tuple[FracVector, ...]
    vertices: Tuple[FracVector, ...]

    @property
    def empty(self) -> bool:
        return not self.points

    def contains(self, p: Sequence) -> bool:
        return in_hull_plus_orthant(p, self.vertices)

    def within(self, other: "CharPolyhedron") -> bool:
        """Is self a subset of other?"""
        if self.empty:
            return True
        if other.empty:
            return False
        return all(other.contains(v) for v in self.vertices)


def polyhedron_points(f: Poly, W: WeightMap, main: str, n: int | None = None):
    """Yield (point, exponent) for each term below the leading power."""
    i = f.index(main)
    if n is None:
        n = f.degree(main)
    for e, c in f.terms.items():
        b = e[i]
        if b < n:
            rest = e[:i] + e[i + 1:]
            yield tuple(x / (n - b) for x in weight_of(W, rest)), e


def associated_polyhedron(f: Poly, W: WeightMap, main: str) -> CharPolyhedron:
    n = weierstrass_validate(f, main)
    pts = [p for p, _ in polyhedron_points(f, W, main, n)]
    if not pts:
        return CharPolyhedron((), ())
    pts.sort()
    return CharPolyhedron(tuple(pts), tuple(vertices(pts)))


def initial_form(f: Poly, W: WeightMap, v: Sequence, main: str, check: bool = True) -> Poly:
    """main^n plus the terms whose point is exactly v."""
    v = tuple(Fraction(x) for x in v)
    n = weierstrass_validate(f, main)
    if check:
        poly = associated_polyhedron(f, W, main)
        if v not in poly.vertices:
            raise NotAVertex(f"{tuple(map(str, v))} is not a vertex")
    i = f.index(main)
    terms = {}
    for p, e in polyhedron_points(f, W, main, n):
        if p == v:
            terms[e] = f.terms[e]
    lead = [0] * len(f.gens)
    lead[i] = n
    terms[tuple(lead)] = Fraction(1)
    return Poly(f.gens, terms)


def lex_order(vs):
    return sorted(vs)


__all__ = [
    "WeightMap", "weight_of", "extend_weight", "weierstrass_validate", "vertices",
    "in_hull_plus_orthant", "CharPolyhedron", "associated_polyhedron", "initial_form",
    "product_compare",
]
