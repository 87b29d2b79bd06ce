"""Rational lattices Z^d + Z g_1 + ... + Z g_k via Hermite normal form."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import List, Sequence

from .errors import DegenerateLattice


def xgcd(a: int, b: int):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hermite_rows(rows: Sequence[Sequence[int]], dim: int) -> List[List[int]]:
    """Row-style Hermite normal form of the integer span of ``rows``.

    Returned rows are in echelon form with positive pivots, and entries above
    each pivot are reduced into [0, pivot).
    """
    remaining = [list(r) for r in rows if any(r)]
    basis: List[List[int]] = []
    pivots: List[int] = []
    for c in range(dim):
        piv = None
        rest = []
        for r in remaining:
            if r[c] == 0:
                rest.append(r)
            elif piv is None:
                piv = r
            else:
                a, b = piv[c], r[c]
                g, s, t = xgcd(a, b)
                new_piv = [s * p + t * q for p, q in zip(piv, r)]
                other = [(b // g) * p - (a // g) * q for p, q in zip(piv, r)]
                piv = new_piv
                if any(other):
                    rest.append(other)
        remaining = rest
        if piv is not None:
            if piv[c] < 0:
                piv = [-x for x in piv]
            basis.append(piv)
            pivots.append(c)
    for i, c in enumerate(pivots):
        p = basis[i][c]
        for j in range(i):
            q = basis[j][c] // p
            if q:
                basis[j] = [x - q * y for x, y in zip(basis[j], basis[i])]
    return basis


class Lattice:
    """The group Z^d + sum Z g_i inside Q^d, stored scaled by a common denominator."""

    def __init__(self, dim: int, generators: Sequence[Sequence] = (), denominator: int = 1):
        self.dim = dim
        self.generators = [tuple(Fraction(x) for x in g) for g in generators]
        den = denominator
        for g in self.generators:
            for x in g:
                den = lcm(den, x.denominator)
        self.den = den
        rows = [[den if i == j else 0 for j in range(dim)] for i in range(dim)]
        for g in self.generators:
            rows.append([int(x * den) for x in g])
        self.basis = hermite_rows(rows, dim)

    def scaled(self, v: Sequence) -> List[int] | None:
        out = []
        for x in v:
            y = Fraction(x) * self.den
            if y.denominator != 1:
                return None
            out.append(int(y))
        return out

    def __contains__(self, v: Sequence) -> bool:
        w = self.scaled(v)
        if w is None:
            return False
        for row in self.basis:
            c = next(i for i, x in enumerate(row) if x)
            q, r = divmod(w[c], row[c])
            if r:
                return False
            if q:
                w = [a - q * b for a, b in zip(w, row)]
        return not any(w)

    def determinant(self) -> int:
        """Covolume of the scaled integer lattice (full rank since it contains Z^d)."""
        d = 1
        for row in self.basis:
            d *= next(x for x in row if x)
        return d

    def extend(self, v: Sequence) -> "Lattice":
        return Lattice(self.dim, self.generators + [tuple(v)], self.den)

    def order_of(self, v: Sequence) -> int:
        """Order of v in the quotient (L + Zv)/L, i.e. the index [L + Zv : L]."""
        bigger = self.extend(v)
        small = Lattice(self.dim, self.generators, bigger.den)
        return small.determinant() // bigger.determinant()


def lattice_membership(v: Sequence, generators: Sequence[Sequence]) -> bool:
    """Decide v in Z^d + sum Z g_i exactly."""
    return tuple(v) in Lattice(len(v), generators)


def lattice_indices(gammas: Sequence[Sequence]) -> List[int]:
    """Indices [M_i : M_{i-1}] of the lattices M_i = Z^d + Z g_1 + ... + Z g_i."""
    if not gammas:
        return []
    d = len(gammas[0])
    den = 1
    for g in gammas:
        for x in g:
            den = lcm(den, Fraction(x).denominator)
    out = []
    prev = Lattice(d, [], den).determinant()
    for i in range(len(gammas)):
        cur = Lattice(d, gammas[: i + 1], den).determinant()
        idx = prev // cur
        if idx == 1:
            raise DegenerateLattice(f"generator {i + 1} already lies in the previous lattice")
        out.append(idx)
        prev = cur
    return out


def vector_gcd(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
