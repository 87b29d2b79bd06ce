"""Resultants and discriminants with respect to the main variable.

The coefficient ring is Z[x] represented by dicts ``exponent -> int``.  The
resultant is computed with the subresultant pseudo-remainder sequence, which
yields the determinant of the Sylvester matrix; a plain fraction-free
(Bareiss) determinant of that matrix is provided for cross-checks.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from math import lcm
from typing import Dict, List, Sequence, Tuple

from .algebra import Exponent, Poly
from .errors import NotWeierstrass

IntPoly = Dict[Exponent, int]


def _add(a: IntPoly, b: IntPoly, sign: int = 1) -> IntPoly:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mul(a: IntPoly, b: IntPoly) -> IntPoly:
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    out: Dict[Exponent, int] = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _pow(a: IntPoly, k: int, nvars: int) -> IntPoly:
    result: IntPoly = {(0,) * nvars: 1}
    base = a
    while k:
        if k & 1:
            result = _mul(result, base)
        k >>= 1
        if k:
            base = _mul(base, base)
    return result


def _neg_key(e: Exponent):
    return tuple(-x for x in e)


def _exact_div(a: IntPoly, b: IntPoly) -> IntPoly:
    """Exact quotient a / b in Z[x]; raises ArithmeticError if not exact."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return {}
    lb = max(b)
    cb = b[lb]
    others = [(e, c) for e, c in b.items() if e != lb]
    rem = dict(a)
    heap = [_neg_key(e) for e in rem]
    heapq.heapify(heap)
    quo: IntPoly = {}
    while heap:
        e = tuple(-x for x in heapq.heappop(heap))
        c = rem.pop(e, 0)
        if not c:
            continue
        m = tuple(x - y for x, y in zip(e, lb))
        if any(x < 0 for x in m):
            raise ArithmeticError("inexact polynomial division")
        q, r = divmod(c, cb)
        if r:
            raise ArithmeticError("inexact coefficient division")
        quo[m] = q
        for eo, co in others:
            k = tuple(x + y for x, y in zip(m, eo))
            if k in rem:
                rem[k] -= q * co
            else:
                rem[k] = -q * co
                heapq.heappush(heap, _neg_key(k))
    return quo


UPoly = List[IntPoly]  # coefficient list in the main variable, index = degree


def _deg(p: UPoly) -> int:
    d = len(p) - 1
    while d >= 0 and not p[d]:
        d -= 1
    return d


def _prem(a: UPoly, b: UPoly, nvars: int) -> UPoly:
    """Pseudo-remainder of a by b: lc(b)^(da-db+1) a = q b + r."""
    da, db = _deg(a), _deg(b)
    r = [dict(c) for c in a[:da + 1]]
    lb = b[db]
    e = da - db + 1
    while True:
        dr = _deg(r)
        if dr < db:
            break
        lr = r[dr]
        shift = dr - db
        new = [_mul(c, lb) for c in r[:dr]]
        for i in range(db):
            if b[i]:
                new[i + shift] = _add(new[i + shift], _mul(lr, b[i]), -1)
        r = new
        e -= 1
    if e > 0:
        f = _pow(lb, e, nvars)
        r = [_mul(c, f) for c in r]
    return r[: max(_deg(r), 0) + 1] if _deg(r) >= 0 else [{}]


def subresultant(a: UPoly, b: UPoly, nvars: int) -> IntPoly:
    """Resultant of two univariate polynomials over Z[x] (subresultant PRS)."""
    one = {(0,) * nvars: 1}
    da, db = _deg(a), _deg(b)
    if da < 0 or db < 0:
        return {}
    s = 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if da % 2 and db % 2:
            s = -1
    if db == 0:
        return _pow(b[0], da, nvars) if s == 1 else _add({}, _pow(b[0], da, nvars), -1)
    g: IntPoly = one
    h: IntPoly = one
    while True:
        da, db = _deg(a), _deg(b)
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = _prem(a, b, nvars)
        a = b
        div = _mul(g, _pow(h, delta, nvars))
        dr = _deg(r)
        if dr < 0:
            return {}
        b = [_exact_div(c, div) for c in r[: dr + 1]]
        g = a[_deg(a)]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = _exact_div(_pow(g, delta, nvars), _pow(h, delta - 1, nvars))
        if _deg(b) <= 0:
            break
    da = _deg(a)
    lb = b[0]
    if da == 1:
        res = lb
    else:
        res = _exact_div(_pow(lb, da, nvars), _pow(h, da - 1, nvars))
    return res if s == 1 else {e: -c for e, c in res.items()}


def sylvester_matrix(a: UPoly, b: UPoly) -> List[List[IntPoly]]:
    """Sylvester matrix of a (degree m) and b (degree k); rows hold descending coefficients."""
    m, k = _deg(a), _deg(b)
    size = m + k
    rows = []
    for i in range(k):
        row = [{} for _ in range(size)]
        for j in range(m + 1):
            row[i + j] = a[m - j]
        rows.append(row)
    for i in range(m):
        row = [{} for _ in range(size)]
        for j in range(k + 1):
            row[i + j] = b[k - j]
        rows.append(row)
    return rows


def bareiss_determinant(matrix: List[List[IntPoly]], nvars: int) -> IntPoly:
    """Fraction-free Gaussian elimination determinant over Z[x]."""
    m = [list(r) for r in matrix]
    n = len(m)
    if n == 0:
        return {(0,) * nvars: 1}
    sign = 1
    prev: IntPoly = {(0,) * nvars: 1}
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return {}
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _add(_mul(m[i][j], m[k][k]), _mul(m[i][k], m[k][j]), -1)
                m[i][j] = _exact_div(num, prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else {e: -c for e, c in det.items()}


def _main_coefficients(f: Poly, main: str) -> Tuple[UPoly, int, Tuple[str, ...]]:
    """Integer coefficient list of D*f in main over the remaining variables."""
    i = f.index(main)
    rest = f.gens[:i] + f.gens[i + 1:]
    den = 1
    for c in f.terms.values():
        den = lcm(den, c.denominator)
    n = f.degree(main)
    coeffs: UPoly = [dict() for _ in range(n + 1)]
    for e, c in f.terms.items():
        coeffs[e[i]][e[:i] + e[i + 1:]] = int(c * den)
    return coeffs, den, rest


def _from_int(p: IntPoly, gens, scale: Fraction = Fraction(1)) -> Poly:
    return Poly(gens, {e: c * scale for e, c in p.items()})


def discriminant_main(f: Poly, main: str, method: str = "subresultant") -> Poly:
    """Discriminant (-1)^(n(n-1)/2) Res(f, df/dmain) of a monic polynomial in ``main``.

    The result lives over the signature of ``f`` with ``main`` removed.
    """
    n = f.degree(main)
    if n < 1:
        raise NotWeierstrass("discriminant needs degree >= 1 in the main variable")
    if f.coeff(main, n) != 1:
        raise NotWeierstrass("discriminant expects a monic polynomial")
    coeffs, den, rest = _main_coefficients(f, main)
    nv = len(rest)
    if n == 1:
        return Poly.one(rest)
    deriv = [{e: c * k for e, c in coeffs[k].items()} for k in range(1, n + 1)]
    if method == "bareiss":
        res = bareiss_determinant(sylvester_matrix(coeffs, deriv), nv)
    else:
        res = subresultant(coeffs, deriv, nv)
    # Res(D f, D f') = D^(n-1) D^n Res(f, f')
    scale = Fraction(1, den ** (2 * n - 1))
    if (n * (n - 1) // 2) % 2:
        scale = -scale
    return _from_int(res, rest, scale)
