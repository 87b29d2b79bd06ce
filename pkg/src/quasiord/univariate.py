"""Dense univariate polynomials over Q (coefficient lists, lowest degree first)."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import List, Sequence, Tuple

UPoly = List[Fraction]


def trim(p: Sequence) -> UPoly:
    p = [Fraction(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def sub(a: Sequence, b: Sequence) -> UPoly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def mul(a: Sequence, b: Sequence) -> UPoly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def divmod_poly(a: Sequence, b: Sequence) -> Tuple[UPoly, UPoly]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lb = b[-1]
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        c = r[-1] / lb
        q[k] = c
        for i, y in enumerate(b):
            r[i + k] -= c * y
        r = trim(r)
    return trim(q), r


def monic(p: Sequence) -> UPoly:
    p = trim(p)
    if not p:
        return p
    lc = p[-1]
    return [c / lc for c in p]


def gcd_poly(a: Sequence, b: Sequence) -> UPoly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def derivative(p: Sequence) -> UPoly:
    return trim([i * c for i, c in enumerate(p)][1:])


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_decomposition(p: Sequence) -> List[Tuple[UPoly, int]]:
    """Yun's algorithm: monic p = prod a_i^i with squarefree pairwise coprime a_i."""
    p = monic(p)
    out = []
    if len(p) <= 1:
        return out
    dp = derivative(p)
    a0 = gcd_poly(p, dp)
    b = divmod_poly(p, a0)[0]
    c = divmod_poly(dp, a0)[0]
    d = sub(c, derivative(b))
    i = 1
    while len(b) > 1:
        a = gcd_poly(b, d)
        if len(a) > 1:
            out.append((a, i))
        b = divmod_poly(b, a)[0]
        c = divmod_poly(d, a)[0]
        d = sub(c, derivative(b))
        i += 1
    return out


def _divisors(n: int, limit: int = 10 ** 12) -> List[int]:
    n = abs(n)
    if n > limit:
        raise OverflowError("coefficient too large for rational root search")
    small, large = [], []
    for k in range(1, isqrt(n) + 1):
        if n % k == 0:
            small.append(k)
            if k != n // k:
                large.append(n // k)
    return small + large[::-1]


def rational_roots(p: Sequence) -> List[Fraction]:
    """All distinct rational roots of p, sorted."""
    p = trim(p)
    if len(p) <= 1:
        return []
    roots = set()
    while p and not p[0]:
        roots.add(Fraction(0))
        p = p[1:]
    if len(p) <= 1:
        return sorted(roots)
    den = 1
    for c in p:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    for q in _divisors(ints[-1]):
        for r in _divisors(ints[0]):
            for s in (1, -1):
                x = Fraction(s * r, q)
                if x not in roots and evaluate(p, x) == 0:
                    roots.add(x)
    return sorted(roots)
