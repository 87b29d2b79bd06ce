"""Towers of simple algebraic extensions Q[a_1]/(m_1)[a_2]/(m_2)...

An element of a tower with k levels is a tuple of length deg(m_k) whose
entries are elements of the tower with k-1 levels; level 0 elements are
Fractions.  Moduli are monic polynomials (lowest degree first) whose
coefficients live one level down.  Moduli are not required to be
irreducible; an inversion that runs into a zero divisor raises
ZeroDivisorInExtension.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from .algebra import rational_str
from .errors import ZeroDivisorInExtension


def cyclotomic(n: int) -> List[Fraction]:
    """The n-th cyclotomic polynomial, lowest degree first."""
    from . import univariate as U
    p = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            p = U.divmod_poly(p, cyclotomic(d))[0]
    return p


class ExtensionTower:
    def __init__(self, levels: Sequence[Tuple[str, tuple]] = ()):
        self.levels = tuple(levels)

    @property
    def depth(self) -> int:
        return len(self.levels)

    def names(self):
        return [name for name, _ in self.levels]

    def adjoin(self, name: str, modulus: Sequence) -> "ExtensionTower":
        """New tower with a root of ``modulus`` (monic, coefficients at the current top)."""
        mod = tuple(modulus)
        if not self.is_one(mod[-1], self.depth):
            raise ValueError("modulus must be monic")
        return ExtensionTower(self.levels + ((name, mod),))

    # -- construction ------------------------------------------------
    def zero(self, level: int | None = None):
        level = self.depth if level is None else level
        if level == 0:
            return Fraction(0)
        deg = len(self.levels[level - 1][1]) - 1
        z = self.zero(level - 1)
        return tuple([z] * deg)

    def const(self, q, level: int | None = None):
        level = self.depth if level is None else level
        if level == 0:
            return Fraction(q)
        deg = len(self.levels[level - 1][1]) - 1
        return (self.const(q, level - 1),) + tuple([self.zero(level - 1)] * (deg - 1))

    def one(self, level: int | None = None):
        return self.const(1, level)

    def gen(self, index: int):
        """The generator adjoined at level index+1, embedded at the top."""
        level = index + 1
        deg = len(self.levels[index][1]) - 1
        lower = self.levels[:index]
        sub = ExtensionTower(lower)
        if deg == 1:
            # a linear modulus pins the generator to a lower element
            elem = (self.neg(self.levels[index][1][0], index),)
        else:
            elem = (sub.zero(), sub.one()) + tuple([sub.zero()] * (deg - 2))
        return self.embed(elem, level)

    def embed(self, a, from_level: int):
        """Embed an element of the tower truncated at ``from_level`` into the top."""
        for level in range(from_level + 1, self.depth + 1):
            deg = len(self.levels[level - 1][1]) - 1
            a = (a,) + tuple([self.zero(level - 1)] * (deg - 1))
        return a

    # -- predicates --------------------------------------------------
    def is_zero(self, a, level: int | None = None) -> bool:
        level = self.depth if level is None else level
        if level == 0:
            return a == 0
        return all(self.is_zero(c, level - 1) for c in a)

    def is_one(self, a, level: int) -> bool:
        if level == 0:
            return a == 1
        return self.is_one(a[0], level - 1) and all(self.is_zero(c, level - 1) for c in a[1:])

    def rational_value(self, a, level: int | None = None):
        """The rational number a represents, or None if it involves generators."""
        level = self.depth if level is None else level
        if level == 0:
            return a
        if any(not self.is_zero(c, level - 1) for c in a[1:]):
            return None
        return self.rational_value(a[0], level - 1)

    # -- arithmetic --------------------------------------------------
    def add(self, a, b, level: int | None = None):
        level = self.depth if level is None else level
        if level == 0:
            return a + b
        return tuple(self.add(x, y, level - 1) for x, y in zip(a, b))

    def neg(self, a, level: int | None = None):
        level = self.depth if level is None else level
        if level == 0:
            return -a
        return tuple(self.neg(x, level - 1) for x in a)

    def sub(self, a, b, level: int | None = None):
        level = self.depth if level is None else level
        if level == 0:
            return a - b
        return tuple(self.sub(x, y, level - 1) for x, y in zip(a, b))

    def scale(self, q, a, level: int | None = None):
        level = self.depth if level is None else level
        if level == 0:
            return q * a
        return tuple(self.scale(q, x, level - 1) for x in a)

    def mul(self, a, b, level: int | None = None):
        level = self.depth if level is None else level
        if level == 0:
            return a * b
        lower = level - 1
        prod = self._poly_mul(a, b, lower)
        return self._reduce(prod, level)

    def _poly_mul(self, a, b, lower):
        out = [None] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if self.is_zero(x, lower):
                continue
            for j, y in enumerate(b):
                if self.is_zero(y, lower):
                    continue
                t = self.mul(x, y, lower)
                out[i + j] = t if out[i + j] is None else self.add(out[i + j], t, lower)
        z = self.zero(lower)
        return [z if c is None else c for c in out]

    def _reduce(self, coeffs: List, level: int):
        lower = level - 1
        mod = self.levels[level - 1][1]
        deg = len(mod) - 1
        coeffs = list(coeffs)
        for k in range(len(coeffs) - 1, deg - 1, -1):
            c = coeffs[k]
            if self.is_zero(c, lower):
                continue
            for i in range(deg):
                if not self.is_zero(mod[i], lower):
                    coeffs[k - deg + i] = self.sub(coeffs[k - deg + i], self.mul(c, mod[i], lower), lower)
            coeffs[k] = self.zero(lower)
        coeffs = coeffs[:deg] + [self.zero(lower)] * max(0, deg - len(coeffs))
        return tuple(coeffs)

    def power(self, a, k: int, level: int | None = None):
        level = self.depth if level is None else level
        result = self.one(level)
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base, level)
            k >>= 1
            if k:
                base = self.mul(base, base, level)
        return result

    def inv(self, a, level: int | None = None):
        """Inverse via the extended Euclidean algorithm, level by level."""
        level = self.depth if level is None else level
        if level == 0:
            if a == 0:
                raise ZeroDivisorInExtension("division by zero", factor=None)
            return 1 / a
        lower = level - 1
        mod = list(self.levels[level - 1][1])
        # extended gcd of (mod, a) over the lower level
        r0, r1 = self._trim(mod, lower), self._trim(list(a), lower)
        if not r1:
            raise ZeroDivisorInExtension("division by zero", factor=None)
        s0, s1 = [], [self.one(lower)]
        while len(r1) > 1:
            q, r = self._divmod(r0, r1, lower)
            r0, r1 = r1, r
            s0, s1 = s1, self._psub(s0, self._pmul(q, s1, lower), lower)
            if not r1:
                raise ZeroDivisorInExtension(
                    "modulus is reducible: common factor with the element",
                    factor=[self.to_str(c, lower) for c in r0],
                )
        c = self.inv(r1[0], lower)
        res = [self.mul(c, x, lower) for x in s1]
        return self._reduce(res, level) if len(res) > len(mod) - 1 else tuple(
            res + [self.zero(lower)] * (len(mod) - 1 - len(res)))

    def _trim(self, p, lower):
        p = list(p)
        while p and self.is_zero(p[-1], lower):
            p.pop()
        return p

    def _pmul(self, a, b, lower):
        if not a or not b:
            return []
        return self._trim(self._poly_mul(a, b, lower), lower)

    def _psub(self, a, b, lower):
        n = max(len(a), len(b))
        z = self.zero(lower)
        out = [self.sub(a[i] if i < len(a) else z, b[i] if i < len(b) else z, lower) for i in range(n)]
        return self._trim(out, lower)

    def _divmod(self, a, b, lower):
        a = list(a)
        lb_inv = self.inv(b[-1], lower)
        q = [self.zero(lower)] * max(len(a) - len(b) + 1, 1)
        while len(a) >= len(b) and a:
            k = len(a) - len(b)
            c = self.mul(a[-1], lb_inv, lower)
            q[k] = c
            for i, y in enumerate(b):
                a[i + k] = self.sub(a[i + k], self.mul(c, y, lower), lower)
            a = self._trim(a, lower)
        return self._trim(q, lower), a

    # -- printing ----------------------------------------------------
    def to_str(self, a, level: int | None = None) -> str:
        level = self.depth if level is None else level
        if level == 0:
            return rational_str(a)
        name = self.levels[level - 1][0]
        parts = []
        for k, c in enumerate(a):
            if self.is_zero(c, level - 1):
                continue
            cs = self.to_str(c, level - 1)
            if k == 0:
                parts.append(cs)
            else:
                mono = name if k == 1 else f"{name}^{k}"
                parts.append(mono if cs == "1" else f"({cs})*{mono}")
        return " + ".join(parts) if parts else "0"
