"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` lives over an ordered tuple of variable names (its
*signature*).  Terms are stored in a dict mapping integer exponent tuples to
nonzero :class:`fractions.Fraction` coefficients.  Canonical iteration order
is graded lexicographic, highest term first.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import SignatureMismatch, ZeroPolynomial

Exponent = Tuple[int, ...]
FracVector = Tuple[Fraction, ...]


def rational_str(q) -> str:
    """Serialize a rational as ``"p/q"`` or ``"p"`` when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def frac_vector(values: Iterable) -> FracVector:
    return tuple(Fraction(v) for v in values)


def vector_str(v: Sequence) -> list:
    return [rational_str(c) for c in v]


def _grlex_key(e: Exponent):
    return (sum(e), e)


class Poly:
    """Immutable sparse polynomial over ``gens`` with rational coefficients."""

    __slots__ = ("gens", "terms", "_hash")

    def __init__(self, gens: Sequence[str], terms: Optional[Mapping] = None):
        self.gens = tuple(gens)
        clean: Dict[Exponent, Fraction] = {}
        if terms:
            k = len(self.gens)
            for e, c in terms.items():
                e = tuple(int(a) for a in e)
                if len(e) != k or min(e, default=0) < 0:
                    raise SignatureMismatch(f"exponent {e} does not fit signature {self.gens}")
                c = Fraction(c)
                if c:
                    clean[e] = clean.get(e, Fraction(0)) + c
                    if not clean[e]:
                        del clean[e]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, gens: Tuple[str, ...], terms: Dict[Exponent, Fraction]) -> "Poly":
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.gens = gens
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, gens) -> "Poly":
        return cls._raw(tuple(gens), {})

    @classmethod
    def const(cls, gens, c) -> "Poly":
        gens = tuple(gens)
        c = Fraction(c)
        return cls._raw(gens, {(0,) * len(gens): c} if c else {})

    @classmethod
    def one(cls, gens) -> "Poly":
        return cls.const(gens, 1)

    @classmethod
    def var(cls, gens, name: str) -> "Poly":
        gens = tuple(gens)
        if name not in gens:
            raise SignatureMismatch(f"unknown variable {name!r} for signature {gens}")
        e = [0] * len(gens)
        e[gens.index(name)] = 1
        return cls._raw(gens, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, gens, exponent: Sequence[int], coeff=1) -> "Poly":
        return cls(gens, {tuple(exponent): coeff})

    # -- basic queries ------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def index(self, name: str) -> int:
        try:
            return self.gens.index(name)
        except ValueError:
            raise SignatureMismatch(f"unknown variable {name!r} for signature {self.gens}") from None

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda it: _grlex_key(it[0]), reverse=True)

    def degree(self, name: str) -> int:
        i = self.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.gens), Fraction(0))

    def involves(self, name: str) -> bool:
        if name not in self.gens:
            return False
        i = self.gens.index(name)
        return any(e[i] for e in self.terms)

    def coefficients_in(self, name: str) -> Dict[int, "Poly"]:
        """Split by powers of ``name``; each coefficient keeps the signature."""
        i = self.index(name)
        out: Dict[int, Dict[Exponent, Fraction]] = {}
        for e, c in self.terms.items():
            k = e[i]
            out.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: Poly._raw(self.gens, t) for k, t in out.items()}

    def coeff(self, name: str, k: int) -> "Poly":
        i = self.index(name)
        t = {e[:i] + (0,) + e[i + 1:]: c for e, c in self.terms.items() if e[i] == k}
        return Poly._raw(self.gens, t)

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "Poly"):
        if self.gens != other.gens:
            raise SignatureMismatch(f"signatures differ: {self.gens} vs {other.gens}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.gens, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e)
            if s is None:
                t[e] = c
            else:
                s += c
                if s:
                    t[e] = s
                else:
                    del t[e]
        return Poly._raw(self.gens, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.gens, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly.zero(self.gens)
        return Poly._raw(self.gens, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        t: Dict[Exponent, Fraction] = {}
        get = t.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                t[e] = get(e, 0) + ca * cb
        return Poly._raw(self.gens, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly.one(self.gens)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.gens == other.gens and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.const(self.gens, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.gens, frozenset(self.terms.items())))
        return self._hash

    # -- substitution and signature changes ---------------------------
    def with_gens(self, gens: Sequence[str]) -> "Poly":
        """Re-express over another signature; dropped variables must be absent."""
        gens = tuple(gens)
        if gens == self.gens:
            return self
        pos = []
        for i, name in enumerate(self.gens):
            if name in gens:
                pos.append(gens.index(name))
            else:
                if any(e[i] for e in self.terms):
                    raise SignatureMismatch(f"variable {name!r} occurs but is missing from {gens}")
                pos.append(None)
        t = {}
        k = len(gens)
        for e, c in self.terms.items():
            ne = [0] * k
            for a, p in zip(e, pos):
                if p is not None:
                    ne[p] = a
            t[tuple(ne)] = c
        return Poly._raw(gens, t)

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        gens = tuple(mapping.get(g, g) for g in self.gens)
        if len(set(gens)) != len(gens):
            raise SignatureMismatch(f"renaming collides: {gens}")
        return Poly._raw(gens, dict(self.terms))

    def substitute(self, name: str, expr: "Poly") -> "Poly":
        """Replace ``name`` by ``expr`` (same signature) and expand."""
        return self.compose({name: expr})

    def compose(self, mapping: Mapping[str, "Poly"]) -> "Poly":
        """Simultaneous substitution of several variables by polynomials."""
        idx = {}
        for name, expr in mapping.items():
            i = self.index(name)
            if isinstance(expr, (int, Fraction)):
                expr = Poly.const(self.gens, expr)
            self._check(expr)
            idx[i] = expr
        if not idx:
            return self
        # group terms by the substituted exponents to share power products
        groups: Dict[Tuple[int, ...], Dict[Exponent, Fraction]] = {}
        keys = sorted(idx)
        for e, c in self.terms.items():
            sub = tuple(e[i] for i in keys)
            rest = list(e)
            for i in keys:
                rest[i] = 0
            groups.setdefault(sub, {})[tuple(rest)] = c
        powers: Dict[Tuple[int, int], Poly] = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                if k == 0:
                    powers[key] = Poly.one(self.gens)
                elif k == 1:
                    powers[key] = idx[i]
                else:
                    powers[key] = power(i, k // 2) * power(i, k - k // 2)
            return powers[key]

        total = Poly.zero(self.gens)
        for sub, rest in groups.items():
            prod = Poly._raw(self.gens, rest)
            for i, k in zip(keys, sub):
                if k:
                    prod = prod * power(i, k)
            total = total + prod
        return total

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at a point given as a name -> value mapping (any numeric type)."""
        vals = [point[g] if g in point else None for g in self.gens]
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, a in zip(vals, e):
                if a:
                    if v is None:
                        raise SignatureMismatch("missing value for a variable that occurs")
                    term = term * v ** a
            total = total + term
        return total

    def partial(self, name: str) -> "Poly":
        i = self.index(name)
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = c * e[i]
        return Poly._raw(self.gens, t)

    def truncate(self, keep) -> "Poly":
        """Keep only the terms whose exponent satisfies ``keep``."""
        return Poly._raw(self.gens, {e: c for e, c in self.terms.items() if keep(e)})

    # -- printing -----------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (g if a == 1 else f"{g}^{a}") for g, a in zip(self.gens, e) if a
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{rational_str(mag)}*{mono}"
            else:
                body = rational_str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({str(self)!r}, gens={self.gens})"


def dominance_test(p: Poly) -> Optional[Exponent]:
    """Return delta when ``p = x^delta * unit``, i.e. one exponent lies below all others."""
    if p.is_zero():
        raise ZeroPolynomial("dominance test of the zero polynomial")
    exps = list(p.terms)
    low = tuple(min(col) for col in zip(*exps))
    return low if low in p.terms else None


def product_leq(a: Sequence, b: Sequence) -> bool:
    return all(x <= y for x, y in zip(a, b))


def product_compare(v: Sequence, w: Sequence) -> str:
    """Compare in the product order: 'equal', 'less', 'greater' or 'incomparable'."""
    if len(v) != len(w):
        raise SignatureMismatch("vectors of different length")
    le = all(a <= b for a, b in zip(v, w))
    ge = all(a >= b for a, b in zip(v, w))
    if le and ge:
        return "equal"
    if le:
        return "less"
    if ge:
        return "greater"
    return "incomparable"


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a):
    return tuple(c * x for x in a)
