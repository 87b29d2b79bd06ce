"""Labelled test instances and the oracle-equivalence harness.

Quasi-ordinary instances are built from the approximate-root recursion

    q_0 = z,   q_{t+1} = q_t^{N_t} - c_t x^a q_0^{b_0} ... q_{t-1}^{b_{t-1}},

with exponents sampled so that each new weight gamma_{t+1} strictly exceeds
N_t gamma_t and has order exactly N_{t+1} modulo the lattice of the previous
ones.  An optional tail of x^a z^b terms of strictly higher weight is added.

Mutated candidates come from two mutations: an extra term whose point is
incomparable with the first vertex, and a last exponent that breaks the
strict growth of the weights.  Most of them are not quasi-ordinary, but a
base change can sometimes absorb the mutation, so they carry no expected
label.  A candidate is kept only if it is certified irreducible: restricted
to a monomial curve x_i = t^{k_i} its Newton polygon is a single edge from
(0, n) to (A, 0) with gcd(A, n) = 1.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebra import Poly, product_compare, vec_add, vec_scale, vec_sub
from .lattice import Lattice

INDEX_SHAPES = [(2,), (3,), (4,), (5,), (6,), (7,), (8,), (2, 2), (2, 3), (3, 2), (2, 4), (4, 2), (2, 2, 2)]
_COEFFS = [Fraction(1), Fraction(-1), Fraction(2), Fraction(-3), Fraction(1, 2), Fraction(3)]


@dataclass
class Instance:
    name: str
    family: str  # "recursion", "incomparable" or "growth"
    base: Tuple[str, ...]
    main: str
    poly: Poly
    expected: Optional[bool]
    gammas: List[tuple] = field(default_factory=list)
    indices: List[int] = field(default_factory=list)
    restriction: Optional[Tuple[int, ...]] = None

    @property
    def degree(self) -> int:
        return self.poly.degree(self.main)


def _names(d: int) -> Tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(d))


def _strictly_greater(a, b) -> bool:
    return product_compare(a, b) == "greater"


def _sample_weights(rng: random.Random, d: int, shape: Sequence[int], spread: int = 2):
    """Sample (gamma_t, a_t, b_t) satisfying strict growth and exact lattice orders."""
    gammas, data = [], []
    lat = Lattice(d)
    for t, N in enumerate(shape):
        for _ in range(400):
            b = [rng.randrange(shape[j]) for j in range(t)]
            low = vec_sub(vec_scale(N * shape[t - 1], gammas[t - 1]) if t else (Fraction(0),) * d,
                          _combo(b, gammas, d))
            a = tuple(max(0, math.floor(x) + 1 if t else 0) + rng.randint(0, spread) for x in low)
            if not any(a):
                continue
            g = vec_scale(Fraction(1, N), vec_add(a, _combo(b, gammas, d)))
            if t and not _strictly_greater(g, vec_scale(shape[t - 1], gammas[t - 1])):
                continue
            if lat.order_of(g) != N:
                continue
            gammas.append(g)
            data.append((a, tuple(b)))
            lat = lat.extend(g)
            break
        else:
            return None
    return gammas, data


def _combo(b, gammas, d):
    acc = (Fraction(0),) * d
    for bj, gj in zip(b, gammas):
        acc = vec_add(acc, vec_scale(bj, gj))
    return acc


def _build(base, main, shape, data, coeffs) -> List[Poly]:
    gens = base + (main,)
    q = [Poly.var(gens, main)]
    d = len(base)
    for t, N in enumerate(shape):
        a, b = data[t]
        m = Poly.monomial(gens, tuple(a) + (0,), coeffs[t])
        for j, bj in enumerate(b):
            if bj:
                m = m * q[j] ** bj
        q.append(q[t] ** N - m)
    return q


def _tail(rng, base, main, gammas, shape, count):
    """Terms x^a z^b (b < N_0) of weight strictly above N_g gamma_g."""
    gens = base + (main,)
    d = len(base)
    top = vec_scale(shape[-1], gammas[-1])
    out = Poly.zero(gens)
    for _ in range(count):
        bz = rng.randrange(shape[0])
        need = vec_sub(top, vec_scale(bz, gammas[0]))
        a = [max(0, math.ceil(x)) + rng.randint(0, 1) for x in need]
        w = vec_add(tuple(Fraction(x) for x in a), vec_scale(bz, gammas[0]))
        if not _strictly_greater(w, top):
            a[rng.randrange(d)] += 1
        out = out + Poly.monomial(gens, tuple(a) + (bz,), rng.choice(_COEFFS))
    return out


def restriction_certificate(f: Poly, main: str, max_k: int = 6) -> Optional[Tuple[int, ...]]:
    """A weight vector k proving f irreducible, or None.

    With x_i = t^{k_i} the restricted curve is irreducible when its Newton
    polygon is the single edge (0, n)-(A, 0) with gcd(A, n) = 1; a
    factorization of f would restrict to one of the curve.
    """
    base = [g for g in f.gens if g != main]
    if not base:
        return None
    idx = [f.index(g) for g in base]
    zi = f.index(main)
    n = f.degree(main)
    from itertools import product as iproduct
    ks = sorted(iproduct(range(1, max_k + 1), repeat=len(base)), key=lambda k: (sum(k), k))
    for k in ks:
        terms = {}
        for e, c in f.terms.items():
            key = (sum(ki * e[i] for ki, i in zip(k, idx)), e[zi])
            terms[key] = terms.get(key, 0) + c
        terms = {key: c for key, c in terms.items() if c != 0}
        if terms.get((0, n)) != 1:
            continue
        orders = [i for (i, j) in terms if j == 0]
        if not orders:
            continue
        A = min(orders)
        if A == 0 or math.gcd(A, n) != 1:
            continue
        if all(Fraction(i, A) + Fraction(j, n) >= 1 for (i, j) in terms):
            return k
    return None


def _qo_instance(rng, idx, d, shape):
    base, main = _names(d), "z"
    got = _sample_weights(rng, d, shape)
    if got is None:
        return None
    gammas, data = got
    coeffs = [rng.choice(_COEFFS) for _ in shape]
    q = _build(base, main, shape, data, coeffs)
    f = q[-1]
    if rng.random() < 0.5:
        f = f + _tail(rng, base, main, gammas, shape, rng.randint(1, 2))
    return Instance(f"qo-{idx:03d}", "recursion", base, main, f, True, gammas, list(shape))


def _incomparable_instance(rng, idx, d, shape):
    if d < 2:
        return None
    base, main = _names(d), "z"
    got = _sample_weights(rng, d, shape)
    if got is None:
        return None
    gammas, data = got
    q = _build(base, main, shape, data, [rng.choice(_COEFFS) for _ in shape])
    f = q[-1]
    n = f.degree(main)
    g0 = gammas[0]
    for _ in range(100):
        # lower one coordinate below the first vertex and raise another
        i, j = rng.sample(range(d), 2)
        a = [max(0, math.floor(n * x)) + rng.randint(0, 1) for x in g0]
        a[i] = rng.randint(0, max(0, math.ceil(n * g0[i]) - 1))
        a[j] = math.floor(n * g0[j]) + rng.randint(1, 3)
        p = tuple(Fraction(x, n) for x in a)
        if product_compare(p, g0) != "incomparable":
            continue
        cand = f + Poly.monomial(f.gens, tuple(a) + (0,), rng.choice(_COEFFS))
        k = restriction_certificate(cand, main)
        if k is not None:
            return Instance(f"inc-{idx:03d}", "incomparable", base, main, cand, None, gammas, list(shape), k)
    return None


def _growth_instance(rng, idx, d, shape):
    """Last exponent chosen so the final weight does not exceed N gamma_prev."""
    if len(shape) < 2:
        return None
    base, main = _names(d), "z"
    got = _sample_weights(rng, d, shape[:-1])
    if got is None:
        return None
    gammas, data = got
    N = shape[-1]
    prev = vec_scale(shape[-2], gammas[-1])
    lat = Lattice(d)
    for g in gammas:
        lat = lat.extend(g)
    for _ in range(200):
        b = ()
        a = tuple(rng.randint(0, max(1, math.ceil(N * x))) for x in prev)
        if not any(a):
            continue
        g = vec_scale(Fraction(1, N), a)
        if _strictly_greater(g, prev) or lat.order_of(g) != N:
            continue
        q = _build(base, main, shape, data + [(a, b)], [rng.choice(_COEFFS) for _ in shape])
        f = q[-1]
        k = restriction_certificate(f, main)
        if k is not None:
            return Instance(f"grw-{idx:03d}", "growth", base, main, f, None, gammas + [g], list(shape), k)
    return None


def generate_corpus(count: int = 60, seed: int = 7, max_degree: int = 8, max_vars: int = 3) -> List[Instance]:
    """Roughly 60% recursion instances, the rest split between the mutations."""
    rng = random.Random(seed)
    shapes = [s for s in INDEX_SHAPES if math.prod(s) <= max_degree]
    out: List[Instance] = []
    idx = 0
    while len(out) < count:
        slot = len(out) % 5
        d = rng.randint(1 if slot < 3 else 2, max_vars)
        shape = rng.choice(shapes)
        if slot < 3:
            inst = _qo_instance(rng, idx, d, shape)
        elif slot == 3:
            inst = _incomparable_instance(rng, idx, d, shape)
        else:
            multi = [s for s in shapes if len(s) >= 2]
            inst = _growth_instance(rng, idx, d, rng.choice(multi))
        idx += 1
        if inst is not None:
            out.append(inst)
    return out


def recursion_instances(count: int, seed: int = 11, max_degree: int = 8, max_vars: int = 3) -> List[Instance]:
    """Only quasi-ordinary instances from the approximate-root recursion."""
    rng = random.Random(seed)
    shapes = [s for s in INDEX_SHAPES if math.prod(s) <= max_degree]
    out: List[Instance] = []
    idx = 0
    while len(out) < count:
        inst = _qo_instance(rng, idx, rng.randint(1, max_vars), rng.choice(shapes))
        idx += 1
        if inst is not None:
            out.append(inst)
    return out


@dataclass
class CorpusRow:
    name: str
    family: str
    degree: int
    terminal: str
    oracle: bool
    agreement: bool
    expected: Optional[bool]
    seconds: float
    error: Optional[str] = None


def run_corpus(instances: Sequence[Instance], base_budget: int = 16) -> List[CorpusRow]:
    from .analysis import qo_certificate
    rows = []
    for inst in instances:
        t0 = time.perf_counter()
        try:
            cert = qo_certificate(inst.poly, inst.main, base=inst.base, base_budget=base_budget)
            rows.append(CorpusRow(inst.name, inst.family, inst.degree, cert.kappa_terminal, cert.verdict,
                                  cert.agreement, inst.expected, time.perf_counter() - t0))
        except Exception as exc:  # reported, never hidden
            rows.append(CorpusRow(inst.name, inst.family, inst.degree, "error", False, False, inst.expected,
                                  time.perf_counter() - t0, f"{type(exc).__name__}: {exc}"))
    return rows
