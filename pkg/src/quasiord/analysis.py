"""Derived data of a quasi-ordinary construction.

Characteristic exponents, the overweight deformation family and the
discriminant certificate that cross-checks the polyhedral verdict.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .algebra import Exponent, FracVector, Poly, dominance_test, product_compare, vec_add, vec_scale, vec_sub
from .errors import NotQuasiOrdinaryState
from .kappa import INFINITY, KappaResult, run_construction
from .lattice import lattice_indices
from .resultant import discriminant_main


def gamma_to_lambda(gammas: Sequence[Sequence], indices: Sequence[int]) -> List[FracVector]:
    """lambda_1 = gamma_1, lambda_{i+1} = lambda_i + gamma_{i+1} - n_i gamma_i."""
    gs = [tuple(Fraction(x) for x in g) for g in gammas]
    if not gs:
        return []
    lam = [gs[0]]
    for i in range(1, len(gs)):
        lam.append(vec_add(lam[-1], vec_sub(gs[i], vec_scale(indices[i - 1], gs[i - 1]))))
    return lam


def lambda_to_gamma(lambdas: Sequence[Sequence], indices: Sequence[int]) -> List[FracVector]:
    """Inverse recursion: gamma_{i+1} = n_i gamma_i + lambda_{i+1} - lambda_i."""
    ls = [tuple(Fraction(x) for x in v) for v in lambdas]
    if not ls:
        return []
    gam = [ls[0]]
    for i in range(1, len(ls)):
        gam.append(vec_add(vec_scale(indices[i - 1], gam[-1]), vec_sub(ls[i], ls[i - 1])))
    return gam


def semigroup_generators(result: KappaResult) -> List[FracVector]:
    """The kappa vertices, which generate the semigroup of the branch."""
    return list(result.vertices)


@dataclass
class DeformationFamily:
    gens: tuple
    equations: List[Poly]
    weights: List[FracVector]

    def specialize(self, value) -> List[Poly]:
        T = self.gens[-1]
        return [F.substitute(T, Poly.const(F.gens, value)) for F in self.equations]

    def render(self) -> List[str]:
        return [f"F_{t} = {F}" for t, F in enumerate(self.equations)]


def build_deformation(result: KappaResult) -> DeformationFamily:
    """F_t = T u_{t+1} - u_t^{n_{t+1}} + rho_t M_t - T h_{t+1}, with u_g = 0."""
    if result.terminal != INFINITY:
        raise NotQuasiOrdinaryState("deformation needs a terminal-Infinity construction")
    st = result.state
    d, g = st.tower.d, len(st.vertices)
    base = st.tower.base
    names = st.tower.tower[:g]
    taken = set(base) | set(names)
    T = "T"
    while T in taken:
        T += "_"
    gens = base + tuple(names) + (T,)
    Tp = Poly.var(gens, T)
    eqs = []
    for t in range(g):
        u_t = Poly.var(gens, names[t])
        mono = tuple(st.monomials[t]) + (0,) * (len(gens) - len(st.monomials[t]))
        M = Poly.monomial(gens, mono, st.rhos[t])
        h = st.shifts[t + 1]
        hh = _restrict(h, gens)
        F = -(u_t ** st.indices[t]) + M - Tp * hh
        if t + 1 < g:
            F = F + Tp * Poly.var(gens, names[t + 1])
        eqs.append(F)
    weights = [tuple(v) for v in st.vertices]
    return DeformationFamily(gens, eqs, weights)


def _restrict(h: Poly, gens) -> Poly:
    """Move a shift polynomial (no main variable) into the deformation signature."""
    keep = [g for g in h.gens if g in gens]
    return h.with_gens(tuple(keep)).with_gens(gens)


def deformation_weights_ok(family: DeformationFamily, result: KappaResult) -> bool:
    """Check W(u_t^n) = W(rho M) < W(each T-term) for every equation."""
    st = result.state
    d = st.tower.d
    g = len(st.vertices)
    Ti = len(family.gens) - 1
    for t, F in enumerate(family.equations):
        lead = vec_scale(st.indices[t], st.vertices[t])
        for e, c in F.terms.items():
            w = tuple(Fraction(a) for a in e[:d])
            for j in range(g):
                if e[d + j]:
                    w = vec_add(w, vec_scale(e[d + j], st.vertices[j]))
            if e[Ti]:
                if product_compare(w, lead) != "greater":
                    return False
            elif w != lead:
                return False
    return True


@dataclass
class Certificate:
    verdict: bool
    delta: Optional[Exponent]
    kappa_terminal: str
    agreement: bool
    discriminant: Poly
    raw_delta: Optional[Exponent]


def qo_certificate(f: Poly, main: str, result: Optional[KappaResult] = None, base=None,
                   base_budget: int = 16) -> Certificate:
    """Run the construction and the discriminant oracle; report both verdicts.

    The oracle is evaluated on f in the coordinates the construction ended
    in (after any base substitutions); ``raw_delta`` is the oracle on the
    input as given.
    """
    if result is None:
        result = run_construction(f, main, base_budget, base=base)
    g = result.coordinates_poly
    disc = discriminant_main(g, main)
    delta = dominance_test(disc)
    if result.base_changes:
        raw = dominance_test(discriminant_main(result.input_poly, main))
    else:
        raw = delta
    verdict = delta is not None
    return Certificate(verdict, delta, result.terminal, verdict == (result.terminal == INFINITY), disc, raw)


__all__ = [
    "gamma_to_lambda", "lambda_to_gamma", "lattice_indices", "semigroup_generators",
    "DeformationFamily", "build_deformation", "deformation_weights_ok", "Certificate", "qo_certificate",
]
