"""Walk through one quasi-ordinary surface in three base variables.

f = (z^2 - x1 x2 x3)^3 - x1^6 x2^7 x3^3 z has degree 6 and two
characteristic exponents.  We compute kappa, the approximate roots, the
overweight deformation, one Puiseux-type root and the discriminant check.
"""
from quasiord.analysis import build_deformation, gamma_to_lambda, qo_certificate
from quasiord.kappa import run_construction, unfold_to_base
from quasiord.parser import parse_polynomial
from quasiord.roots import RootExpander, verify_root


def show(v):
    return "(" + ",".join(str(x) for x in v) + ")"


gens = ("x1", "x2", "x3", "z")
f = parse_polynomial("(z^2 - x1*x2*x3)^3 - x1^6*x2^7*x3^3*z", gens)
print("f =", f)

r = run_construction(f, "z")
print("\nkappa:", "; ".join(show(v) for v in r.vertices), "; terminal", r.terminal)
print("indices n_i:", r.state.indices)
print("lambda:", "; ".join(show(v) for v in gamma_to_lambda(r.vertices, r.state.indices)))
print("approximate roots:", [str(q) for q in unfold_to_base(r)])

print("\ndeformation family (T = 1 gives back f, T = 0 is binomial):")
for line in build_deformation(r).render():
    print("  ", line)

ex = RootExpander(r)
root = ex.principal()
print(f"\nprincipal root to x-degree {ex.bound}:")
print("  ", root.render(6))
print("   verified:", verify_root(f, "z", root).passed, f"({len(ex.branch_table())} branches in total)")

cert = qo_certificate(f, "z", result=r)
print("\ndiscriminant is x^delta * unit with delta =", cert.delta, "| agrees with kappa:", cert.agreement)
