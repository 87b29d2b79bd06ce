"""The same hypersurface seen through two projections.

x1^2 + z^3 + z^2 x2 is not quasi-ordinary over (x1, x2): its polyhedron
has two vertices.  Projecting along x1 instead, one base substitution
x2 -> x2 - z brings it to x1^2 + z^2 x2, which is quasi-ordinary.
"""
from quasiord.analysis import qo_certificate
from quasiord.kappa import run_construction
from quasiord.parser import parse_polynomial

gens = ("x1", "x2", "z")
f = parse_polynomial("x1^2 + z^3 + z^2*x2", gens)

r = run_construction(f, "z")
print("over (x1, x2), main z:", r.terminal)
print("  diagnostic:", r.diagnostics[0])
print("  discriminant:", qo_certificate(f, "z", result=r).discriminant)

r2 = run_construction(f, "x1", base=("z", "x2"))
print("\nover (z, x2), main x1:", r2.terminal, "kappa", [tuple(map(str, v)) for v in r2.vertices])
for ch in r2.base_changes:
    print("  base change:", ch.describe())
print("  in the new coordinates:", r2.coordinates_poly)
print("  discriminant:", qo_certificate(f, "x1", result=r2).discriminant)
