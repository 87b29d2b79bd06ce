"""Compare the polyhedral verdict with the discriminant on a random corpus.

Quasi-ordinary instances come from the approximate-root recursion; the
others are mutations of them that stay irreducible.  Each row shows the
kappa terminal and whether the discriminant is a monomial times a unit.
"""
import sys
from collections import Counter

from quasiord.corpus import generate_corpus, run_corpus

count = int(sys.argv[1]) if len(sys.argv) > 1 else 50
seed = int(sys.argv[2]) if len(sys.argv) > 2 else 7
instances = generate_corpus(count, seed)
rows = run_corpus(instances)
for inst, row in zip(instances, rows):
    print(f"{row.name:<9} {row.family:<13} n={row.degree} d={len(inst.base)}  {row.terminal:<10} oracle={row.oracle}")
print("\nfamilies:", dict(Counter(i.family for i in instances)))
print(f"agreement: {sum(r.agreement for r in rows)}/{len(rows)}")
