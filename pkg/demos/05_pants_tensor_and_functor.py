"""The open pants as a Hopf-style tensor product, and the monoidal functor.

pants_iso identifies Z(pants_p) with (Z[E]/(E^2))^{(x) p}, carrying the
coproduct Delta(E) = E (x) 1 + 1 (x) E as the left action.  The functor
witnesses send identity cobordisms to regular bimodules and the crossing
cobordism to the Koszul symmetrizer.
"""

from opencob import (PRESET_TENSOR, identity_iso, pants_iso, symmetrizer_iso)
from opencob.statespace import monomial_order
from opencob.superalg import SuperAlgebra

for p in range(4):
    iso = pants_iso(p, PRESET_TENSOR)
    alg = SuperAlgebra(p)
    print(f"pants_{p}: Z = (Z[E]/E^2)^(x){p}, rank {iso.source.dim}")
    for j, mask in enumerate(monomial_order(p)):
        col = iso.matrix.col(j)
        (target, coeff), = col.items()
        src = "^".join(f"e{i+1}" for i in range(p) if mask >> i & 1) or "1"
        dst = alg.monomial_label(target)
        print(f"   eps (x) {src:<10} <-> {'+' if coeff > 0 else '-'}{dst}")
    print()

print("identity cobordisms map to regular bimodules:")
for m in (1, 2, 3):
    iso = identity_iso(m, PRESET_TENSOR)
    print(f"   m = {m}: verified ({', '.join(iso.checks)})")
print()

print("the crossing cobordism maps to the Koszul symmetrizer:")
for m1, m2 in ((1, 1), (1, 2), (2, 2)):
    iso = symmetrizer_iso(m1, m2, PRESET_TENSOR)
    print(f"   ({m1}, {m2}): verified ({', '.join(iso.checks)})")
