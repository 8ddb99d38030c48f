"""Supports over a Koszul DG-ring and the build verdicts they determine.

Run with ``python3 demos/support_and_builds.py``.
"""

import json

from strata.complexes import PresentedRing
from strata.dg import cone_identity, dg_cohomology, free_module, koszul_algebra, koszul_module, reduce_to_h0
from strata.field import QQ
from strata.verdicts import builds, support_of, tensor_support_check

R = PresentedRing.create(QQ, ["x", "y"])
A = koszul_algebra(R, ["x*y"])  # H^0 A = Q[x,y]/(xy), the union of two lines
print("H^0 A =", A.h0())

Mx = koszul_module(A, ["x"])
My = koszul_module(A, ["y"], prefix="l")
for name, M in [("A", free_module(A)), ("K(A; x)", Mx), ("K(A; y)", My)]:
    print(f"supp {name:8} = V({', '.join(map(str, support_of(M).generators()))})")

# acyclic over A exactly when the reduction is acyclic
Z = cone_identity(Mx)
print("cone(id) acyclic:", dg_cohomology(Z).is_zero(), "| reduction acyclic:", reduce_to_h0(Z).cohomology_table().is_zero())

r = tensor_support_check(Mx, My)
print("supp(K(x) (x) K(y)) = supp K(x) cap supp K(y):", r.holds)

v = builds(Mx, My)
print("K(A; x) builds K(A; y)?", v.answer)
print(json.dumps(v.to_json(), indent=2))
print("certificate rechecks:", v.recheck())
