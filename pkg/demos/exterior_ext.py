"""Tate resolution of Q over the exterior algebra and the Ext pattern it produces.

Run with ``python3 demos/exterior_ext.py``.
"""

from strata.complexes import FreeComplex
from strata.dg import RestrictedModule
from strata.samples import exterior_algebra, polynomial_dga
from strata.tate import coreduction, tate_resolve

L = exterior_algebra()
T = tate_resolve(L, -8)  # a window ending at 6 needs depth at most -7
print("adjoined to Lambda(e):", T.adjoined, "| certified:", T.certified())

Q = RestrictedModule(FreeComplex(L.h0(), {0: 1}), L)
r = coreduction(Q, (0, 6), resolution=T)
print("dim Ext^n(Q, Q), n = 0..6:", [r.dims[n] for n in range(7)])

P = tate_resolve(polynomial_dga(), -8)
print("adjoined to Q[t]:", P.adjoined)
