"""Shipped example algebras and seeded random complexes / DG-modules."""

from __future__ import annotations

import random
from typing import Sequence

from .complexes import FreeComplex, PresentedRing, koszul_complex, tensor_complexes, two_term
from .dg import (
    DGAlgebra,
    DGModule,
    change_basis,
    cone_identity,
    cone_of_element,
    direct_sum,
    dg_tensor,
    free_module,
    koszul_algebra,
    koszul_module,
    shift,
)
from .field import QQ, GF, Field
from .groebner import module_syzygies
from .poly import Poly

F7 = GF(7)

# (label, variables, relations, Koszul elements)
KOSZUL_EXAMPLES = [
    ("K(Q[x]; x)", ["x"], [], ["x"]),
    ("K(Q[x]/(x^2); x)", ["x"], ["x^2"], ["x"]),
    ("K(Q[x,y]; x, y)", ["x", "y"], [], ["x", "y"]),
    ("K(Q[x,y]/(x^2,xy,y^2); x, y)", ["x", "y"], ["x^2", "x*y", "y^2"], ["x", "y"]),
    ("K(Q[x,y]; x*y, x)", ["x", "y"], [], ["x*y", "x"]),
    ("K(Q[x,y]; x^2, x*y)", ["x", "y"], [], ["x^2", "x*y"]),
    ("K(Q[x,y,z]/(x*z); x, y)", ["x", "y", "z"], ["x*z"], ["x", "y"]),
    ("K(Q; 0) = exterior algebra", [], [], ["0"]),
]


def koszul_examples(field: Field = QQ) -> list[tuple[str, DGAlgebra]]:
    out = []
    for label, vs, rels, els in KOSZUL_EXAMPLES:
        base = PresentedRing.create(field, vs, rels)
        if field is not QQ:
            label = label.replace("Q", f"F{field.characteristic}")
        out.append((label, koszul_algebra(base, els)))
    return out


def exterior_algebra(field: Field = QQ) -> DGAlgebra:
    """``Λ(e)`` with ``|e| = -1`` and ``de = 0``."""
    return DGAlgebra(PresentedRing.create(field, []), [("e", -1, "0")])


def polynomial_dga(field: Field = QQ) -> DGAlgebra:
    """``k[t]`` with ``|t| = -2``: infinite rank, H^0 = k."""
    return DGAlgebra(PresentedRing.create(field, []), [("t", -2, "0")])


# ---------------------------------------------------------------- random polynomials


def random_poly(ring: PresentedRing, rng: random.Random, max_degree: int = 2, max_terms: int = 3, coeffs: int = 3) -> Poly:
    P = ring.poly
    F = ring.field
    n = ring.nvars
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_degree)
        e = [0] * n
        for _ in range(d):
            if n:
                e[rng.randrange(n)] += 1
        c = F(rng.choice([i for i in range(-coeffs, coeffs + 1) if i]))
        terms[tuple(e)] = F.add(terms.get(tuple(e), F(0)), c)
    return ring.reduce(Poly(P, {m: c for m, c in terms.items() if c}))


def random_nonconstant(ring: PresentedRing, rng: random.Random, **kw) -> Poly:
    for _ in range(50):
        f = random_poly(ring, rng, **kw)
        if not f.is_constant():
            return f
    return ring.reduce(ring.poly.gens()[0]) if ring.nvars else ring.zero


def random_matrix(ring: PresentedRing, rng: random.Random, rows: int, cols: int, density: float = 0.6, **kw):
    return [[random_poly(ring, rng, **kw) if rng.random() < density else ring.zero for _ in range(cols)] for _ in range(rows)]


# ---------------------------------------------------------------- random complexes


def random_complex(ring: PresentedRing, rng: random.Random, max_rank: int = 2) -> FreeComplex:
    """One of: a two-term complex, a tensor of two-term complexes, a Koszul
    complex on random elements, or a three-term complex ``syz(M) -> M``."""
    kind = rng.randrange(4)
    kw = {"max_degree": 2, "max_terms": 2}
    if kind == 0:
        r, c = rng.randint(1, max_rank), rng.randint(1, max_rank)
        return two_term(ring, random_matrix(ring, rng, r, c, **kw), degree=rng.choice([-1, 0]))
    if kind == 1:
        A = two_term(ring, random_matrix(ring, rng, 1, rng.randint(1, 2), **kw))
        B = two_term(ring, random_matrix(ring, rng, rng.randint(1, 2), 1, **kw))
        return tensor_complexes(A, B)
    if kind == 2:
        k = rng.randint(1, 3)
        return koszul_complex(ring, [random_poly(ring, rng, **kw) for _ in range(k)])
    r, c = rng.randint(1, max_rank), rng.randint(2, 3)
    M = random_matrix(ring, rng, r, c, **kw)
    S = module_syzygies(M, ring.poly, ring.relations)
    if not S or not S[0]:
        return two_term(ring, M)
    return FreeComplex(ring, {-2: len(S[0]), -1: c, 0: r}, {-2: S, -1: M})


def random_four_term(ring: PresentedRing, rng: random.Random) -> FreeComplex:
    """Tensor of three two-term complexes (so four nonzero terms)."""
    kw = {"max_degree": 2, "max_terms": 2}
    C = two_term(ring, [[random_poly(ring, rng, **kw)]])
    for _ in range(2):
        C = tensor_complexes(C, two_term(ring, [[random_poly(ring, rng, **kw)]]))
    return C


# ---------------------------------------------------------------- random DG-modules


def random_dg_module(A: DGAlgebra, rng: random.Random, kind: str | None = None) -> tuple[str, DGModule]:
    """A labelled random DG-module over ``A`` built from Koszul pieces.

    ``kind`` forces one recipe: koszul, unit-koszul, tensor, cone, shift, sum,
    element-cone, basis-change.
    """
    kinds = ["koszul", "unit-koszul", "tensor", "cone", "shift", "sum", "element-cone", "basis-change"]
    kind = kind or rng.choice(kinds)

    base = A.base

    def elements(k):
        return [random_nonconstant(base, rng) if base.nvars else base.zero for _ in range(k)]

    if kind == "koszul":
        els = elements(rng.randint(1, 2))
        return f"K(A; {', '.join(map(str, els))})", koszul_module(A, els)
    if kind == "unit-koszul":
        # a unit in H^0 A gives an acyclic Koszul module
        c = rng.choice([1, 2, -1, 3])
        f = base.reduce(base.poly.const(c) + sum((g * random_poly(base, rng, max_degree=1) for g in _h0_ideal_gens(A)), base.poly.zero))
        return f"K(A; {f})", koszul_module(A, [f])
    if kind == "tensor":
        M = koszul_module(A, elements(1), prefix="k")
        N = koszul_module(A, elements(1), prefix="l")
        return "K(A; f) (x) K(A; g)", dg_tensor(M, N)
    if kind == "cone":
        _, M = random_dg_module(A, rng, "koszul")
        return "cone(id)", cone_identity(M)
    if kind == "shift":
        _, M = random_dg_module(A, rng, "koszul")
        k = rng.choice([-2, -1, 1, 2])
        return f"K(A; f)[{k}]", shift(M, k)
    if kind == "sum":
        _, M = random_dg_module(A, rng, "koszul")
        _, N = random_dg_module(A, rng, rng.choice(["koszul", "cone"]))
        return "K (+) K'", direct_sum(M, N)
    if kind == "element-cone":
        f = elements(1)[0]
        return f"cone({f})", cone_of_element(free_module(A), f)
    if kind == "basis-change":
        _, M = random_dg_module(A, rng, "koszul")
        P = _unitriangular(M, rng)
        return "K(A; f) in a new basis", change_basis(M, P)
    raise ValueError(f"unknown kind {kind!r}")


def _h0_ideal_gens(A: DGAlgebra) -> list[Poly]:
    """Images in the base of the differentials of degree -1 generators."""
    out = []
    unit = A.unit_mono()
    for deg, d in zip(A.degrees, A.gen_differentials):
        if deg == -1 and d.get(unit):
            out.append(Poly(A.base.poly, d[unit]))
    return out


def _unitriangular(M: DGModule, rng: random.Random):
    """Constant unitriangular matrix mixing basis vectors of equal degree."""
    n = M.rank
    P = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if M.degrees[i] == M.degrees[j]:
                P[i][j] = rng.randint(-2, 2)
    return P


def random_modules(A: DGAlgebra, seed: int, count: int) -> list[tuple[str, DGModule]]:
    rng = random.Random(seed)
    return [random_dg_module(A, rng) for _ in range(count)]


def finite_amplitude_algebras(field: Field = QQ) -> list[tuple[str, DGAlgebra]]:
    """Algebras used by the randomized suites (finite rank, so finite amplitude)."""
    return [(label, A) for label, A in koszul_examples(field) if A.base.nvars]


def pair_sample(algebras: Sequence[tuple[str, DGAlgebra]], seed: int, per_algebra: int):
    rng = random.Random(seed)
    out = []
    for label, A in algebras:
        for _ in range(per_algebra):
            out.append((label, A, random_dg_module(A, rng), random_dg_module(A, rng)))
    return out
