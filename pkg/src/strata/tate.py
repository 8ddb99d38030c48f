"""Truncated Tate resolutions of ``H^0 A`` over ``A`` and windowed coreduction.

``tate_resolve`` adjoins generators degree by degree (top down) until the
augmentation ``P -> H^0 A`` is a quasi-isomorphism above a depth bound.
``coreduction`` then computes ``H^n Hom_A(P, M)`` on a window, which is
``RHom_A(H^0 A, M)`` there as long as the depth is deep enough.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .complexes import CohomologyTable, FPModule, FreeComplex, RationalPoint
from .dg import DGAlgebra, DGModule, RestrictedModule, _module_basis, dg_cohomology, free_module, underlying_complex
from .groebner import ColumnSpan, module_syzygies
from .poly import Poly, p_add, p_neg


class CharacteristicError(ValueError):
    """Tate resolutions here need characteristic zero (no divided powers)."""


class InsufficientDepth(ValueError):
    pass


@dataclass
class TateResolution:
    algebra: DGAlgebra
    resolution: DGAlgebra
    adjoined: list = dc_field(default_factory=list)  # (name, degree, differential string)
    depth: int = 0

    @property
    def n_original(self) -> int:
        return self.algebra.ngens

    def augmented_cohomology(self) -> CohomologyTable:
        """Cohomology of the resolution on ``depth+1..0`` (should be ``H^0 A`` in degree 0 only)."""
        return dg_cohomology(free_module(self.resolution), (self.depth, 1))

    def certified(self) -> bool:
        T = self.augmented_cohomology()
        if any(n < 0 for n in T.nonzero_degrees()):
            return False
        H0 = T.modules.get(0, FPModule.zero(T.ring)).pruned()
        # H^0 must still be H^0 A: cyclic with Fitting ideal equal to the relations of H^0 A
        return H0.ngens == 1 and H0.fitting_ideal() == self.algebra.h0().relations

    def to_json(self) -> dict:
        return {
            "adjoined": [[n, d, s] for n, d, s in self.adjoined],
            "certified_above": self.depth,
        }


def _vector_to_element(P: DGAlgebra, basis: Sequence[tuple], col: Sequence[Poly]) -> dict:
    out = {}
    for (m, _), p in zip(basis, col):
        if p.terms:
            out[m] = p.terms
    return P.reduce(out)


def tate_resolve(A: DGAlgebra, depth: int, prefix: str = "y") -> TateResolution:
    """Adjoin variables killing ``H^i`` for ``depth < i < 0``, top degree first."""
    if A.F.characteristic != 0:
        raise CharacteristicError("Tate resolution requires characteristic 0")
    if depth >= 0:
        raise ValueError("depth must be negative")
    gens = [(n, d, dg) for n, d, dg in zip(A.names, A.degrees, A.gen_differentials)]
    P = A
    adjoined = []
    ring = A.base
    count = 0
    for i in range(-1, depth, -1):
        window = (i - 1, i + 1)
        U = free_module(P)
        C = underlying_complex(U, window)
        ri = C.rank(i)
        if ri == 0:
            continue
        by_deg = _module_basis(U, window)
        if C.rank(i + 1):
            K = module_syzygies(C.d(i), ring.poly, ring.relations)
            kcols = [[K[r][c] for r in range(ri)] for c in range(len(K[0]) if K else 0)]
        else:
            kcols = [[ring.one if r == c else ring.zero for r in range(ri)] for c in range(ri)]
        d_in = C.d(i - 1)
        image = [[d_in[r][c] for r in range(ri)] for c in range(C.rank(i - 1))]
        image = [col for col in image if any(p.terms for p in col)]
        chosen = []
        for z in kcols:
            span = ColumnSpan(ring.poly, image + chosen, ri, ring.relations) if image or chosen else None
            if span is not None and span.contains(z):
                continue
            if span is None and not any(p.terms for p in z):
                continue
            chosen.append(z)
        if not chosen:
            continue
        names = set(P.names) | set(ring.variables)
        for z in chosen:
            count += 1
            while f"{prefix}{count}" in names:
                count += 1
            name = f"{prefix}{count}"
            elem = _vector_to_element(P, by_deg[i], z)
            gens.append((name, i - 1, elem))
            adjoined.append((name, i - 1, P.to_str(elem)))
        # rebuild the algebra with padded exponent tuples
        P = _extend(A, gens)
    return TateResolution(A, P, adjoined, depth)


def _extend(A: DGAlgebra, gens) -> DGAlgebra:
    n = len(gens)
    padded = []
    for name, deg, elem in gens:
        elem = {tuple(m) + (0,) * (n - len(m)): t for m, t in elem.items()}
        padded.append((name, deg, elem))
    return DGAlgebra(A.base, padded)


# ---------------------------------------------------------------- coreduction


@dataclass
class CoreductionResult:
    window: tuple[int, int]
    depth: int
    table: CohomologyTable
    dims: dict | None  # vector-space dimensions when H^0 A is the ground field

    def is_zero(self) -> bool:
        return self.table.is_zero()

    def to_json(self) -> dict:
        return {
            "window": list(self.window),
            "certified_range": list(self.window),
            "depth": self.depth,
            "dims": [[n, d] for n, d in sorted(self.dims.items())] if self.dims is not None else None,
            "cohomology": self.table.to_json(),
        }


def _adjoined_basis(T: TateResolution, lo: int):
    """A-basis monomials of the resolution (adjoined variables only) of degree >= lo."""
    P = T.resolution
    k = T.n_original
    monos = [m for m in P.monomials(lo, 0) if not any(m[:k])]
    out = []
    for m in monos:
        dm = P.d_mono(m)
        parts: dict = {}
        for pm, t in dm.items():
            a_mono, nu = pm[:k], (0,) * k + pm[k:]
            parts.setdefault(nu, {})[a_mono] = t
        out.append((m, P.mono_degree(m), parts))
    return out


class _DGTarget:
    def __init__(self, M: DGModule):
        A = M.algebra
        if not A.finite_rank:
            raise ValueError("coreduction of a DG-module needs a finite-rank algebra; restrict a complex instead")
        self.A = A
        self.ring = A.base
        self.C = underlying_complex(M)
        self.by_deg = _module_basis(M, None)
        self.index = {n: {mj: k for k, mj in enumerate(b)} for n, b in self.by_deg.items()}
        self.lo, self.hi = self.C.lo, self.C.hi

    def rank(self, n):
        return self.C.rank(n)

    def d_column(self, n, k):
        return [row[k] for row in self.C.d(n)]

    def act(self, a: dict, n: int, k: int):
        """``a * (basis element k of degree n)`` as ``{(degree, index): terms}``."""
        A = self.A
        m, j = self.by_deg[n][k]
        out = {}
        for nu, t in A.mul(a, A.monomial(m)).items():
            deg = A.mono_degree(nu) + n - A.mono_degree(m)
            idx = self.index.get(deg, {}).get((nu, j))
            if idx is not None:
                out[(deg, idx)] = t
        return out


class _RestrictedTarget:
    def __init__(self, X: FreeComplex, A: DGAlgebra):
        self.A = A
        self.ring = X.ring
        self.C = X
        self.lo, self.hi = X.lo, X.hi

    def rank(self, n):
        return self.C.rank(n)

    def d_column(self, n, k):
        return [row[k] for row in self.C.d(n)]

    def act(self, a: dict, n: int, k: int):
        t = a.get(self.A.unit_mono())
        if not t:
            return {}
        t = self.ring.reduce_terms(t)
        return {(n, k): t} if t else {}


def coreduction(M: DGModule | RestrictedModule | FreeComplex, window: tuple[int, int], resolution: TateResolution | None = None, algebra: DGAlgebra | None = None) -> CoreductionResult:
    """``H^n RHom_A(H^0 A, M)`` for ``n`` in ``window`` via ``Hom_A(P, M)``.

    ``M`` is a finite DG-module over a finite-rank algebra, or a complex over
    ``H^0 A`` regarded as an ``A``-module (pass ``algebra`` or a
    :class:`RestrictedModule`).  The resolution must reach depth
    ``<= inf(M) - window[1] - 1``; one is built when not supplied.
    """
    lo, hi = window
    if lo > hi:
        raise ValueError("empty window")
    if isinstance(M, DGModule):
        A = M.algebra
        target = _DGTarget(M)
        inf = dg_cohomology(M).inf
    else:
        if isinstance(M, RestrictedModule):
            X, A = M.complex, M.algebra
        else:
            if algebra is None:
                raise ValueError("pass the algebra a complex over H^0 A is restricted along")
            X, A = M, algebra
            RestrictedModule(X, A)
        target = _RestrictedTarget(X, A)
        inf = X.cohomology_table().inf
    H0 = A.h0()
    if inf is None:
        modules = {n: FPModule.zero(H0) for n in range(lo, hi + 1)}
        table = CohomologyTable(H0, modules, window)
        return CoreductionResult(window, 0, table, _dims(table))
    need = min(inf - hi - 1, -1)
    if resolution is None:
        resolution = tate_resolve(A, need)
    elif resolution.algebra is not A:
        raise ValueError("resolution belongs to a different algebra")
    if resolution.depth > need:
        raise InsufficientDepth(f"resolution certified above {resolution.depth}, window needs depth <= {need}")
    hom = _hom_complex(resolution, target, lo - 1, hi + 1)
    modules = {n: hom.cohomology(n).over(H0) for n in range(lo, hi + 1)}
    table = CohomologyTable(H0, modules, window)
    return CoreductionResult(window, resolution.depth, table, _dims(table))


def _dims(table: CohomologyTable):
    ring = table.ring
    if not all(ring.reduce(g).is_constant() for g in ring.poly.gens()):
        return None
    coords = [ring.reduce(g).constant_term() for g in ring.poly.gens()]
    pt = RationalPoint(ring, coords)
    return {n: m.fiber_rank(pt) for n, m in table.modules.items()}


def _hom_complex(T: TateResolution, target, nlo: int, nhi: int) -> FreeComplex:
    """``Hom_A(P, M)`` in degrees ``nlo..nhi`` over the target's ring."""
    ring = target.ring
    F = ring.field
    A = T.algebra
    mus = _adjoined_basis(T, target.lo - nhi)
    basis: dict[int, list] = {}
    for n in range(nlo, nhi + 1):
        b = []
        for mi, (_, dmu, _) in enumerate(mus):
            for k in range(target.rank(n + dmu)):
                b.append((mi, k))
        if b:
            basis[n] = b
    index = {n: {x: i for i, x in enumerate(b)} for n, b in basis.items()}
    # reverse incidence: for each nu, the mus whose differential involves nu
    mono_pos = {m: i for i, (m, _, _) in enumerate(mus)}
    incoming: dict[int, list] = {}
    for mi, (_, _, parts) in enumerate(mus):
        for nu, a in parts.items():
            ni = mono_pos.get(nu)
            if ni is not None:
                incoming.setdefault(ni, []).append((mi, a))
    diffs = {}
    for n, b in basis.items():
        if n + 1 not in basis:
            continue
        tgt = index[n + 1]
        mat = [[dict() for _ in b] for _ in basis[n + 1]]
        for c, (mi, k) in enumerate(b):
            dmu = mus[mi][1]
            src_deg = n + dmu
            # d_M(f(mu))
            if target.rank(src_deg + 1):
                for r, p in enumerate(target.d_column(src_deg, k)):
                    if p.terms:
                        row = tgt.get((mi, r))
                        if row is not None:
                            mat[row][c] = p_add(F, mat[row][c], p.terms)
            # -(-1)^n sum_mu' (-1)^(n|a|) a f(nu) with nu = mu
            for mj, a in incoming.get(mi, ()):
                for adeg, apart in A.homogeneous_parts(a).items():
                    sign = -1 if n % 2 else 1
                    if (n * adeg) % 2:
                        sign = -sign
                    sign = -sign
                    for (deg, idx), t in target.act(apart, src_deg, k).items():
                        row = tgt.get((mj, idx))
                        if row is None:
                            continue
                        mat[row][c] = p_add(F, mat[row][c], t if sign > 0 else p_neg(F, t))
        diffs[n] = [[Poly(ring.poly, ring.reduce_terms(t)) for t in row] for row in mat]
    return FreeComplex(ring, {n: len(b) for n, b in basis.items()}, diffs)
