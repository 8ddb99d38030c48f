"""Brute-force validators, kept independent of the Groebner engine.

Linear algebra goes through sympy's ``DomainMatrix``, ideal membership
through sympy's own Groebner bases, and supports are sampled pointwise.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import sympy
from sympy.polys.domains import GF as SymGF, QQ as SymQQ
from sympy.polys.matrices import DomainMatrix

from .complexes import FreeComplex, PresentedRing, RationalPoint
from .field import Field
from .groebner import Ideal
from .poly import MonomialOrder, Poly, PolyRing

DEFAULT_SEED = 0x5E1F
GRID_RANGE = range(-2, 3)


@dataclass
class PointGrid:
    """Rational points of ``Spec ring``: the box ``{-2..2}^n`` plus seeded random points.

    Over a small prime field all points are listed when there are at most
    ``enumerate_limit`` of them.
    """

    ring: PresentedRing
    seed: int = DEFAULT_SEED
    extra: int = 25
    enumerate_limit: int = 400
    points: list = dc_field(default_factory=list)

    def __post_init__(self):
        if not self.points:
            self.points = _grid_points(self.ring, self.seed, self.extra, self.enumerate_limit)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def _on_variety(gens: Sequence[Poly], coords) -> bool:
    return all(not g.evaluate(coords) for g in gens)


def _grid_points(ring: PresentedRing, seed: int, extra: int, limit: int) -> list[RationalPoint]:
    F = ring.field
    n = ring.nvars
    rels = list(ring.relations.gens)
    seen = set()
    out = []

    def add(coords):
        coords = tuple(F(c) for c in coords)
        if coords in seen or not _on_variety(rels, coords):
            return
        seen.add(coords)
        out.append(RationalPoint(ring, coords))

    if F.characteristic and F.characteristic ** n <= limit:
        for c in itertools.product(range(F.characteristic), repeat=n):
            add(c)
        return out
    for c in itertools.product(GRID_RANGE, repeat=n):
        add(c)
    rng = random.Random(seed)
    tries = 0
    target = len(out) + extra
    while len(out) < target and tries < 50 * extra:
        tries += 1
        if F.characteristic:
            add([rng.randrange(F.characteristic) for _ in range(n)])
        else:
            add([Fraction(rng.randint(-9, 9), rng.choice((1, 1, 2, 3))) for _ in range(n)])
    return out


def _domain(F: Field):
    return SymGF(F.characteristic) if F.characteristic else SymQQ


def _dense_rank(F: Field, rows: list[list], nrows: int, ncols: int) -> int:
    if nrows == 0 or ncols == 0:
        return 0
    K = _domain(F)
    conv = (lambda v: K(int(v))) if F.characteristic else (lambda v: K(Fraction(v).numerator, Fraction(v).denominator))
    M = DomainMatrix([[conv(v) for v in r] for r in rows], (nrows, ncols), K)
    return M.rank()


def dense_cohomology_dims(X: FreeComplex, point: RationalPoint | Sequence) -> dict[int, int]:
    """``dim H^n(X ⊗ k(a))`` by evaluating every differential and taking dense ranks."""
    coords = point.coords if isinstance(point, RationalPoint) else tuple(X.ring.field(c) for c in point)
    F = X.ring.field
    ranks = {}
    for n in X.degrees():
        r_out, r_in = X.rank(n + 1), X.rank(n)
        if r_out and r_in:
            mat = [[p.evaluate(coords) for p in row] for row in X.d(n)]
            ranks[n] = _dense_rank(F, mat, r_out, r_in)
        else:
            ranks[n] = 0
    dims = {}
    for n in X.degrees():
        dims[n] = X.rank(n) - ranks.get(n, 0) - ranks.get(n - 1, 0)
    return dims


def sample_support(X: FreeComplex, grid: PointGrid) -> list[tuple[RationalPoint, bool]]:
    return [(pt, any(dense_cohomology_dims(X, pt).values())) for pt in grid]


def in_zero_set(ideal: Ideal, point: RationalPoint) -> bool:
    return _on_variety(ideal.gens, point.coords)


# ---------------------------------------------------------------- ideals via sympy


def _sympy_gens(ring: PolyRing):
    return sympy.symbols(list(ring.variables)) if ring.nvars else ()


def to_sympy(p: Poly, gens) -> sympy.Expr:
    F = p.ring.field
    expr = sympy.Integer(0)
    for m, c in p.terms.items():
        coeff = sympy.Integer(int(c)) if F.characteristic else sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        term = coeff
        for g, e in zip(gens, m):
            term *= g**e
        expr += term
    return expr


def _sympy_basis(gens: Sequence[Poly], ring: PolyRing, order: str = "grevlex"):
    syms = _sympy_gens(ring)
    opts = {"modulus": ring.field.characteristic} if ring.field.characteristic else {"domain": "QQ"}
    exprs = [to_sympy(g, syms) for g in gens if g.terms]
    if not exprs:
        return None, syms
    return sympy.groebner(exprs, *syms, order=order, **opts), syms


def brute_member(f: Poly, gens: Sequence[Poly]) -> bool:
    """Ideal membership decided by sympy's Groebner basis."""
    if not f.terms:
        return True
    G, syms = _sympy_basis(gens, f.ring)
    if G is None:
        return False
    return G.contains(to_sympy(f, syms))


def brute_radical_member(f: Poly, I: Ideal, K: int = 10, grid: Sequence | None = None):
    """True if ``f^k in I`` for some ``k <= K``; False if ``f`` is nonzero at a
    point of ``V(I)``; otherwise ``"unknown"``."""
    ring = f.ring
    if not f.terms:
        return True
    G, syms = _sympy_basis(list(I.gens), ring)
    if G is not None:
        if G.exprs == [1] or (len(G.exprs) == 1 and G.exprs[0].is_number):
            return True
        fe = to_sympy(f, syms)
        power = sympy.Integer(1)
        for _ in range(K):
            power = sympy.expand(power * fe)
            if G.contains(power):
                return True
    points = grid if grid is not None else _box(ring)
    for coords in points:
        if _on_variety(I.gens, coords) and f.evaluate(coords):
            return False
    return "unknown"


def _box(ring: PolyRing):
    F = ring.field
    if F.characteristic and F.characteristic ** ring.nvars <= 400:
        vals = range(F.characteristic)
    else:
        vals = GRID_RANGE
    return [tuple(F(c) for c in cs) for cs in itertools.product(vals, repeat=ring.nvars)]


# ---------------------------------------------------------------- division


def random_division(f: Poly, basis: Sequence[Poly], order: MonomialOrder | None = None, rng: random.Random | None = None) -> Poly:
    """Multivariate division picking a random applicable divisor at every step.

    Against a Groebner basis the remainder does not depend on the choices.
    """
    ring = f.ring
    F = ring.field
    order = order or ring.order
    rng = rng or random.Random(DEFAULT_SEED)
    lead = []
    for g in basis:
        if g.terms:
            m = max(g.terms, key=order.key)
            lead.append((m, g.terms[m], g.terms))
    p = dict(f.terms)
    rem = {}
    while p:
        m = max(p, key=order.key)
        c = p[m]
        options = [(lm, lc, gt) for lm, lc, gt in lead if all(a >= b for a, b in zip(m, lm))]
        if not options:
            rem[m] = c
            del p[m]
            continue
        lm, lc, gt = rng.choice(options)
        q = F.div(c, lc)
        shift = tuple(a - b for a, b in zip(m, lm))
        for gm, gc in gt.items():
            t = tuple(a + b for a, b in zip(gm, shift))
            v = F.sub(p.get(t, F(0)), F.mul(q, gc))
            if v:
                p[t] = v
            else:
                p.pop(t, None)
    return Poly(ring, rem)
