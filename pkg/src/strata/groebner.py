"""Buchberger's algorithm for ideals and submodules of free modules.

Everything runs on one engine whose elements are sparse vectors
``{(position, exponents): coefficient}``; an ideal is the rank-one case.
Free-module term orders are position-over-term: a smaller position index is
the larger term, so components listed first are eliminated first.
"""

from __future__ import annotations

import contextlib
import contextvars
import heapq
import threading
from typing import Sequence

from .field import Field
from .poly import GREVLEX, MonomialOrder, Poly, PolyRing

DEFAULT_SPAIR_BUDGET = 200_000

_budget: contextvars.ContextVar[int] = contextvars.ContextVar("spair_budget", default=DEFAULT_SPAIR_BUDGET)


class GroebnerBudgetExceeded(RuntimeError):
    """Raised when a Groebner computation processes more S-pairs than allowed."""

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"S-pair budget of {budget} exceeded")


@contextlib.contextmanager
def spair_budget(n: int):
    """Temporarily set the S-pair budget for Groebner runs in this context."""
    token = _budget.set(n)
    try:
        yield
    finally:
        _budget.reset(token)


def current_budget() -> int:
    return _budget.get()


# ---------------------------------------------------------------- engine


def _term_key(order: MonomialOrder):
    k = order.key
    return lambda t: (-t[0], k(t[1]))


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


class _Basis:
    """A growing list of monic vectors indexed by leading position."""

    def __init__(self, F: Field, key):
        self.F = F
        self.key = key
        self.vecs: list[dict] = []
        self.lts: list[tuple] = []
        self.by_pos: dict[int, list[int]] = {}

    def add(self, v: dict) -> int:
        lt = max(v, key=self.key)
        inv = self.F.inv(v[lt])
        if inv != 1:
            mul = self.F.mul
            v = {t: mul(c, inv) for t, c in v.items()}
        self.vecs.append(v)
        self.lts.append(lt)
        i = len(self.vecs) - 1
        self.by_pos.setdefault(lt[0], []).append(i)
        return i

    def reduce(self, v: dict, skip: int | None = None, full: bool = True) -> dict:
        F = self.F
        sub, mul = F.sub, F.mul
        key = self.key
        p = dict(v)
        r = {}
        vecs, lts, by_pos = self.vecs, self.lts, self.by_pos
        while p:
            t = max(p, key=key)
            c = p[t]
            pos, e = t
            for i in by_pos.get(pos, ()):
                if i == skip:
                    continue
                ge = lts[i][1]
                if _divides(ge, e):
                    q = tuple(b - a for a, b in zip(ge, e))
                    for (gp, gx), gc in vecs[i].items():
                        tt = (gp, tuple(x + y for x, y in zip(gx, q)))
                        old = p.get(tt)
                        val = sub(old, mul(c, gc)) if old is not None else F.neg(mul(c, gc))
                        if val:
                            p[tt] = val
                        else:
                            p.pop(tt, None)
                    break
            else:
                r[t] = c
                del p[t]
                if not full:
                    r.update(p)
                    return r
        return r


def _spoly(F: Field, f: dict, ltf: tuple, g: dict, ltg: tuple) -> dict:
    lcm = tuple(max(a, b) for a, b in zip(ltf[1], ltg[1]))
    qf = tuple(a - b for a, b in zip(lcm, ltf[1]))
    qg = tuple(a - b for a, b in zip(lcm, ltg[1]))
    out: dict = {}
    for (p, e), c in f.items():
        out[(p, tuple(x + y for x, y in zip(e, qf)))] = c
    sub = F.sub
    for (p, e), c in g.items():
        t = (p, tuple(x + y for x, y in zip(e, qg)))
        v = out.get(t)
        v = sub(v, c) if v is not None else F.neg(c)
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _is_unit_vec(v: dict) -> bool:
    return len(v) == 1 and all(not any(e) for (_, e) in v)


def buchberger(
    F: Field,
    vectors: Sequence[dict],
    order: MonomialOrder = GREVLEX,
    budget: int | None = None,
    rank_one: bool = False,
    stop_on_unit: bool = False,
    stats: dict | None = None,
) -> list[dict]:
    """Reduced Groebner basis of the submodule spanned by ``vectors``.

    ``rank_one`` enables the coprime-leading-term criterion, valid only for
    ideals.  With ``stop_on_unit`` the run returns ``[1]`` as soon as a
    constant appears (ideal case).
    """
    budget = current_budget() if budget is None else budget
    key = _term_key(order)
    B = _Basis(F, key)
    pending: set = set()
    heap: list = []
    counter = 0

    def add_pairs(k):
        lt_k = B.lts[k]
        for i in B.by_pos.get(lt_k[0], ()):
            if i == k:
                continue
            lt_i = B.lts[i]
            if rank_one and all(not (a and b) for a, b in zip(lt_i[1], lt_k[1])):
                continue
            lcm = tuple(max(a, b) for a, b in zip(lt_i[1], lt_k[1]))
            pair = (min(i, k), max(i, k))
            pending.add(pair)
            heapq.heappush(heap, ((sum(lcm), key((lt_k[0], lcm))[0], lt_k[0], lcm), pair))

    for v in vectors:
        v = B.reduce(v) if B.vecs else dict(v)
        if not v:
            continue
        if stop_on_unit and _is_unit_vec(v):
            return [{next(iter(v)): F(1)}]
        k = B.add(v)
        add_pairs(k)

    while heap:
        _, pair = heapq.heappop(heap)
        if pair not in pending:
            continue
        pending.discard(pair)
        i, j = pair
        lt_i, lt_j = B.lts[i], B.lts[j]
        lcm = tuple(max(a, b) for a, b in zip(lt_i[1], lt_j[1]))
        skip = False
        for m in B.by_pos.get(lt_i[0], ()):
            if m in (i, j):
                continue
            if _divides(B.lts[m][1], lcm):
                if (min(i, m), max(i, m)) not in pending and (min(j, m), max(j, m)) not in pending:
                    skip = True
                    break
        if skip:
            continue
        counter += 1
        if counter > budget:
            raise GroebnerBudgetExceeded(budget)
        s = _spoly(F, B.vecs[i], lt_i, B.vecs[j], lt_j)
        h = B.reduce(s)
        if h:
            if stop_on_unit and _is_unit_vec(h):
                if stats is not None:
                    stats["spairs"] = counter
                return [{next(iter(h)): F(1)}]
            k = B.add(h)
            add_pairs(k)

    if stats is not None:
        stats["spairs"] = counter
    return _interreduce(F, B, key)


def _interreduce(F: Field, B: _Basis, key) -> list[dict]:
    keep = []
    n = len(B.vecs)
    for i in range(n):
        lt = B.lts[i]
        redundant = False
        for j in range(n):
            if j == i or B.lts[j][0] != lt[0] or not _divides(B.lts[j][1], lt[1]):
                continue
            if B.lts[j] != lt or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(i)
    R = _Basis(F, key)
    for i in keep:
        R.add(B.vecs[i])
    out = []
    for idx in range(len(R.vecs)):
        v = R.vecs[idx]
        lt = R.lts[idx]
        tail = {t: c for t, c in v.items() if t != lt}
        tail = R.reduce(tail, skip=idx) if tail else {}
        tail[lt] = F(1)
        out.append(tail)
    out.sort(key=lambda v: key(max(v, key=key)), reverse=True)
    return out


# ---------------------------------------------------------------- ideals


def _ideal_vecs(polys: Sequence[Poly]) -> list[dict]:
    return [{(0, m): c for m, c in p.terms.items()} for p in polys if p.terms]


def _poly_from_vec(ring: PolyRing, v: dict) -> Poly:
    return Poly(ring, {e: c for (_, e), c in v.items()})


def groebner_basis(gens: Sequence[Poly], order: MonomialOrder | None = None, budget: int | None = None, ring: PolyRing | None = None) -> list[Poly]:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    >>> from strata.poly import polynomial_ring, LEX
    >>> R, (x, y) = polynomial_ring("x, y", order=LEX)
    >>> [str(g) for g in groebner_basis([x*y - 1, y**2 - 1], LEX)]
    ['x - y', 'y^2 - 1']
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            return []
        ring = gens[0].ring
    order = order or ring.order
    vecs = buchberger(ring.field, _ideal_vecs(gens), order, budget, rank_one=True)
    return [_poly_from_vec(ring, v) for v in vecs]


def normal_form(f: Poly, basis: Sequence[Poly], order: MonomialOrder | None = None) -> Poly:
    """Fully reduced remainder of ``f`` modulo a Groebner basis."""
    order = order or f.ring.order
    B = _Basis(f.ring.field, _term_key(order))
    for g in basis:
        if g.terms:
            B.add({(0, m): c for m, c in g.terms.items()})
    if not f.terms:
        return f
    r = B.reduce({(0, m): c for m, c in f.terms.items()})
    return _poly_from_vec(f.ring, r)


class Ideal:
    """An ideal of a polynomial ring with a per-instance Groebner cache."""

    def __init__(self, ring: PolyRing, gens: Sequence[Poly | str] = ()):
        self.ring = ring
        self.gens = tuple(g for g in (ring(g) for g in gens) if g.terms)
        self._gb: dict = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens) or '0'})"

    def groebner(self, order: MonomialOrder | None = None) -> list[Poly]:
        order = order or self.ring.order
        with self._lock:
            gb = self._gb.get(order.name)
        if gb is None:
            gb = groebner_basis(self.gens, order, ring=self.ring)
            with self._lock:
                self._gb.setdefault(order.name, gb)
        return gb

    def normal_form(self, f: Poly) -> Poly:
        return normal_form(self.ring(f), self.groebner())

    def reduce_terms(self, terms: dict) -> dict:
        if not self.gens or not terms:
            return terms
        return normal_form(Poly(self.ring, terms), self.groebner()).terms

    def contains(self, f) -> bool:
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + tuple(other.gens))

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens])

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner() == other.groebner()

    def __hash__(self):
        return hash((self.ring, tuple(frozenset(g.terms.items()) for g in self.groebner())))

    def radical_contains(self, f) -> bool:
        return radical_member(self.ring(f), self)


def rabinowitsch(f: Poly, I: Ideal, budget: int | None = None) -> tuple[bool, int]:
    """Decide ``f in sqrt(I)``; also return the size of the auxiliary basis."""
    ring = I.ring
    f = ring(f)
    if f.is_zero():
        return True, 0
    if I.gens and I.contains(f):
        return True, len(I.groebner())
    n = ring.nvars
    vecs = [{(0, m + (0,)): c for m, c in g.terms.items()} for g in I.groebner()]
    F = ring.field
    aux = {(0, (0,) * (n + 1)): F(1)}
    for m, c in f.terms.items():
        t = (0, m + (1,))
        aux[t] = F.sub(aux.get(t, F(0)), c)
        if not aux[t]:
            del aux[t]
    vecs.append(aux)
    gb = buchberger(F, vecs, ring.order, budget, rank_one=True, stop_on_unit=True)
    unit = len(gb) == 1 and _is_unit_vec(gb[0])
    return unit, len(gb)


def radical_member(f: Poly, I: Ideal, budget: int | None = None) -> bool:
    """``f in sqrt(I)``, by testing ``1 in I + (1 - z*f)`` with a fresh ``z``."""
    return rabinowitsch(f, I, budget)[0]


# ---------------------------------------------------------------- modules


class ColumnSpan:
    """Groebner data for the span of matrix columns over ``ring/relations``.

    The columns ``m_j`` of an ``r x k`` matrix are encoded as ``(m_j, e_j)`` in
    a free module of rank ``r + k`` under position-over-term order, together
    with ``g * e_i`` for ``g`` in the relations and ``i < r``.  One basis then
    answers both lifting (``target = M v``) and syzygy questions.
    """

    def __init__(self, ring: PolyRing, columns: Sequence[Sequence[Poly]], rank: int, relations: Ideal | None = None, order: MonomialOrder | None = None):
        self.ring = ring
        self.rank = rank
        self.ncols = len(columns)
        self.relations = relations if relations is not None and relations.gens else None
        order = order or ring.order
        self.order = order
        vecs = []
        for j, col in enumerate(columns):
            v = {}
            for i, p in enumerate(col):
                for m, c in p.terms.items():
                    v[(i, m)] = c
            v[(rank + j, ring.zero_exp())] = ring.field(1)
            vecs.append(v)
        if self.relations is not None:
            for g in self.relations.groebner():
                for i in range(rank):
                    vecs.append({(i, m): c for m, c in g.terms.items()})
        self.basis = buchberger(ring.field, vecs, order)
        self._B = _Basis(ring.field, _term_key(order))
        for v in self.basis:
            self._B.add(v)

    def _reduce_entry(self, terms: dict) -> dict:
        return self.relations.reduce_terms(terms) if self.relations is not None else terms

    def syzygies(self) -> list[list[Poly]]:
        """Generators (as length-k columns) of ``{v : M v = 0 mod relations}``."""
        key = _term_key(self.order)
        out = []
        seen = set()
        for v in self.basis:
            if max(v, key=key)[0] < self.rank:
                continue
            col = [dict() for _ in range(self.ncols)]
            for (p, e), c in v.items():
                col[p - self.rank][e] = c
            col = [self._reduce_entry(t) for t in col]
            if not any(col):
                continue
            sig = tuple(frozenset(t.items()) for t in col)
            if sig in seen:
                continue
            seen.add(sig)
            out.append([Poly(self.ring, t) for t in col])
        return out

    def lift(self, target: Sequence[Poly]) -> list[Poly] | None:
        """Some ``v`` with ``M v = target`` modulo relations, or None."""
        v = {}
        for i, p in enumerate(target):
            for m, c in p.terms.items():
                v[(i, m)] = c
        if not v:
            return [self.ring.zero for _ in range(self.ncols)]
        r = self._B.reduce(v)
        if any(p < self.rank for (p, _) in r):
            return None
        F = self.ring.field
        col = [dict() for _ in range(self.ncols)]
        for (p, e), c in r.items():
            col[p - self.rank][e] = F.neg(c)
        return [Poly(self.ring, self._reduce_entry(t)) for t in col]

    def contains(self, target: Sequence[Poly]) -> bool:
        return self.lift(target) is not None


def _columns(M: Sequence[Sequence[Poly]]) -> tuple[list[list[Poly]], int]:
    rows = len(M)
    ncols = len(M[0]) if rows else 0
    return [[M[i][j] for i in range(rows)] for j in range(ncols)], rows


def module_syzygies(M: Sequence[Sequence[Poly]], ring: PolyRing, relations: Ideal | None = None, order: MonomialOrder | None = None, ncols: int | None = None) -> list[list[Poly]]:
    """Syzygy matrix of ``M`` (rows x cols); its columns generate ``ker M``.

    ``ncols`` is needed only when ``M`` has no rows.
    """
    cols, r = _columns(M)
    if r == 0:
        cols = [[] for _ in range(ncols or 0)]
    if not cols:
        return []
    syz = ColumnSpan(ring, cols, r, relations, order).syzygies()
    k = len(cols)
    return [[s[i] for s in syz] for i in range(k)]


def module_lift(target: Sequence[Poly], M: Sequence[Sequence[Poly]], ring: PolyRing, relations: Ideal | None = None, order: MonomialOrder | None = None) -> list[Poly] | None:
    """Solve ``M v = target``; returns None when target is not in the image."""
    cols, r = _columns(M)
    if r == 0:
        r = len(target)
    return ColumnSpan(ring, cols, r, relations, order).lift(target)


def matmul(ring: PolyRing, A: Sequence[Sequence[Poly]], B: Sequence[Sequence[Poly]], inner: int | None = None) -> list[list[Poly]]:
    """Matrix product over ``ring`` (shapes given by row lists)."""
    from .poly import p_add, p_mul

    F = ring.field
    n = len(A)
    k = len(B) if inner is None else inner
    m = len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc: dict = {}
            for t in range(k):
                a = A[i][t].terms
                b = B[t][j].terms
                if a and b:
                    acc = p_add(F, acc, p_mul(F, a, b))
            row.append(Poly(ring, acc))
        out.append(row)
    return out


