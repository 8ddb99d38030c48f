"""Finite semifree non-positive commutative DG-algebras and DG-modules.

A :class:`DGAlgebra` is ``B[g_1..g_m]`` over a presented base ring ``B`` with
generators in negative degrees: odd ones exterior, even ones polynomial.  An
element is a dict ``{generator exponent tuple: base term dict}``.  Products
are graded-commutative and the differential extends by
``d(ab) = d(a) b + (-1)^|a| a d(b)``.

A :class:`DGModule` is a finite free graded module with basis ``b_j`` and
``d(b_j) = sum_i D[i, j] b_i``; the action rule is the same Leibniz rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
import threading
from typing import Mapping, Sequence

from .complexes import CohomologyTable, FreeComplex, PresentedRing, ValidationReport, zero_matrix
from .field import Field
from .linalg import rref
from .poly import ParseError, Poly, evaluate, format_poly, p_add, p_mul, p_neg, p_scale, parse_expression

AlgElem = dict  # {gen exponent tuple: base term dict}


class WindowRequired(ValueError):
    """An infinite-rank algebra was asked for a whole-algebra computation."""


class DGAlgebra:
    """``base[generators]`` with a differential on the generators.

    ``generators`` is a sequence of ``(name, degree, differential)`` where the
    differential is an element (or a literal string) of degree ``degree + 1``
    involving base variables and earlier generators only.
    """

    def __init__(self, base: PresentedRing, generators: Sequence[tuple[str, int, object]] = ()):
        self.base = base
        self.F: Field = base.field
        self.names = tuple(g[0] for g in generators)
        self.degrees = tuple(int(g[1]) for g in generators)
        if len(set(self.names)) != len(self.names) or set(self.names) & set(base.variables):
            raise ValueError("generator names must be distinct from each other and from base variables")
        self.ngens = len(self.names)
        self.odd = tuple(d % 2 == 1 for d in self.degrees)
        self._index = {n: i for i, n in enumerate(self.names)}
        self._zero_exp = base.poly.zero_exp()
        self._dmono: dict = {}
        self._lock = threading.Lock()
        diffs = []
        self._parse_errors = []
        for i, g in enumerate(generators):
            raw = g[2] if len(g) > 2 else 0
            if isinstance(raw, dict):
                diffs.append(self.reduce(raw))
            else:
                try:
                    diffs.append(self.parse(str(raw), upto=i))
                except ParseError as exc:
                    self._parse_errors.append((self.names[i], str(exc)))
                    diffs.append({})
        self.gen_differentials = tuple(diffs)

    def __repr__(self):
        gens = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"DGAlgebra({self.base!r}; {gens})"

    # -------------------------------------------------- shape

    @property
    def finite_rank(self) -> bool:
        return all(self.odd)

    def mono_degree(self, m: tuple) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def unit_mono(self) -> tuple:
        return (0,) * self.ngens

    def gen_mono(self, i: int) -> tuple:
        return tuple(1 if k == i else 0 for k in range(self.ngens))

    def monomials(self, lo: int | None = None, hi: int = 0) -> list[tuple]:
        """Generator monomials with degree in ``[lo, hi]``, canonically ordered.

        ``lo`` may be omitted only for finite-rank algebras.
        """
        if lo is None and not self.finite_rank:
            raise WindowRequired("infinite-rank algebra: a lower degree bound is required")
        out = []

        def rec(i, cur, deg):
            if i == self.ngens:
                if deg <= hi:
                    out.append(tuple(cur))
                return
            d = self.degrees[i]
            cap = 1 if self.odd[i] else None
            e = 0
            while True:
                if lo is not None and deg + e * d < lo:
                    break
                cur.append(e)
                rec(i + 1, cur, deg + e * d)
                cur.pop()
                e += 1
                if cap is not None and e > cap:
                    break
        rec(0, [], 0)
        out.sort(key=self.mono_sort_key)
        return out

    def mono_sort_key(self, m: tuple):
        flat = tuple(i for i, e in enumerate(m) for _ in range(e))
        return (-self.mono_degree(m), len(flat), flat)

    def mono_name(self, m: tuple) -> str:
        parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(self.names, m) if e]
        return "*".join(parts) if parts else "1"

    # -------------------------------------------------- arithmetic

    def mono_mul(self, a: tuple, b: tuple):
        """``(sign, a*b)`` for monomials, or None when an odd square appears."""
        sign = 1
        odd = self.odd
        for i in range(self.ngens):
            if odd[i] and a[i] and b[i]:
                return None
        # moving each odd factor of b left past the larger-index odd factors of a
        count = 0
        later_a = 0
        for i in range(self.ngens - 1, -1, -1):
            if odd[i]:
                if b[i]:
                    count += later_a
                if a[i]:
                    later_a += 1
        if count % 2:
            sign = -1
        return sign, tuple(x + y for x, y in zip(a, b))

    def add(self, a: AlgElem, b: AlgElem) -> AlgElem:
        F = self.F
        out = dict(a)
        for m, t in b.items():
            if m in out:
                s = p_add(F, out[m], t)
                if s:
                    out[m] = s
                else:
                    del out[m]
            elif t:
                out[m] = t
        return out

    def neg(self, a: AlgElem) -> AlgElem:
        return {m: p_neg(self.F, t) for m, t in a.items()}

    def scale(self, a: AlgElem, c) -> AlgElem:
        return {m: s for m, t in a.items() if (s := p_scale(self.F, t, c))}

    def sub(self, a: AlgElem, b: AlgElem) -> AlgElem:
        return self.add(a, self.neg(b))

    def mul(self, a: AlgElem, b: AlgElem) -> AlgElem:
        F = self.F
        acc: dict = {}
        for ma, ta in a.items():
            for mb, tb in b.items():
                r = self.mono_mul(ma, mb)
                if r is None:
                    continue
                sign, m = r
                t = p_mul(F, ta, tb)
                if sign < 0:
                    t = p_neg(F, t)
                acc[m] = p_add(F, acc[m], t) if m in acc else t
        return self.reduce(acc)

    def reduce(self, a: AlgElem) -> AlgElem:
        out = {}
        for m, t in a.items():
            t = self.base.reduce_terms(t) if t else t
            if t:
                out[m] = t
        return out

    def const(self, c) -> AlgElem:
        c = self.F(c)
        return {self.unit_mono(): {self._zero_exp: c}} if c else {}

    def base_element(self, p: Poly | dict) -> AlgElem:
        t = p.terms if isinstance(p, Poly) else p
        t = self.base.reduce_terms(t)
        return {self.unit_mono(): t} if t else {}

    def gen(self, name: str) -> AlgElem:
        return {self.gen_mono(self._index[name]): {self._zero_exp: self.F(1)}}

    def monomial(self, m: tuple) -> AlgElem:
        return {m: {self._zero_exp: self.F(1)}}

    def degree(self, a: AlgElem) -> int | None:
        """Degree of a homogeneous element; None for zero, ValueError if inhomogeneous."""
        degs = {self.mono_degree(m) for m in a}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous element {self.to_str(a)}")
        return degs.pop()

    def is_homogeneous(self, a: AlgElem) -> bool:
        return len({self.mono_degree(m) for m in a}) <= 1

    def d_mono(self, m: tuple) -> AlgElem:
        with self._lock:
            hit = self._dmono.get(m)
        if hit is not None:
            return hit
        if not any(m):
            out = {}
        else:
            i = next(k for k, e in enumerate(m) if e)
            rest = tuple(e - 1 if k == i else e for k, e in enumerate(m))
            g = self.monomial(self.gen_mono(i))
            first = self.mul(self.gen_differentials[i], self.monomial(rest))
            second = self.mul(g, self.d_mono(rest))
            if self.odd[i]:
                second = self.neg(second)
            out = self.add(first, second)
        with self._lock:
            self._dmono[m] = out
        return out

    def d(self, a: AlgElem) -> AlgElem:
        acc: AlgElem = {}
        for m, t in a.items():
            dm = self.d_mono(m)
            if dm:
                acc = self.add(acc, self.mul(self.base_element(t), dm))
        return acc

    def sign(self, a: AlgElem) -> int:
        deg = self.degree(a)
        return -1 if deg is not None and deg % 2 else 1

    def homogeneous_parts(self, a: AlgElem) -> dict[int, AlgElem]:
        parts: dict = {}
        for m, t in a.items():
            parts.setdefault(self.mono_degree(m), {})[m] = t
        return parts

    # -------------------------------------------------- text

    def parse(self, text: str, upto: int | None = None) -> AlgElem:
        return evaluate(parse_expression(text), _AlgEvaluator(self, upto))

    def to_str(self, a: AlgElem) -> str:
        if not a:
            return "0"
        pieces = []
        for m in sorted(a, key=self.mono_sort_key):
            coeff = format_poly(a[m], self.base.variables, self.F, self.base.poly.order)
            if not any(m):
                pieces.append(coeff if len(a[m]) == 1 else f"({coeff})")
            elif coeff == "1":
                pieces.append(self.mono_name(m))
            elif coeff == "-1":
                pieces.append("-" + self.mono_name(m))
            else:
                c = coeff if len(a[m]) == 1 and "+" not in coeff[1:] and " - " not in coeff else f"({coeff})"
                pieces.append(f"{c}*{self.mono_name(m)}")
        s = " + ".join(pieces)
        return s.replace("+ -", "- ")

    # -------------------------------------------------- derived data

    def validate(self) -> ValidationReport:
        return validate_dg(self)

    @cached_property
    def _h0(self) -> PresentedRing:
        J = []
        for i, deg in enumerate(self.degrees):
            if deg == -1:
                t = self.gen_differentials[i].get(self.unit_mono())
                if t:
                    J.append(Poly(self.base.poly, t))
        return self.base.quotient(J) if J else self.base

    def h0(self) -> PresentedRing:
        return self._h0

    def unit_module(self) -> "DGModule":
        return free_module(self)


class _AlgEvaluator:
    def __init__(self, A: DGAlgebra, upto: int | None):
        self.A = A
        self.upto = upto

    def num(self, q):
        return self.A.const(q)

    def var(self, name, col):
        A = self.A
        if name in A.base.poly._index:
            return A.base_element(A.base.poly.gen(name))
        if name in A._index:
            i = A._index[name]
            if self.upto is not None and i >= self.upto:
                raise ParseError(f"differential may only use earlier generators, got {name!r}", col)
            return A.gen(name)
        raise ParseError(f"unknown symbol {name!r}", col)

    def add(self, a, b):
        return self.A.add(a, b)

    def sub(self, a, b):
        return self.A.sub(a, b)

    def neg(self, a):
        return self.A.neg(a)

    def mul(self, a, b):
        return self.A.mul(a, b)

    def pow(self, a, n):
        out = self.A.const(1)
        for _ in range(n):
            out = self.A.mul(out, a)
        return out


def validate_dg(A: DGAlgebra) -> ValidationReport:
    """Degrees negative, differentials homogeneous of the right degree, ``d^2 = 0``."""
    v = []
    for name, msg in A._parse_errors:
        v.append({"generator": name, "problem": "parse", "detail": msg})
    for i, (name, deg) in enumerate(zip(A.names, A.degrees)):
        if deg >= 0:
            v.append({"generator": name, "problem": "degree must be negative", "degree": deg})
        dg = A.gen_differentials[i]
        if not A.is_homogeneous(dg):
            v.append({"generator": name, "problem": "inhomogeneous differential"})
            continue
        ddeg = A.degree(dg)
        if ddeg is not None and ddeg != deg + 1:
            v.append({"generator": name, "problem": "differential has wrong degree", "expected": deg + 1, "found": ddeg})
        if any(m[k] for m in dg for k in range(i, A.ngens)):
            v.append({"generator": name, "problem": "differential uses a later generator"})
            continue
        dd = A.d(dg)
        if dd:
            v.append({"generator": name, "problem": "d^2 != 0", "d2": A.to_str(dd)})
    return ValidationReport(not v, v)


# ---------------------------------------------------------------- modules


class DGModule:
    """A finite semifree DG-module ``sum_j A b_j``.

    ``differential`` maps ``(i, j)`` to the coefficient of ``b_i`` in
    ``d(b_j)``; an entry has degree ``deg(b_j) + 1 - deg(b_i)``.
    """

    def __init__(self, algebra: DGAlgebra, basis: Sequence[tuple[str, int]], differential: Mapping[tuple[int, int], AlgElem] | None = None):
        self.algebra = algebra
        self.basis = [(str(n), int(d)) for n, d in basis]
        self.names = [n for n, _ in self.basis]
        self.degrees = [d for _, d in self.basis]
        self.rank = len(self.basis)
        D = {}
        for (i, j), a in (differential or {}).items():
            if not (0 <= i < self.rank and 0 <= j < self.rank):
                raise IndexError(f"entry {(i, j)} outside a rank-{self.rank} module")
            a = algebra.reduce(a)
            if a:
                D[(i, j)] = a
        self.D = D
        self._cache: dict = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"DGModule(rank={self.rank}, degrees={self.degrees})"

    def column(self, j: int) -> dict[int, AlgElem]:
        return {i: a for (i, jj), a in self.D.items() if jj == j}

    def validate(self) -> ValidationReport:
        return validate_dgmod(self)

    def underlying_complex(self, window: tuple[int, int] | None = None) -> FreeComplex:
        return underlying_complex(self, window)

    def cohomology(self, window: tuple[int, int] | None = None) -> CohomologyTable:
        return dg_cohomology(self, window)

    def reduce(self) -> FreeComplex:
        return reduce_to_h0(self)

    def to_json(self) -> dict:
        A = self.algebra
        return {
            "basis": [[n, d] for n, d in self.basis],
            "differential": [[self.names[j], self.names[i], A.to_str(a)] for (i, j), a in sorted(self.D.items(), key=lambda kv: (kv[0][1], kv[0][0]))],
        }


def validate_dgmod(M: DGModule) -> ValidationReport:
    """Entry degrees consistent and non-positive, and ``d^2 = 0`` on every basis element."""
    A = M.algebra
    v = []
    for (i, j), a in M.D.items():
        if not A.is_homogeneous(a):
            v.append({"entry": [M.names[i], M.names[j]], "problem": "inhomogeneous entry"})
            continue
        want = M.degrees[j] + 1 - M.degrees[i]
        got = A.degree(a)
        if got != want:
            v.append({"entry": [M.names[i], M.names[j]], "problem": "entry has wrong degree", "expected": want, "found": got})
        if want > 0:
            v.append({"entry": [M.names[i], M.names[j]], "problem": "entry degree must be <= 0"})
    if v:
        return ValidationReport(False, v)
    for j in range(M.rank):
        col = M.column(j)
        acc: dict[int, AlgElem] = {}
        for i, a in col.items():
            da = A.d(a)
            if da:
                acc[i] = A.add(acc.get(i, {}), da)
            s = A.sign(a)
            for k, b in M.column(i).items():
                prod = A.mul(a, b)
                if s < 0:
                    prod = A.neg(prod)
                acc[k] = A.add(acc.get(k, {}), prod)
        for k, c in sorted(acc.items()):
            if c:
                v.append({"basis": M.names[j], "problem": "d^2 != 0", "component": M.names[k], "value": A.to_str(c)})
    return ValidationReport(not v, v)


# ---------------------------------------------------------------- underlying complexes


def _module_basis(M: DGModule, window: tuple[int, int] | None):
    A = M.algebra
    if window is None:
        if not A.finite_rank:
            raise WindowRequired("infinite-rank algebra: pass a degree window")
        monos = A.monomials()
        pairs = [(m, j) for j in range(M.rank) for m in monos]
    else:
        lo, hi = window
        pairs = []
        for j in range(M.rank):
            for m in A.monomials(lo - M.degrees[j], hi - M.degrees[j]):
                pairs.append((m, j))
    by_deg: dict[int, list] = {}
    for m, j in pairs:
        by_deg.setdefault(A.mono_degree(m) + M.degrees[j], []).append((m, j))
    for n in by_deg:
        by_deg[n].sort(key=lambda mj: (mj[1], A.mono_sort_key(mj[0])))
    return dict(sorted(by_deg.items()))


def underlying_complex(M: DGModule, window: tuple[int, int] | None = None) -> FreeComplex:
    """``M`` as a complex of free base-ring modules with basis ``mu * b_j``.

    With a window ``(lo, hi)`` only degrees ``lo..hi`` are kept, and the
    cohomology is correct on ``lo+1..hi-1``.
    """
    key = ("U", window)
    with M._lock:
        hit = M._cache.get(key)
    if hit is not None:
        return hit
    A = M.algebra
    ring = A.base
    F = A.F
    by_deg = _module_basis(M, window)
    index = {n: {mj: k for k, mj in enumerate(b)} for n, b in by_deg.items()}
    diffs = {}
    cols = {j: M.column(j) for j in range(M.rank)}
    for n, basis in by_deg.items():
        if n + 1 not in by_deg:
            continue
        tgt = index[n + 1]
        mat = [[dict() for _ in basis] for _ in by_deg[n + 1]]
        for c, (m, j) in enumerate(basis):
            contributions = []
            dm = A.d_mono(m)
            for nu, t in dm.items():
                contributions.append(((nu, j), t))
            sign_m = -1 if A.mono_degree(m) % 2 else 1
            mono = A.monomial(m)
            for i, a in cols[j].items():
                prod = A.mul(mono, a)
                for nu, t in prod.items():
                    contributions.append(((nu, i), t if sign_m > 0 else p_neg(F, t)))
            for tj, t in contributions:
                r = tgt.get(tj)
                if r is None:
                    continue
                mat[r][c] = p_add(F, mat[r][c], t)
        diffs[n] = [[Poly(ring.poly, ring.reduce_terms(t)) for t in row] for row in mat]
    ranks = {n: len(b) for n, b in by_deg.items()}
    labels = {n: [f"{A.mono_name(m)}*{M.names[j]}" for m, j in b] for n, b in by_deg.items()}
    out = FreeComplex(ring, ranks, diffs, labels)
    with M._lock:
        M._cache[key] = out
    return out


def dg_cohomology(M: DGModule, window: tuple[int, int] | None = None) -> CohomologyTable:
    """Cohomology of ``M`` as a table of ``H^0 A``-modules, with sup/inf/amp."""
    key = ("H", window)
    with M._lock:
        hit = M._cache.get(key)
    if hit is not None:
        return hit
    C = underlying_complex(M, window)
    H0 = M.algebra.h0()
    if window is None:
        degrees = C.degrees()
        cert = None
    else:
        degrees = range(window[0] + 1, window[1])
        cert = (window[0] + 1, window[1] - 1)
    table = CohomologyTable(H0, {n: C.cohomology(n).over(H0) for n in degrees}, cert)
    with M._lock:
        M._cache[key] = table
    return table


def reduce_to_h0(M: DGModule) -> FreeComplex:
    """``H^0 A tensor_A M``: kill the generators, reduce modulo the ``H^0 A`` ideal."""
    A = M.algebra
    H0 = A.h0()
    unit = A.unit_mono()
    by_deg: dict[int, list[int]] = {}
    for j, d in enumerate(M.degrees):
        by_deg.setdefault(d, []).append(j)
    pos = {j: k for d, js in by_deg.items() for k, j in enumerate(js)}
    diffs = {}
    for n in by_deg:
        if n + 1 not in by_deg:
            continue
        mat = zero_matrix(H0, len(by_deg[n + 1]), len(by_deg[n]))
        for j in by_deg[n]:
            for i, a in M.column(j).items():
                if M.degrees[i] != n + 1:
                    continue
                t = a.get(unit)
                if t:
                    mat[pos[i]][pos[j]] = H0.reduce(Poly(H0.poly, t))
        diffs[n] = mat
    labels = {n: [M.names[j] for j in js] for n, js in by_deg.items()}
    return FreeComplex(H0, {n: len(js) for n, js in by_deg.items()}, diffs, labels)


# ---------------------------------------------------------------- constructions


def free_module(A: DGAlgebra, degree: int = 0, name: str = "1") -> DGModule:
    """``A`` itself (shifted so its generator sits in ``degree``)."""
    return DGModule(A, [(name, degree)])


def koszul_algebra(base: PresentedRing, elements: Sequence[Poly | str], prefix: str = "e") -> DGAlgebra:
    """``K(B; f_1..f_k)``: exterior generators ``e_i`` in degree -1 with ``d e_i = f_i``."""
    unit = (0,) * len(elements)
    gens = []
    for i, f in enumerate(elements):
        t = base(f).terms
        gens.append((f"{prefix}{i + 1}", -1, {unit: t} if t else {}))
    return DGAlgebra(base, gens)


def koszul_module(A: DGAlgebra, elements: Sequence[Poly | str], prefix: str = "k") -> DGModule:
    """``K(A; f_1..f_k)`` for base elements ``f_i``, basis ordered like :func:`koszul_complex`."""
    fs = [A.base_element(A.base(f)) for f in elements]
    k = len(fs)
    basis = []
    index = {}
    for p in range(k + 1):
        for S in combinations(range(k), p):
            index[S] = len(basis)
            basis.append((prefix + "".join(str(s + 1) for s in S) if S else prefix + "0", -p))
    D = {}
    for S, j in index.items():
        for t, s in enumerate(S):
            T = S[:t] + S[t + 1 :]
            if fs[s]:
                D[(index[T], j)] = fs[s] if t % 2 == 0 else A.neg(fs[s])
    return DGModule(A, basis, D)


def shift(M: DGModule, k: int) -> DGModule:
    """``M[k]``: degrees drop by ``k``; entries pick up ``(-1)^k (-1)^(k|a|)``."""
    A = M.algebra
    D = {}
    for (i, j), a in M.D.items():
        s = (-1) ** (k % 2)
        if k % 2 and A.sign(a) < 0:
            s = -s
        D[(i, j)] = a if s > 0 else A.neg(a)
    return DGModule(A, [(n, d - k) for n, d in M.basis], D)


def direct_sum(M: DGModule, N: DGModule) -> DGModule:
    off = M.rank
    D = dict(M.D)
    for (i, j), a in N.D.items():
        D[(i + off, j + off)] = a
    names = [f"{n}" for n in M.names] + [f"{n}'" if n in M.names else n for n in N.names]
    return DGModule(M.algebra, list(zip(names, M.degrees + N.degrees)), D)


def cone_identity(M: DGModule) -> DGModule:
    """``cone(id_M) = M + M[1]`` with ``d(s b_j) = b_j - s(d b_j)``; contractible."""
    A = M.algebra
    r = M.rank
    basis = list(M.basis) + [(f"s{n}", d - 1) for n, d in M.basis]
    D = dict(M.D)
    one = A.const(1)
    for j in range(r):
        D[(j, r + j)] = one
    for (i, j), a in M.D.items():
        D[(r + i, r + j)] = a if A.sign(a) < 0 else A.neg(a)
    return DGModule(A, basis, D)


def cone_of_element(M: DGModule, f: Poly | str) -> DGModule:
    """Cone of multiplication by a base element ``f`` on ``M``."""
    A = M.algebra
    fe = A.base_element(A.base(f))
    r = M.rank
    basis = list(M.basis) + [(f"s{n}", d - 1) for n, d in M.basis]
    D = dict(M.D)
    for j in range(r):
        if fe:
            D[(j, r + j)] = fe
    for (i, j), a in M.D.items():
        D[(r + i, r + j)] = a if A.sign(a) < 0 else A.neg(a)
    return DGModule(A, basis, D)


def dg_tensor(M: DGModule, N: DGModule) -> DGModule:
    """``M tensor_A N`` on the basis ``b_i x c_k`` (ordered by ``i`` then ``k``)."""
    if M.algebra is not N.algebra:
        raise ValueError("dg_tensor needs modules over the same algebra object")
    A = M.algebra
    rN = N.rank
    basis = [(f"{bm}(x){bn}", dm + dn) for bm, dm in M.basis for bn, dn in N.basis]
    D: dict = {}

    def put(key, a):
        D[key] = A.add(D[key], a) if key in D else a

    for (i, j), a in M.D.items():
        for l in range(rN):
            put((i * rN + l, j * rN + l), a)
    for (k, l), e in N.D.items():
        for j in range(M.rank):
            s = -1 if M.degrees[j] % 2 else 1
            if M.degrees[j] % 2 and A.sign(e) < 0:
                s = -s
            put((j * rN + k, j * rN + l), e if s > 0 else A.neg(e))
    return DGModule(A, basis, D)


def change_basis(M: DGModule, P: Sequence[Sequence[int]]) -> DGModule:
    """Rewrite ``M`` in the basis ``b'_j = sum_i P[i][j] b_i`` (``P`` constant, degree-preserving)."""
    A = M.algebra
    F = A.F
    r = M.rank
    for i in range(r):
        for j in range(r):
            if P[i][j] and M.degrees[i] != M.degrees[j]:
                raise ValueError("basis change must preserve degrees")
    aug = [[F(P[i][j]) for j in range(r)] + [F(1 if i == j else 0) for j in range(r)] for i in range(r)]
    R, piv = rref(F, aug)
    if piv[:r] != list(range(r)):
        raise ValueError("basis change matrix is singular")
    Pinv = [row[r:] for row in R]
    # D' = P^{-1} D P
    DP: dict = {}
    for (i, k), a in M.D.items():
        for j in range(r):
            c = F(P[k][j])
            if c:
                key = (i, j)
                term = A.scale(a, c)
                DP[key] = A.add(DP[key], term) if key in DP else term
    out: dict = {}
    for (k, j), a in DP.items():
        for i in range(r):
            c = Pinv[i][k]
            if c:
                key = (i, j)
                term = A.scale(a, c)
                out[key] = A.add(out[key], term) if key in out else term
    return DGModule(A, M.basis, out)


def restrict_to_algebra(X: FreeComplex, A: DGAlgebra) -> "RestrictedModule":
    return RestrictedModule(X, A)


@dataclass
class RestrictedModule:
    """A complex over ``H^0 A`` regarded as a DG-module over ``A`` (generators act by zero)."""

    complex: FreeComplex
    algebra: DGAlgebra

    def __post_init__(self):
        if self.complex.ring != self.algebra.h0():
            raise ValueError("restriction needs a complex over H^0 A")


def restricted_tensor(X: RestrictedModule, Y: DGModule) -> FreeComplex:
    """``X ⊗_A Y`` for ``X`` restricted along ``A -> H^0 A``, built from the action.

    Basis ``x ⊗ b_j``; ``d(x ⊗ b_j) = dx ⊗ b_j + (-1)^|x| sum_i (x . D_ij) ⊗ b_i``
    where ``A`` acts on ``X`` through the unit-monomial part of ``D_ij``.
    """
    A = X.algebra
    if Y.algebra is not A:
        raise ValueError("modules over different DG-algebras")
    C = X.complex
    H0 = C.ring
    unit = A.unit_mono()
    F = H0.field
    basis: dict[int, list] = {}
    for p in C.degrees():
        for k in range(C.rank(p)):
            for j, dj in enumerate(Y.degrees):
                basis.setdefault(p + dj, []).append((p, k, j))
    index = {n: {b: i for i, b in enumerate(bs)} for n, bs in basis.items()}
    diffs = {}
    for n, bs in basis.items():
        if n + 1 not in basis:
            continue
        mat = [[dict() for _ in bs] for _ in basis[n + 1]]
        tgt = index[n + 1]
        for c, (p, k, j) in enumerate(bs):
            if C.rank(p + 1):
                for r, e in enumerate(row[k] for row in C.d(p)):
                    if e.terms:
                        row = tgt[(p + 1, r, j)]
                        mat[row][c] = p_add(F, mat[row][c], e.terms)
            for i, a in Y.column(j).items():
                t = a.get(unit)
                if not t or Y.degrees[i] != Y.degrees[j] + 1:
                    continue
                t = t if p % 2 == 0 else p_neg(F, t)
                row = tgt[(p, k, i)]
                mat[row][c] = p_add(F, mat[row][c], t)
        diffs[n] = [[Poly(H0.poly, H0.reduce_terms(t)) for t in row] for row in mat]
    return FreeComplex(H0, {n: len(bs) for n, bs in basis.items()}, diffs)
