"""Support ideals and the decisions derived from them.

Every answer is a :class:`Verdict`: yes/no (or "inapplicable") together with
the radical-membership witnesses it was decided from and the name of the
rule that turns support containment into the answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence, Union

from .complexes import FreeComplex, PresentedRing, tensor_complexes
from .dg import DGAlgebra, DGModule, RestrictedModule, dg_cohomology, dg_tensor, free_module, reduce_to_h0
from .groebner import Ideal, rabinowitsch
from .poly import Poly

# rule names used as verdict provenance
SUPPORT_CONTAINMENT = "support-containment-by-radical-membership"
BUILDS = "builds-iff-support-containment (stratification by H0A)"
FINITELY_BUILDS = "compact-objects: finitely-builds-iff-support-containment"
TENSOR_LAW = "tensor-support-law: supp(M (x) N) = supp(M) cap supp(N)"
REDUCTION = "reduction-preserves-support: supp(M) = supp(H0A (x) M)"
THICK = "thick-subcategories-of-compacts <-> specialization-closed-sets"
INFINITE_AMPLITUDE = "infinite-amplitude: H0A need not build A (k[t], |t|=-2)"
EQUAL = "support-equality-by-mutual-radical-containment"

Obj = Union[FreeComplex, DGModule, RestrictedModule]


class VerdictError(ValueError):
    pass


@dataclass(frozen=True)
class SupportIdeal:
    """``V(ideal)`` inside ``Spec`` of ``ring``; ``ideal`` always contains the ring relations."""

    ring: PresentedRing
    ideal: Ideal

    @classmethod
    def of(cls, ring: PresentedRing, gens: Sequence[Poly | str]) -> "SupportIdeal":
        polys = [ring.poly(g) for g in gens] + list(ring.relations.groebner())
        return cls(ring, Ideal(ring.poly, polys))

    def generators(self) -> list[Poly]:
        return list(self.ideal.groebner())

    def is_empty(self) -> bool:
        return self.ideal.is_unit()

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators()) + ")"

    def to_json(self) -> list[str]:
        return [str(g) for g in self.generators()]


@dataclass
class SpecializationClosedSet:
    """Finite union of closed sets ``V(I_j)`` (specialization closed, and enough for compacts)."""

    ring: PresentedRing
    components: list = dc_field(default_factory=list)  # Ideals

    @classmethod
    def of(cls, ring: PresentedRing, components: Sequence[Sequence[Poly | str]]) -> "SpecializationClosedSet":
        return cls(ring, [SupportIdeal.of(ring, c).ideal for c in components])

    def as_support(self) -> SupportIdeal:
        """``V(I_1) u ... u V(I_k) = V(I_1 ... I_k)``."""
        ring = self.ring
        prod = Ideal(ring.poly, [ring.one])
        for I in self.components:
            prod = Ideal(ring.poly, list((prod * I).gens) + list(ring.relations.groebner()))
        return SupportIdeal(ring, prod)


@dataclass
class Verdict:
    answer: str  # "yes" | "no" | "inapplicable"
    theorem: str
    certificate: list = dc_field(default_factory=list)
    applicability: dict = dc_field(default_factory=dict)
    ring: PresentedRing | None = dc_field(default=None, repr=False, compare=False)

    def __bool__(self):
        return self.answer == "yes"

    def recheck(self) -> bool:
        """Recompute every witness from its strings and confirm the answer follows."""
        if self.answer == "inapplicable":
            return not self.certificate and self.applicability.get("certified") is False
        if self.ring is None:
            raise VerdictError("verdict has no ring attached")
        P = self.ring.poly
        outcomes = []
        for entry in self.certificate:
            f = P.parse(entry["generator"])
            I = Ideal(P, [P.parse(s) for s in entry["ideal"]])
            ok, _ = rabinowitsch(f, I)
            if ok != entry["member_of_radical"]:
                return False
            outcomes.append(ok)
        return (self.answer == "yes") == all(outcomes)

    def to_json(self) -> dict:
        return {
            "answer": self.answer,
            "theorem": self.theorem,
            "certificate": [dict(e) for e in self.certificate],
            "applicability": dict(self.applicability),
        }


# ---------------------------------------------------------------- supports


def _ring_of(X: Obj) -> PresentedRing:
    if isinstance(X, FreeComplex):
        return X.ring
    if isinstance(X, RestrictedModule):
        return X.complex.ring
    return X.algebra.h0()


def support_of(X: Obj) -> SupportIdeal:
    """Union of the supports of the cohomology modules, as a single ideal."""
    if isinstance(X, FreeComplex):
        T = X.cohomology_table()
    elif isinstance(X, RestrictedModule):
        T = X.complex.cohomology_table()
    elif isinstance(X, DGModule):
        T = dg_cohomology(X)
    else:
        raise TypeError(f"no support for {type(X).__name__}")
    ring = T.ring
    return SupportIdeal(ring, Ideal(ring.poly, list(T.support_ideal().gens) + list(ring.relations.groebner())))


def _witnesses(big: SupportIdeal, small: SupportIdeal, tag: str | None = None) -> list[dict]:
    small_strs = [str(g) for g in small.generators()]
    out = []
    for g in big.generators():
        ok, size = rabinowitsch(g, small.ideal)
        e = {"generator": str(g), "member_of_radical": ok, "auxiliary_gb_size": size, "ideal": small_strs}
        if tag:
            e["direction"] = tag
        out.append(e)
    return out


def supp_contains(big: SupportIdeal, small: SupportIdeal, theorem: str = SUPPORT_CONTAINMENT, applicability: dict | None = None) -> Verdict:
    """Is ``V(small) ⊆ V(big)``?  Yes iff every generator of ``big`` lies in ``sqrt(small)``."""
    if big.ring != small.ring:
        raise VerdictError("supports live over different rings")
    cert = _witnesses(big, small)
    answer = "yes" if all(e["member_of_radical"] for e in cert) else "no"
    return Verdict(answer, theorem, cert, dict(applicability or {}), big.ring)


def support_equal(a: SupportIdeal, b: SupportIdeal, theorem: str = EQUAL, applicability: dict | None = None) -> Verdict:
    if a.ring != b.ring:
        raise VerdictError("supports live over different rings")
    cert = _witnesses(a, b, "first contains second") + _witnesses(b, a, "second contains first")
    answer = "yes" if all(e["member_of_radical"] for e in cert) else "no"
    return Verdict(answer, theorem, cert, dict(applicability or {}), a.ring)


# ---------------------------------------------------------------- applicability


def algebra_of(X: Obj) -> DGAlgebra | PresentedRing:
    if isinstance(X, FreeComplex):
        return X.ring
    return X.algebra


def applicability(A: DGAlgebra | PresentedRing) -> dict:
    """Finite-rank algebras have bounded underlying complexes, hence certified finite amplitude."""
    if isinstance(A, PresentedRing):
        return {"amplitude": 0, "finite_rank": True, "certified": True}
    if not A.finite_rank:
        return {"amplitude": None, "finite_rank": False, "certified": False}
    amp = dg_cohomology(free_module(A)).amp
    return {"amplitude": amp, "finite_rank": True, "certified": amp is not None}


def _shared(M: Obj, N: Obj):
    A, B = algebra_of(M), algebra_of(N)
    if isinstance(A, PresentedRing) or isinstance(B, PresentedRing):
        if A != B:
            raise VerdictError("objects live over different rings")
    elif A is not B:
        raise VerdictError("objects live over different DG-algebras")
    return A


def _inapplicable(app: dict) -> Verdict:
    return Verdict("inapplicable", INFINITE_AMPLITUDE, [], app)


def builds(M: Obj, N: Obj) -> Verdict:
    """``M`` builds ``N`` iff ``supp M ⊇ supp N`` (finite-amplitude algebras only)."""
    A = _shared(M, N)
    app = applicability(A)
    if not app["certified"]:
        return _inapplicable(app)
    return supp_contains(support_of(M), support_of(N), BUILDS, app)


def finitely_builds(M: Obj, N: Obj) -> Verdict:
    """Same criterion for compact objects; finite semifree modules are compact."""
    A = _shared(M, N)
    app = applicability(A)
    if not app["certified"]:
        return _inapplicable(app)
    app["compact"] = True
    return supp_contains(support_of(M), support_of(N), FINITELY_BUILDS, app)


def thick_membership(X: Obj, S: SpecializationClosedSet) -> Verdict:
    app = applicability(algebra_of(X))
    if not app["certified"]:
        return _inapplicable(app)
    supp = support_of(X)
    if S.ring != supp.ring:
        raise VerdictError("specialization-closed set lives over a different ring")
    return supp_contains(S.as_support(), supp, THICK, app)


# ---------------------------------------------------------------- reports


@dataclass
class CheckReport:
    """Outcome of comparing two routes to the same support."""

    name: str
    holds: bool
    lhs: SupportIdeal
    rhs: SupportIdeal
    verdicts: list = dc_field(default_factory=list)
    extra: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        out = {
            "check": self.name,
            "holds": self.holds,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "verdicts": [v.to_json() for v in self.verdicts],
        }
        out.update(self.extra)
        return out


def tensor_support_check(M: Obj, N: Obj) -> CheckReport:
    """``supp(M ⊗ N)`` against ``V(J_M) ∩ V(J_N) = V(J_M + J_N)``."""
    A = _shared(M, N)
    app = applicability(A)
    if not app["certified"]:
        raise VerdictError("tensor law needs a finite-amplitude algebra")
    if isinstance(M, FreeComplex):
        T = tensor_complexes(M, N)
    else:
        T = dg_tensor(M, N)
    lhs = support_of(T)
    sm, sn = support_of(M), support_of(N)
    rhs = SupportIdeal(lhs.ring, sm.ideal + sn.ideal)
    v = support_equal(lhs, rhs, TENSOR_LAW, app)
    return CheckReport("tensor-support", v.answer == "yes", lhs, rhs, [v])


def reduction_supp_check(M: DGModule, N: DGModule | None = None) -> CheckReport:
    """Support is unchanged by reduction; with ``N``, builds agrees with the reduced side."""
    app = applicability(M.algebra)
    if not app["certified"]:
        raise VerdictError("reduction check needs a finite-amplitude algebra")
    lhs = support_of(M)
    rhs = support_of(reduce_to_h0(M))
    v = support_equal(lhs, rhs, REDUCTION, app)
    holds = v.answer == "yes"
    verdicts = [v]
    extra = {}
    if N is not None:
        a_side = builds(M, N)
        rM, rN = reduce_to_h0(M), reduce_to_h0(N)
        h_side = supp_contains(support_of(rM), support_of(rN), BUILDS, applicability(rM.ring))
        verdicts += [a_side, h_side]
        extra = {"builds_A_side": a_side.answer, "builds_H0_side": h_side.answer}
        holds = holds and a_side.answer == h_side.answer
    return CheckReport("reduction-support", holds, lhs, rhs, verdicts, extra)
