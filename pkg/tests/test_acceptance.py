"""Acceptance suite: one test per criterion, each timed and reported on one line.

Every criterion helper returns ``(ok, detail, verdicts)`` and is cached so the
last criterion can re-verify the verdicts emitted by the others.
"""

import functools
import itertools
import random
import time

import pytest

from strata import cli
from strata.complexes import FreeComplex, PresentedRing, RationalPoint, koszul_complex
from strata.dg import (
    DGModule,
    RestrictedModule,
    dg_cohomology,
    free_module,
    koszul_algebra,
    koszul_module,
    reduce_to_h0,
)
from strata.field import GF, QQ
from strata.groebner import Ideal, normal_form, radical_member
from strata.oracle import PointGrid, brute_member, brute_radical_member, dense_cohomology_dims, in_zero_set, random_division
from strata.samples import (
    exterior_algebra,
    finite_amplitude_algebras,
    koszul_examples,
    pair_sample,
    polynomial_dga,
    random_complex,
    random_dg_module,
    random_poly,
)
from strata.session import elaborate, parse_session, run_session
from strata.tate import coreduction
from strata.verdicts import builds, reduction_supp_check, supp_contains, support_equal, support_of, tensor_support_check

F7 = GF(7)


@pytest.fixture
def report(capsys):
    def emit(n, ok, elapsed, limit, detail):
        status = "PASS" if ok and elapsed < limit else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] criterion {n}: {detail} ({elapsed:.2f}s, limit {limit}s)")

    return emit


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _shipped_modules():
    """Every DG-module declared in a bundled session, over finite-rank algebras."""
    out = []
    for name in cli.shipped_sessions():
        env = elaborate(parse_session(cli.shipped_session_text(name)))
        for obj_name, (kind, obj) in env.objects.items():
            if isinstance(obj, DGModule) and obj.algebra.finite_rank:
                out.append((f"{name}:{obj_name}", obj))
    return out


# ---------------------------------------------------------------- 1. support of A equals support of H0A


@functools.lru_cache(None)
def criterion_1():
    verdicts = []
    bad = []
    examples = koszul_examples()
    for label, A in examples:
        sA = support_of(free_module(A))
        sH = support_of(RestrictedModule(FreeComplex(A.h0(), {0: 1}), A))
        v = support_equal(sA, sH)
        verdicts.append(v)
        if v.answer != "yes":
            bad.append(label)
    labels = [label for label, _ in examples]
    nonregular = "K(Q[x]/(x^2); x)" in labels and "K(Q[x,y]/(x^2,xy,y^2); x, y)" in labels
    ok = not bad and len(examples) >= 5 and nonregular
    return ok, f"supp A = supp H0A on {len(examples)} Koszul algebras" + (f", mismatches {bad}" if bad else ""), verdicts


def test_criterion_1_support_of_h0(report):
    (ok, detail, _), dt = _timed(criterion_1)
    report(1, ok, dt, 10, detail)
    assert ok
    assert dt < 10


# ---------------------------------------------------------------- 2. conservativity


@functools.lru_cache(None)
def criterion_2():
    algebras = finite_amplitude_algebras()
    rng = random.Random(2024)
    modules = []
    for i in range(50):
        label, A = algebras[i % len(algebras)]
        kind = "cone" if i < 10 else None
        modules.append(random_dg_module(A, rng, kind))
    modules += _shipped_modules()
    cones = acyclic = nonacyclic = 0
    bad = []
    for label, M in modules:
        a = dg_cohomology(M).is_zero()
        b = reduce_to_h0(M).cohomology_table().is_zero()
        if a != b:
            bad.append(label)
        cones += label.startswith("cone(id)")
        acyclic += a
        nonacyclic += not a
    ok = not bad and cones >= 10 and nonacyclic >= 10 and acyclic >= 10
    detail = f"{len(modules)} modules ({cones} cones, {acyclic} acyclic, {nonacyclic} not)"
    return ok, detail + (f", mismatches {bad}" if bad else ""), []


def test_criterion_2_conservativity(report):
    (ok, detail, _), dt = _timed(criterion_2)
    report(2, ok, dt, 60, detail)
    assert ok
    assert dt < 60


# ---------------------------------------------------------------- 3. tensor law


@functools.lru_cache(None)
def criterion_3():
    pairs = pair_sample(finite_amplitude_algebras()[:5], seed=33, per_algebra=3)
    verdicts = []
    bad = []
    for label, A, (lm, M), (ln, N) in pairs:
        r = tensor_support_check(M, N)
        verdicts += r.verdicts
        if not r.holds:
            bad.append((label, lm, ln))
    n_alg = len({label for label, *_ in pairs})
    ok = not bad and len(pairs) >= 10 and n_alg >= 3
    return ok, f"supp(M(x)N) = supp M cap supp N on {len(pairs)} pairs over {n_alg} algebras", verdicts


def test_criterion_3_tensor_law(report):
    (ok, detail, _), dt = _timed(criterion_3)
    report(3, ok, dt, 60, detail)
    assert ok
    assert dt < 60


# ---------------------------------------------------------------- 4. two-route support


@functools.lru_cache(None)
def criterion_4():
    rings = [
        PresentedRing.create(F7, ["x", "y"]),
        PresentedRing.create(F7, ["x", "y", "z"], ["x*z"]),
        PresentedRing.create(QQ, ["x"]),
        PresentedRing.create(QQ, ["x", "y"]),
        PresentedRing.create(QQ, ["x", "y", "z"], ["x*z"]),
    ]
    rng = random.Random(44)
    grids = {id(R): PointGrid(R) for R in rings}
    fields = set()
    bad = []
    min_points = None
    for i in range(100):
        R = rings[i % len(rings)]
        C = random_complex(R, rng)
        supp = support_of(C)
        grid = grids[id(R)]
        min_points = len(grid) if min_points is None else min(min_points, len(grid))
        fields.add(R.field.characteristic)
        for p in grid:
            fiber_nonzero = any(dense_cohomology_dims(C, p).values())
            if fiber_nonzero != in_zero_set(supp.ideal, p):
                bad.append((i, p.coords))
    ok = not bad and min_points >= 25 and fields == {0, 7}
    return ok, f"100 complexes over F7 and Q, >= {min_points} points each" + (f", disagreements {bad[:3]}" if bad else ""), []


def test_criterion_4_two_route_support(report):
    (ok, detail, _), dt = _timed(criterion_4)
    report(4, ok, dt, 120, detail)
    assert ok
    assert dt < 120


# ---------------------------------------------------------------- 5. builds via reductions


@functools.lru_cache(None)
def criterion_5():
    pairs = pair_sample(finite_amplitude_algebras(), seed=55, per_algebra=3)
    verdicts = []
    bad = []
    answers = set()
    for label, A, (lm, M), (ln, N) in pairs:
        a_side = builds(M, N)
        h_side = builds(reduce_to_h0(M), reduce_to_h0(N))
        verdicts += [a_side, h_side]
        answers.add(a_side.answer)
        if a_side.answer != h_side.answer:
            bad.append((label, lm, ln))
        r = reduction_supp_check(M, N)
        verdicts += r.verdicts
        if not r.holds:
            bad.append((label, lm, ln, "reduction"))
    ok = not bad and len(pairs) >= 20 and answers == {"yes", "no"}
    return ok, f"A-side = H0A-side builds on {len(pairs)} pairs" + (f", mismatches {bad[:3]}" if bad else ""), verdicts


def test_criterion_5_builds_reduction(report):
    (ok, detail, _), dt = _timed(criterion_5)
    report(5, ok, dt, 60, detail)
    assert ok
    assert dt < 60


# ---------------------------------------------------------------- 6. Koszul base change


BASE_CHANGE = [
    (["x"], [], ["x"], ["x + 1"]),
    (["x"], ["x^2"], ["x"], ["x"]),
    (["x", "y"], [], ["x", "y"], ["x*y", "x - y"]),
    (["x", "y"], ["x^2", "x*y", "y^2"], ["x", "y"], ["x + y"]),
    (["x", "y"], [], ["x*y"], ["x^2 + y", "y^3"]),
    (["x", "y", "z"], ["x*z"], ["x", "y"], ["z", "x + z^2"]),
]


@functools.lru_cache(None)
def criterion_6():
    bad = []
    for vs, rels, a_els, f_els in BASE_CHANGE:
        base = PresentedRing.create(QQ, vs, rels)
        A = koszul_algebra(base, a_els)
        lhs = reduce_to_h0(koszul_module(A, f_els))
        H0 = A.h0()
        rhs = koszul_complex(H0, [H0.reduce(H0.poly.parse(f)) for f in f_els])
        if lhs.ranks != rhs.ranks or any(_mat(lhs, n) != _mat(rhs, n) for n in rhs.ranks):
            bad.append((a_els, f_els))
    return not bad, f"reduce(K(A; f)) = K(H0A; f) on {len(BASE_CHANGE)} instances", []


def _mat(C, n):
    return [[str(C.ring.reduce(p)) for p in row] for row in C.d(n)]


def test_criterion_6_koszul_base_change(report):
    (ok, detail, _), dt = _timed(criterion_6)
    report(6, ok, dt, 10, detail)
    assert ok
    assert dt < 10


# ---------------------------------------------------------------- 7. Ext pattern


@functools.lru_cache(None)
def criterion_7():
    A = exterior_algebra()
    X = FreeComplex(A.h0(), {0: 1}, {})
    r = coreduction(RestrictedModule(X, A), (0, 4))
    dims = tuple(r.dims[n] for n in range(5))
    return dims == (1, 0, 1, 0, 1), f"coreduction dims over exterior algebra on [0,4] = {dims}", []


def test_criterion_7_ext_pattern(report):
    (ok, detail, _), dt = _timed(criterion_7)
    report(7, ok, dt, 10, detail)
    assert ok
    assert dt < 10


# ---------------------------------------------------------------- 8. infinite amplitude


@functools.lru_cache(None)
def criterion_8():
    A = polynomial_dga()
    T = dg_cohomology(free_module(A), window=(-6, 1))
    pt = RationalPoint(A.h0(), ())
    dims_ok = T.nonzero_degrees() == [-4, -2, 0] and all(T[n].fiber_rank(pt) == 1 for n in (-4, -2, 0))
    R = reduce_to_h0(free_module(A)).cohomology_table()
    red_ok = R.nonzero_degrees() == [0] and R[0].fiber_rank(pt) == 1
    F = free_module(A)
    H = RestrictedModule(FreeComplex(A.h0(), {0: 1}), A)
    verdicts = [builds(H, F), builds(F, H), builds(F, F)]
    never_yes = all(v.answer == "inapplicable" for v in verdicts)
    s = run_session(parse_session(cli.shipped_session_text("infinite_amplitude.strata")))
    session_ok = s["summary"]["pass"] == len(s["commands"])
    ok = dims_ok and red_ok and never_yes and session_ok
    return ok, f"Q[t]: H^* rank 1 in 0,-2,-4 (certified window {T.window}); H0 = Q; builds inapplicable; session {s['summary']}", verdicts


def test_criterion_8_infinite_amplitude(report):
    (ok, detail, _), dt = _timed(criterion_8)
    report(8, ok, dt, 10, detail)
    assert ok
    assert dt < 10


# ---------------------------------------------------------------- 9. Groebner layer


def _instance(rng: random.Random):
    field = rng.choice([QQ, F7])
    n = rng.randint(1, 3)
    R = PresentedRing.create(field, ["x", "y", "z"][:n])
    P = R.poly
    kw = {"max_degree": 3, "max_terms": 3}
    gens = [random_poly(R, rng, **kw) for _ in range(rng.randint(1, 3))]
    kind = rng.randrange(3)
    if kind == 0:
        f = random_poly(R, rng, **kw)
    elif kind == 1:
        # a member by construction, with degree capped at 3 per factor
        f = sum((g * random_poly(R, rng, max_degree=1, max_terms=2) for g in gens), P.zero)
    else:
        # in the radical of (gens, h^2) but usually not in the ideal
        h = random_poly(R, rng, max_degree=1, max_terms=2)
        gens = gens + [h * h]
        f = h * random_poly(R, rng, max_degree=1, max_terms=2)
    return P, gens, f


@functools.lru_cache(None)
def criterion_9():
    rng = random.Random(99)
    counts = {"member": 0, "radical": 0, "outside_radical": 0, "radical_unknown": 0}
    bad = []
    for i in range(500):
        P, gens, f = _instance(rng)
        I = Ideal(P, gens)
        G = I.groebner()
        nf = normal_form(f, G)
        if normal_form(nf, G) != nf:
            bad.append((i, "idempotence"))
        if random_division(f, G, rng=random.Random(i)) != nf:
            bad.append((i, "division"))
        member = I.contains(f)
        if member != brute_member(f, gens):
            bad.append((i, "membership"))
        counts["member"] += member
        rad = radical_member(f, I)
        brute = brute_radical_member(f, I)
        if brute == "unknown":
            counts["radical_unknown"] += 1
        elif brute != rad:
            bad.append((i, "radical"))
        counts["radical" if rad else "outside_radical"] += 1
        if member and not rad:
            bad.append((i, "member but not radical"))
    ok = not bad and counts["member"] > 50 and counts["outside_radical"] > 50
    return ok, f"500 instances, {counts}" + (f", contradictions {bad[:5]}" if bad else ""), []


def test_criterion_9_groebner_layer(report):
    (ok, detail, _), dt = _timed(criterion_9)
    report(9, ok, dt, 120, detail)
    assert ok
    assert dt < 120


# ---------------------------------------------------------------- 10. transitivity and recheck


def _transitivity(modules) -> tuple[int, list]:
    """Containment matrix over the given supports; check every triple."""
    supports = [support_of(M) for M in modules]
    n = len(supports)
    contains = {}
    verdicts = []
    for i, j in itertools.product(range(n), repeat=2):
        v = supp_contains(supports[i], supports[j])
        verdicts.append(v)
        contains[i, j] = v.answer == "yes"
    broken = [(i, j, k) for i, j, k in itertools.product(range(n), repeat=3) if contains[i, j] and contains[j, k] and not contains[i, k]]
    return n**3, broken, verdicts


def test_criterion_10_transitivity_and_recheck(report):
    earlier = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]
    emitted = [v for c in earlier for v in c()[2]]

    def run():
        failed = [v.to_json() for v in emitted if not v.recheck()]
        triples = 0
        broken = []
        extra = []
        rng = random.Random(10)
        for label, A in finite_amplitude_algebras():
            mods = [M for _, M in (random_dg_module(A, rng) for _ in range(6))]
            t, b, vs = _transitivity(mods)
            triples += t
            broken += b
            extra += vs
        failed += [v.to_json() for v in extra if not v.recheck()]
        return failed, triples, broken, len(emitted) + len(extra)

    (failed, triples, broken, total), dt = _timed(run)
    ok = not failed and not broken and len(emitted) > 0
    report(10, ok, dt, 30, f"{total} verdicts rechecked, {triples} triples checked for transitivity")
    assert not failed, failed[:3]
    assert not broken
    assert dt < 30
