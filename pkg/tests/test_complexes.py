import random

import pytest
from hypothesis import given, strategies as st

from strata.complexes import (
    FPModule,
    FreeComplex,
    PresentedRing,
    RationalPoint,
    RelationError,
    cohomology,
    fiber_dims,
    fitting_support,
    koszul_complex,
    smart_truncate,
    tensor_complexes,
    truncation_triangle,
    two_term,
    unit_complex,
    validate_complex,
)
from strata.field import GF, QQ
from strata.groebner import Ideal, radical_member
from strata.oracle import PointGrid, dense_cohomology_dims, in_zero_set
from strata.samples import random_complex
from strata.verdicts import support_of

R1 = PresentedRing.create(QQ, ["x"])
R2 = PresentedRing.create(QQ, ["x", "y"])


def mult_x():
    return two_term(R1, [[R1("x")]])


def test_rejects_unit_ideal():
    with pytest.raises(RelationError):
        PresentedRing.create(QQ, ["x"], ["x", "x - 1"])


def test_point_must_satisfy_relations():
    R = PresentedRing.create(QQ, ["x"], ["x^2"])
    RationalPoint(R, [0])
    with pytest.raises(ValueError):
        RationalPoint(R, [1])


def test_validate_examples():
    assert validate_complex(FreeComplex(R1, {})).ok
    assert validate_complex(mult_x()).ok
    bad = FreeComplex(R1, {0: 1, 1: 1, 2: 1}, {0: [[R1("x")]], 1: [[R1("x")]]})
    rep = validate_complex(bad)
    assert not rep.ok
    assert [v["degree"] for v in rep.violations] == [0]
    assert rep.violations[0]["entry"] == "x^2"


def test_validate_modulo_relations():
    R = PresentedRing.create(QQ, ["x"], ["x^2"])
    C = FreeComplex(R, {0: 1, 1: 1, 2: 1}, {0: [[R("x")]], 1: [[R("x")]]})
    assert validate_complex(C).ok


def test_cohomology_of_multiplication():
    C = mult_x()
    H0 = cohomology(C, 0)
    assert H0.ngens == 1 and [str(p) for row in H0.matrix for p in row] == ["x"]
    assert cohomology(C, -1).is_zero()


def test_cohomology_zero_differential():
    C = two_term(R1, [[R1.zero]])
    for n in (-1, 0):
        H = cohomology(C, n).pruned()
        assert H.ngens == 1 and not H.relations


def test_koszul_cohomology():
    K = koszul_complex(R2, ["x", "y"])
    assert K.ranks == {-2: 1, -1: 2, 0: 1}
    assert fitting_support(cohomology(K, 0)) == Ideal(R2.poly, [R2("x"), R2("y")])
    assert cohomology(K, -1).is_zero() and cohomology(K, -2).is_zero()
    origin = RationalPoint(R2, [0, 0])
    assert fiber_dims(K, origin) == {-2: 1, -1: 2, 0: 1}
    assert not any(fiber_dims(K, RationalPoint(R2, [1, 0])).values())
    assert K.euler_characteristic() == 0


def test_fitting_examples():
    assert fitting_support(FPModule.free(R2, 1)).is_zero()
    assert fitting_support(FPModule(R2, 1, [[R2("x")]])) == Ideal(R2.poly, [R2("x")])
    assert fitting_support(FPModule(R2, 1, [[R2("x")], [R2("y")]])) == Ideal(R2.poly, [R2("x"), R2("y")])
    # fewer relations than generators: Fitt_0 = 0
    assert fitting_support(FPModule(R2, 2, [[R2("x"), R2("y")]])).is_zero()


def test_fiber_dims_examples():
    C = mult_x()
    assert fiber_dims(C, RationalPoint(R1, [0])) == {-1: 1, 0: 1}
    assert fiber_dims(C, RationalPoint(R1, [1])) == {-1: 0, 0: 0}
    cone = two_term(R1, [[R1.one]])
    assert not any(fiber_dims(cone, RationalPoint(R1, [5])).values())


def _table_with_two_pieces():
    # H^0 = R/x, H^-1 = R/y: direct sum of [R --x--> R] and [R --y--> R] shifted by one
    A = two_term(R2, [[R2("x")]])
    B = two_term(R2, [[R2("y")]]).shift(1)
    from strata.complexes import direct_sum

    return direct_sum(A, B)


def test_smart_truncation_examples():
    C = _table_with_two_pieces()
    T = C.cohomology_table()
    assert T.nonzero_degrees() == [-1, 0]
    left = smart_truncate(C, -1, "<=")
    assert left.nonzero_degrees() == [-1]
    assert left.modules[-1].fitting_ideal() == Ideal(R2.poly, [R2("y")])
    assert smart_truncate(C, T.sup, ">").is_zero()
    acyclic = two_term(R2, [[R2.one]])
    for n in range(-3, 3):
        assert smart_truncate(acyclic, n).is_zero()


def test_truncation_triangle_at_points():
    C = _table_with_two_pieces()
    for n in (-2, -1, 0):
        tri = truncation_triangle(C, n)
        assert all(tri.check_at(p) for p in PointGrid(R2))


def test_amplitude():
    T = _table_with_two_pieces().cohomology_table()
    assert (T.sup, T.inf, T.amp) == (0, -1, 1)
    assert two_term(R2, [[R2.one]]).cohomology_table().amp is None


def test_tensor_unit_and_koszul():
    C = koszul_complex(R2, ["x", "y^2"])
    U = tensor_complexes(C, unit_complex(R2))
    assert U.same_matrices(C)
    T = tensor_complexes(koszul_complex(R2, ["x"]), koszul_complex(R2, ["y"]))
    assert validate_complex(T).ok
    K = koszul_complex(R2, ["x", "y"])
    for p in PointGrid(R2):
        assert fiber_dims(T, p) == fiber_dims(K, p)


@pytest.mark.parametrize("seed", range(12))
def test_tensor_symmetric_on_fibers(seed):
    rng = random.Random(seed)
    C, D = random_complex(R2, rng), random_complex(R2, rng)
    CD, DC = tensor_complexes(C, D), tensor_complexes(D, C)
    assert validate_complex(CD).ok
    for p in PointGrid(R2, extra=5):
        assert fiber_dims(CD, p) == fiber_dims(DC, p)


FIELDS = [QQ, GF(7)]


@pytest.mark.parametrize("seed", range(16))
def test_support_consistency(seed):
    F = FIELDS[seed % 2]
    R = PresentedRing.create(F, ["x", "y"] if seed % 3 else ["x", "y", "z"])
    C = random_complex(R, random.Random(seed), max_rank=3)
    assert validate_complex(C).ok
    J = support_of(C).ideal
    for p in PointGrid(R):
        dims = fiber_dims(C, p)
        assert dims == dense_cohomology_dims(C, p)
        assert sum((-1) ** (n % 2) * d for n, d in dims.items()) == C.euler_characteristic()
        assert any(dims.values()) == in_zero_set(J, p)


def test_quotient_ring_support():
    R = PresentedRing.create(QQ, ["x", "y"], ["x*y"])
    C = koszul_complex(R, ["x + y"])
    J = support_of(C).ideal
    # V(x + y, xy) is the origin: x and y lie in the radical but not in the ideal
    assert not J.contains(R.poly.parse("x"))
    assert radical_member(R.poly.parse("x"), J) and radical_member(R.poly.parse("y"), J)


@given(st.integers(0, 10**6), st.sampled_from([QQ, GF(7)]))
def test_random_complex_fibers_match_dense_ranks(seed, field):
    """Engine fiber dims, the oracle's dense ranks and the support ideal agree pointwise."""
    R = PresentedRing.create(field, ["x", "y"])
    C = random_complex(R, random.Random(seed))
    assert validate_complex(C).ok
    supp = support_of(C)
    for p in list(PointGrid(R, extra=5))[:20]:
        dims = fiber_dims(C, p)
        assert dims == dense_cohomology_dims(C, p)
        assert any(dims.values()) == in_zero_set(supp.ideal, p)
        assert sum((-1) ** (n % 2) * d for n, d in dims.items()) == C.euler_characteristic()
