#!/usr/bin/env python3
"""
Tests for base algebras: fields, descriptors, PBW straightening, M2
"""

import itertools
import random

import pytest

from algebra_errors import (
    AlgebraError,
    AntisymmetryViolationError,
    InvalidIndexError,
    JacobiViolationError,
    MixedAlgebraError,
    NoUnitError,
    UnitLawError,
)
from base_algebra import (
    EnvelopingAlgebra,
    FreeAssociativeAlgebra,
    LieStructure,
    PolynomialAlgebra,
    StructureConstantsAlgebra,
    adjoin_unit,
    check_associativity,
    field_algebra,
    matrix_extend,
    pbw_straighten,
    random_order_straighten,
    sl2_lie,
)
from scalars import ScalarField


# Scalars


def test_prime_field_arithmetic(gf7):
    assert gf7(3) * gf7(5) == gf7(1)
    assert gf7(1, 2) * gf7(2) == gf7.one
    assert gf7.residue(gf7(-1)) == 6
    assert str(gf7) == "GF(7)"


def test_rational_field_is_exact(qq):
    assert qq(1, 3) + qq(1, 6) == qq(1, 2)
    assert qq.format(qq(-4, 6)) == "-2/3"


@pytest.mark.parametrize("p", [1, 4, 9, 15])
def test_prime_field_rejects_composite(p):
    with pytest.raises(AlgebraError):
        ScalarField.prime(p)


def test_zero_denominator_mod_p_is_rejected(gf7):
    with pytest.raises(AlgebraError):
        gf7(1, 7)


@pytest.mark.parametrize("field", [ScalarField.rational(), ScalarField.prime(7), ScalarField.prime(1009)], ids=str)
def test_field_axioms_on_random_scalars(field):
    rng = random.Random(3)
    one = field.one
    for _ in range(1000):
        a, b, c = (field.random(rng, 50) for _ in range(3))
        assert (a + b) - b == a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if not field.is_zero(a):
            assert a * (one / a) == one


# Polynomial and free algebras


def test_polynomial_product_is_commutative(poly2):
    x, y = poly2.generators()
    assert x * y == y * x
    assert (x + poly2.one()) * (x + poly2.one()) == x * x + x.scale(2) + poly2.one()
    assert (x * x * y).degree() == 3


def test_polynomial_basis_names_round_trip(poly2):
    m = poly2.basis_element((2, 1))
    assert poly2.basis_name((2, 1)) == "x^2*y"
    assert poly2.parse_monomial("x^2*y") == m
    assert poly2.parse_monomial("(2,1)") == m
    assert poly2.parse_monomial("1") == poly2.one()
    assert str(m.scale(3) - poly2.one()) == "-1 + 3*x^2*y"


def test_polynomial_rejects_bad_names(poly2):
    with pytest.raises(InvalidIndexError):
        poly2.parse_monomial("z")
    with pytest.raises(InvalidIndexError):
        poly2.parse_monomial("x^a")
    with pytest.raises(InvalidIndexError):
        poly2.basis_element((1,))


def test_free_algebra_is_noncommutative(qq):
    F = FreeAssociativeAlgebra(qq, 2)
    x, y = F.generators()
    assert x * y != y * x
    assert F.parse_monomial("xyx") == x * y * x
    assert F.basis_name((0, 1, 1)) == "xyy"
    with pytest.raises(InvalidIndexError):
        FreeAssociativeAlgebra(qq, 2, ["a"])


def test_mixed_descriptors_are_rejected(poly1, poly2):
    with pytest.raises(MixedAlgebraError):
        poly1.generators()[0] + poly2.generators()[0]
    with pytest.raises(MixedAlgebraError):
        poly2.multiply(poly1.one(), poly2.one())


def test_elements_are_canonical(poly1):
    (x,) = poly1.generators()
    assert x - x == 0
    assert not (x - x)
    assert x.scale(0).is_zero()
    assert hash(x + x) == hash(x.scale(2))


def test_random_element_respects_degree(poly2, rng):
    for _ in range(50):
        assert poly2.random_element(rng, max_degree=3).degree() <= 3


# Structure constants


def test_structure_constants_without_unit_has_no_one(qq):
    A = StructureConstantsAlgebra(qq, 1, {}, names=["a"])
    assert not A.has_unit
    with pytest.raises(NoUnitError):
        A.one()


def test_declared_unit_must_be_two_sided(qq):
    # e0 acts as a left identity only
    products = {(0, 0): {0: 1}, (0, 1): {1: 1}}
    with pytest.raises(UnitLawError):
        StructureConstantsAlgebra(qq, 2, products, unit={0: 1})


def test_from_table_matches_products(qq):
    # dual numbers F[t]/(t^2)
    table = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    D = StructureConstantsAlgebra.from_table(qq, table, unit=[1, 0], names=["1", "t"])
    t = D.parse_monomial("t")
    assert t * t == 0
    assert D.one() * t == t
    assert check_associativity(D, itertools.product(D.generators(), repeat=3)) is None


def test_field_algebra_unit(base_field):
    one = base_field.one()
    assert one * one == one
    assert base_field.parse_monomial("1") == one


def test_adjoin_unit_shifts_slots(qq):
    nil = StructureConstantsAlgebra(qq, 2, {(0, 0): {1: 1}}, names=["a", "b"])
    hull = adjoin_unit(nil)
    assert hull.dimension == 3
    a = hull.parse_monomial("a")
    assert hull.one() == hull.basis_element(0)
    assert a * a == hull.parse_monomial("b")
    assert hull.one() * a == a == a * hull.one()


# Lie structures and PBW


def test_lie_structure_fills_antisymmetry(sl2):
    e, h, f = 0, 1, 2
    assert sl2.bracket(f, e) == {h: -1}
    assert sl2.bracket(e, h) == {e: -2}
    assert sl2.bracket(e, e) == {}


def test_lie_structure_rejects_non_alternating(qq):
    with pytest.raises(AntisymmetryViolationError):
        LieStructure(qq, 2, {(0, 1): {0: 1}, (1, 0): {0: 1}})
    with pytest.raises(AntisymmetryViolationError) as info:
        LieStructure(qq, 2, {(1, 1): {0: 1}})
    assert info.value.pair == (1, 1)


def test_lie_structure_rejects_jacobi_failure(qq):
    brackets = {(0, 1): {0: 1}, (1, 2): {1: 1}, (2, 0): {2: 1}}
    with pytest.raises(JacobiViolationError) as info:
        LieStructure(qq, 3, brackets, names=["x", "y", "z"])
    assert info.value.triple == ("x", "y", "z")
    assert info.value.exit_code == 4


def test_pbw_straightens_descents(u_sl2):
    ef = u_sl2.parse_monomial("e*f")
    h = u_sl2.parse_monomial("h")
    e = u_sl2.parse_monomial("e")
    assert u_sl2.parse_monomial("f*e") == ef - h
    assert u_sl2.parse_monomial("h*e") == u_sl2.parse_monomial("e*h") + e.scale(2)
    assert pbw_straighten(u_sl2, (2, 0)) == ef - h


def test_pbw_generators_commute_to_bracket(u_sl2):
    e, h, f = u_sl2.generators()
    assert e * f - f * e == h
    assert h * e - e * h == e.scale(2)
    assert h * f - f * h == f.scale(-2)


def test_pbw_rejects_unsorted_index(u_sl2):
    with pytest.raises(InvalidIndexError):
        u_sl2.basis_element((2, 0))


def test_pbw_confluence_fuzz(u_sl2):
    rng = random.Random(7)
    for _ in range(200):
        word = [rng.randrange(3) for _ in range(rng.randint(0, 6))]
        assert random_order_straighten(u_sl2, word, rng) == u_sl2.straighten(word)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_pbw_confluence_on_random_lie(random_lie, seed):
    U = EnvelopingAlgebra(random_lie(seed))
    rng = random.Random(100 + seed)
    for _ in range(200):
        word = [rng.randrange(3) for _ in range(rng.randint(0, 6))]
        assert random_order_straighten(U, word, rng) == U.straighten(word)


def test_pbw_custom_order(sl2):
    U = EnvelopingAlgebra(sl2, order=[2, 1, 0])
    f, h, e = U.generators()
    # with f < h < e, e*f is the descent
    assert U.parse_monomial("e*f") == U.parse_monomial("f*e") + h
    with pytest.raises(InvalidIndexError):
        EnvelopingAlgebra(sl2, order=[0, 0, 1])


def test_enveloping_algebra_is_associative(u_sl2, rng):
    triples = [tuple(u_sl2.random_element(rng, 2, 2) for _ in range(3)) for _ in range(30)]
    assert check_associativity(u_sl2, triples) is None


def test_abelian_enveloping_algebra_is_polynomial(u_abelian2):
    x, y = u_abelian2.generators()
    assert x * y == y * x
    assert u_abelian2.parse_monomial("y*x") == u_abelian2.parse_monomial("x*y")


# Matrix extension


def test_matrix_units_multiply(poly1):
    C = matrix_extend(poly1)
    (x,) = poly1.generators()
    e12, e21 = C.matrix_unit(1, 2), C.matrix_unit(2, 1)
    assert e12 * e21 == C.matrix_unit(1, 1)
    assert e21 * e12 == C.matrix_unit(2, 2)
    assert e12 * e12 == 0
    assert C.one() == C.matrix_unit(1, 1) + C.matrix_unit(2, 2)
    assert C.matrix_unit(1, 1, x) * C.matrix_unit(1, 2, x) == C.matrix_unit(1, 2, x * x)
    assert C.parse_monomial("e12:x") == C.matrix_unit(1, 2, x)
    assert C.parse_monomial("e21") == e21


def test_matrix_extension_is_associative(u_sl2, rng):
    C = matrix_extend(u_sl2)
    triples = [tuple(C.random_element(rng, 1, 2) for _ in range(3)) for _ in range(20)]
    assert check_associativity(C, triples) is None


def test_matrix_extension_of_nonunital_algebra(qq):
    C = matrix_extend(StructureConstantsAlgebra(qq, 1, {}, names=["a"]))
    assert not C.has_unit
    assert C.generators() == [C.parse_monomial("e11:a")]
    with pytest.raises(NoUnitError):
        C.one()


def test_prime_field_polynomials(gf7):
    P = PolynomialAlgebra(gf7, 1)
    (x,) = P.generators()
    assert (x + P.one()).scale(7) == 0
    assert str(x.scale(-1)) == "6*x"


# Algebra axioms on random elements


def _upper_triangular(qq):
    # span(e11, e12, e22) inside M_2(F)
    products = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}}
    return StructureConstantsAlgebra(qq, 3, products, unit={0: 1, 2: 1}, names=["e11", "e12", "e22"])


def _nilpotent_hull(qq):
    return adjoin_unit(StructureConstantsAlgebra(qq, 2, {(0, 0): {1: 1}}, names=["a", "b"]))


ASSOCIATIVE_KINDS = {
    "polynomial": (lambda qq: PolynomialAlgebra(qq, 2, ["x", "y"]), 3),
    "free": (lambda qq: FreeAssociativeAlgebra(qq, 2), 3),
    "structure_constants": (_upper_triangular, 1),
    "unital_hull": (_nilpotent_hull, 1),
    "enveloping": (lambda qq: EnvelopingAlgebra(sl2_lie(qq)), 2),
    "matrix": (lambda qq: matrix_extend(PolynomialAlgebra(qq, 1, ["x"])), 2),
}


@pytest.mark.parametrize("kind", [
    "polynomial",
    "free",
    "structure_constants",
    "unital_hull",
    pytest.param("enveloping", marks=pytest.mark.slow),
    pytest.param("matrix", marks=pytest.mark.slow),
])
def test_associativity_on_random_triples(qq, kind):
    build, max_degree = ASSOCIATIVE_KINDS[kind]
    A = build(qq)
    rng = random.Random(11)
    triples = [tuple(A.random_element(rng, max_degree) for _ in range(3)) for _ in range(500)]
    assert check_associativity(A, triples) is None


@pytest.mark.parametrize("kind", [*ASSOCIATIVE_KINDS, "field"])
def test_unit_laws_on_random_elements(qq, kind):
    A = field_algebra(qq) if kind == "field" else ASSOCIATIVE_KINDS[kind][0](qq)
    one = A.one()
    rng = random.Random(13)
    for _ in range(100):
        x = A.random_element(rng, 3)
        assert one * x == x
        assert x * one == x


def test_lie_bracket_algebra_is_not_associative(sl2):
    L = sl2.as_algebra()
    e, h, f = L.generators()
    # [[e,f],f] = [h,f] = -2f while [e,[f,f]] = 0
    assert check_associativity(L, [(e, f, f)]) == (e, f, f)
