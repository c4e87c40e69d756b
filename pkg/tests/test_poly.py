import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from conftest import XYZ, polys
from typeii.poly import (
    NEG_INF,
    PolyMatrix,
    Polynomial,
    PolynomialSyntaxError,
    RingDescriptor,
    RingMismatchError,
    SubstitutionMap,
    apply_substitution,
    change_ring,
    minor_column_pairs,
    parse_polynomial,
    two_by_two_minors,
)
from typeii.unprojection import Parameters, base_ring, build_matrix_M, normalization_map


def test_ring_rejects_bad_descriptors():
    with pytest.raises(ValueError):
        RingDescriptor((("x", 1), ("x", 2)))
    with pytest.raises(ValueError):
        RingDescriptor((("x", 0),))
    with pytest.raises(ValueError):
        RingDescriptor((("1x", 1),))


def test_weighted_degree_and_homogeneity():
    R = RingDescriptor((("a", 1), ("b", 2)))
    p = R.parse("a^2 - b")
    assert p.degree() == 2
    assert p.is_homogeneous() == (True, 2)
    assert R.parse("a + b").is_homogeneous()[0] is False
    assert R.zero().degree() == NEG_INF


def test_parse_print_roundtrip_examples():
    for text in ["3*x^2*y - 1/2*z", "-x + 1", "x*(y - 1)^2", "0", "2/4*x"]:
        p = XYZ.parse(text)
        assert XYZ.parse(str(p)) == p
    assert str(XYZ.parse("2/4*x")) == "1/2*x"


@pytest.mark.parametrize("bad, col", [("x +* y", 4), ("x^", 3), ("q + 1", 1), ("(x", 3)])
def test_parse_errors_carry_column(bad, col):
    with pytest.raises(PolynomialSyntaxError) as info:
        XYZ.parse(bad)
    assert info.value.column == col


@given(polys())
def test_print_parse_roundtrip(p):
    assert XYZ.parse(str(p)) == p


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == XYZ.zero()
    assert p * XYZ.one() == p


@given(polys(max_terms=3), st.integers(0, 4))
def test_power_matches_repeated_product(p, k):
    acc = XYZ.one()
    for _ in range(k):
        acc = acc * p
    assert p ** k == acc


def test_exact_rational_arithmetic():
    p = XYZ.parse("1/3*x") * 3
    assert p == XYZ.gen("x")
    assert p.coefficient((1, 0, 0)) == mpq(1)


def test_ring_mismatch():
    other = RingDescriptor.from_names(["x", "y"])
    with pytest.raises(RingMismatchError):
        XYZ.gen("x") + other.gen("x")


def test_change_ring_by_name():
    small = RingDescriptor.from_names(["y", "x"])
    p = change_ring(XYZ.parse("x*y^2 - y"), small)
    assert p == small.parse("x*y^2 - y")
    with pytest.raises(Exception):
        change_ring(XYZ.gen("z"), small)


def test_minors_of_generic_matrix():
    R = RingDescriptor.from_names([f"m{i}" for i in range(6)])
    m = PolyMatrix.from_rows([[R.gen("m0"), R.gen("m1"), R.gen("m2")],
                              [R.gen("m3"), R.gen("m4"), R.gen("m5")]])
    minors = two_by_two_minors(m)
    assert len(minors) == 3
    assert minors[0] == R.parse("m0*m4 - m3*m1")
    assert minor_column_pairs(3) == [(1, 2), (1, 3), (2, 3)]


def test_minors_need_two_rows():
    R = RingDescriptor.from_names(["x"])
    with pytest.raises(ValueError):
        two_by_two_minors(PolyMatrix.from_rows([[R.gen("x")]]))


def test_substitution_basics():
    R = RingDescriptor.from_names(["x", "y"])
    sigma = SubstitutionMap.from_mapping(R, R, {"x": "y^2", "y": "x + 1"})
    assert sigma(R.parse("x*y")) == R.parse("x*y^2 + y^2")
    ident = SubstitutionMap.identity(R)
    p = R.parse("x^3 - 2*x*y + 7")
    assert ident(p) == p
    with pytest.raises(KeyError):
        SubstitutionMap.from_mapping(R, R, {"w": "x"})


SUB_TARGET = RingDescriptor.from_names(["u", "v"])
SIGMA = SubstitutionMap.from_mapping(XYZ, SUB_TARGET, {"x": "u + v", "y": "u*v - 1", "z": "v^2"})


@given(polys(max_exp=2, max_terms=4), polys(max_exp=2, max_terms=4))
def test_substitution_is_a_homomorphism(p, q):
    assert apply_substitution(SIGMA, p + q) == SIGMA(p) + SIGMA(q)
    assert apply_substitution(SIGMA, p * q) == SIGMA(p) * SIGMA(q)
    assert SIGMA(XYZ.one()) == SUB_TARGET.one()


def test_normalization_kills_a_minor_example():
    params = Parameters(1, 2)
    R = base_ring(params)
    sigma = normalization_map(params, R)
    assert sigma(R.parse("a_2_1*a_1_2 - a_2_2*a_1_1")).is_zero()


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_normalization_kills_every_minor(k, n):
    params = Parameters(k, n)
    R = base_ring(params)
    sigma = normalization_map(params, R)
    assert all(sigma(u).is_zero() for u in two_by_two_minors(build_matrix_M(params, R)))


def test_polynomial_hash_and_eq_ignore_construction_order():
    a = Polynomial(XYZ, {(1, 0, 0): 1, (0, 1, 0): 2})
    b = Polynomial(XYZ, {(0, 1, 0): 2, (1, 0, 0): 1})
    assert a == b and hash(a) == hash(b)


def test_parse_polynomial_function_matches_method():
    assert parse_polynomial("x - y", XYZ) == XYZ.parse("x - y")
