import random

import pytest
from fractions import Fraction

from cfl import laurent
from cfl.laurent import InexactDivisionError, LaurentPoly, RankMismatchError, RationalPoint

from known_values import A2_EXPANSIONS, B2_EXPANSIONS, G2_EXPANSIONS

X1 = LaurentPoly.variable(2, 0)
X2 = LaurentPoly.variable(2, 1)
ONE = LaurentPoly.one(2)


def rand_poly(rng, rank, max_terms=6, span=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exp = tuple(rng.randint(-span, span) for _ in range(rank))
        terms[exp] = rng.randint(-5, 5)
    return LaurentPoly(rank, terms)


def test_add_cancellation_gives_zero():
    assert laurent.add(X1, laurent.neg(X1)).is_zero()


def test_add_simple():
    assert laurent.add(X2, ONE) == LaurentPoly(2, {(0, 1): 1, (0, 0): 1})


def test_add_matches_exchange_numerator():
    assert laurent.add(X2, ONE) == laurent.mul(A2_EXPANSIONS[2], X1)


def test_mul_clears_denominator():
    assert laurent.mul(X1, A2_EXPANSIONS[2]) == LaurentPoly(2, {(0, 1): 1, (0, 0): 1})


def test_mul_identity():
    p = LaurentPoly(2, {(2, -1): 3, (0, 0): -1})
    assert laurent.mul(p, ONE) == p


def test_mul_product_of_expansions():
    got = laurent.mul(laurent.mul(A2_EXPANSIONS[0], A2_EXPANSIONS[3]), X2)
    assert got == LaurentPoly(2, {(1, 0): 1, (0, 1): 1, (0, 0): 1})


def test_exact_div_basic():
    num = LaurentPoly(2, {(0, 1): 1, (0, 0): 1})
    assert laurent.exact_div(num, X1) == A2_EXPANSIONS[2]


def test_exact_div_self():
    p = LaurentPoly(2, {(1, -2): 4, (-1, 0): -7, (0, 0): 2})
    assert laurent.exact_div(p, p).is_one()


def test_exact_div_b2_big_variable():
    num = LaurentPoly(2, {(2, 0): 1, (0, 2): 1, (1, 0): 2, (0, 0): 1})
    den = LaurentPoly(2, {(1, 2): 1})
    assert laurent.exact_div(num, den) == B2_EXPANSIONS[4]


def test_exact_div_inexact_raises():
    with pytest.raises(InexactDivisionError):
        laurent.exact_div(laurent.add(X1, X2), laurent.sub(X1, X2))
    with pytest.raises(InexactDivisionError):
        laurent.exact_div(LaurentPoly.constant(2, 3), LaurentPoly.constant(2, 2))


def test_div_by_zero():
    with pytest.raises(ZeroDivisionError):
        laurent.exact_div(X1, LaurentPoly.zero(2))


def test_evaluate_a2():
    pt = RationalPoint([1, 1])
    assert laurent.evaluate(A2_EXPANSIONS[3], pt) == 3


def test_evaluate_all_ones_is_coefficient_sum():
    rng = random.Random(11)
    for _ in range(50):
        p = rand_poly(rng, 3)
        assert laurent.evaluate(p, RationalPoint([1, 1, 1])) == p.coefficient_sum()


def test_evaluate_g2_corner():
    assert laurent.evaluate(G2_EXPANSIONS[4], RationalPoint([1, 1])) == 14
    assert laurent.evaluate(G2_EXPANSIONS[4], RationalPoint([3, 2])) == 3


def test_evaluate_negative_exponents_exact():
    p = LaurentPoly(2, {(-2, 1): 3})
    assert laurent.evaluate(p, RationalPoint([Fraction(2, 3), 5])) == Fraction(135, 4)


def test_coefficient_sums():
    assert A2_EXPANSIONS[3].coefficient_sum() == 3
    assert X1.coefficient_sum() == 1
    assert B2_EXPANSIONS[4].coefficient_sum() == 5


def test_positivity_and_monomials():
    assert A2_EXPANSIONS[2].is_positive() and not A2_EXPANSIONS[2].is_monomial()
    m = LaurentPoly(2, {(2, -1): 1})
    assert m.is_positive() and m.is_monomial()
    assert not laurent.sub(X1, ONE).is_positive()


def test_rank_mismatch():
    with pytest.raises(RankMismatchError):
        laurent.add(X1, LaurentPoly.variable(3, 0))
    with pytest.raises(RankMismatchError):
        laurent.evaluate(X1, RationalPoint([1, 1, 1]))


def test_rational_point_positive_only():
    with pytest.raises(ValueError):
        RationalPoint([1, 0])
    with pytest.raises(ValueError):
        RationalPoint([1, -2])


def test_render():
    p = LaurentPoly(2, {(-1, 2): 3, (0, 0): 1})
    assert laurent.render(p) == "1 + 3*x1^-1*x2^2"
    assert laurent.render(LaurentPoly.zero(2)) == "0"
    assert laurent.render(laurent.sub(X1, X2)) == "x1 - x2"


def test_ring_axioms_randomized():
    rng = random.Random(23)
    for _ in range(60):
        rank = rng.randint(1, 3)
        a, b, c = (rand_poly(rng, rank) for _ in range(3))
        assert laurent.add(a, b) == laurent.add(b, a)
        assert laurent.mul(a, b) == laurent.mul(b, a)
        assert laurent.mul(laurent.mul(a, b), c) == laurent.mul(a, laurent.mul(b, c))
        lhs = laurent.mul(a, laurent.add(b, c))
        rhs = laurent.add(laurent.mul(a, b), laurent.mul(a, c))
        assert lhs == rhs


def test_canonicity_no_zero_coefficients():
    rng = random.Random(5)
    for _ in range(80):
        rank = rng.randint(1, 3)
        a, b = rand_poly(rng, rank), rand_poly(rng, rank)
        for p in (laurent.add(a, b), laurent.mul(a, b), laurent.sub(a, b)):
            assert all(c != 0 for c in p.terms.values())


def test_div_roundtrip_randomized():
    rng = random.Random(99)
    for _ in range(120):
        rank = rng.randint(1, 3)
        a = rand_poly(rng, rank)
        b = rand_poly(rng, rank)
        if b.is_zero():
            continue
        assert laurent.exact_div(laurent.mul(a, b), b) == a


def test_evaluate_is_ring_homomorphism():
    rng = random.Random(41)
    for _ in range(40):
        rank = rng.randint(1, 3)
        a, b = rand_poly(rng, rank), rand_poly(rng, rank)
        pt = RationalPoint([Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(rank)])
        assert laurent.evaluate(laurent.mul(a, b), pt) == laurent.evaluate(a, pt) * laurent.evaluate(b, pt)
        assert laurent.evaluate(laurent.add(a, b), pt) == laurent.evaluate(a, pt) + laurent.evaluate(b, pt)


def test_substitute_ones():
    p = LaurentPoly(3, {(1, 2, 0): 1, (0, 2, -1): 1})
    q = laurent.substitute_ones(p, [1])
    assert q == LaurentPoly(2, {(1, 0): 1, (0, -1): 1})
    collapsed = laurent.substitute_ones(LaurentPoly(2, {(1, 0): 1, (1, 1): -1}), [1])
    assert collapsed.is_zero()


def test_terms_json_roundtrip():
    rng = random.Random(3)
    for _ in range(20):
        p = rand_poly(rng, 3)
        assert laurent.parse_terms(3, laurent.dump_terms(p)) == p


def test_power():
    p = laurent.add(X1, X2)
    assert laurent.power(p, 0).is_one()
    assert laurent.power(p, 3) == laurent.mul(p, laurent.mul(p, p))
    with pytest.raises(ValueError):
        laurent.power(p, -1)


def test_hash_equals_consistency():
    a = LaurentPoly(2, {(1, 0): 1, (0, 1): 2})
    b = LaurentPoly(2, {(0, 1): 2, (1, 0): 1})
    assert a == b and hash(a) == hash(b)
    assert len({a, b}) == 1
