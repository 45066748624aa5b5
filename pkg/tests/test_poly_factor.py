"""Univariate polynomials and factorization over finite fields."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from milnorforge.arith.factor import is_irreducible, poly_factor
from milnorforge.arith.finite_field import ff_ctx
from milnorforge.arith.poly import Poly
from milnorforge.errors import ZeroPolynomial


def P(k, ints):
    return Poly.from_ints(k, ints)


def test_division_with_remainder():
    k = ff_ctx(5)
    a = P(k, [1, 2, 0, 3, 4])
    b = P(k, [2, 1, 1])
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_zero_division_raises():
    k = ff_ctx(3)
    with pytest.raises(ZeroPolynomial):
        divmod(P(k, [1, 1]), Poly.zero(k))


def test_gcd_of_products_contains_common_factor():
    k = ff_ctx(7)
    f = P(k, [1, 1])       # t + 1
    a = f * P(k, [2, 0, 1])
    b = f * P(k, [3, 1])
    g = a.gcd(b)
    assert g.divides(a) and g.divides(b)
    assert f.monic().divides(g)


def test_xgcd_bezout_identity():
    k = ff_ctx(5)
    a = P(k, [1, 0, 2, 1])
    b = P(k, [3, 1, 1])
    g, s, t = a.xgcd(b)
    assert s * a + t * b == g


def test_resultant_detects_common_roots():
    k = ff_ctx(7)
    # t - 2 and t^2 - 4 share the root 2: resultant vanishes
    assert (P(k, [-2, 1]).resultant(P(k, [-4, 0, 1]))).is_zero()
    # t - 2 and t - 3 do not
    assert not (P(k, [-2, 1]).resultant(P(k, [-3, 1]))).is_zero()


def test_resultant_of_linears_is_difference_of_roots():
    k = ff_ctx(11)
    for a in range(11):
        for b in range(11):
            # Res(t - a, t - b) = a - b in this convention
            r = P(k, [-a, 1]).resultant(P(k, [-b, 1]))
            assert r == k.from_int(a - b)


def test_frozen_factorization_square_over_f2():
    k = ff_ctx(2)
    # t^4 + t^2 + 1 = (t^2 + t + 1)^2 over F_2
    f = P(k, [1, 0, 1, 0, 1])
    assert poly_factor(f) == [(P(k, [1, 1, 1]), 2)]


def test_frozen_factorization_split_over_f5():
    k = ff_ctx(5)
    # t^2 - 1 = (t + 1)(t + 4) over F_5
    f = P(k, [-1, 0, 1])
    factors = poly_factor(f)
    assert sorted((p.serialize(), m) for p, m in factors) == sorted(
        [(P(k, [1, 1]).serialize(), 1), (P(k, [4, 1]).serialize(), 1)])


@pytest.mark.parametrize("ints,expect", [
    ([1, 1, 1], True),    # t^2 + t + 1 irreducible over F_2
    ([1, 0, 1], False),   # t^2 + 1 = (t+1)^2 over F_2
    ([1, 1, 0, 0, 1], True),  # t^4 + t + 1 irreducible over F_2
])
def test_irreducibility_over_f2(ints, expect):
    k = ff_ctx(2)
    assert is_irreducible(P(k, ints)) is expect


def test_factorization_reassembles_and_respects_multiplicity():
    rng = random.Random(11)
    k = ff_ctx(3)
    for _ in range(25):
        f = Poly(k, [k.random_element(rng) for _ in range(rng.randint(1, 6))])
        if f.is_zero() or f.is_const():
            continue
        f = f.monic()
        prod = Poly.one(k)
        for p, m in poly_factor(f):
            assert is_irreducible(p)
            prod = prod * p ** m
        assert prod == f


@settings(max_examples=60)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=5),
       st.lists(st.integers(0, 4), min_size=1, max_size=5))
def test_degree_of_product_adds(a, b):
    k = ff_ctx(5)
    f, g = P(k, a), P(k, b)
    if f.is_zero() or g.is_zero():
        assert (f * g).is_zero()
    else:
        assert (f * g).degree == f.degree + g.degree


def test_eval_and_compose_agree():
    k = ff_ctx(7)
    f = P(k, [1, 2, 3])
    g = P(k, [4, 5])
    h = f.compose(g)
    for n in range(7):
        x = k.from_int(n)
        assert h.eval(x) == f.eval(g.eval(x))
