"""Rational function fields, places, quotient fields, irreducibility tests."""

import random

import pytest

from milnorforge.arith.finite_field import ff_ctx
from milnorforge.arith.poly import Poly
from milnorforge.errors import NotAUnit, NotIrreducible
from milnorforge.ratfunc import (
    Place,
    QuotCtx,
    RatFuncCtx,
    ff_sqrt,
    irreducible_by_specialization,
    irreducible_over,
    monic_irreducible_factors,
    ratfunc_sqrt,
    support,
    tame_at,
)
from milnorforge.symbols import symbol


def F3t():
    return RatFuncCtx(ff_ctx(3))


def test_fractions_reduce_to_lowest_terms():
    F = F3t()
    t = F.gen()
    x = (t * t - F.one()) / (t - F.one())  # (t-1)(t+1)/(t-1) = t+1
    assert x == t + F.one()


def test_field_axioms_on_random_elements():
    F = RatFuncCtx(ff_ctx(5))
    rng = random.Random(7)
    for _ in range(30):
        x = F.random_nonzero(rng)
        y = F.random_element(rng)
        assert x * x.inverse() == F.one()
        assert x * (y + F.one()) == x * y + x
        assert (x + y) - y == x


def test_support_lists_zeros_and_poles():
    F = F3t()
    t = F.gen()
    x = (t * t - F.one()) / t
    places = support(x)
    assert len(places) == 3  # t-1, t+1 and t (pole); infinity is implicit
    assert all(not p.is_infinite for p in places)


def test_place_valuations_and_unit_part():
    F = F3t()
    t = F.gen()
    at_t = Place.finite(F, Poly.from_ints(F.base, [0, 1]))
    x = (t * t - F.one()) / t
    assert at_t.valuation(x) == -1
    assert at_t.residue(at_t.unit_part(x)) == at_t.residue_ctx().from_int(-1)
    with pytest.raises(NotAUnit):
        at_t.residue(x)


def test_infinity_place_valuation_is_minus_degree():
    F = F3t()
    t = F.gen()
    inf = Place.infinity(F)
    assert inf.valuation(t) == -1
    assert inf.valuation((t ** 3 + F.one()) / t) == -2
    assert inf.valuation(F.from_int(2)) == 0


def test_sum_of_valuations_times_degree_is_zero():
    # deg of a principal divisor vanishes: sum_v deg(v) * v(x) = 0
    F = RatFuncCtx(ff_ctx(5))
    rng = random.Random(13)
    inf = Place.infinity(F)
    for _ in range(20):
        x = F.random_nonzero(rng, max_deg=3)
        total = sum(p.degree * p.valuation(x) for p in support(x))
        total += inf.valuation(x)
        assert total == 0


def test_tame_at_frozen_example():
    F = F3t()
    t = F.gen()
    at_t = Place.finite(F, Poly.from_ints(F.base, [0, 1]))
    a = symbol(F, [t, t - F.one()])
    assert tame_at(at_t, a).serialize() == "deg:1 {ff(3,1):g^1}"


def test_tame_at_place_away_from_support_is_zero():
    F = F3t()
    t = F.gen()
    away = Place.finite(F, Poly.from_ints(F.base, [1, 0, 1]))
    a = symbol(F, [t, t - F.one()])
    assert tame_at(away, a).is_zero()


def test_monic_irreducible_factors_frozen():
    k = ff_ctx(3)
    f = Poly.from_ints(k, [1, 0, 1]) * Poly.from_ints(k, [2, 1]) ** 2
    factors = monic_irreducible_factors(f)
    assert [(p.serialize(), m) for p, m in factors] == [
        ("ff(3,1):g^1 + ff(3,1):g^0*t^1", 2),
        ("ff(3,1):g^0 + ff(3,1):g^0*t^2", 1),
    ]


def test_quotient_field_adjoined_root():
    F = F3t()
    # theta^2 = -1 in F_3(t)[X]/(X^2+1)
    B = QuotCtx(F, Poly.from_ints(F, [1, 0, 1]))
    th = B.theta()
    assert th * th == B.from_int(-1)
    assert (th * th.inverse()).is_one()
    assert th.norm_to_base() == F.one()


def test_quotient_field_with_transcendental_constant():
    F = F3t()
    t = F.gen()
    # X^2 - t is irreducible: theta is a square root of t
    B = QuotCtx(F, Poly(F, [-t, F.zero(), F.one()]))
    th = B.theta()
    assert th * th == B.from_base(t)


def test_irreducibility_over_function_field():
    F = F3t()
    t = F.gen()
    assert irreducible_over(Poly(F, [-t, F.zero(), F.one()]))       # X^2 - t
    assert not irreducible_over(Poly(F, [-t * t, F.zero(), F.one()]))  # X^2 - t^2
    assert irreducible_by_specialization(Poly(F, [-t, F.zero(), F.one()]))


def test_square_roots():
    k = ff_ctx(3)
    F = F3t()
    t = F.gen()
    assert ff_sqrt(k.from_int(1)) == k.from_int(1)
    r = ratfunc_sqrt(t * t)
    assert r * r == t * t
    assert ratfunc_sqrt(t) is None
