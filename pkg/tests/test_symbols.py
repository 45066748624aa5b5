"""Symbol calculus: formal classes, rewriting moves, K-groups of finite fields."""

import random

import pytest

from milnorforge.arith.finite_field import ff_ctx, ff_ctx_q
from milnorforge.errors import (
    FactorizationMismatch,
    PatternMismatch,
    ZeroEntry,
)
from milnorforge.symbols import (
    MINUS_SELF,
    SELF_TO_MINUS_ONE,
    MilnorClass,
    SymbolTerm,
    apply_identity,
    expand_entry,
    ff_kgroup,
    is_steinberg_relator,
    swap,
    symbol,
)


def test_symbol_entries_must_be_nonzero():
    k = ff_ctx(5)
    with pytest.raises(ZeroEntry):
        symbol(k, [k.one(), k.zero()])


def test_class_addition_collects_matching_terms():
    k = ff_ctx(5)
    a = symbol(k, [k.from_int(2), k.from_int(3)])
    s = a + a
    assert len(s.terms) == 1 and s.terms[0].coeff == 2
    assert (a - a).is_zero()


def test_scale_and_neg():
    k = ff_ctx(7)
    a = symbol(k, [k.from_int(3)])
    assert (a.scale(3) - a - a - a).is_zero()
    assert (a + (-a)).is_zero()


def test_product_concatenates_entries():
    k = ff_ctx(7)
    a = symbol(k, [k.from_int(2)])
    b = symbol(k, [k.from_int(3), k.from_int(5)])
    ab = a * b
    assert ab.degree == 3
    t = ab.single_term()
    assert [e.as_int() for e in t.entries] == [2, 3, 5]


def test_expand_entry_bilinearity_move():
    k = ff_ctx(7)
    a = symbol(k, [k.from_int(6), k.from_int(5)])
    out = expand_entry(a, 0, (k.from_int(2), k.from_int(3)))
    assert len(out.terms) == 2
    assert all(t.coeff == 1 for t in out.terms)
    with pytest.raises(FactorizationMismatch):
        expand_entry(a, 0, (k.from_int(2), k.from_int(2)))


def test_swap_flips_sign():
    k = ff_ctx(5)
    a = symbol(k, [k.from_int(2), k.from_int(3)])
    b = swap(a, 0, 1)
    assert b.single_term().coeff == -1
    assert (swap(b, 0, 1) - a).is_zero()


def test_minus_self_identity():
    k = ff_ctx(7)
    a = symbol(k, [k.from_int(3), k.from_int(-3)])
    assert apply_identity(a, MINUS_SELF, 0).is_zero()
    b = symbol(k, [k.from_int(3), k.from_int(5)])
    with pytest.raises(PatternMismatch):
        apply_identity(b, MINUS_SELF, 0)


def test_self_to_minus_one_identity():
    k = ff_ctx(7)
    a = symbol(k, [k.from_int(3), k.from_int(3)])
    out = apply_identity(a, SELF_TO_MINUS_ONE, 0)
    t = out.single_term()
    assert t.entries[1] == k.minus_one()


def test_steinberg_relator_detection():
    k = ff_ctx(7)
    yes = SymbolTerm(1, (k.from_int(3), k.from_int(-2)))  # 3 + 5 = 1 mod 7
    no = SymbolTerm(1, (k.from_int(3), k.from_int(3)))
    assert is_steinberg_relator(yes)
    assert not is_steinberg_relator(no)


FIELD_SIZES = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


@pytest.mark.parametrize("q", FIELD_SIZES)
def test_k1_of_finite_field_is_cyclic(q):
    expect = [] if q == 2 else [q - 1]
    assert ff_kgroup(q, 1).invariant_factors == expect


@pytest.mark.parametrize("q", FIELD_SIZES)
@pytest.mark.parametrize("n", [2, 3])
def test_higher_k_of_finite_field_vanishes(q, n):
    assert ff_kgroup(q, n).invariant_factors == []


def test_k2_kills_random_symbols():
    rng = random.Random(3)
    for q in (5, 9):
        G = ff_kgroup(q, 2)
        k = ff_ctx_q(q)
        for _ in range(20):
            a = symbol(k, [k.random_nonzero(rng), k.random_nonzero(rng)])
            assert G.image_is_zero(a)


def test_k1_vector_counts_generator_exponent():
    G = ff_kgroup(7, 1)
    k = ff_ctx_q(7)
    g = k.gen()
    assert G.vector_of(symbol(k, [g ** 4])) == [4]
    assert not G.image_is_zero(symbol(k, [g]))
    assert G.image_is_zero(symbol(k, [k.one()]))


def test_serialize_parseable_shape():
    k = ff_ctx(5)
    a = symbol(k, [k.from_int(2), k.from_int(3)]).scale(2) - symbol(k, [k.one(), k.one()])
    s = a.serialize()
    assert s.startswith("deg:2 ")
    assert "{" in s and "}" in s
