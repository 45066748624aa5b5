"""Finite field contexts: table construction, arithmetic, discrete logs."""

import pytest
from hypothesis import given, strategies as st

from milnorforge.arith.finite_field import ff_ctx, ff_ctx_q, ff_embedding
from milnorforge.errors import MilnorForgeError, NotAUnit


FIELD_SIZES = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


@pytest.mark.parametrize("q", FIELD_SIZES)
def test_multiplicative_group_is_cyclic_of_order_q_minus_1(q):
    k = ff_ctx_q(q)
    g = k.gen()
    seen = set()
    x = k.one()
    for _ in range(q - 1):
        seen.add(x.enc)
        x = x * g
    assert x.is_one()
    assert len(seen) == q - 1


@pytest.mark.parametrize("q", FIELD_SIZES)
def test_dlog_inverts_generator_power(q):
    k = ff_ctx_q(q)
    for e in range(q - 1):
        assert k.from_exp(e).dlog() == e


def test_prime_field_from_int_matches_mod_p():
    k = ff_ctx(7)
    for n in range(-10, 20):
        assert k.from_int(n).as_int() == n % 7


def test_frozen_f9_arithmetic():
    # F_9 = F_3[x]/(modulus); g generates the 8-element unit group.
    k = ff_ctx(3, 2)
    g = k.gen()
    assert (g ** 8).is_one()
    assert not (g ** 4).is_one()
    # g^4 is the unique element of order 2, i.e. -1
    assert g ** 4 == k.minus_one()


def test_zero_has_no_inverse_or_dlog():
    k = ff_ctx(5)
    with pytest.raises(MilnorForgeError):
        k.zero().inverse()
    with pytest.raises(NotAUnit):
        k.zero().dlog()


def test_embedding_f2_into_f4_is_a_ring_map():
    small = ff_ctx(2)
    big = ff_ctx(2, 2)
    emb = ff_embedding(small, big)
    for a in small.elements():
        for b in small.elements():
            assert emb(a + b) == emb(a) + emb(b)
            assert emb(a * b) == emb(a) * emb(b)
    assert emb(small.one()).is_one()


@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12))
def test_f13_field_axioms(a, b, c):
    k = ff_ctx(13)
    x, y, z = k.from_int(a), k.from_int(b), k.from_int(c)
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == k.zero()
    if not x.is_zero():
        assert x * x.inverse() == k.one()


@given(st.integers(0, 15), st.integers(0, 15))
def test_f16_commutative_multiplication(a, b):
    k = ff_ctx(2, 4)
    x, y = k.from_enc(a), k.from_enc(b)
    assert x * y == y * x
    assert x + y == y + x
