"""p-adic and Laurent-series arithmetic, Hensel lifting, precision tracking.

Equality of inexact elements means indistinguishability at the shared
working precision; sums that cancel below the available absolute precision
become approximate zeros that remember how far they are known to vanish.
"""

import pytest
from hypothesis import given, settings, strategies as st

from milnorforge.arith.laurent import LaurentSeries
from milnorforge.arith.local import (
    hensel_lift,
    laurent_ctx,
    padic_ctx,
    principal_unit_root,
    teichmuller,
    unit_decompose,
)
from milnorforge.arith.padic import PadicNumber
from milnorforge.arith.poly import Poly
from milnorforge.errors import MilnorForgeError, NotAUnit


# --- p-adic ring structure ------------------------------------------------

def test_padic_from_int_valuation_and_unit():
    x = PadicNumber.from_int(5, 8, 150)  # 150 = 6 * 5^2
    assert x.val == 2 and x.unit == 6


def test_padic_from_rational():
    x = PadicNumber.from_rational(7, 6, 1, 2)  # 1/2 in Z_7
    two = PadicNumber.from_int(7, 6, 2)
    assert x * two == PadicNumber.from_int(7, 6, 1)


@settings(max_examples=80)
@given(st.integers(-400, 400), st.integers(-400, 400), st.integers(-400, 400))
def test_padic_matches_integer_arithmetic(a, b, c):
    mk = lambda n: PadicNumber.from_int(3, 10, n)
    assert mk(a) + mk(b) == mk(a + b)
    assert mk(a) * mk(b) == mk(a * b)
    assert mk(a) * (mk(b) + mk(c)) == mk(a * b) + mk(a * c)
    assert mk(a) - mk(a) == mk(0)


def test_padic_inverse_of_unit():
    x = PadicNumber.from_int(5, 8, 7)
    assert (x * x.inverse()).is_one()
    with pytest.raises(NotAUnit):
        PadicNumber.zero(5, 8).inverse()


# --- precision soundness --------------------------------------------------

def test_cancellation_produces_bounded_zero():
    p = padic_ctx(5, 4)
    x = p.from_int(1 + 5 ** 4)  # indistinguishable from 1 at precision 4
    d = x - p.one()
    assert d.is_zero()
    assert d.zero_prec == 4  # known to vanish only below 5^4


def test_bounded_zero_does_not_claim_unknown_digits():
    # (x - 1) + 5^6 must not resurrect digits the cancellation never knew.
    p = padic_ctx(5, 4)
    d = p.from_int(1 + 5 ** 4) - p.one()
    s = d + p.from_int(5 ** 6)
    assert s.is_zero()
    assert s.zero_prec == 4


def test_bounded_zero_clips_smaller_valuation_summand():
    p = padic_ctx(5, 4)
    d = p.from_int(1 + 5 ** 4) - p.one()  # zero up to 5^4
    s = d + p.from_int(5)
    assert not s.is_zero()
    assert s.val == 1
    assert s.prec == 3  # absolute precision stays capped at 5^4


def test_bounded_zero_scales_under_multiplication():
    p = padic_ctx(5, 4)
    d = p.from_int(1 + 5 ** 4) - p.one()
    prod = d * p.from_int(25)
    assert prod.is_zero() and prod.zero_prec == 6
    sq = d ** 2
    assert sq.is_zero() and sq.zero_prec == 8


def test_exact_zero_annihilates():
    p = padic_ctx(5, 4)
    z = p.zero()
    assert (z * p.from_int(7)).zero_prec is None
    assert (z + p.from_int(7)) == p.from_int(7)


def test_equality_is_indistinguishability_at_working_precision():
    p = padic_ctx(5, 4)
    assert p.from_int(1 + 5 ** 4) == p.one()
    assert p.from_int(1 + 5 ** 3) != p.one()


def test_laurent_cancellation_tracks_absolute_precision():
    L = laurent_ctx(3, 4)
    t = L.uniformizer()
    x = L.one() + t ** 4
    d = x - L.one()
    assert d.is_zero() and d.zero_prec == 4
    s = d + t
    assert s.val == 1 and s.prec == 3


def test_mixed_valuation_sum_limits_absolute_precision():
    # v=2 at rel prec 4 (abs 6) plus v=0 at rel prec 6 (abs 6): abs prec 6.
    x = PadicNumber(5, 4, 2, 3)
    y = PadicNumber(5, 6, 0, 1)
    s = x + y
    assert s.val == 0 and s.abs_prec() == 6


# --- Laurent series -------------------------------------------------------

def test_laurent_unit_times_inverse_is_one():
    L = laurent_ctx(5, 8)
    t = L.uniformizer()
    x = L.from_int(2) + t + t ** 3
    assert (x * x.inverse()).is_one()


def test_laurent_residue_of_unit():
    L = laurent_ctx(9, 6)
    x = L.from_int(2) + L.uniformizer()
    assert x.residue() == L.residue_field.from_int(2)
    with pytest.raises(NotAUnit):
        L.uniformizer().residue()


def test_laurent_parse_serialize_round_trip():
    L = laurent_ctx(3, 5)
    x = L.from_int(2) * L.uniformizer() ** -2 + L.one()
    assert L.parse(x.serialize()) == x


def test_padic_parse_serialize_round_trip():
    p = padic_ctx(7, 6)
    x = p.from_int(3 * 49)
    assert p.parse(x.serialize()) == x
    assert p.parse(p.zero().serialize()).is_zero()


# --- Hensel, Teichmuller, principal-unit roots ----------------------------

def test_hensel_square_root_of_2_in_z7():
    p = padic_ctx(7, 8)
    f = Poly.from_ints(p, [-2, 0, 1])
    r = hensel_lift(p, f, p.from_int(3), 8)
    assert r * r == p.from_int(2)
    assert r.residue_int() == 3


def test_hensel_rejects_singular_start():
    p = padic_ctx(5, 8)
    f = Poly.from_ints(p, [-25, 0, 1])  # double root mod 5 at 0
    with pytest.raises(MilnorForgeError):
        hensel_lift(p, f, p.zero(), 8)


@pytest.mark.parametrize("ctx", [padic_ctx(5, 8), laurent_ctx(7, 8), laurent_ctx(4, 6)])
def test_teichmuller_is_root_of_unity_lifting_residue(ctx):
    q = ctx.q
    for c in ctx.residue_field.nonzero_elements():
        w = teichmuller(ctx, ctx.lift_residue(c))
        assert ctx.residue(w) == c
        assert (w ** (q - 1)).is_one()


def test_unit_decompose_splits_valuation_and_unit():
    p = padic_ctx(5, 8)
    x = p.from_int(7 * 25)
    k, u = unit_decompose(x)
    assert k == 2
    assert u.is_unit()
    assert u * p.uniformizer() ** 2 == x


def test_principal_unit_root_when_ell_prime_to_p():
    p = padic_ctx(5, 8)
    pu = p.one() + p.uniformizer() * p.from_int(3)
    r = principal_unit_root(p, pu, 3)
    assert r ** 3 == pu
    assert p.is_principal_unit(r)
