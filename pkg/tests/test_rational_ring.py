"""The local ring A(t_1,...,t_k): units, residues, delta test, base change."""

import random

import pytest

from milnorforge.arith.local import laurent_ctx, padic_ctx
from milnorforge.arith.poly import Poly
from milnorforge.errors import NonUnitEntry, NotAUnit, ResidueReducible
from milnorforge.rational_ring import (
    MultiPoly,
    RationalRingElem,
    base_change_roundtrip,
    delta_kernel_check,
    is_unit,
    random_multipoly,
    random_ratring_elem,
    residue_map,
    s_member,
)
from milnorforge.symbols import MilnorClass, SymbolTerm, symbol


CONTEXTS = [padic_ctx(5, 8), padic_ctx(2, 8), laurent_ctx(3, 8)]


def mp(A, pairs):
    return MultiPoly(A, 1, {(e,): A.from_int(c) for e, c in pairs})


# --- S-membership and units ----------------------------------------------

def test_s_membership_needs_a_unit_coefficient():
    A = padic_ctx(5, 8)
    assert s_member(mp(A, [(0, 5), (1, 2)]))       # 2 is a unit
    assert not s_member(mp(A, [(0, 5), (1, 10)]))  # all coefficients in (p)
    assert not s_member(MultiPoly.zero(A, 1))


def test_construction_rejects_non_s_denominator():
    A = padic_ctx(5, 8)
    with pytest.raises(NotAUnit):
        RationalRingElem(A, 1, mp(A, [(0, 1)]), mp(A, [(0, 5), (1, 10)]))


def test_unit_iff_numerator_in_s():
    A = padic_ctx(3, 8)
    x = RationalRingElem(A, 1, mp(A, [(0, 1), (1, 6)]), mp(A, [(0, 7), (1, 1)]))
    assert is_unit(x)
    y = RationalRingElem(A, 1, mp(A, [(0, 3)]), mp(A, [(0, 7), (1, 1)]))
    assert not is_unit(y)


@pytest.mark.parametrize("A", CONTEXTS)
def test_random_s_members_stay_in_s_under_multiplication(A):
    rng = random.Random(A.q)
    for _ in range(25):
        f = random_multipoly(A, 1, rng, ensure_s=True)
        g = random_multipoly(A, 1, rng, ensure_s=True)
        assert s_member(f) and s_member(g)
        assert s_member(f * g)


# --- residue map ----------------------------------------------------------

def test_residue_map_frozen_example():
    A = padic_ctx(3, 8)
    x = RationalRingElem(A, 1, mp(A, [(0, 1), (1, 6)]), mp(A, [(0, 7), (1, 1)]))
    r = residue_map(x)
    # (6t + 1)/(t + 7) reduces to 1/(1 + t) over F_3
    assert r.serialize() == "(ff(3,1):g^0)/(ff(3,1):g^0 + ff(3,1):g^0*t^1)"


@pytest.mark.parametrize("A", CONTEXTS)
def test_residue_map_is_multiplicative(A):
    rng = random.Random(A.q + 1)
    for _ in range(15):
        x = random_ratring_elem(A, 1, rng)
        y = random_ratring_elem(A, 1, rng)
        assert residue_map(x * y) == residue_map(x) * residue_map(y)


# --- delta-kernel test ----------------------------------------------------

def test_delta_true_on_constant_entry_classes():
    A = padic_ctx(5, 8)
    rng = random.Random(9)
    for _ in range(20):
        entries = [RationalRingElem.const(A, 1, A.random_unit(rng))
                   for _ in range(2)]
        assert delta_kernel_check(symbol(A, entries))


def test_delta_false_on_genuinely_varying_symbol():
    A = laurent_ctx(3, 8)
    tvar = RationalRingElem(A, 1, mp(A, [(0, 1), (1, 1)]), mp(A, [(0, 1)]))
    two = RationalRingElem.const(A, 1, A.from_int(2))
    s = symbol(A, [tvar, two])  # {1 + t, 2} moves with t
    assert not delta_kernel_check(s)


def test_delta_rejects_non_unit_entries():
    A = padic_ctx(5, 8)
    bad = RationalRingElem(A, 1, mp(A, [(0, 5)]), mp(A, [(0, 1)]))
    with pytest.raises(NonUnitEntry):
        delta_kernel_check(symbol(A, [bad, RationalRingElem.const(A, 1, A.one())]))


def test_delta_vacuous_above_degree_two():
    A = padic_ctx(5, 8)
    tvar = RationalRingElem(A, 1, mp(A, [(0, 1), (1, 1)]), mp(A, [(0, 1)]))
    c = RationalRingElem.const(A, 1, A.from_int(2))
    assert delta_kernel_check(symbol(A, [tvar, c, c]))


# --- base change ----------------------------------------------------------

def test_base_change_rejects_reducible_residue():
    A = padic_ctx(5, 8)
    pi = Poly.from_ints(A, [-1, 0, 1])  # X^2 - 1 splits mod 5
    with pytest.raises(ResidueReducible):
        base_change_roundtrip(A, pi, random.Random(0))


def test_base_change_quadratic_over_z5():
    A = padic_ctx(5, 8)
    pi = Poly.from_ints(A, [2, 0, 1])  # X^2 + 2 irreducible mod 5
    assert base_change_roundtrip(A, pi, random.Random(1), samples=4)


def test_base_change_cubic_over_z3():
    # regression: cubic towers exercise cancellation in the Gaussian
    # elimination that inverts denominators of the B-representation
    A = padic_ctx(3, 5)
    pi = Poly.from_ints(A, [1, 0, 2, 1])  # X^3 + 2X^2 + 1 irreducible mod 3
    assert base_change_roundtrip(A, pi, random.Random(2), samples=3)


def test_base_change_over_laurent_base():
    A = laurent_ctx(3, 8)
    pi = Poly.from_ints(A, [1, 0, 1])  # X^2 + 1 irreducible over F_3
    assert base_change_roundtrip(A, pi, random.Random(3), samples=3)
