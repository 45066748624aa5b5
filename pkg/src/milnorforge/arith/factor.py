"""Polynomial factorization over finite fields.

Distinct-degree splitting followed by Cantor-Zassenhaus equal-degree
splitting.  The equal-degree stage is randomized but driven by a seeded
generator, so identical inputs and seeds factor identically.
"""

from __future__ import annotations

import random

from ..errors import ZeroPolynomial
from .finite_field import FiniteFieldCtx
from .poly import Poly

DEFAULT_FACTOR_SEED = 0x5EED


def _pth_root_poly(f: Poly) -> Poly:
    """For f with zero derivative over F_q, the g with g^p = f."""
    ctx: FiniteFieldCtx = f.ctx
    p = ctx.p
    root_exp = p ** (ctx.f - 1)  # a -> a^(q/p) is the inverse Frobenius
    coeffs = []
    for i in range(0, len(f.coeffs), p):
        coeffs.append(f.coeffs[i] ** root_exp)
    return Poly(ctx, coeffs)


def _distinct_part(f: Poly) -> Poly:
    """Product of the distinct monic irreducible factors of monic f."""
    if f.degree <= 0:
        return Poly.one(f.ctx)
    fp = f.derivative()
    if fp.is_zero():
        return _distinct_part(_pth_root_poly(f))
    g = f.gcd(fp)
    w = f // g
    rest = _distinct_part(g)
    return (w * (rest // rest.gcd(w))).monic()


def _equal_degree_split(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Split a squarefree product of degree-d irreducibles."""
    ctx: FiniteFieldCtx = f.ctx
    if f.degree == d:
        return [f]
    q = ctx.q
    n = f.degree
    while True:
        r = Poly(ctx, [ctx.random_element(rng) for _ in range(n)])
        if r.degree < 1:
            continue
        if ctx.p == 2:
            # trace map over F_2 inside F_{q^d}
            acc = Poly.zero(ctx)
            cur = r % f
            for _ in range(ctx.f * d):
                acc = (acc + cur) % f
                cur = (cur * cur) % f
            g = f.gcd(acc)
        else:
            s = r.pow_mod((q ** d - 1) // 2, f)
            g = f.gcd(s - Poly.one(ctx))
        if 0 < g.degree < n:
            return _equal_degree_split(g, d, rng) + _equal_degree_split(f // g, d, rng)


def _factor_squarefree(f: Poly, rng: random.Random) -> list[Poly]:
    """Irreducible factors of a squarefree monic polynomial."""
    ctx: FiniteFieldCtx = f.ctx
    q = ctx.q
    out: list[Poly] = []
    x = Poly.x(ctx)
    h = x
    d = 0
    while f.degree > 0:
        d += 1
        if 2 * d > f.degree:
            out.append(f)
            break
        h = h.pow_mod(q, f)
        g = f.gcd(h - x)
        if g.degree > 0:
            out.extend(_equal_degree_split(g, d, rng))
            f = f // g
            h = h % f
    return out


def _sort_key(p: Poly):
    return (p.degree, tuple(c.enc for c in p.coeffs))


def poly_factor(f: Poly, seed: int = DEFAULT_FACTOR_SEED) -> list[tuple[Poly, int]]:
    """Factor f over its finite field into monic irreducibles.

    Returns (factor, multiplicity) pairs sorted by (degree, coefficients);
    the product of factor^multiplicity times lc(f) re-multiplies to f.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if f.degree == 0:
        return []
    rng = random.Random(seed)
    monic = f.monic()
    distinct = _factor_squarefree(_distinct_part(monic), rng)
    out = []
    for irr in distinct:
        mult = 0
        g = monic
        while True:
            quot, rem = divmod(g, irr)
            if not rem.is_zero():
                break
            mult += 1
            g = quot
        out.append((irr, mult))
    out.sort(key=lambda pm: _sort_key(pm[0]))
    # exactness guard: re-multiply
    check = Poly.const(f.ctx, f.lc)
    for irr, m in out:
        check = check * irr ** m
    assert check == f, "factorization failed to re-multiply"
    return out


def is_irreducible(f: Poly) -> bool:
    """Irreducibility over the finite field of the coefficients."""
    if f.degree <= 0:
        return False
    if f.degree == 1:
        return True
    facs = poly_factor(f)
    return len(facs) == 1 and facs[0][1] == 1
