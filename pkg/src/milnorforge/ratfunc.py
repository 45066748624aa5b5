"""Rational function fields, simple extensions and places.

RatFuncCtx is the field of fractions of Poly over any exact coefficient
field, so the same class gives F_q(t) and, one level up, F(X) for
F = F_q(t).  QuotCtx is the quotient field F[X]/(pi).  Places of a
rational function field (monic irreducibles plus infinity) come with
valuations, residue maps, and a per-place tame symbol engine on Milnor
classes, which is everything the Bass-Tate constructions consume.
"""

from __future__ import annotations

from .arith.factor import is_irreducible, poly_factor
from .arith.finite_field import FiniteFieldCtx
from .arith.poly import Poly
from .errors import (
    DegreeTooLarge,
    NotAUnit,
    NotIrreducible,
    NotMonic,
    ZeroElement,
)
from .symbols import MilnorClass, SymbolTerm

# --------------------------------------------------------------------------
# field of fractions of a polynomial ring
# --------------------------------------------------------------------------


class RatFuncCtx:
    """Field of fractions of base[var]; base is any exact field context."""

    __slots__ = ("base", "var")

    def __init__(self, base, var: str = "t"):
        self.base = base
        self.var = var

    def zero(self):
        return RatFuncElem(self, Poly.zero(self.base), Poly.one(self.base))

    def one(self):
        return RatFuncElem(self, Poly.one(self.base), Poly.one(self.base))

    def minus_one(self):
        return RatFuncElem(self, Poly.const(self.base, self.base.minus_one()),
                           Poly.one(self.base))

    def from_int(self, n: int):
        return self.from_poly(Poly.const(self.base, self.base.from_int(n)))

    def from_poly(self, p: Poly) -> "RatFuncElem":
        return RatFuncElem(self, p, Poly.one(self.base))

    def from_const(self, c) -> "RatFuncElem":
        return self.from_poly(Poly.const(self.base, c))

    def gen(self) -> "RatFuncElem":
        """The variable itself (t, or X one level up)."""
        return self.from_poly(Poly.x(self.base))

    def random_poly(self, rng, max_deg: int) -> Poly:
        d = rng.randrange(0, max_deg + 1)
        coeffs = [self.base.random_element(rng) for _ in range(d)] \
            if d else []
        coeffs.append(self.base.random_nonzero(rng))
        return Poly(self.base, coeffs)

    def random_nonzero(self, rng, max_deg: int = 2) -> "RatFuncElem":
        return RatFuncElem(self, self.random_poly(rng, max_deg),
                           self.random_poly(rng, max_deg).monic())

    def random_element(self, rng, max_deg: int = 2) -> "RatFuncElem":
        if rng.randrange(6) == 0:
            return self.zero()
        return self.random_nonzero(rng, max_deg)

    def __eq__(self, other):
        return (isinstance(other, RatFuncCtx) and self.base == other.base
                and self.var == other.var)

    def __hash__(self):
        return hash(("ratfunc", self.var, self.base))

    def __repr__(self):
        return f"RatFuncCtx({self.base!r}, {self.var})"


class RatFuncElem:
    """Reduced fraction num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: RatFuncCtx, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroElement("zero denominator")
        g = num.gcd(den)
        if not g.is_one() and not g.is_zero():
            num = num // g
            den = den // g
        if not den.is_monic():
            c = den.lc.inverse()
            num = num.scale(c)
            den = den.scale(c)
        self.ctx = ctx
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def __add__(self, o):
        return RatFuncElem(self.ctx, self.num * o.den + o.num * self.den,
                           self.den * o.den)

    def __neg__(self):
        return RatFuncElem(self.ctx, -self.num, self.den)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        return RatFuncElem(self.ctx, self.num * o.num, self.den * o.den)

    def inverse(self):
        if self.is_zero():
            raise NotAUnit("zero has no inverse")
        return RatFuncElem(self.ctx, self.den, self.num)

    def __truediv__(self, o):
        return self * o.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFuncElem(self.ctx, self.num ** k, self.den ** k)

    def key(self):
        return ("ratfunc", self.num.key(), self.den.key())

    def __eq__(self, other):
        return (isinstance(other, RatFuncElem)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash(self.key())

    def serialize(self) -> str:
        v = self.ctx.var
        if self.den.is_one():
            return self.num.serialize(v) if not self.num.is_zero() else "0"
        return f"({self.num.serialize(v)})/({self.den.serialize(v)})"

    def __repr__(self):
        return self.serialize()


# --------------------------------------------------------------------------
# simple extensions F[X]/(pi)
# --------------------------------------------------------------------------


class QuotCtx:
    """Field base_field[X] / (pi), pi monic irreducible."""

    __slots__ = ("field", "pi")

    def __init__(self, field, pi: Poly):
        if not pi.is_monic():
            raise NotMonic("defining polynomial must be monic")
        self.field = field  # the coefficient field context of pi
        self.pi = pi

    @property
    def degree(self) -> int:
        return self.pi.degree

    def zero(self):
        return QuotElem(self, Poly.zero(self.field))

    def one(self):
        return QuotElem(self, Poly.one(self.field))

    def minus_one(self):
        return QuotElem(self, Poly.const(self.field, self.field.minus_one()))

    def from_int(self, n: int):
        return QuotElem(self, Poly.const(self.field, self.field.from_int(n)))

    def from_base(self, c):
        return QuotElem(self, Poly.const(self.field, c))

    def from_poly(self, p: Poly):
        return QuotElem(self, p % self.pi)

    def theta(self):
        """The class of X."""
        return self.from_poly(Poly.x(self.field))

    def random_nonzero(self, rng):
        while True:
            coeffs = [self.field.random_element(rng)
                      for _ in range(self.degree)]
            p = Poly(self.field, coeffs)
            if not p.is_zero():
                return QuotElem(self, p)

    def random_element(self, rng):
        if rng.randrange(6) == 0:
            return self.zero()
        return self.random_nonzero(rng)

    def __eq__(self, other):
        return (isinstance(other, QuotCtx) and self.field == other.field
                and self.pi == other.pi)

    def __hash__(self):
        return hash(("quot", self.pi.key()))

    def __repr__(self):
        return f"QuotCtx({self.pi.serialize('X')})"


class QuotElem:
    __slots__ = ("ctx", "rep")

    def __init__(self, ctx: QuotCtx, rep: Poly):
        self.ctx = ctx
        self.rep = rep % ctx.pi if rep.degree >= ctx.pi.degree else rep

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def is_one(self) -> bool:
        return self.rep.is_one()

    def __add__(self, o):
        return QuotElem(self.ctx, self.rep + o.rep)

    def __neg__(self):
        return QuotElem(self.ctx, -self.rep)

    def __sub__(self, o):
        return QuotElem(self.ctx, self.rep - o.rep)

    def __mul__(self, o):
        return QuotElem(self.ctx, (self.rep * o.rep) % self.ctx.pi)

    def inverse(self):
        if self.is_zero():
            raise NotAUnit("zero has no inverse")
        g, s, _ = self.rep.xgcd(self.ctx.pi)
        assert g.is_one(), "defining polynomial is not irreducible"
        return QuotElem(self.ctx, s % self.ctx.pi)

    def __truediv__(self, o):
        return self * o.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        res = self.ctx.one()
        base = self
        while k:
            if k & 1:
                res = res * base
            base = base * base
            k >>= 1
        return res

    def norm_to_base(self):
        """Field norm down to the coefficient field: Res(pi, rep)."""
        return self.ctx.pi.resultant(self.rep)

    def key(self):
        return ("quot", self.ctx.pi.key(), self.rep.key())

    def __eq__(self, other):
        return (isinstance(other, QuotElem) and self.ctx == other.ctx
                and self.rep == other.rep)

    def __hash__(self):
        return hash(self.key())

    def serialize(self) -> str:
        return self.rep.serialize("X")

    def __repr__(self):
        return f"[{self.serialize()}]"


# --------------------------------------------------------------------------
# factorization into monic irreducibles over the coefficient field
# --------------------------------------------------------------------------

MAX_ROOT_SEARCH_DEGREE = 3
MAX_DIVISOR_CANDIDATES = 5000


def ff_sqrt(e):
    """A square root in F_q, or None; exact via discrete logs."""
    ctx = e.ctx
    if e.is_zero():
        return e
    d = e.dlog()
    if d % 2 == 0:
        return ctx.from_exp(d // 2)
    if ctx.q % 2 == 0:  # odd group order: 2 is invertible
        return ctx.from_exp((d * (ctx.q // 2)) % (ctx.q - 1))
    return None


def ratfunc_sqrt(x: RatFuncElem):
    """A square root in F_q(t), or None; via factor multiplicities."""
    F = x.ctx
    if x.is_zero():
        return x
    lc_root = ff_sqrt(x.num.lc)
    if lc_root is None:
        return None
    num_r = Poly.const(F.base, lc_root)
    for irr, m in poly_factor(x.num):
        if m % 2:
            return None
        num_r = num_r * irr ** (m // 2)
    den_r = Poly.one(F.base)
    for irr, m in poly_factor(x.den):
        if m % 2:
            return None
        den_r = den_r * irr ** (m // 2)
    root = RatFuncElem(F, num_r, den_r)
    assert root * root == x
    return root


def _quadratic_roots(f: Poly) -> list:
    """Roots of a quadratic over F_q(t), q odd, by the usual formula."""
    F: RatFuncCtx = f.ctx
    a, b, c = f.coeff(2), f.coeff(1), f.coeff(0)
    disc = b * b - F.from_int(4) * a * c
    s = ratfunc_sqrt(disc)
    if s is None:
        return []
    inv2a = (F.from_int(2) * a).inverse()
    roots = [(-b + s) * inv2a]
    if not s.is_zero():
        roots.append((-b - s) * inv2a)
    return roots


def _ratfunc_roots(f: Poly) -> list:
    """Roots in F_q(t) of a polynomial with F_q(t) coefficients.

    Linear and (odd q) quadratic cases are closed-form; otherwise a
    rational root search: clear denominators to land in F_q[t][X]; any
    root r/s has r dividing the constant and s the leading coefficient
    up to F_q^* scalars, all enumerable through univariate factorization.
    """
    F: RatFuncCtx = f.ctx
    base = F.base
    if f.degree == 1:
        return [-f.coeff(0) / f.coeff(1)]
    if f.degree == 2 and base.q % 2:
        return _quadratic_roots(f)
    den_lcm = Poly.one(base)
    for c in f.coeffs:
        den_lcm = (den_lcm * c.den) // den_lcm.gcd(c.den)
    ints = []  # coefficients cleared to F_q[t]
    for c in f.coeffs:
        ints.append(c.num * (den_lcm // c.den))
    content = Poly.zero(base)
    for p in ints:
        content = content.gcd(p)
    if content.degree >= 1:
        ints = [p // content for p in ints]
    roots = []
    work = f
    # strip roots at 0
    while not ints or ints[0].is_zero():
        if not ints:
            break
        roots.append(F.zero())
        ints = ints[1:]
        work = work // Poly(F, [F.zero(), F.one()])
    if not ints or len(ints) == 1:
        return roots

    def monic_divisors(p: Poly):
        if p.is_const():
            return [Poly.one(base)]
        facs = poly_factor(p)
        count = 1
        for _, mult in facs:
            count *= mult + 1
        if count > MAX_DIVISOR_CANDIDATES:
            raise DegreeTooLarge(
                f"{count} divisor candidates in root search")
        divs = [Poly.one(base)]
        for irr, mult in facs:
            divs = [d * irr ** e for d in divs for e in range(mult + 1)]
        return divs

    c0, cd = ints[0], ints[-1]
    units = [e for e in base.elements() if not e.is_zero()]
    seen = set()
    for r in monic_divisors(c0):
        for s in monic_divisors(cd):
            for lam in units:
                cand = RatFuncElem(F, r.scale(lam), s)
                k = cand.key()
                if k in seen:
                    continue
                seen.add(k)
                if f.eval(cand).is_zero():
                    roots.append(cand)
    return roots


def monic_irreducible_factors(f: Poly) -> list[tuple[Poly, int]]:
    """(monic irreducible, multiplicity) pairs with product = f/lc(f)."""
    ctx = f.ctx
    if isinstance(ctx, FiniteFieldCtx):
        return poly_factor(f)
    # coefficient field F_q(t): peel off linear factors from roots and
    # repeated parts via gcd with the derivative; what remains of degree
    # <= 3 without roots is irreducible
    out: dict = {}

    def record(irr: Poly, mult: int):
        out[irr.key()] = (irr, out.get(irr.key(), (None, 0))[1] + mult)

    def run(g: Poly):
        while g.degree >= 1:
            roots = _ratfunc_roots(g)
            if not roots:
                break
            r = roots[0]
            lin = Poly(ctx, [-r, ctx.one()])
            mult = 0
            while True:
                q, rem = divmod(g, lin)
                if not rem.is_zero():
                    break
                g = q
                mult += 1
            record(lin, mult)
        if g.degree < 1:
            return
        der = g.derivative()
        if not der.is_zero():
            s = g.gcd(der)
            if 1 <= s.degree < g.degree:
                run(g // s)
                run(s)
                return
        if g.degree > MAX_ROOT_SEARCH_DEGREE:
            raise DegreeTooLarge(
                f"cannot factor degree {g.degree} over {ctx!r}")
        record(g, 1)

    run(f.monic())
    res = sorted(out.values(), key=lambda pm: (pm[0].degree,
                                               pm[0].serialize(ctx.var)))
    check = Poly.one(ctx)
    for irr, m in res:
        check = check * irr ** m
    assert check == f.monic(), "factorization failed to re-multiply"
    return res


MAX_SPECIALIZATION_EXT = 3


def irreducible_by_specialization(f: Poly) -> bool:
    """Certify irreducibility over F_q(t) by specializing t into F_{q^j}.

    An irreducible specialization of a monic polynomial (at a point where
    no coefficient denominator vanishes) forces irreducibility over
    F_q(t); a reducible one proves nothing, so False means "no
    certificate found", not "reducible".
    """
    from .arith.finite_field import ff_ctx, ff_embedding
    ctx: RatFuncCtx = f.ctx
    base = ctx.base
    if not f.is_monic():
        f = f.monic()
    for j in range(1, MAX_SPECIALIZATION_EXT + 1):
        big = ff_ctx(base.p, base.f * j)
        emb = ff_embedding(base, big)
        for t0 in big.elements():
            spec = []
            for c in f.coeffs:
                d = c.den.map_coeffs(emb, big).eval(t0)
                if d.is_zero():
                    break
                n = c.num.map_coeffs(emb, big).eval(t0)
                spec.append(n * d.inverse())
            else:
                fb = Poly(big, spec)
                if fb.degree == f.degree and is_irreducible(fb):
                    return True
    return False


def irreducible_over(f: Poly) -> bool:
    ctx = f.ctx
    if isinstance(ctx, FiniteFieldCtx):
        return is_irreducible(f)
    try:
        facs = monic_irreducible_factors(f)
    except DegreeTooLarge:
        # beyond the root search: a certificate by specialization may
        # still settle it; without one we stay honest and re-raise
        if irreducible_by_specialization(f):
            return True
        raise
    return len(facs) == 1 and facs[0][1] == 1 and facs[0][0].degree == f.degree


# --------------------------------------------------------------------------
# places and the per-place tame symbol
# --------------------------------------------------------------------------

INFINITY = "INFINITY"


class Place:
    """A finite place (monic irreducible) or the place at infinity."""

    __slots__ = ("F", "poly")

    def __init__(self, F: RatFuncCtx, poly: Poly | None):
        if poly is not None:
            if not poly.is_monic():
                raise NotMonic("finite places need monic polynomials")
            if not irreducible_over(poly):
                raise NotIrreducible(poly.serialize(F.var))
        self.F = F
        self.poly = poly

    @classmethod
    def finite(cls, F, poly):
        return cls(F, poly)

    @classmethod
    def infinity(cls, F):
        return cls(F, None)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.is_infinite else self.poly.degree

    def residue_ctx(self):
        """kappa(P): the coefficient field at infinity, F[X]/(P) otherwise."""
        if self.is_infinite:
            return self.F.base
        return QuotCtx(self.F.base, self.poly)

    def key(self):
        return "inf" if self.is_infinite else self.poly.serialize(self.F.var)

    def __eq__(self, other):
        return isinstance(other, Place) and self.F == other.F \
            and self.key() == other.key()

    def __hash__(self):
        return hash(("place", self.key()))

    def __repr__(self):
        return f"Place({self.key()})"

    # -- valuation / residue ----------------------------------------------

    def _poly_val(self, p: Poly) -> int:
        v = 0
        while True:
            q, r = divmod(p, self.poly)
            if not r.is_zero():
                return v
            p = q
            v += 1

    def valuation(self, x: RatFuncElem) -> int:
        if x.is_zero():
            raise ZeroElement("zero has no valuation")
        if self.is_infinite:
            return x.den.degree - x.num.degree
        return self._poly_val(x.num) - self._poly_val(x.den)

    def uniformizer(self) -> RatFuncElem:
        F = self.F
        if self.is_infinite:
            return RatFuncElem(F, Poly.one(F.base), Poly.x(F.base))
        return F.from_poly(self.poly)

    def residue(self, x: RatFuncElem):
        """Image of a valuation-0 element in kappa(P)."""
        if self.valuation(x) != 0:
            raise NotAUnit("residue needs a place-unit")
        if self.is_infinite:
            return x.num.lc * x.den.lc.inverse()
        k = self.residue_ctx()
        return k.from_poly(x.num) * k.from_poly(x.den).inverse()

    def unit_part(self, x: RatFuncElem) -> RatFuncElem:
        """u with x = u * pi^v(x)."""
        return x * self.uniformizer() ** (-self.valuation(x))


def support(x: RatFuncElem) -> list[Place]:
    """All finite places where x has nonzero valuation."""
    places = {}
    for p in (x.num, x.den):
        if p.is_const():
            continue
        for irr, _ in monic_irreducible_factors(p):
            pl = Place.finite(x.ctx, irr)
            places[pl.key()] = pl
    return [pl for pl in places.values() if pl.valuation(x) != 0]


def tame_at(place: Place, a: MilnorClass) -> MilnorClass:
    """Tame symbol of a class over F at one place: degree drops by one.

    Same rewriting as the local-field case: split entries along
    x = u*pi^k, merge repeated pi's with {pi,pi} = {pi,-1}, swap the
    surviving pi to the front, take residues of the tail.
    """
    F = place.F
    pi = place.uniformizer()
    kctx = place.residue_ctx()
    out = []
    work = [(t.coeff, t.entries) for t in a.terms]
    while work:
        c, ent = work.pop()
        if c == 0 or any(e.is_one() for e in ent):
            continue
        split_at = None
        for i, e in enumerate(ent):
            if e != pi and place.valuation(e) != 0:
                split_at = i
                break
        if split_at is not None:
            k = place.valuation(ent[split_at])
            u = place.unit_part(ent[split_at])
            if not u.is_one():
                work.append((c, ent[:split_at] + (u,) + ent[split_at + 1:]))
            if k != 0:
                work.append((c * k, ent[:split_at] + (pi,) + ent[split_at + 1:]))
            continue
        pis = [i for i, e in enumerate(ent) if e == pi]
        if len(pis) >= 2:
            i, j = pis[0], pis[1]
            moved = list(ent)
            for k2 in range(j, i + 1, -1):
                moved[k2], moved[k2 - 1] = moved[k2 - 1], moved[k2]
            sign = -1 if (j - i - 1) % 2 else 1
            moved[i + 1] = F.minus_one()
            work.append((c * sign, tuple(moved)))
            continue
        if len(pis) == 1:
            i = pis[0]
            sign = -1 if i % 2 else 1
            tail = ent[:i] + ent[i + 1:]
            res = [place.residue(e) for e in tail]
            if any(r.is_one() for r in res):
                continue  # a 1-entry makes the symbol trivial
            out.append(SymbolTerm(c * sign, res))
        # all-unit terms vanish under the tame symbol
    return MilnorClass(kctx, a.degree - 1, out)
