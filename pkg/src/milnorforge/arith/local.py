"""Complete discrete valuation rings at finite precision.

Two models share one interface: p-adic integers/numbers (mixed
characteristic, residue field F_p, uniformizer p) and truncated Laurent
series F_q((t)) (equicharacteristic, uniformizer t).  A LocalFieldCtx
provides element factories, residue maps, and the lifting operations
every higher layer relies on: Newton/Hensel root finding, Teichmuller
representatives and the u * pi^k decomposition.
"""

from __future__ import annotations

import re
from functools import lru_cache

from ..errors import (
    BadPrime,
    NewtonConditionFails,
    NotAUnit,
    PatternMismatch,
    PrecisionExhausted,
    ZeroElement,
)
from .finite_field import FFElement, FiniteFieldCtx, ff_ctx, ff_ctx_q, is_prime
from .laurent import LaurentSeries
from .padic import PadicNumber
from .poly import Poly

PADIC = "padic"
LAURENT = "laurent"


class LocalFieldCtx:
    """Context for one local field F with valuation ring O.

    model is "padic" (F = Q_p, O = Z_p) or "laurent" (F = F_q((t)),
    O = F_q[[t]]).  All elements produced by this context carry the same
    precision, the number of significant uniformizer-adic digits.
    """

    __slots__ = ("model", "prec", "residue_field")

    def __init__(self, model: str, residue_field: FiniteFieldCtx, prec: int):
        assert model in (PADIC, LAURENT)
        assert prec >= 1
        if model == PADIC and residue_field.f != 1:
            raise BadPrime("p-adic model needs a prime residue field")
        self.model = model
        self.residue_field = residue_field
        self.prec = prec

    @property
    def p(self) -> int:
        return self.residue_field.p

    @property
    def q(self) -> int:
        return self.residue_field.q

    def __repr__(self):
        if self.model == PADIC:
            return f"LocalFieldCtx(Z_{self.p}, prec={self.prec})"
        return f"LocalFieldCtx(F_{self.q}[[t]], prec={self.prec})"

    def __eq__(self, other):
        return (isinstance(other, LocalFieldCtx) and self.model == other.model
                and self.residue_field is other.residue_field and self.prec == other.prec)

    def __hash__(self):
        return hash((self.model, self.q, self.prec))

    # --- element factories ------------------------------------------------

    def zero(self):
        if self.model == PADIC:
            return PadicNumber.zero(self.p, self.prec)
        return LaurentSeries.zero(self.residue_field, self.prec)

    def one(self):
        return self.from_int(1)

    def minus_one(self):
        return self.from_int(-1)

    def from_int(self, n: int):
        if self.model == PADIC:
            return PadicNumber.from_int(self.p, self.prec, n)
        return LaurentSeries.from_int(self.residue_field, self.prec, n)

    def uniformizer(self):
        if self.model == PADIC:
            return PadicNumber(self.p, self.prec, 1, 1)
        return LaurentSeries(self.residue_field, self.prec, 1,
                             [self.residue_field.one()]
                             + [self.residue_field.zero()] * (self.prec - 1))

    def extend(self, x, prec: int):
        """Reinterpret x at a (possibly higher) relative precision.

        The new digits are zero; only internal iteration (Newton) should
        use this, and results must be re-verified at the claimed precision.
        """
        if x.is_zero():
            return (PadicNumber.zero(self.p, prec) if self.model == PADIC
                    else LaurentSeries.zero(self.residue_field, prec))
        if self.model == PADIC:
            return PadicNumber(self.p, prec, x.val, x.unit)
        return LaurentSeries(self.residue_field, prec, x.val, x.coeffs)

    def random_unit(self, rng):
        if self.model == PADIC:
            u = rng.randrange(1, self.p ** self.prec)
            while u % self.p == 0:
                u = rng.randrange(1, self.p ** self.prec)
            return PadicNumber(self.p, self.prec, 0, u)
        base = self.residue_field
        coeffs = [base.random_nonzero(rng)]
        coeffs += [base.random_element(rng) for _ in range(self.prec - 1)]
        return LaurentSeries(base, self.prec, 0, coeffs)

    def random_nonzero(self, rng, max_val: int = 3):
        k = rng.randrange(-max_val, max_val + 1)
        return self.random_unit(rng) * self.uniformizer() ** k

    # --- residue maps -----------------------------------------------------

    def residue(self, x) -> FFElement:
        """Image of a unit in the residue field kappa."""
        if x.is_zero() or x.val != 0:
            raise NotAUnit("residue map needs a unit")
        if self.model == PADIC:
            return self.residue_field.from_int(x.unit % self.p)
        return x.coeffs[0]

    def lift_residue(self, c: FFElement):
        """Tautological lift kappa^x -> O^x (integer rep / constant series)."""
        if c.is_zero():
            raise ZeroElement("cannot lift zero to a unit")
        if self.model == PADIC:
            return PadicNumber(self.p, self.prec, 0, c.as_int())
        return LaurentSeries.constant(c, self.prec)

    def is_principal_unit(self, x) -> bool:
        """Unit congruent to 1 mod the maximal ideal (the subgroup U_1)."""
        return (not x.is_zero()) and x.val == 0 and self.residue(x).is_one()

    # --- serialization ----------------------------------------------------

    def serialize(self, x) -> str:
        return x.serialize()

    _PADIC_RE = re.compile(r"^padic\((\d+),(\d+)\):(?:0|(\d+)\*p\^(-?\d+))$")
    _LAURENT_RE = re.compile(r"^laurent\((\d+),(\d+)\):(?:0|t\^(-?\d+)\*\(([\d,]+)\))$")

    def parse(self, s: str):
        s = s.strip()
        m = self._PADIC_RE.match(s)
        if m:
            p, prec = int(m.group(1)), int(m.group(2))
            if self.model != PADIC or p != self.p:
                raise PatternMismatch(f"element {s!r} does not live in {self!r}")
            if m.group(3) is None:
                return PadicNumber.zero(p, min(prec, self.prec))
            return PadicNumber(p, min(prec, self.prec), int(m.group(4)), int(m.group(3)))
        m = self._LAURENT_RE.match(s)
        if m:
            q, prec = int(m.group(1)), int(m.group(2))
            if self.model != LAURENT or q != self.q:
                raise PatternMismatch(f"element {s!r} does not live in {self!r}")
            prec = min(prec, self.prec)
            if m.group(3) is None:
                return LaurentSeries.zero(self.residue_field, prec)
            base = self.residue_field
            coeffs = [base.from_enc(int(d)) for d in m.group(4).split(",")]
            return LaurentSeries.make(base, prec, int(m.group(3)), coeffs[:prec])
        raise PatternMismatch(f"cannot parse local element {s!r}")


@lru_cache(maxsize=None)
def padic_ctx(p: int, prec: int) -> LocalFieldCtx:
    if not is_prime(p):
        raise BadPrime(f"{p} is not prime")
    return LocalFieldCtx(PADIC, ff_ctx(p, 1), prec)


@lru_cache(maxsize=None)
def laurent_ctx(q: int, prec: int) -> LocalFieldCtx:
    return LocalFieldCtx(LAURENT, ff_ctx_q(q), prec)


# --- Hensel / Newton ------------------------------------------------------


def _eval_extended(ctx: LocalFieldCtx, f: Poly, x, work: int):
    """Horner evaluation with every coefficient widened to `work` digits."""
    acc = ctx.extend(ctx.zero(), work)
    for c in reversed(f.coeffs):
        acc = acc * x + ctx.extend(c, work)
    return acc


def hensel_lift(ctx: LocalFieldCtx, f: Poly, x0, target_prec: int):
    """Newton-lift a simple approximate root of f to the given precision.

    Requires v(f(x0)) > 2 v(f'(x0)); the returned x satisfies
    f(x) = 0 mod pi^target_prec and agrees with x0 where x0 was known.
    The residual is re-evaluated before returning.
    """
    df = f.derivative()
    fx = f.eval(x0)
    dfx = df.eval(x0)
    if dfx.is_zero():
        raise NewtonConditionFails("derivative vanishes at the start point")
    e = dfx.val
    if not fx.is_zero() and fx.val <= 2 * e:
        raise NewtonConditionFails(
            f"v(f(x0)) = {fx.val} not above 2 v(f'(x0)) = {2 * e}")

    work = target_prec + 2 * e + 1
    x = ctx.extend(x0, work)
    for _ in range(work + 4):
        fx = _eval_extended(ctx, f, x, work)
        if fx.is_zero() or fx.val >= target_prec + e:
            break
        dfx = _eval_extended(ctx, df, x, work)
        x = ctx.extend(x - fx / dfx, work)
    else:
        raise PrecisionExhausted("Newton iteration failed to converge")

    rel = target_prec - x.val
    if rel < 1:
        raise PrecisionExhausted("root valuation exceeds the target precision")
    root = ctx.extend(x, rel)
    check = _eval_extended(ctx, f, root, target_prec)
    if not (check.is_zero() or check.val >= target_prec):
        raise PrecisionExhausted("lifted root failed re-evaluation")
    return root


def teichmuller(ctx: LocalFieldCtx, x):
    """The unique (q-1)-th root of unity congruent to the unit x mod pi."""
    if x.is_zero() or x.val != 0:
        raise NotAUnit("Teichmuller representative needs a unit")
    if ctx.model == LAURENT:
        return LaurentSeries.constant(x.coeffs[0], x.prec)
    # omega = lim x^(p^k); each Frobenius step fixes one more digit
    y = x
    for _ in range(x.prec):
        y = y ** ctx.p
    return y


def unit_decompose(x):
    """Split nonzero x as (k, u) with x = u * pi^k and u a unit."""
    if x.is_zero():
        raise ZeroElement("zero has no unit decomposition")
    if isinstance(x, PadicNumber):
        return x.val, PadicNumber(x.p, x.prec, 0, x.unit)
    return x.val, LaurentSeries(x.base, x.prec, 0, x.coeffs)


def principal_unit_root(ctx: LocalFieldCtx, x, ell: int):
    """The ell-th root of a principal unit, for ell coprime to p.

    U_1 is ell-divisible: X^ell - x has the simple root 1 mod pi, so a
    straight Hensel lift applies.
    """
    if not ctx.is_principal_unit(x):
        raise NotAUnit("ell-th roots are only guaranteed on U_1")
    if ell % ctx.p == 0:
        raise NewtonConditionFails(f"exponent {ell} not coprime to p = {ctx.p}")
    prec = x.prec
    coeffs = [-x] + [ctx.extend(ctx.zero(), prec)] * (ell - 1) \
        + [ctx.extend(ctx.one(), prec)]
    f = Poly(ctx, coeffs)
    return hensel_lift(ctx, f, ctx.extend(ctx.one(), prec), prec)
