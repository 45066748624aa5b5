"""Univariate polynomials over an arbitrary exact coefficient field.

The coefficient context only needs zero()/one() factories and elements with
+, -, *, inverse(), is_zero(), is_one() and key().  This single class serves
polynomials over finite fields, over rational function fields and over
quotient fields, which keeps gcds and resultants uniform across the package.
"""

from __future__ import annotations

from ..errors import ZeroPolynomial


def _exact_zero(c) -> bool:
    """Exact zero test: approximate zeros (finite ``zero_prec``) still carry
    an unknown tail and must not be skipped or stripped."""
    return c.is_zero() and getattr(c, "zero_prec", None) is None


class Poly:
    """Coefficients stored low-degree first, no trailing zeros; () is zero."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        # Approximate zeros (inexact coefficients known to vanish only up to
        # a finite precision, marked by a non-None ``zero_prec``) must be
        # retained: dropping one would silently promote it to an exact zero.
        while coeffs and _exact_zero(coeffs[-1]):
            coeffs = coeffs[:-1]
        self.ctx = ctx
        self.coeffs = tuple(coeffs)

    # --- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, ctx) -> "Poly":
        return cls(ctx, ())

    @classmethod
    def const(cls, ctx, c) -> "Poly":
        return cls(ctx, (c,))

    @classmethod
    def one(cls, ctx) -> "Poly":
        return cls(ctx, (ctx.one(),))

    @classmethod
    def x(cls, ctx) -> "Poly":
        return cls(ctx, (ctx.zero(), ctx.one()))

    @classmethod
    def from_ints(cls, ctx, ints) -> "Poly":
        return cls(ctx, [ctx.from_int(n) for n in ints])

    # --- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1].is_one()

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ctx.zero()

    # --- ring operations --------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.ctx, out)

    def __neg__(self) -> "Poly":
        return Poly(self.ctx, [-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.ctx)
        zero = self.ctx.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _exact_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if not _exact_zero(b):
                    out[i + j] = out[i + j] + a * b
        return Poly(self.ctx, out)

    def scale(self, c) -> "Poly":
        return Poly(self.ctx, [a * c for a in self.coeffs])

    def monic(self) -> "Poly":
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(self.lc.inverse())

    def shift(self, k: int) -> "Poly":
        """Multiply by X^k."""
        if self.is_zero() or k == 0:
            return self
        return Poly(self.ctx, (self.ctx.zero(),) * k + self.coeffs)

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroPolynomial("division by the zero polynomial")
        if self.degree < other.degree:
            return Poly.zero(self.ctx), self
        inv_lc = other.lc.inverse()
        rem = list(self.coeffs)
        dq = self.degree - other.degree
        quot = [self.ctx.zero()] * (dq + 1)
        for i in range(dq, -1, -1):
            c = rem[other.degree + i] * inv_lc
            quot[i] = c
            if not _exact_zero(c):
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - c * b
        return Poly(self.ctx, quot), Poly(self.ctx, rem[: other.degree])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero()

    def __pow__(self, k: int) -> "Poly":
        res = Poly.one(self.ctx)
        base = self
        while k:
            if k & 1:
                res = res * base
            base = base * base
            k >>= 1
        return res

    def pow_mod(self, k: int, mod: "Poly") -> "Poly":
        res = Poly.one(self.ctx)
        base = self % mod
        while k:
            if k & 1:
                res = (res * base) % mod
            base = (base * base) % mod
            k >>= 1
        return res

    def derivative(self) -> "Poly":
        out = []
        for i in range(1, len(self.coeffs)):
            c = self.coeffs[i]
            acc = self.ctx.zero()
            for _ in range(i):  # i * c without assuming an int action
                acc = acc + c
            out.append(acc)
        return Poly(self.ctx, out)

    def eval(self, x):
        acc = self.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly.zero(self.ctx)
        for c in reversed(self.coeffs):
            acc = acc * other + Poly.const(self.ctx, c)
        return acc

    def map_coeffs(self, fn, new_ctx=None) -> "Poly":
        return Poly(new_ctx or self.ctx, [fn(c) for c in self.coeffs])

    # --- gcd / resultant --------------------------------------------------

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def xgcd(self, other: "Poly"):
        """Return (g, s, t) with s*self + t*other = g, g monic (or zero)."""
        a, b = self, other
        sa, sb = Poly.one(self.ctx), Poly.zero(self.ctx)
        ta, tb = Poly.zero(self.ctx), Poly.one(self.ctx)
        while not b.is_zero():
            q, r = divmod(a, b)
            a, b = b, r
            sa, sb = sb, sa - q * sb
            ta, tb = tb, ta - q * tb
        if a.is_zero():
            return a, sa, ta
        inv = a.lc.inverse()
        cinv = Poly.const(self.ctx, inv)
        return a.scale(inv), sa * cinv, ta * cinv

    def resultant(self, other: "Poly"):
        """Res(self, other) as a coefficient-field element (Euclidean)."""
        ctx = self.ctx
        a, b = self, other
        if a.is_zero() or b.is_zero():
            return ctx.zero()
        res = ctx.one()
        while True:
            if b.degree == 0:
                # Res(a, c) = c^deg(a)
                c = b.coeffs[0]
                out = ctx.one()
                for _ in range(a.degree):
                    out = out * c
                return res * out
            r = a % b
            if r.is_zero():
                if a.degree == 0:
                    c = a.coeffs[0]
                    out = ctx.one()
                    for _ in range(b.degree):
                        out = out * c
                    return res * out
                return ctx.zero()
            # Res(a,b) = (-1)^{da db} lc(b)^{da - dr} Res(b, r)
            da, db, dr = a.degree, b.degree, r.degree
            sign_flip = (da * db) % 2 == 1
            factor = ctx.one()
            for _ in range(da - dr):
                factor = factor * b.lc
            res = res * factor
            if sign_flip:
                res = res * (-ctx.one())
            a, b = b, r

    # --- identity ---------------------------------------------------------

    def key(self):
        return ("poly", tuple(c.key() for c in self.coeffs))

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.key())

    def serialize(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = c.serialize() if hasattr(c, "serialize") else str(c)
            if i == 0:
                parts.append(cs)
            else:
                parts.append(f"{cs}*{var}^{i}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self.serialize()})"
