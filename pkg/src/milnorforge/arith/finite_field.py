"""Finite fields F_{p^f} with elements kept in discrete-log form.

A field context fixes, deterministically for every (p, f):

* the modulus: the monic irreducible of degree f over F_p whose coefficient
  encoding c0 + c1*p + ... is smallest,
* the generator: the primitive element with smallest encoding.

Elements are stored as ZERO or as an exponent e of the generator.  Internally
nonzero elements also have an "encoding", the integer c0 + c1*p + ... of the
coefficient vector of the representing polynomial; addition works on
encodings, multiplication on exponents.  For p^f <= 2^16 full exp/log tables
are built once; larger fields fall back to square-and-multiply and
baby-step/giant-step discrete logs.
"""

from __future__ import annotations

import math

from ..errors import FieldTooLarge, NotAUnit, NotPrime, ZeroElement

TABLE_BOUND = 1 << 16
DEFAULT_FIELD_BOUND = 1 << 20

_ctx_cache: dict[tuple[int, int], "FiniteFieldCtx"] = {}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization, fine for n <= 2^20-ish."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _enc_digits(enc: int, p: int, f: int) -> list[int]:
    digits = []
    for _ in range(f):
        digits.append(enc % p)
        enc //= p
    return digits


def _digits_enc(digits: list[int], p: int) -> int:
    enc = 0
    for c in reversed(digits):
        enc = enc * p + c
    return enc


class FiniteFieldCtx:
    """Deterministic context for F_{p^f}; construct via ff_ctx()."""

    def __init__(self, p: int, f: int, bound: int = DEFAULT_FIELD_BOUND):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if f < 1:
            raise ValueError("extension degree must be >= 1")
        q = p ** f
        if q > bound:
            raise FieldTooLarge(f"p^f = {q} exceeds bound {bound}")
        self.p = p
        self.f = f
        self.q = q
        self.modulus = self._find_modulus()
        self._mod_top = self.modulus[:-1]  # reduction data, X^f = -(lower part)
        self.exp: list[int] | None = None
        self.log: dict[int, int] | None = None
        self.generator_enc = self._find_generator()
        if self.q <= TABLE_BOUND:
            self._build_tables()

    # --- construction helpers -------------------------------------------

    def _find_modulus(self) -> tuple[int, ...]:
        p, f = self.p, self.f
        if f == 1:
            return (0, 1)  # the polynomial X
        for low in range(p ** f):
            coeffs = _enc_digits(low, p, f) + [1]
            if self._is_irreducible(coeffs):
                return tuple(coeffs)
        raise AssertionError("no irreducible polynomial found")

    def _is_irreducible(self, coeffs: list[int]) -> bool:
        # coeffs monic of degree f over F_p; check x^{p^f} == x mod m and
        # gcd(x^{p^{f/l}} - x, m) == 1 for primes l | f
        p, f = self.p, len(coeffs) - 1
        if coeffs[0] == 0:
            return False  # divisible by X
        def polymulmod(a, b):
            res = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        res[i + j] = (res[i + j] + ai * bj) % p
            # reduce mod coeffs
            for i in range(len(res) - 1, f - 1, -1):
                c = res[i]
                if c:
                    res[i] = 0
                    for j in range(f):
                        res[i - f + j] = (res[i - f + j] - c * coeffs[j]) % p
            del res[f:]
            while len(res) < f:
                res.append(0)
            return res

        def frob_pow(a, e):
            # a^(p^e) via repeated p-th power
            for _ in range(e):
                b = [1] + [0] * (f - 1)
                base = a
                k = p
                while k:
                    if k & 1:
                        b = polymulmod(b, base)
                    base = polymulmod(base, base)
                    k >>= 1
                a = b
            return a

        x = [0, 1] + [0] * (f - 2) if f >= 2 else [0]
        if frob_pow(list(x), f) != list(x):
            return False
        for ell in factorize(f):
            y = frob_pow(list(x), f // ell)
            diff = [(yi - xi) % p for yi, xi in zip(y, x)]
            if self._polygcd_is_one(diff, coeffs):
                continue
            return False
        return True

    def _polygcd_is_one(self, a: list[int], b: list[int]) -> bool:
        p = self.p

        def deg(c):
            for i in range(len(c) - 1, -1, -1):
                if c[i]:
                    return i
            return -1

        a, b = list(a), list(b)
        while True:
            da, db = deg(a), deg(b)
            if da < 0:
                return db == 0
            if db < 0:
                return da == 0
            if da < db:
                a, b = b, a
                da, db = db, da
            inv = pow(b[db], -1, p)
            c = (a[da] * inv) % p
            for i in range(db + 1):
                a[da - db + i] = (a[da - db + i] - c * b[i]) % p
            # loop continues; a's degree dropped

    def mul_enc(self, a: int, b: int) -> int:
        """Multiply two encodings."""
        p, f = self.p, self.f
        if a == 0 or b == 0:
            return 0
        da = _enc_digits(a, p, f)
        db = _enc_digits(b, p, f)
        res = [0] * (2 * f - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    res[i + j] = (res[i + j] + ai * bj) % p
        for i in range(len(res) - 1, f - 1, -1):
            c = res[i]
            if c:
                res[i] = 0
                for j in range(f):
                    res[i - f + j] = (res[i - f + j] - c * self.modulus[j]) % p
        return _digits_enc(res[:f], p)

    def add_enc(self, a: int, b: int) -> int:
        p, f = self.p, self.f
        da = _enc_digits(a, p, f)
        db = _enc_digits(b, p, f)
        return _digits_enc([(x + y) % p for x, y in zip(da, db)], p)

    def neg_enc(self, a: int) -> int:
        p, f = self.p, self.f
        return _digits_enc([(-x) % p for x in _enc_digits(a, p, f)], p)

    def pow_enc(self, a: int, k: int) -> int:
        res = 1
        base = a
        while k:
            if k & 1:
                res = self.mul_enc(res, base)
            base = self.mul_enc(base, base)
            k >>= 1
        return res

    def _order_is_full(self, enc: int, factors: dict[int, int]) -> bool:
        n = self.q - 1
        for ell in factors:
            if self.pow_enc(enc, n // ell) == 1:
                return False
        return True

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        factors = factorize(self.q - 1)
        for enc in range(1, self.q):
            if self._order_is_full(enc, factors):
                return enc
        raise AssertionError("no generator found")

    def _build_tables(self) -> None:
        n = self.q - 1
        exp = [1] * n
        g = self.generator_enc
        cur = 1
        for e in range(n):
            exp[e] = cur
            cur = self.mul_enc(cur, g)
        assert cur == 1, "generator order mismatch"
        self.exp = exp
        self.log = {enc: e for e, enc in enumerate(exp)}
        assert len(self.log) == n

    # --- encoding <-> exponent ------------------------------------------

    def enc_of_exp(self, e: int) -> int:
        if self.exp is not None:
            return self.exp[e % (self.q - 1)]
        return self.pow_enc(self.generator_enc, e % (self.q - 1))

    def dlog_enc(self, enc: int) -> int:
        """Discrete log of a nonzero encoding."""
        if enc == 0:
            raise ZeroElement("dlog of zero")
        if self.log is not None:
            return self.log[enc]
        # baby-step/giant-step
        n = self.q - 1
        m = math.isqrt(n) + 1
        baby = {}
        cur = 1
        for j in range(m):
            baby.setdefault(cur, j)
            cur = self.mul_enc(cur, self.generator_enc)
        # giant factor g^{-m}
        gm_inv = self.pow_enc(self.generator_enc, n - (m % n))
        cur = enc
        for i in range(m + 1):
            if cur in baby:
                return (i * m + baby[cur]) % n
            cur = self.mul_enc(cur, gm_inv)
        raise AssertionError("dlog failed")

    # --- element factories ----------------------------------------------

    def zero(self) -> "FFElement":
        return FFElement(self, None)

    def one(self) -> "FFElement":
        return FFElement(self, 0)

    def gen(self) -> "FFElement":
        return FFElement(self, 1 % (self.q - 1))

    def minus_one(self) -> "FFElement":
        if self.p == 2:
            return self.one()
        return self.from_enc(self.neg_enc(1))

    def from_enc(self, enc: int) -> "FFElement":
        if enc == 0:
            return self.zero()
        return FFElement(self, self.dlog_enc(enc))

    def from_int(self, n: int) -> "FFElement":
        """Embed an integer via the prime subfield."""
        return self.from_enc(n % self.p)

    def from_exp(self, e: int) -> "FFElement":
        return FFElement(self, e % (self.q - 1))

    def elements(self):
        yield self.zero()
        for e in range(self.q - 1):
            yield FFElement(self, e)

    def nonzero_elements(self):
        for e in range(self.q - 1):
            yield FFElement(self, e)

    def random_nonzero(self, rng) -> "FFElement":
        return FFElement(self, rng.randrange(self.q - 1))

    def random_element(self, rng) -> "FFElement":
        k = rng.randrange(self.q)
        return self.zero() if k == 0 else FFElement(self, k - 1)

    # --- misc -------------------------------------------------------------

    def __repr__(self):
        return f"FiniteFieldCtx(p={self.p}, f={self.f})"

    def __eq__(self, other):
        return isinstance(other, FiniteFieldCtx) and (self.p, self.f) == (other.p, other.f)

    def __hash__(self):
        return hash(("ffctx", self.p, self.f))


def ff_ctx(p: int, f: int = 1, bound: int = DEFAULT_FIELD_BOUND) -> FiniteFieldCtx:
    key = (p, f)
    ctx = _ctx_cache.get(key)
    if ctx is None:
        ctx = FiniteFieldCtx(p, f, bound=bound)
        _ctx_cache[key] = ctx
    return ctx


def ff_ctx_q(q: int, bound: int = DEFAULT_FIELD_BOUND) -> FiniteFieldCtx:
    """Context from a prime power q."""
    fac = factorize(q)
    if len(fac) != 1:
        raise NotPrime(f"{q} is not a prime power")
    ((p, f),) = fac.items()
    return ff_ctx(p, f, bound=bound)


_embed_cache: dict[tuple, object] = {}


def ff_embedding(small: FiniteFieldCtx, big: FiniteFieldCtx):
    """A field embedding F_{p^f1} -> F_{p^f2} (f1 | f2), as a function.

    Picks a root h of the small field's modulus inside the big field and
    sends sum a_i g^i (in the F_p-basis of encodings) to sum a_i h^i.
    """
    if small.p != big.p or big.f % small.f:
        raise ValueError("no embedding between these fields")
    key = (small.p, small.f, big.f)
    fn = _embed_cache.get(key)
    if fn is not None:
        return fn
    if small.f == 1:
        def fn(x):
            return big.from_int(x.as_int())
    else:
        # roots of the small modulus live in the order-(q1-1) subgroup
        step = (big.q - 1) // (small.q - 1)
        h = None
        for i in range(small.q - 1):
            cand = big.from_exp(step * i)
            acc = big.zero()
            for c in reversed(small.modulus):
                acc = acc * cand + big.from_int(c)
            if acc.is_zero():
                h = cand
                break
        assert h is not None, "modulus has no root in the big field"
        powers = [big.one()]
        for _ in range(small.f - 1):
            powers.append(powers[-1] * h)

        def fn(x):
            digits = _enc_digits(x.enc, small.p, small.f)
            acc = big.zero()
            for d, hp in zip(digits, powers):
                if d:
                    acc = acc + hp * big.from_int(d)
            return acc
    _embed_cache[key] = fn
    return fn


class FFElement:
    """Element of F_{p^f}: zero, or generator^e with 0 <= e <= q-2."""

    __slots__ = ("ctx", "e")

    def __init__(self, ctx: FiniteFieldCtx, e: int | None):
        self.ctx = ctx
        self.e = e if e is None else e % (ctx.q - 1) if ctx.q > 2 else 0

    # predicates
    def is_zero(self) -> bool:
        return self.e is None

    def is_one(self) -> bool:
        return self.e == 0

    @property
    def enc(self) -> int:
        if self.e is None:
            return 0
        return self.ctx.enc_of_exp(self.e)

    # arithmetic
    def __add__(self, other: "FFElement") -> "FFElement":
        ctx = self.ctx
        return ctx.from_enc(ctx.add_enc(self.enc, other.enc))

    def __sub__(self, other: "FFElement") -> "FFElement":
        ctx = self.ctx
        return ctx.from_enc(ctx.add_enc(self.enc, ctx.neg_enc(other.enc)))

    def __neg__(self) -> "FFElement":
        return self.ctx.from_enc(self.ctx.neg_enc(self.enc))

    def __mul__(self, other: "FFElement") -> "FFElement":
        if self.e is None or other.e is None:
            return self.ctx.zero()
        return FFElement(self.ctx, self.e + other.e)

    def __truediv__(self, other: "FFElement") -> "FFElement":
        return self * other.inverse()

    def inverse(self) -> "FFElement":
        if self.e is None:
            raise NotAUnit("zero has no inverse")
        return FFElement(self.ctx, -self.e)

    def __pow__(self, k: int) -> "FFElement":
        if self.e is None:
            if k == 0:
                return self.ctx.one()
            if k < 0:
                raise NotAUnit("zero has no inverse")
            return self.ctx.zero()
        return FFElement(self.ctx, self.e * k)

    def dlog(self) -> int:
        """Exponent with generator^dlog = self (elements store it directly)."""
        if self.e is None:
            raise NotAUnit("zero has no discrete logarithm")
        return self.e

    # identity / hashing
    def key(self):
        return ("ff", self.ctx.p, self.ctx.f, self.e)

    def __eq__(self, other):
        return (
            isinstance(other, FFElement)
            and self.ctx == other.ctx
            and self.e == other.e
        )

    def __hash__(self):
        return hash(self.key())

    def serialize(self) -> str:
        ctx = self.ctx
        if self.e is None:
            return f"ff({ctx.p},{ctx.f}):0"
        return f"ff({ctx.p},{ctx.f}):g^{self.e}"

    def __repr__(self):
        return self.serialize()

    def as_int(self) -> int:
        """Integer value, only meaningful for prime fields (f = 1)."""
        if self.ctx.f != 1:
            raise ValueError("as_int only for prime fields")
        return self.enc
