"""The ring of rational functions A(t_1,...,t_k) over a local ring A.

A is the valuation ring of a LocalFieldCtx at finite precision.  S is
the set of polynomials with at least one unit coefficient; A(t...) is
the localization at S and is again local.  The module provides
S-membership, invertibility, the residue map to kappa(t...), a sampled
soundness test for membership in the delta-kernel (the improved Milnor
K-group), and round-trip checks for the base-change isomorphism
B (x)_A A(t) = B(t) with B = A[X]/(pi).

k <= 2 only: one variable for A(t), two for the delta test's target.
"""

from __future__ import annotations

from .arith.factor import is_irreducible
from .arith.finite_field import ff_ctx, ff_embedding
from .arith.local import LocalFieldCtx
from .arith.poly import Poly
from .errors import (
    ContextMismatch,
    EliminationFailed,
    NotAUnit,
    NonUnitEntry,
    NotMonic,
    PrecisionTooLowToReduce,
    ResidueReducible,
    ZeroElement,
)
from .ratfunc import QuotCtx, QuotElem, RatFuncCtx, RatFuncElem
from .symbols import MilnorClass, SymbolTerm

MAX_VARIABLES = 2
DELTA_SAMPLE_POINTS = 16
DELTA_MAX_EXT = 3


# --------------------------------------------------------------------------
# coefficient helpers (A-integers or B = A[X]/pi elements)
# --------------------------------------------------------------------------


def _coeff_is_unit(c) -> bool:
    """Unit test in the local coefficient ring."""
    if isinstance(c, QuotElem):
        return any(_coeff_is_unit(a) for a in c.rep.coeffs)
    return (not c.is_zero()) and c.val == 0


def _coeff_is_integral(c) -> bool:
    if isinstance(c, QuotElem):
        return all(_coeff_is_integral(a) for a in c.rep.coeffs)
    return c.is_zero() or c.val >= 0


def _coeff_exact_zero(c) -> bool:
    """True only for exact zeros, not for approximate ones (finite
    ``zero_prec``): those must survive normalization to keep precision
    bookkeeping sound."""
    return c.is_zero() and getattr(c, "zero_prec", None) is None


def _coeff_negligible(c, floor: int) -> bool:
    """Indistinguishable from zero at the working precision."""
    if isinstance(c, QuotElem):
        return all(_coeff_negligible(a, floor) for a in c.rep.coeffs)
    return c.is_zero() or c.val >= floor


def _coeff_close(a, b, floor: int) -> bool:
    if a == b:
        return True
    return _coeff_negligible(a - b, floor)


def _coeff_residue(A: LocalFieldCtx, c):
    """Reduction A -> kappa, sending the maximal ideal to 0."""
    kappa = A.residue_field
    if c.is_zero() or c.val > 0:
        return kappa.zero()
    if c.val < 0:
        raise PrecisionTooLowToReduce("coefficient is not integral")
    return A.residue(c)


# --------------------------------------------------------------------------
# sparse multivariate polynomials
# --------------------------------------------------------------------------


class MultiPoly:
    """Sparse polynomial in k <= 2 variables over a local coefficient ring.

    coeffs maps exponent tuples of length k to nonzero coefficients.
    """

    __slots__ = ("ctx", "k", "coeffs")

    def __init__(self, ctx, k: int, coeffs):
        assert 1 <= k <= MAX_VARIABLES
        clean = {}
        for exps, c in dict(coeffs).items():
            exps = tuple(exps)
            assert len(exps) == k
            if not _coeff_exact_zero(c):
                clean[exps] = c
        self.ctx = ctx
        self.k = k
        self.coeffs = clean

    @classmethod
    def zero(cls, ctx, k: int) -> "MultiPoly":
        return cls(ctx, k, {})

    @classmethod
    def const(cls, ctx, k: int, c) -> "MultiPoly":
        return cls(ctx, k, {(0,) * k: c})

    @classmethod
    def one(cls, ctx, k: int) -> "MultiPoly":
        return cls.const(ctx, k, ctx.one())

    @classmethod
    def var(cls, ctx, k: int, i: int) -> "MultiPoly":
        exps = tuple(1 if j == i else 0 for j in range(k))
        return cls(ctx, k, {exps: ctx.one()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.coeffs)

    def const_coeff(self):
        return self.coeffs.get((0,) * self.k, self.ctx.zero())

    def __add__(self, o: "MultiPoly") -> "MultiPoly":
        out = dict(self.coeffs)
        for exps, c in o.coeffs.items():
            out[exps] = out[exps] + c if exps in out else c
        return MultiPoly(self.ctx, self.k, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.ctx, self.k,
                         {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, o: "MultiPoly") -> "MultiPoly":
        return self + (-o)

    def __mul__(self, o: "MultiPoly") -> "MultiPoly":
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in o.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                out[e] = out[e] + prod if e in out else prod
        return MultiPoly(self.ctx, self.k, out)

    def scale(self, c) -> "MultiPoly":
        return MultiPoly(self.ctx, self.k,
                         {e: x * c for e, x in self.coeffs.items()})

    def map_coeffs(self, fn, new_ctx) -> "MultiPoly":
        return MultiPoly(new_ctx, self.k,
                         {e: fn(c) for e, c in self.coeffs.items()})

    def same_as(self, o: "MultiPoly", floor: int | None = None) -> bool:
        """Coefficientwise equality; with a floor, differences of
        valuation >= floor count as zero (working-precision equality)."""
        for exps in set(self.coeffs) | set(o.coeffs):
            a = self.coeffs.get(exps, self.ctx.zero())
            b = o.coeffs.get(exps, self.ctx.zero())
            if floor is None:
                if not a == b:
                    return False
            elif not _coeff_close(a, b, floor):
                return False
        return True

    def to_poly(self):
        """One-variable view as a Poly over the coefficient ring."""
        assert self.k == 1
        deg = max((e[0] for e in self.coeffs), default=-1)
        return Poly(self.ctx, [self.coeffs.get((i,), self.ctx.zero())
                               for i in range(deg + 1)])

    @classmethod
    def from_poly(cls, ctx, p: Poly) -> "MultiPoly":
        return cls(ctx, 1, {(i,): c for i, c in enumerate(p.coeffs)})

    def serialize(self) -> str:
        if not self.coeffs:
            return "0"
        names = ["t1", "t2"][: self.k] if self.k == 2 else ["t"]
        parts = []
        for exps in sorted(self.coeffs):
            c = self.coeffs[exps]
            cs = c.serialize() if hasattr(c, "serialize") else repr(c)
            mono = "*".join(f"{names[i]}^{e}"
                            for i, e in enumerate(exps) if e)
            parts.append(f"{cs}*{mono}" if mono else cs)
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.serialize()})"


def s_member(f: MultiPoly) -> bool:
    """Membership in S: some coefficient is a unit of the local ring."""
    return any(_coeff_is_unit(c) for c in f.coeffs.values())


# --------------------------------------------------------------------------
# elements of A(t_1,...,t_k)
# --------------------------------------------------------------------------


class RationalRingElem:
    """Fraction num/den of multivariate polynomials with den in S."""

    __slots__ = ("A", "k", "num", "den")

    def __init__(self, A, k: int, num: MultiPoly, den: MultiPoly):
        if not s_member(den):
            raise NotAUnit("denominator is not in S")
        for c in list(num.coeffs.values()) + list(den.coeffs.values()):
            if not _coeff_is_integral(c):
                raise PrecisionTooLowToReduce("coefficients must be integral")
        self.A = A
        self.k = k
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, A, f: MultiPoly) -> "RationalRingElem":
        return cls(A, f.k, f, MultiPoly.one(f.ctx, f.k))

    @classmethod
    def const(cls, A, k: int, c, coeff_ctx=None) -> "RationalRingElem":
        ctx = coeff_ctx if coeff_ctx is not None else A
        return cls.from_poly(A, MultiPoly.const(ctx, k, c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.same_as(RationalRingElem.from_poly(
            self.A, MultiPoly.one(self.num.ctx, self.k)))

    def __add__(self, o):
        return RationalRingElem(self.A, self.k,
                                self.num * o.den + o.num * self.den,
                                self.den * o.den)

    def __neg__(self):
        return RationalRingElem(self.A, self.k, -self.num, self.den)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        return RationalRingElem(self.A, self.k, self.num * o.num,
                                self.den * o.den)

    def inverse(self):
        if not is_unit(self):
            raise NotAUnit("element is not a unit of A(t...)")
        return RationalRingElem(self.A, self.k, self.den, self.num)

    def same_as(self, o) -> bool:
        """Equality by cross-multiplication at working precision."""
        return (self.num * o.den).same_as(o.num * self.den,
                                          floor=self.A.prec)

    # MilnorClass entry protocol
    def __eq__(self, other):
        return isinstance(other, RationalRingElem) and self.same_as(other)

    def __hash__(self):
        return hash(("ratring", self.k))

    def key(self):
        return ("ratring", self.serialize())

    def serialize(self) -> str:
        if self.den.same_as(MultiPoly.one(self.den.ctx, self.k)):
            return self.num.serialize()
        return f"({self.num.serialize()})/({self.den.serialize()})"

    def __repr__(self):
        return self.serialize()


def is_unit(x: RationalRingElem) -> bool:
    """Units of the local ring A(t...): numerator in S."""
    return s_member(x.num)


def residue_map(x: RationalRingElem):
    """Coefficientwise reduction to kappa(t) (k = 1) or to a fraction of
    polynomials over kappa (k = 2, returned unreduced)."""
    A = x.A
    kappa = A.residue_field
    num = x.num.map_coeffs(lambda c: _coeff_residue(A, c), kappa)
    den = x.den.map_coeffs(lambda c: _coeff_residue(A, c), kappa)
    if x.k == 1:
        F = RatFuncCtx(kappa, "t")
        return RatFuncElem(F, num.to_poly(), den.to_poly())
    return (num, den)


# --------------------------------------------------------------------------
# delta-kernel test (improved Milnor K-theory membership)
# --------------------------------------------------------------------------


def _specialization_points(kappa, count: int):
    """(embedding, point) pairs with points outside {0, 1} and outside
    proper subfields, drawn from kappa and small extensions."""
    out = []
    for j in range(1, DELTA_MAX_EXT + 1):
        big = ff_ctx(kappa.p, kappa.f * j)
        emb = ff_embedding(kappa, big)
        for c in big.nonzero_elements():
            if c.is_one():
                continue
            if j > 1 and any(c ** (kappa.p ** (kappa.f * i)) == c
                             for i in range(1, j) if j % i == 0):
                continue
            out.append((big, emb, c))
            if len(out) >= count:
                return out
    return out


def delta_kernel_check(s: MilnorClass,
                       points: int = DELTA_SAMPLE_POINTS) -> bool:
    """Sampled test of delta(s) = s(t1) - s(t2) = 0 over A(t1, t2).

    Sound necessary condition: reduce entries to kappa(t), specialize
    t2 to sampled constants c, and decide s(t) - s(c) = 0 in Milnor
    K-theory of kappa(t).  Exact for classes with constant entries.
    """
    if s.is_zero():
        return True
    for t in s.terms:
        for e in t.entries:
            if not isinstance(e, RationalRingElem) or e.k != 1:
                raise ContextMismatch("delta test needs A(t) entries")
            if not is_unit(e):
                raise NonUnitEntry(e.serialize())
    reduced = [(t.coeff, [residue_map(e) for e in t.entries])
               for t in s.terms]
    # constants are fixed by both inclusions: delta vanishes formally
    if all(e.num.is_const() and e.den.is_const()
           for _, ent in reduced for e in ent):
        return True
    if s.degree > 2:
        # residues of every kappa_P are trivial above K_1, so the
        # canonical forms cannot separate anything: vacuously true
        return True
    from .bass_tate import k_equal
    kappa = s.terms[0].entries[0].A.residue_field
    for big, emb, c in _specialization_points(kappa, points):
        F = RatFuncCtx(big, "t")
        terms_t = []
        terms_c = []
        usable = True
        for coeff, ent in reduced:
            up = [RatFuncElem(F, e.num.map_coeffs(emb, big),
                              e.den.map_coeffs(emb, big)) for e in ent]
            vals = []
            for e in up:
                nv = e.num.eval(c)
                dv = e.den.eval(c)
                if dv.is_zero() or nv.is_zero():
                    usable = False
                    break
                vals.append(F.from_const(nv * dv.inverse()))
            if not usable:
                break
            terms_t.append(SymbolTerm(coeff, up))
            terms_c.append(SymbolTerm(coeff, vals))
        if not usable:
            continue
        a = MilnorClass(F, s.degree, terms_t)
        b = MilnorClass(F, s.degree, terms_c)
        if not k_equal(a, b):
            return False
    return True


# --------------------------------------------------------------------------
# base change A(t) (x)_A B  =  B(t),  B = A[X]/(pi)
# --------------------------------------------------------------------------


def _check_residue_irreducible(A: LocalFieldCtx, pi: Poly):
    if not pi.is_monic():
        raise NotMonic("pi must be monic")
    pibar = pi.map_coeffs(lambda c: _coeff_residue(A, c), A.residue_field)
    if pibar.degree != pi.degree or not is_irreducible(pibar):
        raise ResidueReducible("pi is reducible over the residue field")


def _rep1_reduce(A, pi: Poly, vec):
    """Reduce a long coefficient vector modulo monic pi (as constants)."""
    d = pi.degree
    vec = list(vec)
    zero = RationalRingElem.from_poly(A, MultiPoly.zero(A, 1))
    while len(vec) > d:
        top = vec.pop()
        i = len(vec) - d
        for j in range(d):
            cj = RationalRingElem.const(A, 1, pi.coeffs[j])
            vec[i + j] = vec[i + j] - top * cj
    while len(vec) < d:
        vec.append(zero)
    return vec


def rep1_mul(A, pi: Poly, x, y):
    """Product in the A(t)-module representation of B(t)."""
    d = pi.degree
    zero = RationalRingElem.from_poly(A, MultiPoly.zero(A, 1))
    out = [zero] * (2 * d - 1)
    for i, a in enumerate(x):
        for j, b in enumerate(y):
            out[i + j] = out[i + j] + a * b
    return _rep1_reduce(A, pi, out)


def rep1_add(x, y):
    return [a + b for a, b in zip(x, y)]


def conv_to_brep(A, B: QuotCtx, vec) -> RationalRingElem:
    """X-polynomial with A(t) coefficients -> rational function over B."""
    k = 1
    den = MultiPoly.one(A, k)
    for x in vec:
        den = den * x.den
    num = MultiPoly.zero(B, k)
    for i, x in enumerate(vec):
        other = MultiPoly.one(A, k)
        for j, y in enumerate(vec):
            if j != i:
                other = other * y.den
        part = (x.num * other).map_coeffs(
            lambda c: QuotElem(B, Poly.const(A, c)), B)
        xi = MultiPoly.const(B, k, QuotElem(B, Poly.x(A) ** i))
        num = num + part * xi
    den_b = den.map_coeffs(lambda c: QuotElem(B, Poly.const(A, c)), B)
    return RationalRingElem(A, k, num, den_b)


def _split_bpoly(A, B: QuotCtx, f: MultiPoly):
    """B[t] -> list of d polynomials over A (coordinates in the X-basis)."""
    d = B.degree
    comps = [dict() for _ in range(d)]
    for exps, c in f.coeffs.items():
        for i in range(min(len(c.rep.coeffs), d)):
            a = c.rep.coeffs[i]
            if not _coeff_exact_zero(a):
                comps[i][exps] = a
    return [RationalRingElem.from_poly(A, MultiPoly(A, 1, comp))
            for comp in comps]


def _invert_brep_den(A, B: QuotCtx, den: MultiPoly):
    """Inverse of a unit D of B(t) as a vector over A(t): solve D y = 1."""
    d = B.degree
    cols = []
    xi = MultiPoly.one(B, 1)
    x_mono = MultiPoly.const(B, 1, B.theta())
    for _ in range(d):
        cols.append(_split_bpoly(A, B, den * xi))
        xi = xi * x_mono
    # Gaussian elimination on [M | e0] over the local ring A(t)
    zero = RationalRingElem.from_poly(A, MultiPoly.zero(A, 1))
    one = RationalRingElem.from_poly(A, MultiPoly.one(A, 1))
    rows = [[cols[j][i] for j in range(d)]
            + [one if i == 0 else zero] for i in range(d)]
    for col in range(d):
        piv = None
        for r in range(col, d):
            if is_unit(rows[r][col]):
                piv = r
                break
        if piv is None:
            raise EliminationFailed("no unit pivot: denominator not a unit")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [x * inv for x in rows[col]]
        for r in range(d):
            if r != col and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return [rows[i][d] for i in range(d)]


def conv_to_arep(A, B: QuotCtx, x: RationalRingElem):
    """Rational function over B -> X-polynomial with A(t) coefficients."""
    inv_den = _invert_brep_den(A, B, x.den)
    num_vec = _split_bpoly(A, B, x.num)
    return rep1_mul(A, B.pi, num_vec, inv_den)


def rep1_same(x, y) -> bool:
    return all(a.same_as(b) for a, b in zip(x, y))


def random_integral(A, rng, max_val: int = 2):
    k = rng.randrange(max_val + 2)
    if k > max_val:
        return A.zero()
    return A.random_unit(rng) * A.uniformizer() ** k


def random_multipoly(A, k: int, rng, max_deg: int = 2,
                     ensure_s: bool = False) -> MultiPoly:
    coeffs = {}
    n_terms = rng.randrange(1, 4)
    for _ in range(n_terms):
        exps = tuple(rng.randrange(max_deg + 1) for _ in range(k))
        coeffs[exps] = random_integral(A, rng)
    f = MultiPoly(A, k, coeffs)
    if ensure_s and not s_member(f):
        exps = tuple(rng.randrange(max_deg + 1) for _ in range(k))
        coeffs[exps] = A.random_unit(rng)
        f = MultiPoly(A, k, coeffs)
    return f


def random_ratring_elem(A, k: int, rng, unit: bool = False):
    num = random_multipoly(A, k, rng, ensure_s=unit)
    den = random_multipoly(A, k, rng, ensure_s=True)
    return RationalRingElem(A, k, num, den)


def base_change_roundtrip(A: LocalFieldCtx, pi: Poly, rng,
                          samples: int = 5) -> bool:
    """Round-trip and homomorphism checks across the two models of B(t).

    Representation 1: X-polynomials of degree < deg pi with A(t)
    coefficients.  Representation 2: rational functions with B
    coefficients.  Raises ResidueReducible when B would not be local.
    """
    _check_residue_irreducible(A, pi)
    B = QuotCtx(A, pi)
    d = pi.degree
    for _ in range(samples):
        vec = [random_ratring_elem(A, 1, rng) for _ in range(d)]
        wec = [random_ratring_elem(A, 1, rng) for _ in range(d)]
        x2 = conv_to_brep(A, B, vec)
        y2 = conv_to_brep(A, B, wec)
        # round trip 1 -> 2 -> 1
        if not rep1_same(conv_to_arep(A, B, x2), vec):
            return False
        # ring-operation compatibility
        if not conv_to_brep(A, B, rep1_add(vec, wec)).same_as(x2 + y2):
            return False
        if not conv_to_brep(A, B, rep1_mul(A, pi, vec, wec)).same_as(x2 * y2):
            return False
        # round trip 2 -> 1 -> 2 on an element with a genuine B-denominator
        num = random_multipoly(A, 1, rng).map_coeffs(
            lambda c: QuotElem(B, Poly.const(A, c)), B)
        theta_t = MultiPoly(B, 1, {(1,): B.theta()})
        den = (random_multipoly(A, 1, rng, ensure_s=True).map_coeffs(
            lambda c: QuotElem(B, Poly.const(A, c)), B)) + theta_t
        try:
            z2 = RationalRingElem(A, 1, num, den)
        except NotAUnit:
            continue
        back = conv_to_brep(A, B, conv_to_arep(A, B, z2))
        if not back.same_as(z2):
            return False
    return True
