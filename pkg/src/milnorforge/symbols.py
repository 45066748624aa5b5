"""Formal Milnor symbol calculus.

A MilnorClass is a finite integer combination of symbols {x_1,...,x_n}
with nonzero entries from one field context.  No general equality test is
offered: classes are only compared through homomorphic images (finite
field coordinates, residue vectors, pairings).  The rewriting moves here
(bilinear expansion, swaps, the {x,-x} and {x,x} identities) all preserve
the class and are exactly the step vocabulary of divisibility
certificates.

ff_kgroup computes K^M_n of a finite field as an abelian-group
presentation: T_n(F_q^x) is cyclic of order q-1 generated by g x...x g,
and each Steinberg pair g^i + g^j = 1 contributes the relation
i*j*k_3*...*k_n once the remaining slots run over all exponents.
"""

from __future__ import annotations

from functools import lru_cache

from .arith.finite_field import ff_ctx_q
from .errors import (
    BadPosition,
    ContextMismatch,
    DegreeTooLarge,
    FactorizationMismatch,
    FieldTooLarge,
    PatternMismatch,
    ZeroEntry,
)
from .snf import AbGroupPresentation

MINUS_SELF = "MINUS_SELF"
SELF_TO_MINUS_ONE = "SELF_TO_MINUS_ONE"

FF_KGROUP_BOUND = 1 << 10
FF_KGROUP_MAX_DEGREE = 4


class SymbolTerm:
    """One summand coeff * {entries}; degree 0 terms are plain integers."""

    __slots__ = ("coeff", "entries")

    def __init__(self, coeff: int, entries):
        entries = tuple(entries)
        for e in entries:
            if e.is_zero():
                raise ZeroEntry("symbol entries must be nonzero")
        self.coeff = coeff
        self.entries = entries

    @property
    def degree(self) -> int:
        return len(self.entries)

    def entries_key(self):
        return tuple(e.serialize() for e in self.entries)

    def serialize(self) -> str:
        body = "{" + ",".join(e.serialize() for e in self.entries) + "}"
        if abs(self.coeff) == 1:
            return body
        return f"{abs(self.coeff)}*{body}"

    def __repr__(self):
        sign = "-" if self.coeff < 0 else ""
        return f"{sign}{self.serialize()}"


class MilnorClass:
    """Normalized formal sum of same-degree symbols over one context."""

    __slots__ = ("ctx", "degree", "terms")

    def __init__(self, ctx, degree: int, terms):
        merged: dict[tuple, tuple[int, tuple]] = {}
        for t in terms:
            assert t.degree == degree, "mixed degrees in one class"
            k = t.entries_key()
            if k in merged:
                c, ent = merged[k]
                merged[k] = (c + t.coeff, ent)
            else:
                merged[k] = (t.coeff, t.entries)
        self.ctx = ctx
        self.degree = degree
        self.terms = tuple(SymbolTerm(c, ent)
                           for _, (c, ent) in sorted(merged.items())
                           if c != 0)

    # --- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, ctx, degree: int) -> "MilnorClass":
        return cls(ctx, degree, ())

    @classmethod
    def unit(cls, ctx) -> "MilnorClass":
        """The empty symbol: 1 in degree 0 (= Z)."""
        return cls(ctx, 0, (SymbolTerm(1, ()),))

    def is_zero(self) -> bool:
        return not self.terms

    def single_term(self) -> SymbolTerm:
        if len(self.terms) != 1:
            raise PatternMismatch("operation needs a single-term class")
        return self.terms[0]

    # --- linear structure -------------------------------------------------

    def __add__(self, other: "MilnorClass") -> "MilnorClass":
        self._check_ctx(other)
        assert self.degree == other.degree
        return MilnorClass(self.ctx, self.degree, self.terms + other.terms)

    def __neg__(self) -> "MilnorClass":
        return self.scale(-1)

    def __sub__(self, other: "MilnorClass") -> "MilnorClass":
        return self + (-other)

    def scale(self, c: int) -> "MilnorClass":
        return MilnorClass(self.ctx, self.degree,
                           [SymbolTerm(c * t.coeff, t.entries) for t in self.terms])

    def _check_ctx(self, other: "MilnorClass"):
        if self.ctx != other.ctx:
            raise ContextMismatch("classes live over different contexts")

    def __mul__(self, other: "MilnorClass") -> "MilnorClass":
        self._check_ctx(other)
        out = []
        for s in self.terms:
            for t in other.terms:
                out.append(SymbolTerm(s.coeff * t.coeff, s.entries + t.entries))
        return MilnorClass(self.ctx, self.degree + other.degree, out)

    def map_entries(self, fn, new_ctx=None) -> "MilnorClass":
        return MilnorClass(new_ctx if new_ctx is not None else self.ctx,
                           self.degree,
                           [SymbolTerm(t.coeff, [fn(e) for e in t.entries])
                            for t in self.terms])

    # --- io ---------------------------------------------------------------

    def serialize(self) -> str:
        if not self.terms:
            return f"deg:{self.degree} 0"
        parts = [f"deg:{self.degree}"]
        for i, t in enumerate(self.terms):
            if i == 0:
                parts.append(("-" if t.coeff < 0 else "") + t.serialize())
            else:
                parts.append("-" if t.coeff < 0 else "+")
                parts.append(t.serialize())
        return " ".join(parts)

    def __repr__(self):
        return self.serialize()


def symbol(ctx, entries) -> MilnorClass:
    """The class of the single symbol {e_1,...,e_n}, coefficient 1."""
    entries = tuple(entries)
    return MilnorClass(ctx, len(entries), (SymbolTerm(1, entries),))


def product(a: MilnorClass, b: MilnorClass) -> MilnorClass:
    return a * b


def expand_entry(a: MilnorClass, position: int, factorization) -> MilnorClass:
    """Split entry at `position` of a single-term class along y*z = entry."""
    t = a.single_term()
    if not 0 <= position < t.degree:
        raise BadPosition(f"position {position} out of range")
    y, z = factorization
    if not (y * z) == t.entries[position]:
        raise FactorizationMismatch("y*z does not equal the entry")
    e1 = t.entries[:position] + (y,) + t.entries[position + 1:]
    e2 = t.entries[:position] + (z,) + t.entries[position + 1:]
    return MilnorClass(a.ctx, a.degree,
                       (SymbolTerm(t.coeff, e1), SymbolTerm(t.coeff, e2)))


def swap(a: MilnorClass, i: int, j: int) -> MilnorClass:
    """Transpose two entries; any transposition flips the sign."""
    t = a.single_term()
    if i == j or not (0 <= i < t.degree and 0 <= j < t.degree):
        raise BadPosition(f"bad swap positions ({i}, {j})")
    ent = list(t.entries)
    ent[i], ent[j] = ent[j], ent[i]
    return MilnorClass(a.ctx, a.degree, (SymbolTerm(-t.coeff, ent),))


def is_steinberg_relator(t: SymbolTerm) -> bool:
    """True iff two distinct entries sum to 1 (the defining relator)."""
    n = t.degree
    for i in range(n):
        for j in range(n):
            if i != j and (t.entries[i] + t.entries[j]).is_one():
                return True
    return False


def apply_identity(a: MilnorClass, rule: str, position: int) -> MilnorClass:
    """Adjacent-pair identities {x,-x} = 0 and {x,x} = {x,-1}."""
    t = a.single_term()
    if not 0 <= position < t.degree - 1:
        raise BadPosition(f"no adjacent pair at position {position}")
    x, y = t.entries[position], t.entries[position + 1]
    if rule == MINUS_SELF:
        if not (x + y).is_zero():
            raise PatternMismatch("entries are not (x, -x)")
        return MilnorClass.zero(a.ctx, a.degree)
    if rule == SELF_TO_MINUS_ONE:
        if not (x - y).is_zero():
            raise PatternMismatch("entries are not (x, x)")
        ent = t.entries[:position + 1] + (a.ctx.minus_one(),) \
            + t.entries[position + 2:]
        return MilnorClass(a.ctx, a.degree, (SymbolTerm(t.coeff, ent),))
    raise PatternMismatch(f"unknown rule {rule!r}")


class FFKGroup:
    """K^M_n(F_q) presented on the single generator {g,...,g}.

    relator_meta[i] describes row i of the presentation:
    ("order",) for the group order q-1, or ("steinberg", i, j, ks) for the
    relation coming from g^i + g^j = 1 padded with exponents ks.
    """

    __slots__ = ("q", "n", "field", "presentation", "relator_meta")

    def __init__(self, q: int, n: int, field, presentation, relator_meta):
        self.q = q
        self.n = n
        self.field = field
        self.presentation = presentation
        self.relator_meta = relator_meta

    @property
    def invariant_factors(self) -> list[int]:
        return self.presentation.invariant_factors

    def vector_of(self, a: MilnorClass) -> list[int]:
        """Exponent of the class on the generator of T_n = Z/(q-1)."""
        assert a.degree == self.n
        total = 0
        for t in a.terms:
            prod = t.coeff
            for e in t.entries:
                prod *= e.dlog()
            total += prod
        return [total % (self.q - 1)] if self.q > 2 else [0]

    def image_is_zero(self, a: MilnorClass) -> bool:
        return self.presentation.is_trivial_element(self.vector_of(a))


@lru_cache(maxsize=None)
def ff_kgroup(q: int, n: int) -> FFKGroup:
    """Present K^M_n(F_q) and compute its invariant factors."""
    if q > FF_KGROUP_BOUND:
        raise FieldTooLarge(f"q = {q} above bound {FF_KGROUP_BOUND}")
    if n > FF_KGROUP_MAX_DEGREE:
        raise DegreeTooLarge(f"degree {n} above bound {FF_KGROUP_MAX_DEGREE}")
    field = ff_ctx_q(q)
    m = q - 1
    if n == 0:
        # K_0 = Z: one free generator
        return FFKGroup(q, n, field, AbGroupPresentation(1, []), [])
    rows = [[m]]
    meta = [("order",)]
    if n >= 2 and m > 1:
        seen = {0}
        g = field.gen()
        for i in range(1, m):
            s = field.one() - g ** i
            if s.is_zero():
                continue
            j = s.dlog()
            if j == 0:
                continue
            base = (i * j) % m
            if n == 2:
                if base not in seen:
                    seen.add(base)
                    rows.append([base])
                    meta.append(("steinberg", i, j, ()))
                continue
            # pad with every choice of the remaining n-2 exponents,
            # keeping one representative per residue mod q-1
            pads = [()]
            for _ in range(n - 2):
                pads = [ks + (k,) for ks in pads for k in range(1, m + 1)]
                # residues repeat quickly; prune by partial product
                pruned = {}
                for ks in pads:
                    r = base
                    for k in ks:
                        r = (r * k) % m
                    pruned.setdefault(r, ks)
                pads = list(pruned.values())
            for ks in pads:
                r = base
                for k in ks:
                    r = (r * k) % m
                if r not in seen:
                    seen.add(r)
                    rows.append([r])
                    meta.append(("steinberg", i, j, ks))
    return FFKGroup(q, n, field, AbGroupPresentation(1, rows), meta)
