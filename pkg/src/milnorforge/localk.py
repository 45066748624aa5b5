"""Milnor K-theory of local fields: tame symbol, mod-m reduction and
lifting, machine-checkable divisibility certificates, Hilbert symbols.

The divisibility certificates are the heart of the module.  A certificate
claims alpha = ell*beta + sum of relator applications inside the free
abelian group on symbols, where every relator application is one of a
small fixed vocabulary of moves (bilinear expansion, swap, Steinberg,
{x,-x}, {x,x}, Hensel root extraction).  The verifier replays the steps
with no trust in the producer: it re-checks every side condition and the
final formal-sum identity.
"""

from __future__ import annotations

import math

from .arith.local import (
    LAURENT,
    PADIC,
    LocalFieldCtx,
    principal_unit_root,
    teichmuller,
    unit_decompose,
)
from .errors import (
    BadModulus,
    BadPrime,
    NonUnitEntry,
    PatternMismatch,
    PiEntryPresent,
    PrecisionTooLow,
    ZeroInput,
)
from .snf import NOT_IN_SUBGROUP
from .symbols import MilnorClass, SymbolTerm, ff_kgroup

# --------------------------------------------------------------------------
# generator form and the tame symbol
# --------------------------------------------------------------------------


def generator_form(ctx: LocalFieldCtx, a: MilnorClass) -> MilnorClass:
    """Rewrite a class so every term is {pi,u_2,...,u_n} or all units.

    Each entry x splits as u*pi^k by multilinearity; repeated pi's are
    merged with {pi,pi} = {pi,-1}; a single remaining pi is swapped to the
    front (each transposition flips the sign).  Terms acquiring an entry 1
    are dropped: {1,...} = 0.
    """
    pi = ctx.uniformizer()
    done: list[SymbolTerm] = []
    work = [(t.coeff, t.entries) for t in a.terms]
    while work:
        c, ent = work.pop()
        if c == 0:
            continue
        if any(e.is_one() for e in ent):
            continue
        # split one non-unit, non-pi entry
        split_at = None
        for i, e in enumerate(ent):
            if e.val != 0 and e != pi:
                split_at = i
                break
        if split_at is not None:
            k, u = unit_decompose(ent[split_at])
            if not u.is_one():
                work.append((c, ent[:split_at] + (u,) + ent[split_at + 1:]))
            if k != 0:
                work.append((c * k, ent[:split_at] + (pi,) + ent[split_at + 1:]))
            continue
        pis = [i for i, e in enumerate(ent) if e == pi]
        if len(pis) >= 2:
            i, j = pis[0], pis[1]
            # drag position j next to i, then {pi,pi} -> {pi,-1}
            moved = list(ent)
            for k2 in range(j, i + 1, -1):
                moved[k2], moved[k2 - 1] = moved[k2 - 1], moved[k2]
            sign = -1 if (j - i - 1) % 2 else 1
            moved[i + 1] = ctx.minus_one()
            work.append((c * sign, tuple(moved)))
            continue
        if len(pis) == 1 and pis[0] != 0:
            i = pis[0]
            moved = (pi,) + ent[:i] + ent[i + 1:]
            sign = -1 if i % 2 else 1
            done.append(SymbolTerm(c * sign, moved))
            continue
        done.append(SymbolTerm(c, ent))
    return MilnorClass(ctx, a.degree, done)


def tame(ctx: LocalFieldCtx, a: MilnorClass) -> MilnorClass:
    """Tame symbol: {pi,u_2,...,u_n} -> {u_2 bar,...,u_n bar}, V_n -> 0."""
    assert a.degree >= 1, "tame symbol needs degree >= 1"
    pi = ctx.uniformizer()
    kappa = ctx.residue_field
    out = []
    for t in generator_form(ctx, a).terms:
        if t.entries[0] == pi:
            out.append(SymbolTerm(t.coeff,
                                  [ctx.residue(e) for e in t.entries[1:]]))
        # pure-unit terms die
    return MilnorClass(kappa, a.degree - 1, out)


# --------------------------------------------------------------------------
# the mod-m isomorphism of units (reduce / lift)
# --------------------------------------------------------------------------


def _check_modulus(ctx: LocalFieldCtx, m: int):
    if m < 2 or math.gcd(m, ctx.p) != 1:
        raise BadModulus(f"modulus {m} must be >= 2 and coprime to p = {ctx.p}")


def reduce_mod_m(ctx: LocalFieldCtx, a: MilnorClass, m: int) -> MilnorClass:
    """Entrywise residue map on unit symbols; realizes (K_n O)/m -> (K_n kappa)/m."""
    _check_modulus(ctx, m)
    for t in a.terms:
        for e in t.entries:
            if e.val != 0:
                raise NonUnitEntry(f"entry {e!r} is not a unit of O")
    return a.map_entries(ctx.residue, new_ctx=ctx.residue_field)


def lift_mod_m(ctx: LocalFieldCtx, b: MilnorClass, m: int) -> MilnorClass:
    """Entrywise Teichmuller lift; section of reduce_mod_m."""
    _check_modulus(ctx, m)
    return b.map_entries(
        lambda e: teichmuller(ctx, ctx.lift_residue(e)), new_ctx=ctx)


# --------------------------------------------------------------------------
# divisibility certificates
# --------------------------------------------------------------------------

BILINEAR_EXPAND = "BILINEAR_EXPAND"
SWAP = "SWAP"
STEINBERG_ZERO = "STEINBERG_ZERO"
MINUS_SELF = "MINUS_SELF"
SELF_TO_MINUS_ONE = "SELF_TO_MINUS_ONE"
HENSEL_ROOT = "HENSEL_ROOT"

DEFAULT_CERT_PRECISION = 8


class CertStep:
    """One relator application: `mult` times a relator that is 0 in K^M.

    kind-specific payload:
      BILINEAR_EXPAND    pos, aux = (y, z) with y*z = entries[pos]
      SWAP               pos = (i, j)
      STEINBERG_ZERO     pos = (i, j) with entries[i] + entries[j] = 1
      MINUS_SELF         pos = i with entries[i] + entries[i+1] = 0
      SELF_TO_MINUS_ONE  pos = i with entries[i] = entries[i+1]
      HENSEL_ROOT        pos = i, aux = (root,) with root^ell = entries[i]
    """

    __slots__ = ("kind", "mult", "entries", "pos", "aux")

    def __init__(self, kind, mult, entries, pos, aux=()):
        self.kind = kind
        self.mult = mult
        self.entries = tuple(entries)
        self.pos = pos
        self.aux = tuple(aux)

    def relator(self, ctx: LocalFieldCtx, ell: int):
        """The formal sum this step claims to be zero, or None + reason."""
        e = self.entries
        if self.kind == BILINEAR_EXPAND:
            y, z = self.aux
            if not (y * z) == e[self.pos]:
                return None, "y*z does not match the expanded entry"
            e1 = e[:self.pos] + (y,) + e[self.pos + 1:]
            e2 = e[:self.pos] + (z,) + e[self.pos + 1:]
            return [(1, e), (-1, e1), (-1, e2)], ""
        if self.kind == SWAP:
            i, j = self.pos
            if i == j:
                return None, "swap of equal positions"
            sw = list(e)
            sw[i], sw[j] = sw[j], sw[i]
            return [(1, e), (1, tuple(sw))], ""
        if self.kind == STEINBERG_ZERO:
            i, j = self.pos
            if i == j or not (e[i] + e[j]).is_one():
                return None, "entries do not sum to 1"
            return [(1, e)], ""
        if self.kind == MINUS_SELF:
            i = self.pos
            if not (e[i] + e[i + 1]).is_zero():
                return None, "entries are not (x, -x)"
            return [(1, e)], ""
        if self.kind == SELF_TO_MINUS_ONE:
            i = self.pos
            if not (e[i] - e[i + 1]).is_zero():
                return None, "entries are not (x, x)"
            e2 = e[:i + 1] + (ctx.minus_one(),) + e[i + 2:]
            return [(1, e), (-1, e2)], ""
        if self.kind == HENSEL_ROOT:
            (root,) = self.aux
            if not (root ** ell) == e[self.pos]:
                return None, f"root^{ell} does not reproduce the entry"
            e2 = e[:self.pos] + (root,) + e[self.pos + 1:]
            return [(1, e), (-ell, e2)], ""
        return None, f"unknown step kind {self.kind!r}"


class DivisibilityCertificate:
    """Replayable witness that alpha = ell*beta modulo Steinberg relations."""

    __slots__ = ("ctx", "ell", "alpha", "beta", "steps")

    def __init__(self, ctx, ell, alpha, beta, steps):
        self.ctx = ctx
        self.ell = ell
        self.alpha = alpha
        self.beta = beta
        self.steps = list(steps)


class VerifyResult:
    __slots__ = ("ok", "failure")

    def __init__(self, ok: bool, failure: str = ""):
        self.ok = ok
        self.failure = failure

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "verified" if self.ok else f"FAILED: {self.failure}"


class _FormalSum:
    """Free abelian group on entry tuples, keyed by serialization."""

    __slots__ = ("coeffs",)

    def __init__(self):
        self.coeffs: dict[tuple, tuple[int, tuple]] = {}

    def add(self, c: int, entries):
        if c == 0:
            return
        k = tuple(e.serialize() for e in entries)
        if k in self.coeffs:
            old, ent = self.coeffs[k]
            if old + c == 0:
                del self.coeffs[k]
            else:
                self.coeffs[k] = (old + c, ent)
        else:
            self.coeffs[k] = (c, tuple(entries))

    def add_class(self, c: int, cls: MilnorClass):
        for t in cls.terms:
            self.add(c * t.coeff, t.entries)

    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self):
        return [(c, ent) for _, (c, ent) in sorted(self.coeffs.items())]


def verify_certificate(cert: DivisibilityCertificate) -> VerifyResult:
    """Replay all steps; confirm alpha - ell*beta - sum(relators) = 0."""
    if cert.ell < 2:
        return VerifyResult(False, f"divisor {cert.ell} below 2")
    acc = _FormalSum()
    acc.add_class(1, cert.alpha)
    acc.add_class(-cert.ell, cert.beta)
    for idx, step in enumerate(cert.steps):
        rel, why = step.relator(cert.ctx, cert.ell)
        if rel is None:
            return VerifyResult(False, f"step {idx} ({step.kind}): {why}")
        for c, ent in rel:
            acc.add(-step.mult * c, ent)
    if not acc.is_zero():
        return VerifyResult(False, "residual formal sum is nonzero")
    return VerifyResult(True)


class _WitnessBuilder:
    """Drives the witness construction, tracking the residual formal sum."""

    def __init__(self, ctx: LocalFieldCtx, ell: int):
        self.ctx = ctx
        self.ell = ell
        self.acc = _FormalSum()
        self.steps: list[CertStep] = []

    def apply(self, step: CertStep):
        """Record the step and subtract mult*relator from the residual."""
        rel, why = step.relator(self.ctx, self.ell)
        assert rel is not None, why
        self.steps.append(step)
        for c, ent in rel:
            self.acc.add(-step.mult * c, ent)

    # -- move emitters -----------------------------------------------------

    def expand(self, mult, entries, pos, y, z):
        self.apply(CertStep(BILINEAR_EXPAND, mult, entries, pos, (y, z)))

    def kill_one_entry(self, mult, entries, pos):
        """Remove mult*[..,1,..]: the relator [e]-2[e] = -[e] (1 = 1*1)."""
        one = self.ctx.one()
        assert entries[pos].is_one()
        self.apply(CertStep(BILINEAR_EXPAND, -mult, entries, pos, (one, one)))

    def hensel_step(self, mult, entries, pos, root):
        self.apply(CertStep(HENSEL_ROOT, mult, entries, pos, (root,)))

    def expand_power(self, mult, entries, pos, base, e):
        """Replace mult*[..,base^e,..] by e*mult*[..,base,..] (e >= 1)."""
        cur = e
        ent = entries
        while cur > 1:
            lower = base ** (cur - 1)
            self.expand(mult, ent, pos, base, lower)
            ent = ent[:pos] + (lower,) + ent[pos + 1:]
            cur -= 1

    def contract_power(self, mult, entries_with_base, pos, base, e):
        """Inverse move: e*mult*[..,base,..] becomes mult*[..,base^e,..]."""
        ent = entries_with_base[:pos] + (base ** e,) + entries_with_base[pos + 1:]
        self.expand_power(-mult, ent, pos, base, e)


def divisibility_witness(ctx: LocalFieldCtx, a: MilnorClass, ell: int
                         ) -> DivisibilityCertificate:
    """Produce a verified certificate that [a] is divisible by ell.

    Requires unit entries, degree >= 2, and gcd(ell, p) = 1.  The
    algorithm follows the proof of the mod-m isomorphism: split each
    entry through the Teichmuller section, absorb the principal-unit
    parts by Hensel ell-th roots, and discharge the residual Teichmuller
    class against the finite-field Steinberg relators, each lifted to O
    by u^{-1}-scaling.
    """
    if ell < 2 or math.gcd(ell, ctx.p) != 1:
        raise BadPrime(f"divisor {ell} must be >= 2 and coprime to p = {ctx.p}")
    n = a.degree
    assert n >= 2, "certificates need degree >= 2"
    for t in a.terms:
        for e in t.entries:
            if e.val != 0:
                raise PiEntryPresent(
                    "apply generator_form first: certificate entries must be units")

    kappa = ctx.residue_field
    q = kappa.q
    g_lift = teichmuller(ctx, ctx.lift_residue(kappa.gen()))
    b = _WitnessBuilder(ctx, ell)
    b.acc.add_class(1, a)

    # 1) split every entry as (Teichmuller part) * (principal unit part)
    work = [(t.coeff, t.entries) for t in a.terms]
    residual: list[tuple[int, tuple]] = []
    for c, ent in work:
        frontier = [(c, ent)]
        for pos in range(n):
            nxt = []
            for cc, ee in frontier:
                x = ee[pos]
                e_exp = ctx.residue(x).dlog()
                omega = g_lift ** e_exp
                u1 = x * omega.inverse()
                if u1.is_one():
                    nxt.append((cc, ee[:pos] + (omega,) + ee[pos + 1:]))
                    continue
                b.expand(cc, ee, pos, omega, u1)
                nxt.append((cc, ee[:pos] + (omega,) + ee[pos + 1:]))
                # the principal-unit branch is absorbed right away
                eu = ee[:pos] + (u1,) + ee[pos + 1:]
                root = principal_unit_root(ctx, u1, ell)
                b.hensel_step(cc, eu, pos, root)
            frontier = nxt
        residual.extend(frontier)

    # 2) all-Teichmuller residual: expand to multiples of {g,...,g}
    v_total = 0
    gens = (g_lift,) * n
    for c, ent in residual:
        exps = [ctx.residue(e).dlog() for e in ent]
        ones = [i for i, e in enumerate(exps) if e == 0]
        if ones:
            b.kill_one_entry(c, ent, ones[0])
            continue
        cur = ent
        mult = c
        for pos in range(n):
            b.expand_power(mult, cur, pos, g_lift, exps[pos])
            cur = cur[:pos] + (g_lift,) + cur[pos + 1:]
            mult *= exps[pos]
        v_total += mult

    # 3) discharge v_total*{g,..,g} against the kappa Steinberg relators
    if v_total:
        kg = ff_kgroup(q, n)
        combo = kg.presentation.express_in_relators([v_total])
        assert combo is not NOT_IN_SUBGROUP, \
            "residual class not in the relator span (K_n kappa should vanish)"
        for c_r, meta in zip(combo, kg.relator_meta):
            if c_r == 0:
                continue
            if meta[0] == "order":
                # (q-1)*[g,..,g] = [g^(q-1), g,..,g] = [1, g,..,g] = 0
                b.contract_power(c_r, gens, 0, g_lift, q - 1)
                ent1 = (ctx.one(),) + gens[1:]
                b.kill_one_entry(c_r, ent1, 0)
                v_total -= c_r * (q - 1)
            else:
                _, i, j, ks = meta
                full = i * j
                for k in ks:
                    full *= k
                row = full % (q - 1)
                # contract full*[g,..,g] down to [g^i, g^j, g^k3, ...]
                exps = (i, j) + tuple(ks)
                cur = gens
                mult = c_r * full
                for pos in range(n - 1, -1, -1):
                    mult //= exps[pos]
                    b.contract_power(mult, cur, pos, g_lift, exps[pos])
                    cur = cur[:pos] + (g_lift ** exps[pos],) + cur[pos + 1:]
                _discharge_steinberg_pair(b, cur)
                v_total -= c_r * full
                # the stored relator row was reduced mod q-1; pay the
                # difference with extra applications of the order relator
                extra = (full - row) // (q - 1)
                if extra:
                    b.contract_power(-c_r * extra, gens, 0, g_lift, q - 1)
                    ent1 = (ctx.one(),) + gens[1:]
                    b.kill_one_entry(-c_r * extra, ent1, 0)
                    v_total += c_r * extra * (q - 1)
    assert v_total == 0, f"relator bookkeeping left {v_total}"

    # 4) whatever remains must be an exact multiple of ell: that is beta
    beta_terms = []
    for c, ent in b.acc.items():
        assert c % ell == 0, f"residual coefficient {c} not divisible by {ell}"
        beta_terms.append(SymbolTerm(c // ell, ent))
    beta = MilnorClass(ctx, n, beta_terms)
    cert = DivisibilityCertificate(ctx, ell, a, beta, b.steps)
    res = verify_certificate(cert)
    assert res, f"freshly built certificate failed: {res.failure}"
    return cert


def _discharge_steinberg_pair(b: _WitnessBuilder, ent):
    """Kill mult... the residual [a,b,rest] with abar + bbar = 1 in kappa.

    a + b = u lies in U_1, so w = u^{-1} makes (wa) + (wb) = 1 exactly:
    [wa,wb,rest] is a Steinberg relator.  Expanding it bilinearly and
    Hensel-absorbing the two w factors leaves only multiples of ell.
    """
    ctx, ell = b.ctx, b.ell
    # the coefficient currently sitting on ent in the residual
    k = tuple(e.serialize() for e in ent)
    c = b.acc.coeffs.get(k, (0, ()))[0]
    if c == 0:
        return
    x1, x2, rest = ent[0], ent[1], ent[2:]
    u = x1 + x2
    assert ctx.is_principal_unit(u), "entries do not reduce to a Steinberg pair"
    w = u.inverse()
    wa, wb = w * x1, w * x2
    st = (wa, wb) + rest
    b.apply(CertStep(STEINBERG_ZERO, c, st, (0, 1)))
    # [wa, wb, rest] = [w, wb, rest] + [a, wb, rest]
    b.expand(-c, st, 0, w, x1)
    # [a, wb, rest] = [a, w, rest] + [a, b, rest]
    b.expand(-c, (x1, wb) + rest, 1, w, x2)
    # absorb the two w's by Hensel roots
    root = principal_unit_root(ctx, w, ell)
    b.hensel_step(-c, (w, wb) + rest, 0, root)
    b.hensel_step(-c, (x1, w) + rest, 1, root)


# --------------------------------------------------------------------------
# certificate serialization (replayable text form)
# --------------------------------------------------------------------------


def _ser_entries(entries):
    return " | ".join(e.serialize() for e in entries)


def serialize_certificate(cert: DivisibilityCertificate) -> str:
    ctx = cert.ctx
    head = (f"padic({ctx.p},{ctx.prec})" if ctx.model == PADIC
            else f"laurent({ctx.q},{ctx.prec})")
    lines = ["divcert v1", f"ctx {head}", f"ell {cert.ell}",
             f"degree {cert.alpha.degree}"]
    for t in cert.alpha.terms:
        lines.append(f"alpha {t.coeff} ; {_ser_entries(t.entries)}")
    for t in cert.beta.terms:
        lines.append(f"beta {t.coeff} ; {_ser_entries(t.entries)}")
    for s in cert.steps:
        pos = ",".join(str(x) for x in s.pos) if isinstance(s.pos, tuple) \
            else str(s.pos)
        line = f"step {s.kind} {s.mult} {pos} ; {_ser_entries(s.entries)}"
        if s.aux:
            line += f" ; {_ser_entries(s.aux)}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> DivisibilityCertificate:
    from .arith.local import laurent_ctx, padic_ctx

    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "divcert v1":
        raise PatternMismatch("not a certificate file")
    ctx = None
    ell = degree = None
    alpha_terms, beta_terms, steps = [], [], []
    for ln in lines[1:]:
        kind, _, rest = ln.partition(" ")
        if kind == "ctx":
            m = rest.strip()
            inner = m[m.index("(") + 1:m.index(")")]
            a_, b_ = (int(x) for x in inner.split(","))
            ctx = padic_ctx(a_, b_) if m.startswith("padic") \
                else laurent_ctx(a_, b_)
        elif kind == "ell":
            ell = int(rest)
        elif kind == "degree":
            degree = int(rest)
        elif kind in ("alpha", "beta"):
            coeff_s, _, ents = rest.partition(";")
            entries = [ctx.parse(e) for e in ents.split("|")]
            term = SymbolTerm(int(coeff_s), entries)
            (alpha_terms if kind == "alpha" else beta_terms).append(term)
        elif kind == "step":
            parts = [p.strip() for p in rest.split(";")]
            skind, mult_s, pos_s = parts[0].split()
            entries = [ctx.parse(e) for e in parts[1].split("|")]
            aux = [ctx.parse(e) for e in parts[2].split("|")] \
                if len(parts) > 2 else []
            pos = tuple(int(x) for x in pos_s.split(",")) \
                if "," in pos_s else int(pos_s)
            steps.append(CertStep(skind, int(mult_s), entries, pos, aux))
        else:
            raise PatternMismatch(f"bad certificate line: {ln!r}")
    alpha = MilnorClass(ctx, degree, alpha_terms)
    beta = MilnorClass(ctx, degree, beta_terms)
    return DivisibilityCertificate(ctx, ell, alpha, beta, steps)


# --------------------------------------------------------------------------
# Hilbert symbol over Q_p with an independent quadratic-form oracle
# --------------------------------------------------------------------------


def hilbert(ctx: LocalFieldCtx, a, b):
    """Class of {a,b} in (K_2 Q_p)/p.

    p = 2: returns 0 or 1 via the closed formula
    eps(u)eps(v) + alpha*omega2(v) + beta*omega2(u) mod 2 for a = 2^alpha u,
    b = 2^beta v.  Odd p: returns the tame-pairing residue
    (-1)^{v(a)v(b)} a^{v(b)} b^{-v(a)} bar as a kappa element (the group
    (K_2 Q_p)/p is zero for odd p, so this shadow is killed by p).
    """
    if a.is_zero() or b.is_zero():
        raise ZeroInput("hilbert symbol needs nonzero arguments")
    assert ctx.model == PADIC
    p = ctx.p
    if p == 2:
        if min(a.prec + a.val, b.prec + b.val) < 3 or min(a.prec, b.prec) < 3:
            raise PrecisionTooLow("p = 2 formula needs at least 3 digits")
        alpha, u = unit_decompose(a)
        beta, v = unit_decompose(b)
        eu, ev = (u.unit - 1) // 2 % 2, (v.unit - 1) // 2 % 2
        wu = (u.unit * u.unit - 1) // 8 % 2
        wv = (v.unit * v.unit - 1) // 8 % 2
        return (eu * ev + alpha * wv + beta * wu) % 2
    va, ua = unit_decompose(a)
    vb, ub = unit_decompose(b)
    sign = ctx.residue_field.minus_one() ** (va * vb)
    return sign * ctx.residue(ua) ** vb * ctx.residue(ub) ** (-va)


DEFAULT_ORACLE_PRECISION = 6


def qf_oracle(ctx: LocalFieldCtx, a, b, search_precision: int | None = None
              ) -> bool:
    """Independent ground truth: is z^2 = a x^2 + b y^2 solvable over Q_p?

    Exhaustive sweep of primitive (x, y) modulo p^B.  A value that is a
    p-adic square at a valuation comfortably below the search modulus
    certifies solvability (Hensel lifts the square root); a completed
    sweep with no such value certifies insolvability, because a primitive
    solution would already show up modulo p^B.
    """
    import numpy as np

    if a.is_zero() or b.is_zero():
        raise ZeroInput("oracle needs nonzero coefficients")
    assert ctx.model == PADIC
    p = ctx.p
    B = search_precision if search_precision is not None \
        else DEFAULT_ORACLE_PRECISION
    va, ua = unit_decompose(a)
    vb, ub = unit_decompose(b)
    if min(ua.prec, ub.prec) < B:
        raise PrecisionTooLow(
            f"need {B} digits on the unit parts for the sweep")
    # z = 0 solutions: a x^2 = -b y^2, i.e. -b/a is a square
    ratio = (-b) * a.inverse()
    if ratio.val % 2 == 0:
        r_unit = ratio.unit
        if (p == 2 and r_unit % 8 == 1) or \
                (p != 2 and pow(r_unit, (p - 1) // 2, p) == 1):
            return True
    # clear negative valuations: multiplying the form by p^(2s) replaces
    # z by p^s z and changes nothing about solvability
    shift = max(0, -va, -vb)
    mod = p ** B
    A = ua.unit * p ** (va + 2 * shift) % mod
    Bb = ub.unit * p ** (vb + 2 * shift) % mod

    # a value w != 0 mod p^B is a certified square when its valuation is
    # even with `head` unit digits to spare (Hensel lifts the root), so
    # insolvability follows once the sweep exhausts all primitive (x, y)
    head = 3 if p == 2 else 1
    qr = np.zeros(p, dtype=bool)
    for r in range(1, p):
        qr[r * r % p] = True
    xs = np.arange(mod, dtype=np.int64)
    unit_y = (xs % p) != 0
    for x in range(mod):
        w = (A * x * x + Bb * xs * xs) % mod
        if x % p == 0:
            w = w[unit_y]
        v2 = np.zeros(len(w), dtype=np.int64)
        ww = w.copy()
        alive = ww != 0
        for _ in range(B):
            div = alive & (ww % p == 0)
            if not div.any():
                break
            ww[div] //= p
            v2[div] += 1
        good = alive & (v2 % 2 == 0) & (v2 <= B - head)
        if p == 2:
            good &= (ww % 8) == 1
        else:
            good &= qr[ww % p]
        if good.any():
            return True
    return False
