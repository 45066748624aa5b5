"""Command-line front end: `milnor-forge`.

One verb per exposed operation, plus the orchestrated `gersten-check` and
the named invariant suites.  All randomness flows from the single --seed;
machine-readable output (--format records) is line-delimited with stable
field names and is byte-identical for identical (inputs, seed, config).
Exit status is 0 only when every check in the run passed.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import time

from .arith.finite_field import ff_ctx_q
from .arith.local import (
    LAURENT,
    PADIC,
    LocalFieldCtx,
    laurent_ctx,
    padic_ctx,
    principal_unit_root,
    teichmuller,
)
from .arith.poly import Poly
from .bass_tate import (
    bt_section,
    class_to_unit,
    functoriality_check,
    k_equal,
    norm,
    projection_formula_check,
    reciprocity_check,
    residue_vector,
    tower_is_primitive,
)
from .errors import BadInput, MilnorForgeError, MixedCharRejected, UnknownSuite
from .localk import (
    divisibility_witness,
    generator_form,
    hilbert,
    lift_mod_m,
    parse_certificate,
    qf_oracle,
    reduce_mod_m,
    serialize_certificate,
    tame,
    verify_certificate,
)
from .ratfunc import QuotCtx, QuotElem, RatFuncCtx, irreducible_over
from .rational_ring import (
    MultiPoly,
    RationalRingElem,
    base_change_roundtrip,
    delta_kernel_check,
    is_unit,
    random_ratring_elem,
    residue_map,
    s_member,
)
from .symbols import MilnorClass, SymbolTerm, ff_kgroup, symbol

DEFAULT_PRECISION = 8
DEFAULT_BOUNDS = {"maxq": 16, "maxdeg": 3, "oracleprec": 8}
SUITE_NAMES = ("STEINBERG", "HILBERT_TABLE", "RECIPROCITY",
               "CERTIFICATES", "FF_KGROUPS")


def read_bounds() -> dict:
    """Bounds from MILNOR_FORGE_BOUNDS (`maxq=...,maxdeg=...,oracleprec=...`)."""
    out = dict(DEFAULT_BOUNDS)
    raw = os.environ.get("MILNOR_FORGE_BOUNDS", "")
    for piece in raw.split(","):
        piece = piece.strip()
        if not piece:
            continue
        key, _, val = piece.partition("=")
        if key not in out:
            raise BadInput(f"unknown bound {key!r} in MILNOR_FORGE_BOUNDS")
        out[key] = int(val)
    return out


# --------------------------------------------------------------------------
# field specs and input parsing
# --------------------------------------------------------------------------


def make_field(spec: str, precision: int):
    """`padic:P`, `laurent:Q`, `ff:Q` or `ratfunc:Q`."""
    kind, _, arg = spec.partition(":")
    if not arg:
        raise BadInput(f"field spec {spec!r} needs `kind:q`")
    q = int(arg)
    if kind == "padic":
        return padic_ctx(q, precision)
    if kind == "laurent":
        return laurent_ctx(q, precision)
    if kind == "ff":
        return ff_ctx_q(q)
    if kind == "ratfunc":
        return RatFuncCtx(ff_ctx_q(q), "t")
    raise BadInput(f"unknown field kind {kind!r}")


def _split_commas(s: str):
    """Split on commas at parenthesis depth 0."""
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_local_element(ctx: LocalFieldCtx, s: str):
    s = s.strip()
    try:
        return ctx.from_int(int(s))
    except ValueError:
        pass
    if s == "pi":
        return ctx.uniformizer()
    return ctx.parse(s)


def parse_class(ctx, s: str, parse_entry) -> MilnorClass:
    """`deg:n k*{e1,e2} + {..} - {..}` (the serialize format); the degree
    prefix is optional when at least one term is present."""
    tokens = s.split()
    degree = None
    terms = []
    sign = 1
    for tok in tokens:
        if tok.startswith("deg:"):
            degree = int(tok[4:])
            continue
        if tok == "+":
            sign = 1
            continue
        if tok == "-":
            sign = -1
            continue
        if tok == "0":
            continue
        coeff = sign
        if tok.startswith("-"):
            coeff = -coeff
            tok = tok[1:]
        body = tok
        if "*{" in tok:
            head, _, body = tok.partition("*")
            coeff *= int(head)
        if not (body.startswith("{") and body.endswith("}")):
            raise BadInput(f"cannot parse symbol term {tok!r}")
        entries = [parse_entry(e) for e in _split_commas(body[1:-1])]
        terms.append(SymbolTerm(coeff, entries))
        sign = 1
    if degree is None:
        if not terms:
            raise BadInput("class needs a deg:n prefix or at least one term")
        degree = terms[0].degree
    return MilnorClass(ctx, degree, terms)


def parse_sparse_poly(from_int, s: str, names) -> dict:
    """Sparse `c*t^k` / `c*t1^a*t2^b` sums with integer coefficients;
    returns {exponent tuple: coefficient}."""
    s = s.replace("-", "+-").replace("++-", "+-")
    out = {}
    for term in s.split("+"):
        term = term.strip()
        if not term:
            continue
        coeff = 1
        exps = [0] * len(names)
        for factor in term.split("*"):
            factor = factor.strip()
            var, _, exp = factor.partition("^")
            if var in names:
                exps[names.index(var)] += int(exp) if exp else 1
            else:
                coeff *= int(factor)
        key = tuple(exps)
        c = from_int(coeff)
        out[key] = out[key] + c if key in out else c
    return out


def parse_ratfunc(F: RatFuncCtx, s: str):
    """`num/den` with sparse `c*t^k` polynomials (den optional)."""
    s = s.strip()
    if s.startswith("(") and ")/(" in s and s.endswith(")"):
        num_s, den_s = s[1:-1].split(")/(", 1)
    elif "/" in s:
        num_s, den_s = s.split("/", 1)
    else:
        num_s, den_s = s, "1"

    def to_poly(text):
        d = parse_sparse_poly(F.base.from_int, text, [F.var])
        deg = max((e[0] for e in d), default=0)
        return Poly(F.base, [d.get((i,), F.base.zero())
                             for i in range(deg + 1)])

    from .ratfunc import RatFuncElem
    return RatFuncElem(F, to_poly(num_s), to_poly(den_s))


def parse_multipoly(A, k: int, s: str) -> MultiPoly:
    names = ["t"] if k == 1 else ["t1", "t2"]
    return MultiPoly(A, k, parse_sparse_poly(A.from_int, s, names))


def parse_ratring(A, k: int, s: str) -> RationalRingElem:
    s = s.strip()
    if s.startswith("(") and ")/(" in s and s.endswith(")"):
        num_s, den_s = s[1:-1].split(")/(", 1)
    elif "/" in s:
        num_s, den_s = s.split("/", 1)
    else:
        num_s, den_s = s, "1"
    return RationalRingElem(A, k, parse_multipoly(A, k, num_s),
                            parse_multipoly(A, k, den_s))


def parse_x_poly(F: RatFuncCtx, s: str) -> Poly:
    """Polynomial in X over F_q(t): `;`-separated coefficients, low first."""
    return Poly(F, [parse_ratfunc(F, c) for c in s.split(";")])


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------


class Report:
    """Ordered pass/fail records for one command invocation."""

    def __init__(self, command: str, seed: int):
        self.command = command
        self.seed = seed
        self.records = []
        self.started = time.monotonic()

    def add(self, ok: bool, **fields):
        self.records.append((bool(ok), fields))

    @property
    def ok(self) -> bool:
        return all(ok for ok, _ in self.records)

    def render(self, fmt: str) -> str:
        lines = []
        if fmt == "records":
            for ok, fields in self.records:
                body = " ".join(f"{k}={v}" for k, v in fields.items())
                lines.append(f"record cmd={self.command} seed={self.seed} "
                             f"{body} ok={'true' if ok else 'false'}")
            lines.append(f"summary cmd={self.command} seed={self.seed} "
                         f"checks={len(self.records)} "
                         f"ok={'true' if self.ok else 'false'}")
        else:
            for ok, fields in self.records:
                body = "  ".join(f"{k}={v}" for k, v in fields.items())
                lines.append(f"[{'PASS' if ok else 'FAIL'}] {body}")
            elapsed = time.monotonic() - self.started
            lines.append(f"{self.command}: {len(self.records)} checks, "
                         f"{'all passed' if self.ok else 'FAILURES'} "
                         f"(seed={self.seed}, {elapsed:.2f}s)")
        return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# local-field verbs
# --------------------------------------------------------------------------


def _local_ctx(args) -> LocalFieldCtx:
    ctx = make_field(args.field, args.precision)
    if not isinstance(ctx, LocalFieldCtx):
        raise BadInput(f"verb {args.verb!r} needs a padic/laurent field")
    return ctx


def cmd_ff_kgroup(args, rep: Report):
    g = ff_kgroup(args.q, args.n)
    inv = g.invariant_factors
    rep.add(True, op="ff_kgroup", q=args.q, n=args.n,
            invariants="[" + ",".join(map(str, inv)) + "]")


def cmd_tame(args, rep: Report):
    ctx = _local_ctx(args)
    a = parse_class(ctx, args.symbol, lambda e: parse_local_element(ctx, e))
    rep.add(True, op="tame", input=repr(args.symbol),
            output=repr(tame(ctx, a).serialize()))


def cmd_reduce(args, rep: Report):
    ctx = _local_ctx(args)
    a = parse_class(ctx, args.symbol, lambda e: parse_local_element(ctx, e))
    rep.add(True, op="reduce_mod_m", m=args.m,
            output=repr(reduce_mod_m(ctx, a, args.m).serialize()))


def cmd_lift(args, rep: Report):
    ctx = _local_ctx(args)
    kappa = ctx.residue_field
    a = parse_class(kappa, args.symbol, lambda e: kappa.from_int(int(e))
                    if e.lstrip("-").isdigit() else _parse_ff(kappa, e))
    rep.add(True, op="lift_mod_m", m=args.m,
            output=repr(lift_mod_m(ctx, a, args.m).serialize()))


def _parse_ff(kappa, s: str):
    s = s.strip()
    if s.startswith(f"ff({kappa.p},{kappa.f}):"):
        tail = s.split(":", 1)[1]
        if tail == "0":
            return kappa.zero()
        return kappa.from_exp(int(tail[2:]))
    raise BadInput(f"cannot parse residue-field element {s!r}")


def cmd_divide(args, rep: Report):
    ctx = _local_ctx(args)
    a = parse_class(ctx, args.symbol, lambda e: parse_local_element(ctx, e))
    cert = divisibility_witness(ctx, a, args.ell)
    result = verify_certificate(cert)
    text = serialize_certificate(cert)
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
        rep.add(result.ok, op="divisibility_witness", ell=args.ell,
                cert=args.out, verified=str(result.ok).lower())
    else:
        rep.add(result.ok, op="divisibility_witness", ell=args.ell,
                steps=len(cert.steps), verified=str(result.ok).lower())
        if args.format == "text":
            sys.stdout.write(text)


def cmd_verify_cert(args, rep: Report):
    with open(args.file) as f:
        cert = parse_certificate(f.read())
    result = verify_certificate(cert)
    fields = {"op": "verify_certificate", "file": args.file,
              "ell": cert.ell, "steps": len(cert.steps)}
    if not result.ok:
        fields["counterexample"] = repr(result.failure)
    rep.add(result.ok, **fields)


def cmd_hilbert(args, rep: Report):
    ctx = _local_ctx(args)
    a = parse_local_element(ctx, args.a)
    b = parse_local_element(ctx, args.b)
    rep.add(True, op="hilbert", a=args.a, b=args.b,
            value=hilbert(ctx, a, b))


def cmd_qf_oracle(args, rep: Report, bounds):
    ctx = _local_ctx(args)
    a = parse_local_element(ctx, args.a)
    b = parse_local_element(ctx, args.b)
    solvable = qf_oracle(ctx, a, b, search_precision=bounds["oracleprec"])
    rep.add(True, op="qf_oracle", a=args.a, b=args.b,
            solvable=str(solvable).lower())


# --------------------------------------------------------------------------
# function-field verbs
# --------------------------------------------------------------------------


def _ratfunc_ctx(args) -> RatFuncCtx:
    ctx = make_field(args.field, args.precision)
    if not isinstance(ctx, RatFuncCtx):
        raise BadInput(f"verb {args.verb!r} needs a ratfunc:q field")
    return ctx


def cmd_residues(args, rep: Report):
    F = _ratfunc_ctx(args)
    a = parse_class(F, args.symbol, lambda e: parse_ratfunc(F, e))
    rep.add(True, op="residue_vector",
            output=repr(residue_vector(a).serialize()))


def cmd_section(args, rep: Report):
    F = _ratfunc_ctx(args)
    a = parse_class(F, args.symbol, lambda e: parse_ratfunc(F, e))
    v = residue_vector(a)
    s = bt_section(v)
    round_trip = residue_vector(s).same_finite(v)
    rep.add(round_trip, op="bt_section", output=repr(s.serialize()),
            finite_round_trip=str(round_trip).lower())


def cmd_norm(args, rep: Report):
    F = _ratfunc_ctx(args)
    pi = parse_x_poly(F, args.pi)
    B = QuotCtx(F, pi)
    a = parse_class(B, args.symbol,
                    lambda e: QuotElem(B, parse_x_poly(F, e)))
    rep.add(True, op="norm", pi=repr(args.pi),
            output=repr(norm(a).serialize()))


def _sample_irreducible(F: RatFuncCtx, rng, degree: int) -> Poly:
    base = F.base
    while True:
        coeffs = [F.random_nonzero(rng, 1) if rng.random() < 0.5
                  else F.from_const(base.from_exp(rng.randrange(base.q - 1)))
                  for _ in range(degree)] + [F.one()]
        pi = Poly(F, coeffs)
        if all(c.den.is_one() and c.num.degree <= 1 for c in coeffs):
            try:
                if irreducible_over(pi):
                    return pi
            except MilnorForgeError:
                continue


def cmd_check_reciprocity(args, rep: Report, rng):
    F = _ratfunc_ctx(args)
    for i in range(args.samples):
        ents = [F.random_nonzero(rng, 2) for _ in range(2)]
        a = symbol(F, ents)
        ok1 = reciprocity_check(a)
        v = residue_vector(a)
        ok2 = residue_vector(bt_section(v)).same_finite(v)
        fields = {"op": "reciprocity_check", "index": i}
        if not (ok1 and ok2):
            fields["counterexample"] = repr(a.serialize())
        rep.add(ok1 and ok2, reciprocity=str(ok1).lower(),
                section_round_trip=str(ok2).lower(), **fields)


def cmd_check_projection(args, rep: Report, rng):
    F = _ratfunc_ctx(args)
    for i in range(args.samples):
        pi = _sample_irreducible(F, rng, 2)
        B = QuotCtx(F, pi)
        x = symbol(F, [F.random_nonzero(rng, 1)])
        y = symbol(B, [B.theta() if rng.random() < 0.5
                       else QuotElem(B, Poly.const(F, F.random_nonzero(rng, 1)))])
        ok = projection_formula_check(x, y)
        fields = {"op": "projection_formula_check", "index": i}
        if not ok:
            fields["counterexample"] = repr((x.serialize(), y.serialize()))
        rep.add(ok, **fields)


def cmd_check_tower(args, rep: Report, rng):
    F = _ratfunc_ctx(args)
    base = F.base
    done, tries = 0, 0
    while done < args.samples and tries < 50 * args.samples:
        tries += 1
        c0 = F.from_const(base.from_exp(rng.randrange(base.q - 1)))
        pi1 = Poly(F, [c0 * F.gen(), F.zero(), F.one()])
        try:
            if not irreducible_over(pi1):
                continue
            Fp = QuotCtx(F, pi1)
            th = Fp.theta()
            shift = QuotElem(Fp, Poly.const(
                F, F.from_const(base.from_exp(rng.randrange(base.q - 1)))))
            pi2 = Poly(Fp, [-(th + shift), Fp.zero(), Fp.one()])
            if not tower_is_primitive(pi1, pi2):
                continue
            g = Poly(F, [F.one(),
                         F.from_const(base.from_exp(rng.randrange(base.q - 1)))])
            ok = functoriality_check(pi1, pi2, g)
        except MilnorForgeError:
            continue
        fields = {"op": "functoriality_check", "index": done}
        if not ok:
            fields["counterexample"] = repr((pi1.serialize(), g.serialize()))
        rep.add(ok, **fields)
        done += 1
    if done < args.samples:
        rep.add(False, op="functoriality_check",
                counterexample=repr(f"only {done} towers sampled"))


# --------------------------------------------------------------------------
# rational-ring verbs
# --------------------------------------------------------------------------


def cmd_s_member(args, rep: Report):
    A = _local_ctx(args)
    f = parse_multipoly(A, args.vars, args.poly)
    rep.add(True, op="s_member", input=repr(args.poly),
            member=str(s_member(f)).lower())


def cmd_ratring_unit(args, rep: Report):
    A = _local_ctx(args)
    x = parse_ratring(A, args.vars, args.elem)
    rep.add(True, op="is_unit", input=repr(args.elem),
            unit=str(is_unit(x)).lower())


def cmd_ratring_residue(args, rep: Report):
    A = _local_ctx(args)
    x = parse_ratring(A, 1, args.elem)
    rep.add(True, op="residue_map", input=repr(args.elem),
            output=repr(residue_map(x).serialize()))


def cmd_delta_check(args, rep: Report):
    A = _local_ctx(args)
    a = parse_class(A, args.symbol, lambda e: parse_ratring(A, 1, e))
    rep.add(True, op="delta_kernel_check", input=repr(args.symbol),
            in_kernel=str(delta_kernel_check(a)).lower())


def cmd_base_change_check(args, rep: Report, rng):
    A = _local_ctx(args)
    if args.pi:
        pi = Poly(A, [A.from_int(int(c)) for c in args.pi.split(";")])
        ok = base_change_roundtrip(A, pi, rng)
        fields = {"op": "base_change_roundtrip", "index": 0}
        if not ok:
            fields["counterexample"] = repr(pi.serialize("X"))
        rep.add(ok, **fields)
        return
    from .rational_ring import random_integral
    index, tries = 0, 0
    while index < args.samples and tries < 50 * args.samples:
        tries += 1
        d = 2 + rng.randrange(2)
        coeffs = [random_integral(A, rng) for _ in range(d)] + [A.one()]
        pi = Poly(A, coeffs)
        try:
            ok = base_change_roundtrip(A, pi, rng)
        except MilnorForgeError:
            continue  # residue reducible: draw another pi
        fields = {"op": "base_change_roundtrip", "index": index}
        if not ok:
            fields["counterexample"] = repr(pi.serialize("X"))
        rep.add(ok, **fields)
        index += 1


# --------------------------------------------------------------------------
# gersten-check
# --------------------------------------------------------------------------


def _kappa_vector(kappa, a: MilnorClass):
    """Coordinates of a kappa-class in K^M_deg(kappa) (degree 0 = Z)."""
    if a.degree == 0:
        return [sum(t.coeff for t in a.terms)]
    return ff_kgroup(kappa.q, a.degree).vector_of(a)


def _kappa_congruent(kappa, a: MilnorClass, b: MilnorClass, m: int) -> bool:
    """a = b in K^M_deg(kappa) / m."""
    va, vb = _kappa_vector(kappa, a), _kappa_vector(kappa, b)
    if a.degree == 0:
        return (va[0] - vb[0]) % m == 0
    if a.degree >= 2:
        return True  # the group itself is trivial
    modulus = __import__("math").gcd(m, kappa.q - 1)
    return (va[0] - vb[0]) % max(modulus, 1) == 0


def _random_kappa_class(kappa, degree: int, rng) -> MilnorClass:
    if degree == 0:
        return MilnorClass(kappa, 0, [SymbolTerm(rng.randrange(1, 5), ())])
    ents = [kappa.from_exp(rng.randrange(max(kappa.q - 1, 1)))
            for _ in range(degree)]
    return MilnorClass(kappa, degree, [SymbolTerm(1, ents)])


def _section_class(ctx: LocalFieldCtx, c: MilnorClass) -> MilnorClass:
    """s(c) = {pi} * Teichmuller lifts; a section of the tame symbol."""
    pi = ctx.uniformizer()
    terms = []
    for t in c.terms:
        lifts = [teichmuller(ctx, ctx.lift_residue(e)) for e in t.entries]
        terms.append(SymbolTerm(t.coeff, [pi] + lifts))
    return MilnorClass(ctx, c.degree + 1, terms)


def gersten_check(ctx: LocalFieldCtx, n: int, m: int, samples: int,
                  rng) -> list:
    """Exactness legs of 0 -> K_n(O)/m -> K_n(F)/m -> K_{n-1}(kappa)/m -> 0
    on sampled classes: tame kills unit symbols, the section hits every
    sampled kappa-class, and constructed tame-kernel classes are exhibited
    in pure-unit form modulo m.
    """
    if ctx.model != LAURENT:
        raise MixedCharRejected(
            "gersten-check is equicharacteristic only: the Q_p statement in "
            "degree >= 3 is theory-backed, not desk-checked")
    if m < 2 or m % ctx.p == 0:
        raise BadInput(f"modulus {m} must be >= 2 and coprime to p")
    kappa = ctx.residue_field
    out = []
    for i in range(samples):
        # leg 1: tame o iota = 0 on unit symbols
        b = symbol(ctx, [ctx.random_unit(rng) for _ in range(n)]) \
            if n >= 1 else MilnorClass.unit(ctx)
        leg1 = tame(ctx, b).is_zero() if n >= 1 else True

        # leg 2: the section hits the sampled kappa-class
        c = _random_kappa_class(kappa, n - 1, rng) if n >= 1 else None
        if n >= 1:
            sc = _section_class(ctx, c)
            leg2 = _kappa_congruent(kappa, tame(ctx, sc), c, m)
        else:
            leg2 = True

        # leg 3: a constructed tame-kernel class has pure-unit form mod m
        leg3, kernel_kind = _kernel_leg(ctx, n, m, rng)
        out.append((i, leg1, leg2, leg3, kernel_kind,
                    b.serialize() if n >= 1 else "1"))
    return out


def _kernel_leg(ctx: LocalFieldCtx, n: int, m: int, rng):
    """Build a class with tame image 0 mod m and exhibit its pure-unit
    form: the pi-carrying part is m-divisible (Teichmuller order, Hensel
    roots of principal units) or a Steinberg relator."""
    kappa = ctx.residue_field
    pi = ctx.uniformizer()
    if n == 1:
        # a = u * pi^(m*j): residue of tame is m*j = 0 mod m, and
        # a = {u} + m*j*{pi} splits off the unit part exactly
        j = rng.randrange(1, 3)
        u = ctx.random_unit(rng)
        a = symbol(ctx, [u * pi ** (m * j)])
        g = generator_form(ctx, a)
        unit_part = [t for t in g.terms if t.entries[0] != pi]
        pi_part = [t for t in g.terms if t.entries[0] == pi]
        if u.is_one():
            # {1} is the trivial symbol, so no unit term survives
            unit_ok = not unit_part
        else:
            unit_ok = len(unit_part) == 1 and unit_part[0].entries[0] == u
        ok = (_kappa_congruent(kappa, tame(ctx, a),
                               MilnorClass(kappa, 0, []), m)
              and unit_ok
              and sum(t.coeff for t in pi_part) == m * j)
        return ok, "valuation"
    if n == 2:
        # a = iota(b) + m*alpha*{pi, w} + {pi, principal unit}
        alpha = rng.randrange(1, 3)
        w = teichmuller(ctx, ctx.lift_residue(
            kappa.from_exp(rng.randrange(max(kappa.q - 1, 1)))))
        pu = ctx.one() + ctx.uniformizer() * ctx.random_unit(rng)
        root = principal_unit_root(ctx, pu, m)
        a = symbol(ctx, [pi, w]).scale(m * alpha) + symbol(ctx, [pi, pu])
        kernel = _kappa_congruent(kappa, tame(ctx, a),
                                  MilnorClass(kappa, 1, []), m)
        ok = kernel and (root ** m) == pu
        return ok, "hensel"
    # n == 3: {pi, x, 1-x} with exact Steinberg entries via Teichmuller;
    # over F_2 no such pair exists in kappa, so use a Hensel root of a
    # principal unit instead: {pi, u, pu} = m * {pi, u, pu^(1/m)}
    if kappa.q == 2:
        u = ctx.random_unit(rng)
        pu = ctx.one() + ctx.uniformizer() * ctx.random_unit(rng)
        root = principal_unit_root(ctx, pu, m)
        a = symbol(ctx, [pi, u, pu])
        kernel = _kappa_congruent(kappa, tame(ctx, a),
                                  MilnorClass(kappa, 2, []), m)
        return kernel and (root ** m) == pu, "hensel"
    while True:
        xbar = kappa.from_exp(rng.randrange(kappa.q - 1))
        if not (ctx.one() - teichmuller(
                ctx, ctx.lift_residue(xbar))).is_zero():
            break
    x = teichmuller(ctx, ctx.lift_residue(xbar))
    y = ctx.one() - x
    a = symbol(ctx, [pi, x, y])
    kernel = tame(ctx, a).is_zero() or _kappa_congruent(
        kappa, tame(ctx, a), MilnorClass(kappa, 2, []), m)
    steinberg = (x + y).is_one() and not y.is_zero()
    return kernel and steinberg, "steinberg"


def cmd_gersten_check(args, rep: Report, rng):
    ctx = _local_ctx(args)
    results = gersten_check(ctx, args.n, args.m, args.samples, rng)
    for i, leg1, leg2, leg3, kind, sample in results:
        ok = leg1 and leg2 and leg3
        fields = {"op": "gersten_check", "index": i, "n": args.n,
                  "m": args.m, "iota_killed": str(leg1).lower(),
                  "section_onto": str(leg2).lower(),
                  "kernel_pure_unit": str(leg3).lower(),
                  "kernel_witness": kind}
        if not ok:
            fields["counterexample"] = repr(sample)
        rep.add(ok, **fields)


# --------------------------------------------------------------------------
# suites
# --------------------------------------------------------------------------


def _suite_steinberg(rep: Report, rng, bounds):
    # residue vectors of {f, 1-f} vanish everywhere over F_q(t)
    for q in (3, 5):
        F = RatFuncCtx(ff_ctx_q(q), "t")
        for i in range(20):
            f = F.random_nonzero(rng, 2)
            if (F.one() - f).is_zero():
                continue
            a = symbol(F, [f, F.one() - f])
            zero = MilnorClass(F, 2, [])
            ok = k_equal(a, zero)
            fields = {"op": "steinberg_residues", "q": q, "index": i}
            if not ok:
                fields["counterexample"] = repr(a.serialize())
            rep.add(ok, **fields)
    # hilbert symbol of (a, 1-a) over Q_2
    ctx = padic_ctx(2, DEFAULT_PRECISION)
    for i, a_int in enumerate((-1, 2, -2, 5, 10, -4)):
        a = ctx.from_int(a_int)
        b = ctx.one() - a
        ok = hilbert(ctx, a, b) == 0
        fields = {"op": "hilbert_steinberg", "a": a_int, "index": i}
        if not ok:
            fields["counterexample"] = repr(a_int)
        rep.add(ok, **fields)


def _suite_hilbert_table(rep: Report, rng, bounds):
    ctx = padic_ctx(2, max(DEFAULT_PRECISION, bounds["oracleprec"]))
    reps = [1, -1, 2, -2, 5, -5, 10, -10]
    elems = {r: ctx.from_int(r) for r in reps}
    image = set()
    for a in reps:
        for b in reps:
            h = hilbert(ctx, elems[a], elems[b])
            o = qf_oracle(ctx, elems[a], elems[b],
                          search_precision=bounds["oracleprec"])
            image.add(h)
            ok = (h == 0) == o and h == hilbert(ctx, elems[b], elems[a])
            fields = {"op": "hilbert_vs_oracle", "a": a, "b": b, "value": h}
            if not ok:
                fields["counterexample"] = repr((a, b, h, o))
            rep.add(ok, **fields)
    rep.add(image == {0, 1}, op="hilbert_image",
            size=len(image))


def _suite_reciprocity(rep: Report, rng, bounds):
    for q in (3, 5):
        F = RatFuncCtx(ff_ctx_q(q), "t")
        for i in range(25):
            a = symbol(F, [F.random_nonzero(rng, 2),
                           F.random_nonzero(rng, 2)])
            ok = reciprocity_check(a)
            fields = {"op": "reciprocity_check", "q": q, "index": i}
            if not ok:
                fields["counterexample"] = repr(a.serialize())
            rep.add(ok, **fields)


def _suite_certificates(rep: Report, rng, bounds):
    for ctx, ells in ((padic_ctx(5, DEFAULT_PRECISION), (2, 3)),
                      (padic_ctx(2, DEFAULT_PRECISION), (3, 7)),
                      (laurent_ctx(3, DEFAULT_PRECISION), (2, 4))):
        for ell in ells:
            for i in range(10):
                a = symbol(ctx, [ctx.random_unit(rng) for _ in range(2)])
                lifted = lift_mod_m(ctx, reduce_mod_m(ctx, a, ell), ell)
                cert = divisibility_witness(ctx, a - lifted, ell)
                result = verify_certificate(cert)
                fields = {"op": "divisibility_witness", "p": ctx.p,
                          "ell": ell, "index": i}
                if not result.ok:
                    fields["counterexample"] = repr(result.failure)
                rep.add(result.ok, **fields)


def _suite_ff_kgroups(rep: Report, rng, bounds):
    qs = [q for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16) if q <= bounds["maxq"]]
    for q in qs:
        g1 = ff_kgroup(q, 1)
        ok1 = g1.invariant_factors == ([q - 1] if q > 2 else [])
        rep.add(ok1, op="ff_kgroup", q=q, n=1,
                invariants="[" + ",".join(map(str, g1.invariant_factors)) + "]")
        for n in (2, 3):
            g = ff_kgroup(q, n)
            ok = g.invariant_factors == []
            fields = {"op": "ff_kgroup", "q": q, "n": n,
                      "invariants": "[" + ",".join(
                          map(str, g.invariant_factors)) + "]"}
            if not ok:
                fields["counterexample"] = repr(g.invariant_factors)
            rep.add(ok, **fields)


SUITES = {
    "STEINBERG": _suite_steinberg,
    "HILBERT_TABLE": _suite_hilbert_table,
    "RECIPROCITY": _suite_reciprocity,
    "CERTIFICATES": _suite_certificates,
    "FF_KGROUPS": _suite_ff_kgroups,
}


def cmd_suite(args, rep: Report, rng, bounds):
    if args.name not in SUITES:
        raise UnknownSuite(f"suite {args.name!r}; known: {SUITE_NAMES}")
    SUITES[args.name](rep, rng, bounds)


# --------------------------------------------------------------------------
# argument parsing and dispatch
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="milnor-forge",
        description="Exact Milnor K-theory calculators for local and "
                    "global function fields at desk scale.")
    p.add_argument("--field", default="padic:5",
                   help="padic:P | laurent:Q | ff:Q | ratfunc:Q")
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "records"), default="text")
    p.add_argument("--out", default="",
                   help="write the report (or certificate) to this file")
    sub = p.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("ff-kgroup", help="invariant factors of K^M_n(F_q)")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)

    for verb, hlp in (("tame", "tame symbol of a class"),
                      ("reduce", "entrywise residue of a unit class mod m"),
                      ("lift", "Teichmuller lift of a residue class mod m"),
                      ("divide", "divisibility witness for ell | class"),
                      ("delta-check", "delta-kernel membership over A(t)")):
        sp = sub.add_parser(verb, help=hlp)
        sp.add_argument("symbol", help="e.g. '{2,3}' or 'deg:2 {pi,2}'")
        if verb == "reduce" or verb == "lift":
            sp.add_argument("--m", type=int, required=True)
        if verb == "divide":
            sp.add_argument("--ell", type=int, required=True)

    sp = sub.add_parser("verify-cert", help="replay a certificate file")
    sp.add_argument("file")

    for verb in ("hilbert", "qf-oracle"):
        sp = sub.add_parser(verb)
        sp.add_argument("a")
        sp.add_argument("b")

    for verb, hlp in (("residues", "residue vector of a K_2 class"),
                      ("section", "Bass-Tate section of the residue vector")):
        sp = sub.add_parser(verb, help=hlp)
        sp.add_argument("symbol", help="e.g. '{t,t+-1}' over ratfunc:q")

    sp = sub.add_parser("norm", help="norm along a simple extension")
    sp.add_argument("--pi", required=True,
                    help="monic poly in X: `;`-separated coefficients, "
                         "low first, e.g. '-1*t;0;1' for X^2 - t")
    sp.add_argument("symbol",
                    help="entries are X-polys: '{0;1}' is {theta}")

    for verb in ("check-reciprocity", "check-projection", "check-tower"):
        sp = sub.add_parser(verb)
        sp.add_argument("--samples", type=int, default=20)

    sp = sub.add_parser("s-member", help="S-membership of a polynomial")
    sp.add_argument("poly")
    sp.add_argument("--vars", type=int, default=1, choices=(1, 2))
    sp = sub.add_parser("ratring-unit", help="unit test in A(t...)")
    sp.add_argument("elem")
    sp.add_argument("--vars", type=int, default=1, choices=(1, 2))
    sp = sub.add_parser("ratring-residue", help="residue map A(t) -> kappa(t)")
    sp.add_argument("elem")

    sp = sub.add_parser("base-change-check")
    sp.add_argument("--pi", default="",
                    help="`;`-separated integer coefficients, low first")
    sp.add_argument("--samples", type=int, default=5)

    sp = sub.add_parser("gersten-check")
    sp.add_argument("--n", type=int, required=True, choices=(1, 2, 3))
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--samples", type=int, default=50)

    sp = sub.add_parser("suite")
    sp.add_argument("name", choices=SUITE_NAMES)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    bounds = read_bounds()
    rng = random.Random(args.seed)
    rep = Report(args.verb, args.seed)
    try:
        if args.verb == "ff-kgroup":
            cmd_ff_kgroup(args, rep)
        elif args.verb == "tame":
            cmd_tame(args, rep)
        elif args.verb == "reduce":
            cmd_reduce(args, rep)
        elif args.verb == "lift":
            cmd_lift(args, rep)
        elif args.verb == "divide":
            cmd_divide(args, rep)
        elif args.verb == "verify-cert":
            cmd_verify_cert(args, rep)
        elif args.verb == "hilbert":
            cmd_hilbert(args, rep)
        elif args.verb == "qf-oracle":
            cmd_qf_oracle(args, rep, bounds)
        elif args.verb == "residues":
            cmd_residues(args, rep)
        elif args.verb == "section":
            cmd_section(args, rep)
        elif args.verb == "norm":
            cmd_norm(args, rep)
        elif args.verb == "check-reciprocity":
            cmd_check_reciprocity(args, rep, rng)
        elif args.verb == "check-projection":
            cmd_check_projection(args, rep, rng)
        elif args.verb == "check-tower":
            cmd_check_tower(args, rep, rng)
        elif args.verb == "s-member":
            cmd_s_member(args, rep)
        elif args.verb == "ratring-unit":
            cmd_ratring_unit(args, rep)
        elif args.verb == "ratring-residue":
            cmd_ratring_residue(args, rep)
        elif args.verb == "delta-check":
            cmd_delta_check(args, rep)
        elif args.verb == "base-change-check":
            cmd_base_change_check(args, rep, rng)
        elif args.verb == "gersten-check":
            cmd_gersten_check(args, rep, rng)
        elif args.verb == "suite":
            cmd_suite(args, rep, rng, bounds)
    except MilnorForgeError as e:
        rep.add(False, op=args.verb, error=type(e).__name__,
                counterexample=repr(str(e)))
    text = rep.render(args.format)
    if args.out and args.verb != "divide":
        with open(args.out, "w") as f:
            f.write(text)
    sys.stdout.write(text)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
