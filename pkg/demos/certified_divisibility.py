"""Walk through the mod-m story over Z_5: reduce a unit symbol to the
residue field, lift it back with Teichmuller representatives, and produce
a replayable certificate that the difference is divisible by m.

Run:  python demos/certified_divisibility.py
"""

import random

from milnorforge import (
    divisibility_witness,
    lift_mod_m,
    padic_ctx,
    reduce_mod_m,
    serialize_certificate,
    symbol,
    verify_certificate,
)


def main():
    ctx = padic_ctx(5, 8)
    m = 3
    rng = random.Random(2024)
    a = symbol(ctx, [ctx.random_unit(rng), ctx.random_unit(rng)])
    print(f"working in K_2 of Q_5 at precision 8, modulus m = {m}")
    print(f"random unit symbol  a      = {a.serialize()}")

    b = reduce_mod_m(ctx, a, m)
    print(f"residue class       r(a)   = {b.serialize()}")

    back = lift_mod_m(ctx, b, m)
    print(f"Teichmuller lift    s(r(a))= {back.serialize()}")

    round_trip = reduce_mod_m(ctx, back, m)
    print(f"reduce again        r(s(r(a))) equals r(a): "
          f"{round_trip.serialize() == b.serialize()}")

    cert = divisibility_witness(ctx, a - back, m)
    result = verify_certificate(cert)
    print()
    print(f"witness that m | a - s(r(a)):  {len(cert.steps)} steps, "
          f"replay says: {result!r}")
    print()
    print("serialized certificate (replayable by `milnor-forge verify-cert`):")
    print(serialize_certificate(cert))


if __name__ == "__main__":
    main()
