"""Residue vectors and Weil reciprocity for K_2 of F_3(t).

Every class in K_2(F_3(t)) has a tame residue at each closed point and at
infinity; reciprocity says the norm-weighted residues multiply to 1.  The
Bass-Tate section reconstructs a class from its finite residues.

Run:  python demos/function_field_reciprocity.py
"""

from milnorforge import (
    bt_section,
    ff_ctx,
    reciprocity_check,
    residue_vector,
    symbol,
)
from milnorforge.ratfunc import RatFuncCtx


def main():
    F = RatFuncCtx(ff_ctx(3))
    t = F.gen()

    a = symbol(F, [t, t - F.one()])
    print(f"class a = {{t, t-1}} in K_2(F_3(t))")
    v = residue_vector(a)
    print(f"residue vector: {v.serialize()}")
    print(f"reciprocity holds: {reciprocity_check(a)}")
    print()

    s = bt_section(v)
    print(f"section of the residue vector: {s.serialize()}")
    v2 = residue_vector(s)
    print(f"finite residues reproduced: {v.same_finite(v2)}")
    print()

    b = symbol(F, [t * t - F.one(), t + F.one()]) + a.scale(2)
    print(f"a messier class b = {{t^2-1, t+1}} + 2a")
    print(f"residue vector: {residue_vector(b).serialize()}")
    print(f"reciprocity holds: {reciprocity_check(b)}")


if __name__ == "__main__":
    main()
