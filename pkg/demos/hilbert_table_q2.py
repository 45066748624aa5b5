"""Print the Hilbert symbol table of Q_2 on the classical square-class
representatives and cross-check every entry against the independent
quadratic-form solvability oracle.

Run:  python demos/hilbert_table_q2.py
"""

from milnorforge import hilbert, padic_ctx, qf_oracle

REPS = (1, -1, 2, -2, 5, -5, 10, -10)


def main():
    ctx = padic_ctx(2, 8)
    print("Hilbert symbol (a,b)_2 on Q_2^x / (Q_2^x)^2")
    print()
    header = "      " + "".join(f"{b:>5}" for b in REPS)
    print(header)
    mismatches = 0
    for a in REPS:
        row = []
        for b in REPS:
            h = hilbert(ctx, ctx.from_int(a), ctx.from_int(b))
            solvable = qf_oracle(ctx, ctx.from_int(a), ctx.from_int(b), 8)
            if (h == 0) != solvable:
                mismatches += 1
            row.append(h)
        print(f"{a:>5} " + "".join(f"{h:>5}" for h in row))
    print()
    print(f"entries where the symbol disagrees with the oracle: {mismatches}")
    print("(0 means z^2 = a x^2 + b y^2 has a nontrivial solution)")


if __name__ == "__main__":
    main()
