"""Tabulate Ext-quivers computed from rad/rad^2 and compare with the
predicted quiver (single-path edges plus the loops in the square case).

    python3 scripts/ext_quivers.py --max-size 6 --primes 0 2 3 5
"""
import argparse

from arcalg.combinatorics import Rect
from arcalg.rep_theory import expected_quiver, ext_quiver


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-size", type=int, default=6)
    ap.add_argument("--primes", type=int, nargs="+", default=[0, 2, 3, 5])
    args = ap.parse_args()
    mismatches = 0
    for m in range(1, args.max_size):
        for n in range(m, args.max_size - m + 1):
            ctx = Rect(m, n)
            for p in args.primes:
                q = ext_quiver(ctx, p)
                same = q == expected_quiver(ctx, p)
                mismatches += not same
                loops = " ".join(str(v) for v in q.loops()) or "-"
                print(f"{str(ctx):<10} p={p:<3} vertices={len(q.vertices):<3} edges={len(q.edges()):<4}"
                      f" matches={str(same):<6} loops: {loops}")
    raise SystemExit(1 if mismatches else 0)


if __name__ == "__main__":
    main()
