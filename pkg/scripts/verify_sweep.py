"""Check the quiver presentation over a range of rectangles.

Prints, for each ctx(m,n) with m + n <= --max-size, the number of relation
and lemma instances checked, the failures, and the Smith invariants of the
change of basis from the spanning set to the diagram basis.

    python3 scripts/verify_sweep.py --max-size 7 --iso-max 7
"""
import argparse
import time

from arcalg.combinatorics import Rect
from arcalg.presentation import verify_isomorphism, verify_lemma_identities, verify_relations


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-size", type=int, default=7)
    ap.add_argument("--iso-max", type=int, default=7, help="largest m + n for the isomorphism check")
    args = ap.parse_args()
    print(f"{'ctx':<10}{'rel':>6}{'fail':>6}{'lem':>6}{'fail':>6}{'dim H':>8}{'snf':>8}{'secs':>8}")
    bad = 0
    for m in range(1, args.max_size):
        for n in range(m, args.max_size - m + 1):
            ctx = Rect(m, n)
            t = time.perf_counter()
            rel = verify_relations(ctx)
            lem = verify_lemma_identities(ctx)
            dim, snf = "-", "-"
            if m + n <= args.iso_max:
                cert = verify_isomorphism(ctx, with_relations=False)
                dim = str(cert.dim_H)
                snf = "1s" if cert.ok else "FAIL"
                bad += not cert.ok
            bad += len(rel.failed) + len(lem.failed)
            print(f"{str(ctx):<10}{rel.total:>6}{len(rel.failed):>6}{lem.total:>6}{len(lem.failed):>6}"
                  f"{dim:>8}{snf:>8}{time.perf_counter() - t:>8.2f}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
