"""Recover the signs carried by the degree-one generators.

With the bare generators D(x, y) the quiver relations fail.  Here every
D-arrow a gets an unknown sign (-1)^s(a), s(a) in GF(2).  Each relation
instance in which a basis diagram receives exactly two contributions gives
one linear equation s(w1) + s(w2) = b over GF(2).  The script solves the
system, reports whether it is consistent, and checks that the closed form
``arrow_sign`` satisfies every equation.

    python3 scripts/sign_gauge.py --max-size 6
"""
import argparse
from collections import defaultdict

from arcalg.arc_algebra import AlgebraElement, generator_D, idempotent, multiply
from arcalg.combinatorics import Rect
from arcalg.presentation import Combo, arrow_sign, enumerate_relations, last_loop_path
from arcalg.dyck import remove_path


def expand_loops(c: Combo) -> Combo:
    """Rewrite every loop arrow as its two-step D-word."""
    out = Combo.zero()
    for w, k in c.terms.items():
        acc = Combo({(): k})
        for a in w:
            if a[0] == "L":
                lam = a[1]
                P = last_loop_path(lam)
                low = remove_path(lam, P)
                acc = acc * Combo.word(("D", lam, low), ("D", low, lam), coef=(-1) ** P.breadth)
            elif a[0] == "D":
                acc = acc * Combo.word(a)
        out = out + acc
    return out


def bare_eval(w) -> AlgebraElement:
    if not w:
        return AlgebraElement()
    out = None
    for a in w:
        x = generator_D(a[1], a[2]) if a[0] == "D" else AlgebraElement.basis(idempotent(a[1]))
        out = x if out is None else multiply(out, x)
    return out


def equations(ctx):
    index: dict = {}
    eqs = []
    var = lambda a: index.setdefault((a[1], a[2]), len(index))
    for inst in enumerate_relations(ctx):
        contrib = defaultdict(list)
        for side, combo in ((1, expand_loops(inst.lhs)), (-1, expand_loops(inst.rhs))):
            for w, k in combo.terms.items():
                for d, v in bare_eval(w).terms.items():
                    contrib[d].append((w, side * k * v))
        for d, lst in contrib.items():
            if len(lst) != 2 or abs(lst[0][1]) != abs(lst[1][1]):
                continue
            bits = 0
            for w, _ in lst:
                for a in w:
                    if a[0] == "D":
                        bits ^= 1 << var(a)
            # c1 s1 + c2 s2 = 0 needs s1 s2 = -c1/c2
            eqs.append((bits, int(lst[0][1] == lst[1][1])))
    return index, eqs


def gf2_solve(eqs, nvars):
    pivots: dict[int, tuple[int, int]] = {}
    for bits, rhs in eqs:
        for col in range(nvars):
            if not bits >> col & 1:
                continue
            if col in pivots:
                pb, pr = pivots[col]
                bits, rhs = bits ^ pb, rhs ^ pr
            else:
                pivots[col] = (bits, rhs)
                break
        else:
            if rhs:
                return None
    return pivots


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-size", type=int, default=6, help="largest m + n")
    args = ap.parse_args()
    print(f"{'ctx':<10}{'arrows':>8}{'equations':>11}{'consistent':>12}{'closed form':>13}{'bare':>7}")
    for m in range(1, args.max_size):
        for n in range(m, args.max_size - m + 1):
            ctx = Rect(m, n)
            index, eqs = equations(ctx)
            consistent = gf2_solve(eqs, len(index)) is not None
            inv = {i: a for a, i in index.items()}
            sign_bit = {i: int(arrow_sign(*inv[i]) == -1) for i in inv}
            closed = all(sum(sign_bit[i] for i in inv if bits >> i & 1) % 2 == rhs for bits, rhs in eqs)
            bare = all(rhs == 0 for _, rhs in eqs)
            print(f"{str(ctx):<10}{len(index):>8}{len(eqs):>11}{str(consistent):>12}"
                  f"{str(closed):>13}{str(bare):>7}")


if __name__ == "__main__":
    main()
