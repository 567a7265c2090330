"""Exact rank, Smith normal form and span membership.

Matrices are lists of rows of Python ints (or Fractions).  A ring is given as
an integer ``p``: 0 means the rationals, a prime means F_p.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

Matrix = list[list[int]]


@dataclass(frozen=True)
class Ring:
    p: int = 0

    def __post_init__(self):
        if self.p < 0 or (self.p > 1 and any(self.p % d == 0 for d in range(2, int(self.p ** 0.5) + 1))):
            raise ValueError(f"{self.p} is not 0 or a prime")
        if self.p == 1:
            raise ValueError("1 is not a prime")

    def __str__(self):
        return "Q" if self.p == 0 else f"F_{self.p}"


def _copy(M: Sequence[Sequence]) -> list[list]:
    return [list(r) for r in M]


def rank(M: Sequence[Sequence[int]], p: int = 0) -> int:
    """Rank over Q (p = 0) or F_p."""
    if p:
        return _rank_mod(M, p)
    return _rank_q(M)


def _rank_mod(M, p: int) -> int:
    rows = [[x % p for x in r] for r in M]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def _rank_q(M) -> int:
    # fraction-free (Bareiss) elimination keeps everything in Z
    rows = _copy(M)
    r = 0
    prev = 1
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        for i in range(r + 1, len(rows)):
            rows[i] = [(pv * a - rows[i][c] * b) // prev for a, b in zip(rows[i], rows[r])]
        prev = pv
        r += 1
    return r


def smith_normal_form(M: Sequence[Sequence[int]]) -> list[int]:
    """Elementary divisors d1 | d2 | ... of an integer matrix (nonzero ones
    first, then zeros up to min(rows, cols)), all non-negative."""
    A = _copy(M)
    nr = len(A)
    nc = len(A[0]) if nr else 0
    out = []
    t = 0
    while t < min(nr, nc):
        # pivot on the entry of smallest absolute value
        best = None
        for i in range(t, nr):
            row = A[i]
            for j in range(t, nc):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            pv = A[t][t]
            done = True
            for i in range(t + 1, nr):
                if A[i][t]:
                    q = A[i][t] // pv
                    if q:
                        A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if A[t][j]:
                    q = A[t][j] // pv
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if done:
                # pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                            if A[i][j] % pv), None)
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                continue
            # move the smallest nonzero of row t / column t into the pivot
            cands = [(abs(A[i][t]), i, t) for i in range(t, nr) if A[i][t]]
            cands += [(abs(A[t][j]), t, j) for j in range(t, nc) if A[t][j]]
            _, i, j = min(cands)
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        out.append(abs(A[t][t]))
        t += 1
    return out + [0] * (min(nr, nc) - len(out))


def is_unimodular(M: Sequence[Sequence[int]]) -> bool:
    n = len(M)
    return n == (len(M[0]) if n else 0) and all(d == 1 for d in smith_normal_form(M))


def solve_in_span(target: Sequence, basis: Sequence[Sequence], p: int = 0) -> Optional[list]:
    """Coefficients c with sum c_i basis_i = target, or None."""
    k = len(basis)
    n = len(target)
    if p:
        conv = lambda x: x % p
        div = lambda a, b: (a * pow(b, -1, p)) % p
    else:
        conv = Fraction
        div = lambda a, b: a / b
    # augmented system, one row per coordinate
    rows = [[conv(basis[j][i]) for j in range(k)] + [conv(target[i])] for i in range(n)]
    if p:
        rows = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, n) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [div(x, pv) for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
                if p:
                    rows[i] = [x % p for x in rows[i]]
        pivots.append(c)
        r += 1
    if any(rows[i][k] for i in range(r, n)):
        return None
    coeffs = [conv(0)] * k
    for i, c in enumerate(pivots):
        coeffs[c] = rows[i][k]
    if not p:
        coeffs = [int(x) if x.denominator == 1 else x for x in coeffs]
    return coeffs
