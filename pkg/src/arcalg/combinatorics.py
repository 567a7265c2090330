"""Partitions in an m x n rectangle, weights, cup diagrams and p-KL polynomials.

Positions on a weight are numbered 1..m+n from the left.  Position j sits at
x-coordinate j - m - 1/2, so a tile of content i lies between positions m+i
and m+i+1.  Labels are stored as strings over ``UP`` ('^', drawn as a wedge)
and ``DOWN`` ('v', drawn as a vee).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Optional

UP = "^"
DOWN = "v"

_PRETTY = {UP: "∧", DOWN: "∨"}


@dataclass(frozen=True, order=True)
class Rect:
    """The m x n rectangle; partitions have at most n rows of length <= m."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"rectangle sides must be positive, got ({self.m},{self.n})")
        if self.m > self.n and not getattr(self, "_transposed", False):
            raise ValueError(f"need m <= n, got ({self.m},{self.n})")

    @property
    def size(self) -> int:
        return self.m + self.n

    def transposed(self) -> "Rect":
        # the only place a rectangle with m > n is allowed to exist
        r = object.__new__(Rect)
        object.__setattr__(r, "m", self.n)
        object.__setattr__(r, "n", self.m)
        object.__setattr__(r, "_transposed", True)
        return r

    def __str__(self):
        return f"ctx({self.m},{self.n})"


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]
    ctx: Rect = field(compare=True)

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and (parts[-1] < 0 or parts[0] > self.ctx.m or len(parts) > self.ctx.n):
            raise ValueError(f"{parts} does not fit in {self.ctx}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, ctx: Rect, *parts: int) -> "Partition":
        return cls(tuple(parts), ctx)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")" if self.parts else "∅"

    __repr__ = __str__

    def part(self, i: int) -> int:
        """1-indexed row length, zero beyond the last row."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    @cached_property
    def size(self) -> int:
        return sum(self.parts)

    @cached_property
    def sort_key(self) -> tuple:
        return (self.size, self.parts)

    @cached_property
    def cells(self) -> frozenset[tuple[int, int]]:
        return frozenset((r, c) for r, p in enumerate(self.parts, 1) for c in range(1, p + 1))

    @cached_property
    def weight(self) -> "Weight":
        return weight_of(self)

    @cached_property
    def cups(self) -> "CupDiagram":
        return cup_diagram(self.weight)

    @cached_property
    def defect(self) -> int:
        return defect(self)

    @property
    def is_regular(self) -> bool:
        return self.defect == 0

    def contains(self, other: "Partition") -> bool:
        return len(other.parts) <= len(self.parts) and all(
            a <= b for a, b in zip(other.parts, self.parts))

    def with_cells(self, extra: Iterable[tuple[int, int]]) -> "Partition":
        return partition_from_cells(self.cells | set(extra), self.ctx)

    def without_cells(self, gone: Iterable[tuple[int, int]]) -> "Partition":
        return partition_from_cells(self.cells - set(gone), self.ctx)


def partition_from_cells(cells: Iterable[tuple[int, int]], ctx: Rect) -> Partition:
    cells = set(cells)
    rows: dict[int, int] = {}
    for r, c in cells:
        rows[r] = max(rows.get(r, 0), c)
    parts = tuple(rows.get(r, 0) for r in range(1, max(rows, default=0) + 1))
    lam = Partition(parts, ctx)
    if lam.cells != cells:
        raise ValueError("cell set is not a Young diagram")
    return lam


@dataclass(frozen=True)
class Weight:
    labels: str
    ctx: Rect

    def __post_init__(self):
        if len(self.labels) != self.ctx.size or set(self.labels) - {UP, DOWN}:
            raise ValueError(f"bad weight {self.labels!r} for {self.ctx}")
        if self.labels.count(UP) != self.ctx.m:
            raise ValueError(f"weight {self.labels!r} needs exactly {self.ctx.m} wedges")

    def __getitem__(self, j: int) -> str:
        """Label at 1-indexed position j."""
        return self.labels[j - 1]

    def __str__(self):
        return "".join(_PRETTY[c] for c in self.labels)

    @property
    def up_positions(self) -> tuple[int, ...]:
        return tuple(j for j, c in enumerate(self.labels, 1) if c == UP)

    def swapped(self, pairs: Iterable[tuple[int, int]]) -> "Weight":
        lab = list(self.labels)
        for p, q in pairs:
            lab[p - 1], lab[q - 1] = lab[q - 1], lab[p - 1]
        return Weight("".join(lab), self.ctx)

    @classmethod
    def parse(cls, text: str, ctx: Rect) -> "Weight":
        table = {"∧": UP, "^": UP, "∨": DOWN, "v": DOWN}
        return cls("".join(table[c] for c in text if not c.isspace()), ctx)


@dataclass(frozen=True)
class CupDiagram:
    cups: frozenset[tuple[int, int]]
    sw_rays: frozenset[int]
    se_rays: frozenset[int]

    @cached_property
    def partner(self) -> dict[int, int]:
        out = {}
        for p, q in self.cups:
            out[p], out[q] = q, p
        return out

    def sorted_cups(self) -> list[tuple[int, int]]:
        return sorted(self.cups)


class QPolynomial:
    """Integer polynomial in q, stored sparsely."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[dict[int, int]] = None):
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c}
        if any(e < 0 for e in self.coeffs):
            raise ValueError("negative exponent")

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "QPolynomial":
        return cls({e: c})

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return QPolynomial(out)

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return QPolynomial(out)

    def __pow__(self, k: int) -> "QPolynomial":
        out = QPolynomial({0: 1})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = QPolynomial({0: other})
        return isinstance(other, QPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __call__(self, q):
        return sum(c * q ** e for e, c in self.coeffs.items())

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return " + ".join(terms)


def _partitions_in_box(rows: int, width: int) -> Iterator[tuple[int, ...]]:
    def rec(prefix, maxpart):
        yield prefix
        if len(prefix) < rows:
            for p in range(1, maxpart + 1):
                yield from rec(prefix + (p,), p)
    yield from rec((), width)


@lru_cache(maxsize=None)
def enumerate_partitions(ctx: Rect) -> tuple[Partition, ...]:
    """All partitions in the rectangle, ordered by size then lexicographically."""
    lams = [Partition(p, ctx) for p in _partitions_in_box(ctx.n, ctx.m)]
    return tuple(sorted(lams, key=lambda lam: lam.sort_key))


@lru_cache(maxsize=None)
def regular_partitions(ctx: Rect) -> tuple[Partition, ...]:
    return tuple(lam for lam in enumerate_partitions(ctx) if lam.is_regular)


def conjugate(lam: Partition) -> Partition:
    cols = tuple(sum(1 for p in lam.parts if p >= c) for c in range(1, lam.part(1) + 1))
    ctx = lam.ctx.transposed()
    if lam.ctx.m > lam.ctx.n:
        ctx = Rect(lam.ctx.n, lam.ctx.m)
    return Partition(cols, ctx)


def defect(lam: Partition) -> int:
    d = 0
    while d < lam.ctx.m and all(lam.part(i) >= d + 1 - (i - 1) for i in range(1, d + 2)):
        d += 1
    return d - lam.ctx.m


def _column_lengths(lam: Partition) -> list[int]:
    return [sum(1 for p in lam.parts if p >= c) for c in range(1, lam.ctx.m + 1)]


def weight_of(lam: Partition) -> Weight:
    m = lam.ctx.m
    cols = _column_lengths(lam)
    ups = {cols[i - 1] + m - i + 1 for i in range(1, m + 1)}
    return Weight("".join(UP if j in ups else DOWN for j in range(1, lam.ctx.size + 1)), lam.ctx)


def partition_of(w: Weight) -> Partition:
    m = w.ctx.m
    ups = sorted(w.up_positions, reverse=True)
    if len(ups) != m:
        raise ValueError("label count mismatch")
    cols = [ups[i - 1] - m + i - 1 for i in range(1, m + 1)]
    parts = tuple(sum(1 for c in cols if c >= r) for r in range(1, w.ctx.n + 1))
    return Partition(parts, w.ctx)


@lru_cache(maxsize=None)
def _greedy_cups(labels: str) -> tuple[tuple[tuple[int, int], ...], tuple[int, ...], tuple[int, ...]]:
    # a stack of unmatched vees; each wedge closes the nearest open vee
    stack: list[int] = []
    cups = []
    sw = []
    for j, c in enumerate(labels, 1):
        if c == DOWN:
            stack.append(j)
        elif stack:
            cups.append((stack.pop(), j))
        else:
            sw.append(j)
    return tuple(cups), tuple(sw), tuple(stack)


def cup_diagram(w: Weight) -> CupDiagram:
    cups, sw, se = _greedy_cups(w.labels)
    return CupDiagram(frozenset(cups), frozenset(sw), frozenset(se))


def oriented_degree(mu: Partition, lam: Partition) -> Optional[int]:
    """Degree of the oriented cup diagram mu-underbar lambda, or None."""
    if mu.ctx != lam.ctx:
        raise ValueError("partitions live in different rectangles")
    wm, wl = mu.weight.labels, lam.weight.labels
    partner = mu.cups.partner
    deg = 0
    for j in range(len(wm)):
        if wm[j] == wl[j]:
            continue
        k = partner.get(j + 1)
        if k is None or wl[k - 1] == wm[k - 1]:
            return None
        if j + 1 < k:
            deg += 1
    return deg


def is_oriented_by_definition(mu: Partition, lam: Partition) -> bool:
    """Direct check that every cup of mu joins one vee and one wedge of lam,
    and that no two rays of mu are oriented as sw-vee left of se-wedge."""
    w = lam.weight.labels
    cd = mu.cups
    for p, q in cd.cups:
        if w[p - 1] == w[q - 1]:
            return False
    rays = sorted(cd.sw_rays | cd.se_rays)
    ray_labels = [w[j - 1] for j in rays]
    # rays oriented downward-left as wedge, downward-right as vee; a vee ray
    # to the left of a wedge ray would force a crossing
    seen_down = False
    for c in ray_labels:
        if c == DOWN:
            seen_down = True
        elif seen_down:
            return False
    return True


def pkl(lam: Partition, mu: Partition) -> QPolynomial:
    d = oriented_degree(mu, lam)
    return QPolynomial() if d is None else QPolynomial.monomial(d)


def all_subsets(items: Iterable) -> Iterator[tuple]:
    items = list(items)
    for k in range(len(items) + 1):
        yield from combinations(items, k)


def flips(mu: Partition) -> Iterator[tuple[Partition, int]]:
    """Every lambda with mu-underbar lambda oriented, with its degree."""
    cups = mu.cups.sorted_cups()
    for sub in all_subsets(cups):
        yield partition_of(mu.weight.swapped(sub)), len(sub)


def parse_partition(text: str, ctx: Rect) -> Partition:
    text = text.strip().strip("()")
    if text in ("", "-", "∅", "0"):
        return Partition((), ctx)
    return Partition(tuple(int(t) for t in text.split(",") if t.strip()), ctx)


def format_partition(lam: Partition) -> str:
    return ",".join(map(str, lam.parts)) if lam.parts else "-"
