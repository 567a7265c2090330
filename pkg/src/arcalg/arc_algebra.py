"""The extended Khovanov arc algebra K^m_n, its idempotent truncation H^m_n,
and the surgery product on oriented diagrams."""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Optional

from .combinatorics import (DOWN, UP, Partition, Rect, Weight, enumerate_partitions,
                            flips, format_partition, oriented_degree,
                            parse_partition, partition_of)
from .dyck import DyckPath, add_path, addable_paths, dyck_tiling, remove_path


@dataclass(frozen=True)
class BasisDiagram:
    """The oriented diagram bottom-underbar weight top-overbar."""

    bottom: Partition
    weight: Partition
    top: Partition

    @cached_property
    def degree(self) -> int:
        d1 = oriented_degree(self.bottom, self.weight)
        d2 = oriented_degree(self.top, self.weight)
        if d1 is None or d2 is None:
            raise ValueError(f"{self.encode()} is not oriented")
        return d1 + d2

    @property
    def ctx(self) -> Rect:
        return self.weight.ctx

    @cached_property
    def sort_key(self) -> tuple:
        return (self.bottom.sort_key, self.weight.sort_key, self.top.sort_key)

    def is_valid(self) -> bool:
        return (oriented_degree(self.bottom, self.weight) is not None
                and oriented_degree(self.top, self.weight) is not None)

    def star(self) -> "BasisDiagram":
        return BasisDiagram(self.top, self.weight, self.bottom)

    def encode(self) -> str:
        return "|".join(format_partition(x) for x in (self.bottom, self.weight, self.top))

    @classmethod
    def decode(cls, text: str, ctx: Rect) -> "BasisDiagram":
        parts = text.split("|")
        if len(parts) != 3:
            raise ValueError(f"expected 'bottom|weight|top', got {text!r}")
        d = cls(*(parse_partition(p, ctx) for p in parts))
        if not d.is_valid():
            raise ValueError(f"{text} is not an oriented diagram")
        return d

    def __str__(self):
        return self.encode()

    __repr__ = __str__


def idempotent(lam: Partition) -> BasisDiagram:
    return BasisDiagram(lam, lam, lam)


class AlgebraElement:
    """A finite Z-linear combination of basis diagrams."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict[BasisDiagram, int]] = None):
        self.terms = {d: c for d, c in (terms or {}).items() if c}

    @classmethod
    def basis(cls, d: BasisDiagram, c: int = 1) -> "AlgebraElement":
        return cls({d: c})

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, 0) + c
        return AlgebraElement(out)

    def __neg__(self):
        return AlgebraElement({d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int) -> "AlgebraElement":
        return AlgebraElement({d: k * c for d, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        return multiply(self, other)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def items(self) -> list[tuple[BasisDiagram, int]]:
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key)

    def star(self) -> "AlgebraElement":
        return AlgebraElement({d.star(): c for d, c in self.terms.items()})

    def degrees(self) -> set[int]:
        return {d.degree for d in self.terms}

    def reduce_mod(self, p: int) -> "AlgebraElement":
        return AlgebraElement({d: c % p for d, c in self.terms.items()}) if p else self

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*[{d.encode()}]" for d, c in self.items())


# surgery -----------------------------------------------------------------

_A, _B = 0, 1


class _Stack:
    """The diagram a stacked under b, with some middle pairs surgered."""

    def __init__(self, a: BasisDiagram, b: BasisDiagram, surgered: frozenset):
        size = a.ctx.size
        self.size = size
        adj: dict[tuple[int, int], list[tuple[tuple[int, int], str]]] = {
            (line, j): [] for line in (_A, _B) for j in range(1, size + 1)}
        self.ray_ends: dict[tuple[int, int], str] = {}

        def edge(u, v, kind):
            adj[u].append((v, kind))
            adj[v].append((u, kind))

        for p, q in a.bottom.cups.cups:
            edge((_A, p), (_A, q), "arc")
        for j in a.bottom.cups.sw_rays | a.bottom.cups.se_rays:
            self.ray_ends[(_A, j)] = "bottom"
        for p, q in b.top.cups.cups:
            edge((_B, p), (_B, q), "arc")
        for j in b.top.cups.sw_rays | b.top.cups.se_rays:
            self.ray_ends[(_B, j)] = "top"
        mid = a.top.cups
        for p, q in mid.cups:
            if (p, q) in surgered:
                edge((_A, p), (_B, p), "vert")
                edge((_A, q), (_B, q), "vert")
            else:
                edge((_A, p), (_A, q), "arc")
                edge((_B, p), (_B, q), "arc")
        for j in mid.sw_rays | mid.se_rays:
            edge((_A, j), (_B, j), "vert")
        self.adj = adj
        self.comp: dict[tuple[int, int], int] = {}
        self.members: list[list[tuple[int, int]]] = []
        for v in adj:
            if v in self.comp:
                continue
            idx = len(self.members)
            todo, seen = [v], [v]
            self.comp[v] = idx
            while todo:
                u = todo.pop()
                for w, _ in adj[u]:
                    if w not in self.comp:
                        self.comp[w] = idx
                        seen.append(w)
                        todo.append(w)
            self.members.append(seen)

    def is_line(self, c: int) -> bool:
        return any(v in self.ray_ends for v in self.members[c])

    def leftmost(self, c: int) -> tuple[int, int]:
        return min(self.members[c], key=lambda v: (v[1], v[0]))

    def propagate(self, labels: dict, start: tuple[int, int], value: str) -> bool:
        """Relabel the component of start from a fixed label; False on conflict."""
        labels[start] = value
        todo = [start]
        done = {start}
        ok = True
        while todo:
            u = todo.pop()
            for w, kind in self.adj[u]:
                want = labels[u] if kind == "vert" else (UP if labels[u] == DOWN else DOWN)
                if w in done:
                    ok = ok and labels[w] == want
                    continue
                labels[w] = want
                done.add(w)
                todo.append(w)
        return ok

    def circle_type(self, labels: dict, c: int) -> str:
        return "1" if labels[self.leftmost(c)] == DOWN else "x"

    def set_circle(self, labels: dict, c: int, kind: str) -> None:
        ok = self.propagate(labels, self.leftmost(c), DOWN if kind == "1" else UP)
        assert ok, "circle cannot be oriented"

    def line_info(self, labels: dict, c: int) -> tuple[bool, str]:
        ends = [v for v in self.members[c] if v in self.ray_ends]
        kinds = {self.ray_ends[v] for v in ends}
        bottom = [v for v in ends if self.ray_ends[v] == "bottom"]
        orient = labels[bottom[0]] if bottom else labels[ends[0]]
        return kinds == {"bottom", "top"}, orient

    def consistent(self, labels: dict) -> bool:
        for u, nbrs in self.adj.items():
            for w, kind in nbrs:
                same = labels[u] == labels[w]
                if same != (kind == "vert"):
                    return False
        return True


def _surgery_step(a: BasisDiagram, b: BasisDiagram, done: frozenset, pair: tuple[int, int],
                  terms: list[tuple[int, dict]]) -> list[tuple[int, dict]]:
    before = _Stack(a, b, done)
    after = _Stack(a, b, done | {pair})
    p, q = pair
    c_cap = before.comp[(_A, p)]
    c_cup = before.comp[(_B, p)]
    out = []
    for coef, labels in terms:
        if c_cap == c_cup:
            # split
            d1, d2 = after.comp[(_A, p)], after.comp[(_A, q)]
            assert d1 != d2
            if before.is_line(c_cap):
                circ = d2 if after.is_line(d1) else d1
                line = d1 if circ == d2 else d2
                new = dict(labels)
                after.set_circle(new, circ, "x")
                start = next(v for v in after.members[line] if v in after.ray_ends)
                assert after.propagate(new, start, labels[start])
                out.append((coef, new))
                continue
            kind = before.circle_type(labels, c_cap)
            options = [("1", "x"), ("x", "1")] if kind == "1" else [("x", "x")]
            for k1, k2 in options:
                new = dict(labels)
                after.set_circle(new, d1, k1)
                after.set_circle(new, d2, k2)
                out.append((coef, new))
            continue
        # merge
        merged = after.comp[(_A, p)]
        line1, line2 = before.is_line(c_cap), before.is_line(c_cup)
        if not line1 and not line2:
            t1 = before.circle_type(labels, c_cap)
            t2 = before.circle_type(labels, c_cup)
            if t1 == "x" and t2 == "x":
                continue
            new = dict(labels)
            after.set_circle(new, merged, "1" if t1 == t2 == "1" else "x")
            out.append((coef, new))
        elif line1 != line2:
            circ = c_cup if line1 else c_cap
            if before.circle_type(labels, circ) == "x":
                continue
            line = c_cap if line1 else c_cup
            start = next(v for v in before.members[line] if v in before.ray_ends)
            new = dict(labels)
            assert after.propagate(new, start, labels[start])
            out.append((coef, new))
        else:
            prop1, o1 = before.line_info(labels, c_cap)
            prop2, o2 = before.line_info(labels, c_cup)
            if prop1 and prop2 and o1 != o2:
                new = dict(labels)
                assert after.consistent(new), "line merge changed orientation"
                out.append((coef, new))
    return out


@lru_cache(maxsize=None)
def _multiply_basis(a: BasisDiagram, b: BasisDiagram, reverse: bool = False) -> tuple:
    if a.top != b.bottom:
        return ()
    labels = {}
    for j, c in enumerate(a.weight.weight.labels, 1):
        labels[(_A, j)] = c
    for j, c in enumerate(b.weight.weight.labels, 1):
        labels[(_B, j)] = c
    terms = [(1, labels)]
    done: frozenset = frozenset()
    for pair in sorted(a.top.cups.cups, reverse=reverse):
        terms = _surgery_step(a, b, done, pair, terms)
        done = done | {pair}
        if not terms:
            return ()
    out: dict[BasisDiagram, int] = {}
    ctx = a.ctx
    for coef, lab in terms:
        wa = "".join(lab[(_A, j)] for j in range(1, ctx.size + 1))
        wb = "".join(lab[(_B, j)] for j in range(1, ctx.size + 1))
        assert wa == wb, "middle lines disagree after surgery"
        w = partition_of(Weight(wa, ctx))
        d = BasisDiagram(a.bottom, w, b.top)
        assert d.is_valid(), f"surgery produced unoriented {d}"
        out[d] = out.get(d, 0) + coef
    return tuple(sorted(((d, c) for d, c in out.items() if c), key=lambda t: t[0].sort_key))


def multiply_basis(a: BasisDiagram, b: BasisDiagram, reverse: bool = False) -> AlgebraElement:
    if a.ctx != b.ctx:
        raise ValueError("diagrams from different rectangles")
    return AlgebraElement(dict(_multiply_basis(a, b, reverse)))


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    out: dict[BasisDiagram, int] = {}
    by_bottom: dict[Partition, list] = {}
    for d, c in y.terms.items():
        by_bottom.setdefault(d.bottom, []).append((d, c))
    for d1, c1 in x.terms.items():
        for d2, c2 in by_bottom.get(d1.top, ()):
            for d, c in _multiply_basis(d1, d2):
                out[d] = out.get(d, 0) + c1 * c2 * c
    return AlgebraElement(out)


def product(*xs: AlgebraElement) -> AlgebraElement:
    out = xs[0]
    for x in xs[1:]:
        out = multiply(out, x)
    return out


def involution(x):
    return x.star()


# bases -------------------------------------------------------------------

@lru_cache(maxsize=None)
def basis_K(ctx: Rect) -> tuple[BasisDiagram, ...]:
    out = []
    lams = enumerate_partitions(ctx)
    below: dict[Partition, list[Partition]] = {mu: [] for mu in lams}
    for lam in lams:
        for mu, _ in flips(lam):
            below[mu].append(lam)
    for mu in lams:
        for lam in below[mu]:
            for nu in below[mu]:
                out.append(BasisDiagram(lam, mu, nu))
    return tuple(sorted(out, key=lambda d: d.sort_key))


@lru_cache(maxsize=None)
def basis_H(ctx: Rect) -> tuple[BasisDiagram, ...]:
    return tuple(d for d in basis_K(ctx) if d.bottom.is_regular and d.top.is_regular)


def dim_K(ctx: Rect) -> int:
    return len(basis_K(ctx))


def dim_H(ctx: Rect) -> int:
    return len(basis_H(ctx))


def schur_idempotent(ctx: Rect) -> AlgebraElement:
    return AlgebraElement({idempotent(lam): 1 for lam in enumerate_partitions(ctx) if lam.is_regular})


def unit_K(ctx: Rect) -> AlgebraElement:
    return AlgebraElement({idempotent(lam): 1 for lam in enumerate_partitions(ctx)})


# generators and cellular basis -------------------------------------------

def single_path_between(x: Partition, y: Partition) -> Optional[DyckPath]:
    """The Dyck path P with x = y - P or y = x - P, if there is one."""
    if x.ctx != y.ctx or x == y:
        return None
    small, big = (x, y) if x.size < y.size else (y, x)
    wa, wb = small.weight.labels, big.weight.labels
    diff = [j for j in range(1, len(wa) + 1) if wa[j - 1] != wb[j - 1]]
    if len(diff) != 2 or tuple(diff) not in big.cups.cups:
        return None
    return DyckPath.from_cup(tuple(diff), x.ctx.m)


def generator_diagram(x: Partition, y: Partition) -> BasisDiagram:
    """The degree one diagram for the arrow x -> y (weight = smaller end)."""
    if single_path_between(x, y) is None:
        raise ValueError(f"{x} and {y} do not differ by a single removable Dyck path")
    return BasisDiagram(x, x, y) if x.size < y.size else BasisDiagram(x, y, y)


def generator_D(x: Partition, y: Partition) -> AlgebraElement:
    return AlgebraElement.basis(generator_diagram(x, y))


def tiling_orders(lam: Partition, mu: Partition, limit: int = 24) -> list[list[Partition]]:
    """Chains lam = nu_0 < ... < nu_k = mu adding one tiling path at a time,
    each intermediate forming a Dyck pair with both ends."""
    tiling = dyck_tiling(lam, mu)
    if tiling is None:
        raise ValueError(f"({lam}, {mu}) is not a Dyck pair")
    out: list[list[Partition]] = []

    def rec(cur: Partition, left: frozenset, chain: list[Partition]):
        if len(out) >= limit:
            return
        if not left:
            out.append(chain)
            return
        for P in sorted(left):
            if P not in addable_paths(cur):
                continue
            nxt = add_path(cur, P)
            if not mu.contains(nxt) or oriented_degree(mu, nxt) is None:
                continue
            rec(nxt, left - {P}, chain + [nxt])

    rec(lam, frozenset(tiling.heights), [lam])
    return out


def chain_product(chain: list[Partition]) -> AlgebraElement:
    if len(chain) == 1:
        return AlgebraElement.basis(idempotent(chain[0]))
    return product(*(generator_D(x, y) for x, y in zip(chain, chain[1:])))


def product_of_tiling(lam: Partition, mu: Partition, check: bool = True) -> AlgebraElement:
    orders = tiling_orders(lam, mu, limit=4 if check else 1)
    if not orders:
        raise AssertionError(f"no admissible order for ({lam}, {mu})")
    first = chain_product(orders[0])
    if check:
        for other in orders[1:]:
            if chain_product(other) != first:
                raise AssertionError(f"D^{lam}_{mu} depends on the order of the paths")
    return first


def cellular_element(alpha: Partition, mu: Partition, nu: Partition) -> AlgebraElement:
    """D_alpha^mu D^alpha_nu, a path mu -> alpha -> nu."""
    return multiply(product_of_tiling(alpha, mu, check=False).star(),
                    product_of_tiling(alpha, nu, check=False))


def random_basis_triples(basis: tuple[BasisDiagram, ...], count: int, seed: int = 0
                         ) -> Iterator[tuple[BasisDiagram, BasisDiagram, BasisDiagram]]:
    """Composable triples drawn uniformly from each link of the chain."""
    rng = random.Random(seed)
    by_bottom: dict[Partition, list[BasisDiagram]] = {}
    for d in basis:
        by_bottom.setdefault(d.bottom, []).append(d)
    for _ in range(count):
        a = rng.choice(basis)
        b = rng.choice(by_bottom[a.top])
        c = rng.choice(by_bottom[b.top])
        yield a, b, c


def composable_triples(basis: Iterable[BasisDiagram]):
    basis = list(basis)
    by_bottom: dict[Partition, list[BasisDiagram]] = {}
    for d in basis:
        by_bottom.setdefault(d.bottom, []).append(d)
    for a in basis:
        for b in by_bottom.get(a.top, ()):
            for c in by_bottom.get(b.top, ()):
                yield a, b, c

