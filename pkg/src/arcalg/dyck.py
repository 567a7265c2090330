"""Dyck paths as content intervals, tilings of Dyck pairs, heights,
regularisation and the canonical add/split plan."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .combinatorics import (DOWN, UP, Partition, defect, oriented_degree,
                            partition_of)

Cell = tuple[int, int]


@dataclass(frozen=True, order=True)
class DyckPath:
    first: int
    last: int

    def __post_init__(self):
        if self.first > self.last or (self.last - self.first) % 2:
            raise ValueError(f"[{self.first},{self.last}] is not a Dyck path interval")

    @property
    def breadth(self) -> int:
        return (self.last - self.first) // 2 + 1

    @property
    def contents(self) -> range:
        return range(self.first, self.last + 1)

    def covers(self, other: "DyckPath") -> bool:
        return self.first < other.first and other.last < self.last

    def cup(self, m: int) -> tuple[int, int]:
        """Weight positions of the cup carrying this path."""
        return self.first + m, self.last + m + 1

    @classmethod
    def from_cup(cls, cup: tuple[int, int], m: int) -> "DyckPath":
        p, q = cup
        return cls(p - m, q - m - 1)

    def __str__(self):
        return f"[{self.first},{self.last}]"

    __repr__ = __str__


@dataclass(frozen=True)
class AnchoredPath:
    path: DyckPath
    tiles: tuple[Cell, ...]

    def heights(self, m: int) -> list[int]:
        return [r + c - 1 - m for r, c in self.tiles]


@dataclass(frozen=True)
class PathRelation:
    kind: str  # equal, adjacent, distant, covers, covered, overlapping
    dominated: bool  # last(P) < first(Q)
    dominates: bool  # last(Q) < first(P)


def relate(P: DyckPath, Q: DyckPath) -> PathRelation:
    dominated = P.last < Q.first
    dominates = Q.last < P.first
    if P == Q:
        kind = "equal"
    elif P.covers(Q):
        kind = "covers"
    elif Q.covers(P):
        kind = "covered"
    elif P.last + 1 == Q.first or Q.last + 1 == P.first:
        kind = "adjacent"
    elif dominated or dominates:
        kind = "distant"
    else:
        kind = "overlapping"
    return PathRelation(kind, dominated, dominates)


def tile_height(cell: Cell, m: int) -> int:
    return cell[0] + cell[1] - 1 - m


def _diagonal(content: int, lam: Partition) -> list[Cell]:
    """Cells of the rectangle on a diagonal, top-left first."""
    ctx = lam.ctx
    return [(c + content, c) for c in range(1, ctx.m + 1) if 1 <= c + content <= ctx.n]


def _is_dyck_strip(tiles: list[Cell], m: int) -> bool:
    for (r1, c1), (r2, c2) in zip(tiles, tiles[1:]):
        if (r2, c2) not in ((r1 + 1, c1), (r1, c1 - 1)):
            return False
    hs = [tile_height(t, m) for t in tiles]
    return hs[0] == hs[-1] == min(hs)


def strip_paths(lam: Partition, mode: str) -> dict[DyckPath, AnchoredPath]:
    """Brute force over boundary strips.

    mode 'add': strips of next cells outside lam whose union with lam is a
    partition; mode 'remove': strips of last cells of lam whose removal leaves
    a partition.  Both must be Dyck strips.
    """
    ctx = lam.ctx
    cells = lam.cells
    pick: dict[int, Optional[Cell]] = {}
    for c in range(1 - ctx.m, ctx.n):
        diag = _diagonal(c, lam)
        inside = [t for t in diag if t in cells]
        if mode == "add":
            pick[c] = diag[len(inside)] if len(inside) < len(diag) else None
        else:
            pick[c] = inside[-1] if inside else None
    out = {}
    for f in range(1 - ctx.m, ctx.n):
        for l in range(f, ctx.n, 2):
            tiles = [pick[c] for c in range(f, l + 1)]
            if None in tiles or not _is_dyck_strip(tiles, ctx.m):
                continue
            try:
                if mode == "add":
                    lam.with_cells(tiles)
                else:
                    lam.without_cells(tiles)
            except ValueError:
                continue
            out[DyckPath(f, l)] = AnchoredPath(DyckPath(f, l), tuple(tiles))
    return out


def removable_height(mu: Partition, P: DyckPath) -> int:
    """#vee - #wedge strictly left of the left endpoint of P's cup in mu."""
    p, _ = P.cup(mu.ctx.m)
    left = mu.weight.labels[: p - 1]
    return left.count(DOWN) - left.count(UP)


@lru_cache(maxsize=None)
def removable_paths(mu: Partition) -> dict[DyckPath, tuple[AnchoredPath, int]]:
    out = {}
    m = mu.ctx.m
    for cup in mu.cups.sorted_cups():
        P = DyckPath.from_cup(cup, m)
        smaller = partition_of(mu.weight.swapped([cup]))
        tiles = sorted(mu.cells - smaller.cells, key=lambda t: t[0] - t[1])
        out[P] = (AnchoredPath(P, tuple(tiles)), removable_height(mu, P))
    return out


@lru_cache(maxsize=None)
def addable_paths(mu: Partition) -> dict[DyckPath, tuple[AnchoredPath, int]]:
    m = mu.ctx.m
    return {P: (a, tile_height(a.tiles[0], m)) for P, a in strip_paths(mu, "add").items()}


def addable_by_weight(mu: Partition) -> set[DyckPath]:
    """P is addable iff swapping a wedge at f+m with a vee at l+m+1 produces
    a weight whose cup diagram has that pair as a cup."""
    m = mu.ctx.m
    w = mu.weight
    out = set()
    for p in range(1, mu.ctx.size + 1):
        for q in range(p + 1, mu.ctx.size + 1, 2):
            if w[p] == UP and w[q] == DOWN:
                nu = partition_of(w.swapped([(p, q)]))
                if (p, q) in nu.cups.cups:
                    out.add(DyckPath(p - m, q - m - 1))
    return out


def drem(mu: Partition, height: Optional[int] = None, positive: bool = False) -> list[DyckPath]:
    items = removable_paths(mu).items()
    return sorted(P for P, (_, h) in items
                  if (height is None or h == height) and (not positive or h > 0))


def dadd(mu: Partition, height: Optional[int] = None, positive: bool = False) -> list[DyckPath]:
    items = addable_paths(mu).items()
    return sorted(P for P, (_, h) in items
                  if (height is None or h == height) and (not positive or h > 0))


def remove_path(mu: Partition, P: DyckPath) -> Partition:
    cup = P.cup(mu.ctx.m)
    if cup not in mu.cups.cups:
        raise ValueError(f"{P} is not removable from {mu}")
    return partition_of(mu.weight.swapped([cup]))


def add_path(mu: Partition, P: DyckPath) -> Partition:
    entry = addable_paths(mu).get(P)
    if entry is None:
        raise ValueError(f"{P} is not addable to {mu}")
    return mu.with_cells(entry[0].tiles)


def commute(mu: Partition, P: DyckPath, Q: DyckPath) -> bool:
    """P, Q in DRem(mu) commute if each stays removable after removing the other."""
    rem = removable_paths(mu)
    if P not in rem or Q not in rem or P == Q:
        return False
    return P in removable_paths(remove_path(mu, Q)) and Q in removable_paths(remove_path(mu, P))


def merge(mu: Partition, P: DyckPath, Q: DyckPath) -> Optional[DyckPath]:
    if P not in removable_paths(mu):
        raise ValueError(f"{P} not removable from {mu}")
    if Q not in removable_paths(remove_path(mu, P)):
        raise ValueError(f"{Q} not removable from {mu} - {P}")
    if relate(P, Q).kind != "adjacent":
        raise ValueError(f"{P} and {Q} are not adjacent")
    lo, hi = min(P.first, Q.first), max(P.last, Q.last)
    cands = [R for R in removable_paths(mu) if R.first <= lo and hi <= R.last]
    return min(cands, key=lambda R: R.breadth, default=None)


def split(Q: DyckPath, P: DyckPath) -> tuple[DyckPath, DyckPath]:
    if not Q.covers(P):
        raise ValueError(f"{P} is not covered by {Q}")
    return DyckPath(Q.first, P.first - 1), DyckPath(P.last + 1, Q.last)


def rt(lam: Partition, P: DyckPath) -> Optional[DyckPath]:
    rem = removable_paths(lam)
    if P not in rem or rem[P][1] != 0:
        raise ValueError(f"{P} is not a removable path of height 0 in {lam}")
    cands = [Q for Q in dadd(lam, height=1) if P.last < Q.first]
    return max(cands, key=lambda Q: (Q.breadth, -Q.first), default=None)


# tilings -----------------------------------------------------------------

@dataclass(frozen=True)
class DyckTiling:
    base: Partition
    top: Partition
    heights: dict[DyckPath, int] = field(hash=False)

    @property
    def paths(self) -> list[DyckPath]:
        return sorted(self.heights)

    @property
    def degree(self) -> int:
        return len(self.heights)

    def at_height(self, k: int) -> list[DyckPath]:
        return sorted(P for P, h in self.heights.items() if h == k)


def _clockwise_cups(lam: Partition, mu: Partition) -> list[tuple[int, int]]:
    w = lam.weight.labels
    return [c for c in mu.cups.sorted_cups() if w[c[0] - 1] == UP]


def support_set(lam: Partition, mu: Partition, P: DyckPath) -> list[DyckPath]:
    """Clockwise arcs met by a vertical line dropped from P, innermost first."""
    m = mu.ctx.m
    cup = P.cup(m)
    cw = set(_clockwise_cups(lam, mu))
    if cup not in cw:
        raise ValueError(f"{P} is not a clockwise arc of {mu} over {lam}")
    x = (cup[0] + cup[1]) / 2
    enclosing = sorted((c for c in mu.cups.cups if c[0] < cup[0] and cup[1] < c[1]),
                       key=lambda c: c[1] - c[0])
    sw = sorted(v for v in mu.cups.sw_rays if x < v)
    se = sorted((v for v in mu.cups.se_rays if x > v), reverse=True)
    supp = [P]
    n_cw, n_other = 1, 0
    for c in enclosing:
        if c in cw:
            n_cw += 1
            supp.append(DyckPath.from_cup(c, m))
        else:
            n_other += 1
        if n_cw == n_other:
            return supp
    for _ in sw + se:
        n_other += 1
        if n_cw == n_other:
            return supp
    return supp


def tiling_height(lam: Partition, mu: Partition, P: DyckPath) -> int:
    return _tiling_heights(lam, mu)[P]


@lru_cache(maxsize=None)
def _tiling_heights(lam: Partition, mu: Partition) -> dict[DyckPath, int]:
    m = mu.ctx.m
    paths = [DyckPath.from_cup(c, m) for c in _clockwise_cups(lam, mu)]
    # outer arcs first so every support member is already known
    paths.sort(key=lambda P: P.first - P.last)
    out: dict[DyckPath, int] = {}
    for P in paths:
        h = removable_height(mu, P)
        for Q in support_set(lam, mu, P)[1:]:
            h = min(h, out[Q] - 1)
        out[P] = h
    return out


def dyck_tiling(lam: Partition, mu: Partition) -> Optional[DyckTiling]:
    if oriented_degree(mu, lam) is None:
        return None
    return DyckTiling(lam, mu, dict(_tiling_heights(lam, mu)))


def is_dyck_pair(lam: Partition, mu: Partition) -> bool:
    return oriented_degree(mu, lam) is not None


@dataclass(frozen=True)
class TableauStep:
    source: Partition
    path: DyckPath
    target: Partition
    move: str


def _classify_move(source: Partition, target: Partition, P: DyckPath) -> str:
    if target.defect == source.defect - 1:
        return "G1"
    if any(Q.covers(P) for Q in removable_paths(source)):
        return "G3"
    return "G2"


def canonical_tableau(lam: Partition, mu: Partition) -> list[TableauStep]:
    tiling = dyck_tiling(lam, mu)
    if tiling is None:
        raise ValueError(f"({lam}, {mu}) is not a Dyck pair")
    order = sorted(tiling.heights, key=lambda P: (tiling.heights[P], P.first))
    steps = []
    cur = mu
    for P in reversed(order):
        nxt = remove_path(cur, P)
        d_before = oriented_degree(cur, lam)
        d_after = oriented_degree(nxt, lam)
        if d_after is None or d_after != d_before - 1:
            raise AssertionError(f"removing {P} from {cur} is not a good move")
        steps.append(TableauStep(cur, P, nxt, _classify_move(cur, nxt, P)))
        cur = nxt
    assert cur == lam
    return steps


# regularisation and the add/split plan ----------------------------------

def regularise(alpha: Partition) -> tuple[Partition, list[DyckPath]]:
    m = alpha.ctx.m
    d = defect(alpha)
    cur = alpha
    paths = []
    for k in range(d + 1, 1):
        missing = [(r, c) for r in range(1, alpha.ctx.n + 1) for c in range(1, m + 1)
                   if r + c - 1 - m == k and (r, c) not in cur.cells]
        if not missing:
            raise AssertionError(f"no missing cells at height {k} in {cur}")
        f = min(r - c for r, c in missing)
        l = max(r - c for r, c in missing)
        P = DyckPath(f, l)
        entry = addable_paths(cur).get(P)
        if entry is None or tile_height(entry[0].tiles[0], m) != k:
            raise AssertionError(f"{P} is not addable at height {k} to {cur}")
        cur = cur.with_cells(entry[0].tiles)
        paths.append(P)
    assert cur.is_regular
    return cur, paths


@dataclass
class AddSplitPlan:
    alpha: Partition
    mu: Partition
    reg: Partition
    adds_neg: dict[int, DyckPath]
    splits: dict[int, list[DyckPath]]
    adds_pos: dict[int, list[DyckPath]]
    chain: list[Partition]  # every partition visited, alpha first, mu last

    @property
    def split_target(self) -> Partition:
        """The partition reached after the split phase."""
        return self.chain[len(self.adds_neg) + sum(map(len, self.splits.values()))]


def _complement_intervals(P: DyckPath, inside: list[DyckPath]) -> list[DyckPath]:
    taken = set()
    for Q in inside:
        taken.update(Q.contents)
    out, start = [], None
    for c in list(P.contents) + [P.last + 1]:
        if c <= P.last and c not in taken:
            if start is None:
                start = c
        elif start is not None:
            out.append(DyckPath(start, c - 1))
            start = None
    return out


def canonical_add_split(alpha: Partition, mu: Partition) -> AddSplitPlan:
    tiling = dyck_tiling(alpha, mu)
    if tiling is None:
        raise ValueError(f"({alpha}, {mu}) is not a Dyck pair")
    if not mu.is_regular:
        # the height-k paths of mu/alpha need not sit inside P^k otherwise
        raise ValueError(f"{mu} is not regular")
    d = defect(alpha)
    reg, ps = regularise(alpha)
    chain = [alpha]
    cur = alpha
    for P in ps:
        cur = add_path(cur, P)
        chain.append(cur)
    splits: dict[int, list[DyckPath]] = {}
    for k, P in zip(range(d + 1, 1), ps):
        keep = tiling.at_height(k)
        if any(not (P.first <= Q.first and Q.last <= P.last) for Q in keep):
            raise AssertionError(f"height-{k} paths {keep} are not inside {P}")
        rs = _complement_intervals(P, keep)
        splits[k] = rs
        for R in rs:
            cur = remove_path(cur, R)
            chain.append(cur)
    adds_pos: dict[int, list[DyckPath]] = {}
    for k in sorted(h for h in set(tiling.heights.values()) if h > 0):
        adds_pos[k] = tiling.at_height(k)
        for A in adds_pos[k]:
            cur = add_path(cur, A)
            chain.append(cur)
    if cur != mu:
        raise AssertionError(f"plan for ({alpha}, {mu}) ends at {cur}")
    return AddSplitPlan(alpha, mu, reg, dict(zip(range(d + 1, 1), ps)), splits, adds_pos, chain)


def regularize_pair_degree(alpha: Partition, mu: Partition) -> int:
    tiling = dyck_tiling(alpha, mu)
    if not mu.is_regular or tiling is None or any(h > 0 for h in tiling.heights.values()):
        raise ValueError("need mu regular and mu/alpha a Dyck pair with all heights <= 0")
    reg, _ = regularise(alpha)
    deg = oriented_degree(reg, mu)
    if deg is None:
        raise AssertionError(f"({mu}, {reg}) is not a Dyck pair")
    assert deg == tiling.degree + defect(alpha)
    return deg
