"""The quiver with relations for H^m_n, the map phi into the diagram algebra,
the spanning set and the computational isomorphism check."""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Union

from .arc_algebra import (AlgebraElement, basis_H, dim_H, generator_D, idempotent,
                          multiply, single_path_between)
from .combinatorics import Partition, Rect, enumerate_partitions, flips, regular_partitions
from .dyck import (DyckPath, add_path, addable_paths, canonical_add_split, commute, dadd,
                   drem, dyck_tiling, merge, relate, remove_path, removable_paths,
                   rt, split)
from .exactlinalg import smith_normal_form

log = logging.getLogger(__name__)

# An arrow is ('1', lam), ('D', source, target) or ('L', lam).
Arrow = tuple
Word = tuple[Arrow, ...]


def idem(lam: Partition) -> Arrow:
    return ("1", lam)


def darrow(x: Partition, y: Partition) -> Arrow:
    if single_path_between(x, y) is None:
        raise ValueError(f"no D-arrow between {x} and {y}")
    return ("D", x, y)


def loop(lam: Partition) -> Arrow:
    return ("L", lam)


def source(a: Arrow) -> Partition:
    return a[1]


def target(a: Arrow) -> Partition:
    return a[2] if a[0] == "D" else a[1]


def arrow_degree(a: Arrow) -> int:
    return {"1": 0, "D": 1, "L": 2}[a[0]]


def dual_arrow(a: Arrow) -> Arrow:
    return ("D", a[2], a[1]) if a[0] == "D" else a


class Combo:
    """A Z-linear combination of words in the quiver generators."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict[Word, int]] = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def word(cls, *arrows: Arrow, coef: int = 1) -> "Combo":
        return cls({tuple(arrows): coef})

    @classmethod
    def zero(cls) -> "Combo":
        return cls()

    def __add__(self, other: "Combo") -> "Combo":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return Combo(out)

    def __neg__(self):
        return Combo({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int) -> "Combo":
        return Combo({w: k * c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        out: dict[Word, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out[w1 + w2] = out.get(w1 + w2, 0) + c1 * c2
        return Combo(out)

    def dual(self) -> "Combo":
        return Combo({tuple(dual_arrow(a) for a in reversed(w)): c for w, c in self.terms.items()})

    def partitions(self) -> set[Partition]:
        out = set()
        for w in self.terms:
            for a in w:
                out.update(a[1:])
        return out

    def degrees(self) -> set[int]:
        return {sum(map(arrow_degree, w)) for w in self.terms}

    def endpoints(self) -> set[tuple[Partition, Partition]]:
        return {(source(w[0]), target(w[-1])) for w in self.terms if w}

    def key(self) -> tuple:
        return tuple(sorted((tuple(_arrow_key(a) for a in w), c) for w, c in self.terms.items()))

    def __eq__(self, other):
        return isinstance(other, Combo) and self.terms == other.terms

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{format_word(w)}" for w, c in sorted(
            self.terms.items(), key=lambda t: tuple(_arrow_key(a) for a in t[0])))


def _arrow_key(a: Arrow) -> tuple:
    return (a[0],) + tuple(x.sort_key for x in a[1:])


def format_word(w: Word) -> str:
    out = []
    for a in w:
        if a[0] == "1":
            out.append(f"1_{a[1]}")
        elif a[0] == "L":
            out.append(f"L_{a[1]}")
        else:
            out.append(f"D[{a[1]}->{a[2]}]")
    return "".join(out) if out else "()"


def is_composable(w: Word) -> bool:
    return all(target(a) == source(b) for a, b in zip(w, w[1:]))


# quiver ------------------------------------------------------------------

@dataclass
class Quiver:
    ctx: Rect
    vertices: list[Partition]
    arrows: list[Arrow]

    def d_pairs(self) -> list[tuple[Partition, Partition]]:
        """Unordered D-arrow pairs as (smaller, larger)."""
        return sorted({(a[1], a[2]) for a in self.arrows if a[0] == "D" and a[1].size < a[2].size},
                      key=lambda t: (t[0].sort_key, t[1].sort_key))

    def loops(self) -> list[Partition]:
        return [a[1] for a in self.arrows if a[0] == "L"]


def build_quiver(ctx: Rect) -> Quiver:
    verts = list(regular_partitions(ctx))
    arrows: list[Arrow] = []
    for mu in verts:
        for P in drem(mu, positive=True):
            lam = remove_path(mu, P)
            arrows.append(("D", lam, mu))
            arrows.append(("D", mu, lam))
    if ctx.m == ctx.n:
        arrows += [("L", lam) for lam in verts]
    arrows.sort(key=_arrow_key)
    return Quiver(ctx, verts, arrows)


# loops -------------------------------------------------------------------

def last_loop_path(lam: Partition) -> DyckPath:
    """The height-0 removable path ending at content m-1 (m = n only)."""
    m = lam.ctx.m
    for P in drem(lam, height=0):
        if P.last == m - 1:
            return P
    raise ValueError(f"{lam} has no height-0 removable path with last = {m - 1}")


def loop_combo(lam: Partition, P: DyckPath, sign_variant: int = 1) -> Combo:
    """The generalised loop at lam attached to P in DRem(lam).

    ``sign_variant`` is the extra exponent on the rt-terms; 1 is the defining
    choice, 0 the alternative that appears in some derivations.
    """
    rem = removable_paths(lam)
    if P not in rem:
        raise ValueError(f"{P} is not removable from {lam}")
    if not lam.is_regular:
        raise ValueError(f"{lam} is not regular")
    ht = rem[P][1]
    ctx = lam.ctx
    if ht > 0:
        low = remove_path(lam, P)
        return Combo.word(darrow(lam, low), darrow(low, lam), coef=(-1) ** P.breadth)
    if ctx.m == ctx.n and P.last == ctx.m - 1:
        return Combo.word(loop(lam))
    R = rt(lam, P)
    if R is None:
        raise ValueError(f"rt({P}) does not exist at {lam}")
    high = _add(lam, R)
    term = Combo.word(darrow(lam, high), darrow(high, lam),
                      coef=(-1) ** (R.breadth + sign_variant))
    if ctx.m == ctx.n:
        return Combo.word(loop(lam), coef=-1) + term
    return term


def _add(lam: Partition, P: DyckPath) -> Partition:
    return add_path(lam, P)


# phi ---------------------------------------------------------------------

def arrow_sign(x: Partition, y: Partition) -> int:
    """Sign relating the quiver generator x -> y to the bare diagram.

    With P the path between x and y, b its breadth and h its removable
    height in the larger partition, an up-arrow carries (-1)^(b(h+1)) and a
    down-arrow (-1)^(h(b+1)).  Without these signs the self-dual and adjacent
    relations fail already for K^1_2.
    """
    up = x.size < y.size
    big, small = (y, x) if up else (x, y)
    P = single_path_between(x, y)
    if P is None:
        raise ValueError(f"no D-arrow between {x} and {y}")
    b, h = P.breadth, removable_paths(big)[P][1]
    return (-1) ** (b * (h + 1)) if up else (-1) ** (h * (b + 1))


@lru_cache(maxsize=None)
def signed_generator(x: Partition, y: Partition) -> AlgebraElement:
    return arrow_sign(x, y) * generator_D(x, y)


@lru_cache(maxsize=None)
def phi_generalised_loop(lam: Partition, P: DyckPath) -> AlgebraElement:
    low = remove_path(lam, P)
    return (-1) ** P.breadth * multiply(signed_generator(lam, low), signed_generator(low, lam))


@lru_cache(maxsize=None)
def phi_arrow(a: Arrow) -> AlgebraElement:
    if a[0] == "1":
        return AlgebraElement.basis(idempotent(a[1]))
    if a[0] == "D":
        return signed_generator(a[1], a[2])
    lam = a[1]
    return phi_generalised_loop(lam, last_loop_path(lam))


@lru_cache(maxsize=None)
def _phi_word(w: Word) -> AlgebraElement:
    if not w:
        raise ValueError("empty word")
    if len(w) == 1:
        return phi_arrow(w[0])
    return multiply(_phi_word(w[:-1]), phi_arrow(w[-1]))


def phi_eval(x: Union[Combo, Word, Arrow]) -> AlgebraElement:
    if isinstance(x, Combo):
        out = AlgebraElement()
        for w, c in x.terms.items():
            out = out + c * _phi_word(w)
        return out
    if x and isinstance(x[0], str):
        return phi_arrow(x)
    return _phi_word(tuple(x))


# relations ---------------------------------------------------------------

@dataclass
class RelationInstance:
    tag: str
    lhs: Combo
    rhs: Combo
    witness: str

    def dual(self) -> "RelationInstance":
        return RelationInstance(self.tag, self.lhs.dual(), self.rhs.dual(), self.witness + " (dual)")

    def key(self) -> tuple:
        return (self.tag, self.lhs.key(), self.rhs.key())

    def partitions(self) -> set[Partition]:
        return self.lhs.partitions() | self.rhs.partitions()


class _Skip(Exception):
    pass


def _need_regular(*lams: Partition) -> None:
    for lam in lams:
        if not lam.is_regular:
            raise _Skip(f"{lam} not regular")


def _D(x: Partition, y: Partition) -> Arrow:
    if single_path_between(x, y) is None:
        raise _Skip(f"no D-arrow {x} -> {y}")
    return darrow(x, y)


def _relation_builders(ctx: Rect):
    R = regular_partitions(ctx)
    sq = ctx.m == ctx.n

    for lam in R:
        for mu in R:
            yield "idempotent", lambda lam=lam, mu=mu: (
                Combo.word(idem(mu), idem(lam)),
                Combo.word(idem(lam)) if lam == mu else Combo.zero(), f"1_{mu} 1_{lam}")
    for a in build_quiver(ctx).arrows:
        yield "idempotent", lambda a=a: (
            Combo.word(idem(source(a)), a, idem(target(a))), Combo.word(a), format_word((a,)))

    for lam in R:
        for P in dadd(lam):
            def self_dual(lam=lam, P=P):
                up = _add(lam, P)
                _need_regular(up)
                rhs = Combo.zero()
                for Q in drem(lam):
                    kind = relate(P, Q).kind
                    if kind == "covered":
                        rhs = rhs + 2 * loop_combo(lam, Q)
                    elif kind == "adjacent":
                        rhs = rhs + loop_combo(lam, Q)
                return (Combo.word(_D(lam, up), _D(up, lam)), (-1) ** (P.breadth - 1) * rhs,
                        f"lam={lam} P={P}")
            yield "self_dual", self_dual

    for lam in R:
        for P in drem(lam):
            for Q in drem(lam):
                if P == Q or not commute(lam, P, Q):
                    continue
                def commuting(lam=lam, P=P, Q=Q):
                    lp, lq = remove_path(lam, P), remove_path(lam, Q)
                    lpq = remove_path(lp, Q)
                    _need_regular(lp, lq, lpq)
                    return (Combo.word(_D(lpq, lp), _D(lp, lam)),
                            Combo.word(_D(lpq, lq), _D(lq, lam)), f"lam={lam} P={P} Q={Q}")

                def commuting2(lam=lam, P=P, Q=Q):
                    lp, lq = remove_path(lam, P), remove_path(lam, Q)
                    lpq = remove_path(lp, Q)
                    _need_regular(lp, lq, lpq)
                    return (Combo.word(_D(lp, lam), _D(lam, lq)),
                            Combo.word(_D(lp, lpq), _D(lpq, lq)), f"lam={lam} P={P} Q={Q} (second)")
                yield "commuting", commuting
                yield "commuting", commuting2

    for mu in R:
        for P in drem(mu):
            for Q in drem(mu):
                if not Q.covers(P) or commute(mu, P, Q):
                    continue
                for which in (0, 1):
                    def non_commuting(mu=mu, P=P, Q=Q, which=which):
                        mp, mq = remove_path(mu, P), remove_path(mu, Q)
                        Qi = split(Q, P)[which]
                        if Qi not in removable_paths(mp):
                            raise _Skip(f"{Qi} not removable from {mp}")
                        mid = remove_path(mp, Qi)
                        _need_regular(mp, mq, mid)
                        return (Combo.word(_D(mq, mu), _D(mu, mp)),
                                Combo.word(_D(mq, mid), _D(mid, mp)),
                                f"mu={mu} P={P} Q={Q} Q{which + 1}={Qi}")
                    yield "non_commuting", non_commuting

    for mu in R:
        for P in drem(mu):
            mp = remove_path(mu, P)
            for Q in drem(mp):
                if relate(P, Q).kind != "adjacent":
                    continue
                def adjacent(mu=mu, P=P, Q=Q, mp=mp):
                    mpq = remove_path(mp, Q)
                    _need_regular(mp, mpq)
                    lhs = Combo.word(_D(mpq, mp), _D(mp, mu))
                    M = merge(mu, P, Q)
                    if M is None:
                        return lhs, Combo.zero(), f"mu={mu} P={P} Q={Q} no merge"
                    mm = remove_path(mu, M)
                    _need_regular(mm)
                    rhs = Combo.word(_D(mpq, mm), _D(mm, mu), coef=(-1) ** (M.breadth - Q.breadth))
                    return lhs, rhs, f"mu={mu} P={P} Q={Q} merge={M}"
                yield "adjacent", adjacent

    for mu in R:
        adds = dadd(mu, height=1)
        if not adds:
            continue
        P = max(adds, key=lambda X: (X.last, -X.first))
        def cubic(mu=mu, P=P):
            up = _add(mu, P)
            lhs = Combo.word(_D(up, mu), _D(mu, up), _D(up, mu))
            if sq:
                rhs = Combo.word(loop(up), _D(up, mu), coef=2 * (-1) ** (P.breadth + 1))
            else:
                rhs = Combo.zero()
            return lhs, rhs, f"mu={mu} P={P}"
        yield "cubic", cubic

    if sq:
        for lam in R:
            yield "loop_nilpotent", lambda lam=lam: (
                Combo.word(loop(lam), loop(lam)), Combo.zero(), f"lam={lam}")
            yield "idempotent", lambda lam=lam: (
                Combo.word(idem(lam), loop(lam), idem(lam)), Combo.word(loop(lam)), f"L_{lam}")
        for a in build_quiver(ctx).arrows:
            if a[0] != "D":
                continue
            yield "loop_commute", lambda a=a: (
                Combo.word(a, loop(target(a))), Combo.word(loop(source(a)), a), format_word((a,)))


@dataclass
class RelationReport:
    ctx: Rect
    total: int = 0
    counts: Counter = field(default_factory=Counter)
    skipped: Counter = field(default_factory=Counter)
    failed: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failed


def enumerate_relations(ctx: Rect, skipped: Optional[Counter] = None) -> list[RelationInstance]:
    seen = set()
    out = []
    for tag, build in _relation_builders(ctx):
        try:
            lhs, rhs, witness = build()
        except _Skip as exc:
            if skipped is not None:
                skipped[tag] += 1
            log.debug("skip %s: %s", tag, exc)
            continue
        inst = RelationInstance(tag, lhs, rhs, witness)
        for x in (inst, inst.dual()):
            if not all(p.is_regular for p in x.partitions()):
                if skipped is not None:
                    skipped[tag] += 1
                continue
            k = x.key()
            if k not in seen:
                seen.add(k)
                out.append(x)
    return out


def verify_relations(ctx: Rect) -> RelationReport:
    report = RelationReport(ctx)
    for inst in enumerate_relations(ctx, report.skipped):
        report.total += 1
        report.counts[inst.tag] += 1
        left, right = phi_eval(inst.lhs), phi_eval(inst.rhs)
        if left != right:
            report.failed.append((inst, left, right))
    return report


# lemma identities ----------------------------------------------------------

def loop_product(lam: Partition, paths: Iterable[DyckPath]) -> Combo:
    out = Combo.word(idem(lam))
    for P in paths:
        out = out * loop_combo(lam, P)
    return out


def loops_of(lam: Partition, alpha: Partition) -> Optional[list[DyckPath]]:
    """The tiling of lam/alpha if it is a Dyck pair with all heights <= 0."""
    t = dyck_tiling(alpha, lam)
    if t is None or any(h > 0 for h in t.heights.values()):
        return None
    return t.paths


def _lemma_builders(ctx: Rect):
    R = regular_partitions(ctx)
    sq = ctx.m == ctx.n

    for lam in R:
        for P in drem(lam):
            yield "loop_image", lambda lam=lam, P=P: (
                phi_eval(loop_combo(lam, P)), phi_generalised_loop(lam, P), f"lam={lam} P={P}")
            for Q in drem(lam):
                if P < Q:
                    yield "looploop", lambda lam=lam, P=P, Q=Q: (
                        phi_eval(loop_combo(lam, P) * loop_combo(lam, Q)),
                        phi_eval(loop_combo(lam, Q) * loop_combo(lam, P)), f"lam={lam} P={P} Q={Q}")
            if removable_paths(lam)[P][1] == 0:
                yield "looploop", lambda lam=lam, P=P: (
                    phi_eval(loop_combo(lam, P) * loop_combo(lam, P)), AlgebraElement(),
                    f"lam={lam} P={P} squared")

    for lam in R:
        below = [(a, loops_of(lam, a)) for a, _ in flips(lam)]
        below = [(a, ps) for a, ps in below if ps is not None]
        for a, pa in below:
            for b, pb in below:
                def big(lam=lam, a=a, pa=pa, b=b, pb=pb):
                    lhs = phi_eval(loop_product(lam, pa) * loop_product(lam, pb))
                    if set(pa) & set(pb):
                        return lhs, AlgebraElement(), f"lam={lam} alpha={a} beta={b} shared"
                    cap = Partition(tuple(min(x, y) for x, y in zip(a.parts, b.parts)), ctx)
                    pc = loops_of(lam, cap)
                    if pc is None or set(pc) != set(pa) | set(pb):
                        raise _Skip("intersection tiling differs")
                    return lhs, phi_eval(loop_product(lam, pc)), f"lam={lam} alpha={a} beta={b}"
                yield "looploop_big", big

        for a, pa in below:
            t = dyck_tiling(a, lam)
            chain = sorted(pa, key=lambda P: P.breadth, reverse=True)
            k = len(chain) - 1
            if k < 1 or any(not chain[i].covers(chain[i + 1]) for i in range(k)):
                continue
            if any(t.heights[chain[i]] != -i for i in range(k + 1)):
                continue
            def remove_big(lam=lam, chain=chain, k=k):
                low = remove_path(lam, chain[k])
                _need_regular(low)
                lhs = phi_eval(loop_product(lam, chain) * Combo.word(_D(lam, low)))
                return lhs, AlgebraElement(), f"lam={lam} chain={chain}"
            yield "loopremove_big", remove_big

    for lam in R:
        rem = removable_paths(lam)
        # chains T^k < ... < T^0 with removable heights 0..k
        by_h: dict[int, list[DyckPath]] = {}
        for P, (_, h) in rem.items():
            by_h.setdefault(h, []).append(P)
        chains = [[T] for T in by_h.get(0, [])]
        all_chains = list(chains)
        while chains:
            nxt = []
            for c in chains:
                for T in by_h.get(len(c), []):
                    if c[-1].covers(T):
                        nxt.append(c + [T])
            all_chains += nxt
            chains = nxt
        for chain in all_chains:
            Tk = chain[-1]
            for S in dadd(lam):
                if relate(S, Tk).kind != "adjacent":
                    continue
                def add_big(lam=lam, chain=chain, S=S):
                    up = _add(lam, S)
                    _need_regular(up)
                    lhs = phi_eval(loop_product(lam, chain) * Combo.word(_D(lam, up)))
                    Tk = chain[-1]
                    if Tk not in removable_paths(lam) or S not in removable_paths(up):
                        raise _Skip("paths not removable")
                    M = merge(up, S, Tk)
                    if M is None:
                        return lhs, AlgebraElement(), f"lam={lam} chain={chain} S={S} no merge"
                    if any(T not in removable_paths(up) for T in chain[:-1]):
                        raise _Skip("chain not removable after adding S")
                    rhs = Combo.word(_D(lam, up)) * loop_product(up, chain[:-1]) * loop_combo(up, M)
                    return lhs, phi_eval(rhs), f"lam={lam} chain={chain} S={S} merge={M}"
                yield "loopadd_big", add_big

    tag = "h0loop_sq" if sq else "h0loop_rect"
    for lam in R:
        for Q in drem(lam, height=0):
            for P in drem(lam, positive=True):
                def h0(lam=lam, Q=Q, P=P):
                    low = remove_path(lam, P)
                    D = Combo.word(_D(lam, low))
                    mid = phi_eval(loop_combo(lam, Q) * D)
                    if commute(lam, P, Q):
                        return mid, phi_eval(D * loop_combo(low, Q)), f"lam={lam} Q={Q} P={P} commuting"
                    Q1, Q2 = split(Q, P)
                    left = phi_eval(D * loop_combo(low, Q1))
                    right = phi_eval(D * loop_combo(low, Q2))
                    if left != mid:
                        return left, mid, f"lam={lam} Q={Q} P={P} Q1={Q1}"
                    return mid, right, f"lam={lam} Q={Q} P={P} Q2={Q2}"
                yield tag, h0

    for lam in R:
        for Q in drem(lam, height=0):
            for P in dadd(lam, positive=True):
                def r3(lam=lam, Q=Q, P=P):
                    up = _add(lam, P)
                    D = Combo.word(_D(lam, up))
                    lhs = phi_eval(loop_combo(lam, Q) * D)
                    kind = relate(P, Q).kind
                    if Q in removable_paths(up) and commute(up, P, Q):
                        return lhs, phi_eval(D * loop_combo(up, Q)), f"lam={lam} Q={Q} P={P} commuting"
                    if kind == "adjacent":
                        M = merge(up, P, Q)
                        if M is None:
                            raise _Skip("merge does not exist")
                        return lhs, phi_eval(D * loop_combo(up, M)), f"lam={lam} Q={Q} P={P} merge={M}"
                    raise _Skip("neither commuting nor adjacent")
                yield "lemmar3", r3

    for lam in R:
        rem = drem(lam)
        for Q3 in drem(lam, height=0):
            for Q2 in rem:
                if not Q3.covers(Q2) or commute(lam, Q2, Q3):
                    continue
                for Q1 in rem:
                    if not Q2.covers(Q1) or commute(lam, Q1, Q2):
                        continue
                    def chris(lam=lam, Q1=Q1, Q2=Q2, Q3=Q3):
                        low = remove_path(lam, Q2)
                        _need_regular(low)
                        if Q1 not in removable_paths(low):
                            raise _Skip("Q1 not removable below Q2")
                        D = Combo.word(_D(lam, low))
                        lhs = loop_combo(lam, Q3) * D * loop_combo(low, Q1)
                        rhs = loop_combo(lam, Q3) * loop_combo(lam, Q1) * D
                        return phi_eval(lhs), phi_eval(rhs), f"lam={lam} Q1={Q1} Q2={Q2} Q3={Q3}"
                    yield "chris_lem", chris


def verify_lemma_identities(ctx: Rect) -> RelationReport:
    report = RelationReport(ctx)
    for tag, build in _lemma_builders(ctx):
        try:
            left, right, witness = build()
        except _Skip:
            report.skipped[tag] += 1
            continue
        except ValueError as exc:
            # a generalised loop that is not defined at this instance
            report.skipped[tag] += 1
            log.debug("undefined %s: %s", tag, exc)
            continue
        report.total += 1
        report.counts[tag] += 1
        if left != right:
            report.failed.append((tag, witness, left, right))
    return report


# spanning set and isomorphism ----------------------------------------------

def _chain_word(chain: list[Partition]) -> Combo:
    out = Combo.word(idem(chain[0]))
    for x, y in zip(chain, chain[1:]):
        out = out * Combo.word(("D", x, y))
    return out


@dataclass
class SpanningPieces:
    """The three segments of the canonical path from reg(alpha) to mu."""
    reg: Partition
    loops: list[DyckPath]
    splits: list[Partition]  # reg ... split target
    adds: list[Partition]  # split target ... mu


@lru_cache(maxsize=None)
def spanning_pieces(alpha: Partition, mu: Partition) -> SpanningPieces:
    plan = canonical_add_split(alpha, mu)
    n_neg = len(plan.adds_neg)
    n_split = sum(map(len, plan.splits.values()))
    chain = plan.chain
    return SpanningPieces(plan.reg, list(plan.adds_neg.values()),
                          chain[n_neg:n_neg + n_split + 1], chain[n_neg + n_split:])


def spanning_word(alpha: Partition, lam: Partition, mu: Partition) -> Combo:
    left = spanning_pieces(alpha, lam)
    right = spanning_pieces(alpha, mu)
    word = _chain_word(right.splits) * _chain_word(right.adds)
    word = _chain_word(left.splits).dual() * loop_product(left.reg, left.loops) * word
    return _chain_word(left.adds).dual() * word


def spanning_index(ctx: Rect) -> list[tuple[Partition, Partition, Partition]]:
    out = []
    for alpha in enumerate_partitions(ctx):
        ups = [mu for mu in regular_partitions(ctx) if dyck_tiling(alpha, mu) is not None]
        for lam in ups:
            for mu in ups:
                out.append((alpha, lam, mu))
    return out


def spanning_set(ctx: Rect) -> list[tuple[tuple[Partition, Partition, Partition], AlgebraElement]]:
    return [(idx, phi_eval(spanning_word(*idx))) for idx in spanning_index(ctx)]


def off_quiver_arrows(ctx: Rect) -> int:
    """Arrows in spanning words whose ends are not both regular."""
    bad = 0
    for idx in spanning_index(ctx):
        for w in spanning_word(*idx).terms:
            bad += sum(1 for a in w if a[0] == "D" and not (a[1].is_regular and a[2].is_regular))
    return bad


@dataclass
class IsoCertificate:
    ctx: Rect
    ok: bool
    dim_H: int
    spanning_size: int
    snf_invariants: list[int]
    relation_counts: dict
    failures: list

    def to_json(self) -> dict:
        return {
            "ctx": [self.ctx.m, self.ctx.n],
            "relation_counts": dict(sorted(self.relation_counts.items())),
            "failures": self.failures,
            "snf_invariants": self.snf_invariants,
            "dim_H": self.dim_H,
        }


def verify_isomorphism(ctx: Rect, with_relations: bool = True) -> IsoCertificate:
    basis = basis_H(ctx)
    index = {d: i for i, d in enumerate(basis)}
    rows = []
    failures = []
    for idx, elt in spanning_set(ctx):
        row = [0] * len(basis)
        for d, c in elt.terms.items():
            if d not in index:
                failures.append(f"spanning element {idx} leaves H: {d}")
                continue
            row[index[d]] = c
        rows.append(row)
    counts: dict = {}
    if with_relations:
        rep = verify_relations(ctx)
        counts = dict(rep.counts)
        failures += [f"{inst.tag} {inst.witness}" for inst, _, _ in rep.failed]
    if len(rows) != len(basis):
        failures.append(f"spanning set has {len(rows)} elements, dim H = {len(basis)}")
        snf = smith_normal_form(rows) if rows else []
    else:
        snf = smith_normal_form(rows)
        if any(d != 1 for d in snf):
            failures.append("change of basis is not unimodular")
    return IsoCertificate(ctx, not failures, len(basis), len(rows), snf, counts, failures)
