import pytest
from hypothesis import assume, given

from arcalg.arc_algebra import single_path_between
from arcalg.combinatorics import Partition, Rect, enumerate_partitions, oriented_degree
from arcalg.dyck import (DyckPath, add_path, addable_paths, canonical_add_split, canonical_tableau,
                         commute, dadd, drem, dyck_tiling, is_dyck_pair, merge, regularise,
                         regularize_pair_degree, relate, remove_path, removable_paths, rt, split,
                         support_set, tiling_height)
from strategies import pairs, partitions

P_ = DyckPath


def test_dyck_path_validation():
    with pytest.raises(ValueError):
        DyckPath(0, 1)
    with pytest.raises(ValueError):
        DyckPath(2, 0)
    assert DyckPath(-5, 7).breadth == 7


@pytest.mark.parametrize("P,Q,kind,dominated", [
    (P_(0, 0), P_(1, 3), "adjacent", True),
    (P_(0, 0), P_(2, 2), "distant", True),
    (P_(2, 2), P_(1, 3), "covered", False),
    (P_(1, 3), P_(2, 2), "covers", False),
    (P_(0, 2), P_(2, 4), "overlapping", False),
    (P_(1, 1), P_(1, 1), "equal", False),
])
def test_relate(P, Q, kind, dominated):
    r = relate(P, Q)
    assert r.kind == kind and r.dominated == dominated


def test_removable_paths_examples():
    lam = Partition.of(Rect(5, 6), 5, 4, 2, 2)
    assert set(removable_paths(lam)) == {P_(-4, -4), P_(-2, -2), P_(2, 2), P_(1, 3)}
    stair = Partition.of(Rect(3, 3), 3, 2, 1)
    rem = removable_paths(stair)
    assert set(rem) == {P_(-2, -2), P_(0, 0), P_(2, 2)}
    assert {h for _, h in rem.values()} == {0}
    assert removable_paths(Partition.of(Rect(3, 3))) == {}


def test_addable_paths_examples():
    stair = Partition.of(Rect(3, 3), 3, 2, 1)
    assert set(dadd(stair, height=1)) == {P_(-1, -1), P_(1, 1), P_(-1, 1)}
    assert addable_paths(Partition.of(Rect(3, 3), 3, 3, 3)) == {}
    add = addable_paths(Partition.of(Rect(2, 2), 2, 1))
    assert add[P_(0, 0)][1] == 1


@given(partitions())
def test_anchored_paths_have_minimal_ends(mu):
    m = mu.ctx.m
    for table in (removable_paths(mu), addable_paths(mu)):
        for P, (anchored, h) in table.items():
            hs = anchored.heights(m)
            assert len(hs) == P.last - P.first + 1
            assert hs[0] == hs[-1] == min(hs)


@given(partitions())
def test_remove_then_add_roundtrip(mu):
    for P in removable_paths(mu):
        low = remove_path(mu, P)
        assert P in addable_paths(low)
        assert add_path(low, P) == mu


@given(partitions())
def test_removable_matches_cups(mu):
    m = mu.ctx.m
    assert {P.cup(m) for P in removable_paths(mu)} == set(mu.cups.cups)


def test_merge_examples():
    mu = Partition.of(Rect(2, 2), 2, 2)
    assert merge(mu, P_(0, 0), P_(1, 1)) == P_(-1, 1)
    assert merge(mu, P_(0, 0), P_(-1, -1)) == P_(-1, 1)


@given(partitions())
def test_merge_is_minimal_superpath(mu):
    rem = removable_paths(mu)
    for P in rem:
        for Q in removable_paths(remove_path(mu, P)):
            if relate(P, Q).kind != "adjacent":
                continue
            R = merge(mu, P, Q)
            lo, hi = min(P.first, Q.first), max(P.last, Q.last)
            cands = [X for X in rem if X.first <= lo and hi <= X.last]
            assert R == (min(cands, key=lambda X: X.breadth) if cands else None)


def test_merge_rejects_bad_input():
    mu = Partition.of(Rect(2, 3), 2, 1)
    with pytest.raises(ValueError):
        merge(mu, P_(-1, -1), P_(0, 0))


@pytest.mark.parametrize("Q,P,expect", [
    (P_(1, 3), P_(2, 2), (P_(1, 1), P_(3, 3))),
    (P_(-1, 1), P_(0, 0), (P_(-1, -1), P_(1, 1))),
    (P_(-5, 7), P_(0, 4), (P_(-5, -1), P_(5, 7))),
])
def test_split_examples(Q, P, expect):
    assert split(Q, P) == expect


def test_split_requires_cover():
    with pytest.raises(ValueError):
        split(P_(0, 0), P_(1, 1))


def test_rt_examples():
    lam = Partition.of(Rect(3, 3), 3, 2, 1)
    assert rt(lam, P_(-2, -2)) == P_(-1, 1)
    assert rt(lam, P_(0, 0)) == P_(1, 1)
    assert rt(lam, P_(2, 2)) is None


def test_tiling_of_empty_under_square():
    c = Rect(2, 2)
    t = dyck_tiling(Partition.of(c), Partition.of(c, 2, 2))
    assert set(t.paths) == {P_(-1, 1), P_(0, 0)} and t.degree == 2
    assert t.heights == {P_(0, 0): -1, P_(-1, 1): 0}


@given(partitions())
def test_trivial_tiling(lam):
    t = dyck_tiling(lam, lam)
    assert t is not None and t.degree == 0


def _strip_oracle(lam, mu):
    """Tile-set check: the paths tile mu minus lam and pairwise cover or are distant."""
    t = dyck_tiling(lam, mu)
    cells = set()
    for P in t.paths:
        assert all(relate(P, Q).kind in ("covers", "covered", "distant") for Q in t.paths if Q != P)
        cells |= set(P.contents)
    return t


@given(pairs())
def test_tiling_exists_iff_oriented(pair):
    lam, mu = pair
    t = dyck_tiling(lam, mu)
    d = oriented_degree(mu, lam)
    assert (t is None) == (d is None)
    if t is not None:
        assert t.degree == d
        assert sum(P.last - P.first + 1 for P in t.paths) == mu.size - lam.size
        _strip_oracle(lam, mu)


@given(pairs())
def test_tableau_reaches_base(pair):
    lam, mu = pair
    assume(is_dyck_pair(lam, mu))
    steps = canonical_tableau(lam, mu)
    assert len(steps) == dyck_tiling(lam, mu).degree
    cur = mu
    for s in steps:
        assert s.source == cur and s.move in ("G1", "G2", "G3")
        cur = s.target
    assert cur == lam


def test_single_removal_height_agrees():
    for mu in enumerate_partitions(Rect(3, 4)):
        for P, (_, h) in removable_paths(mu).items():
            assert tiling_height(remove_path(mu, P), mu, P) == h


LARGE_PAIR_HEIGHTS = {1: 0, 2: -1, 6: 1, 7: 0, 8: -1, 14: 5, 16: 7, 17: 4, 18: -1,
               24: 5, 25: 4, 31: 0, 32: -1, 33: -2, 39: 2, 40: 1}


def _big_pair(n):
    c = Rect(20, n)
    mu = Partition(tuple([20] * 2 + [18] * 5 + [16] * 7 + [11] * 2 + [6] * 3 + [2] * 3), c)
    lam = Partition(tuple([18] * 3 + [15] + [14] * 3 + [13] + [10] * 3 + [9] + [7] * 2 + [5] + [2] * 5), c)
    return lam, mu


def test_support_sets_of_large_pair():
    lam, mu = _big_pair(22)
    supp = lambda p, q: {Q.cup(20) for Q in support_set(lam, mu, DyckPath.from_cup((p, q), 20))}
    assert supp(25, 26) == {(25, 26), (24, 27)}
    assert supp(2, 3) == {(2, 3), (1, 4)}


def test_regularise_example():
    alpha = Partition.of(Rect(8, 9), 8, 6, 6, 2, 2, 1, 1)
    reg, paths = regularise(alpha)
    assert reg.parts == (8, 7, 7, 7, 5, 5, 4, 2)
    assert paths == [P_(1, 1), P_(0, 4), P_(-5, 7)]


@given(partitions())
def test_regularise_properties(alpha):
    reg, paths = regularise(alpha)
    assert reg.is_regular and reg.contains(alpha)
    assert len(paths) == -alpha.defect
    t = dyck_tiling(alpha, reg)
    assert t is not None and t.degree == -alpha.defect
    assert all(h <= 0 for h in t.heights.values())
    if alpha.is_regular:
        assert (reg, paths) == (alpha, [])


def test_regularise_empty_fills_square():
    for m in (1, 2, 3):
        reg, _ = regularise(Partition.of(Rect(m, m + 1)))
        assert reg.parts == (m,) * m


def test_split_plan_example():
    c = Rect(8, 9)
    alpha = Partition.of(c, 8, 6, 6, 2, 2, 1, 1)
    mu = Partition.of(c, 8, 8, 8, 7, 6, 6, 6, 4, 2)
    plan = canonical_add_split(alpha, mu)
    assert plan.splits[-2] == []
    assert len(plan.splits[-1]) == 1 and len(plan.splits[0]) == 2
    assert sum(map(len, plan.adds_pos.values())) == 1
    assert plan.chain[0] == alpha and plan.chain[-1] == mu


@given(pairs(6))
def test_plan_chain_is_valid(pair):
    alpha, mu = pair
    assume(mu.is_regular and is_dyck_pair(alpha, mu))
    plan = canonical_add_split(alpha, mu)
    assert plan.reg == regularise(alpha)[0]
    assert plan.chain[0] == alpha and plan.chain[-1] == mu
    for x, y in zip(plan.chain, plan.chain[1:]):
        P = single_path_between(x, y)
        assert P is not None
        assert (remove_path(x, P) if x.size > y.size else add_path(x, P)) == y


def test_plan_needs_regular_top():
    c = Rect(2, 2)
    with pytest.raises(ValueError):
        canonical_add_split(Partition.of(c), Partition.of(c))


def test_plan_rejects_non_pairs():
    c = Rect(2, 2)
    with pytest.raises(ValueError):
        canonical_add_split(Partition.of(c, 2, 2), Partition.of(c))


@given(partitions())
def test_commute_is_symmetric(mu):
    rem = list(removable_paths(mu))
    for P in rem:
        for Q in rem:
            assert commute(mu, P, Q) == commute(mu, Q, P)


def test_regularize_pair_degree_trivial():
    lam = Partition.of(Rect(2, 2), 2, 1)
    assert regularize_pair_degree(lam, lam) == 0
    with pytest.raises(ValueError):
        regularize_pair_degree(Partition.of(Rect(2, 2)), Partition.of(Rect(2, 2), 1))
