import pytest

from arcalg.combinatorics import Partition, Rect, enumerate_partitions, regular_partitions
from arcalg.dyck import regularise
from arcalg.exactlinalg import rank
from arcalg.rep_theory import (INCIDENCE, action_edges, alperin_edges, cell_module, computed_head,
                               expected_quiver, ext_quiver, loop_vertices, radical_layers,
                               simple_head)

SMALL = [Rect(m, n) for m in range(1, 4) for n in range(m, 6) if m + n <= 6]


def test_specht_module_example():
    c = Rect(2, 2)
    mod = cell_module(Partition.of(c, 2, 1), "specht")
    assert [(str(nu), mod.degrees[nu]) for nu in mod.basis] == [("(2,1)", 0), ("(2,2)", 1)]


def test_cell_module_rejects_unknown_variant():
    with pytest.raises(ValueError):
        cell_module(Partition.of(Rect(1, 1)), "costandard")


@pytest.mark.parametrize("ctx", SMALL)
def test_graded_dimension_counts_dyck_pairs(ctx):
    for lam in enumerate_partitions(ctx):
        mod = cell_module(lam)
        assert mod.graded_dim()(1) == mod.dim
        assert mod.basis[0] == lam and mod.degrees[lam] == 0


def test_standard_module_socle():
    c = Rect(3, 3)
    mod = cell_module(Partition.of(c, 2, 1))
    bottom = radical_layers(mod)[-1]
    assert rank(bottom) == 1
    (row,) = bottom
    assert [mod.basis[i] for i, x in enumerate(row) if x] == [Partition.of(c, 3, 2, 1)]


@pytest.mark.parametrize("ctx", SMALL)
def test_simple_head_matches_computation(ctx):
    for alpha in enumerate_partitions(ctx):
        head = simple_head(alpha)
        # the head vector sits in degree -defect of the module
        assert computed_head(alpha) == [(head.label, -head.shift)]


def test_head_of_empty_partition():
    for m in (1, 2, 3):
        c = Rect(m, m)
        head = simple_head(Partition.of(c))
        assert head.label.parts == (m,) * m and head.shift == -m
        assert head.label == regularise(Partition.of(c))[0]


@pytest.mark.parametrize("ctx", SMALL)
@pytest.mark.parametrize("specht", [False, True])
def test_alperin_edges_match_action(ctx, specht):
    for lam in enumerate_partitions(ctx):
        if specht and not lam.is_regular:
            continue
        assert alperin_edges(lam, specht) == action_edges(lam, specht)


@pytest.mark.parametrize("ctx", SMALL)
@pytest.mark.parametrize("p", [0, 2, 3, 5])
def test_ext_quiver_matches_prediction(ctx, p):
    assert ext_quiver(ctx, p) == expected_quiver(ctx, p)


def test_ext_quiver_is_symmetric():
    q = ext_quiver(Rect(3, 3), 0)
    for (a, b), k in q.mult.items():
        assert q.mult.get((b, a)) == k


def test_loop_vertices_square():
    c = Rect(3, 3)
    names = {str(v) for v in loop_vertices(c, 3)}
    assert names == {"(3,2,2)", "(3,3,1)", "(3,3,3)"}
    assert set(loop_vertices(c, 2)) == set(regular_partitions(c))
    assert loop_vertices(Rect(2, 3), 0) == []


def test_ext_quiver_rectangular_has_six_edges():
    q = ext_quiver(Rect(2, 3), 0)
    assert q.loops() == [] and len(q.edges()) == 6


@pytest.mark.parametrize("p,full", [(0, True), (2, False), (3, True), (5, True)])
def test_incidence_rank(p, full):
    assert (rank(INCIDENCE, p) == 3) == full
