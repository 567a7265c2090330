"""Hypothesis strategies shared by the test modules."""
from hypothesis import strategies as st

from arcalg.combinatorics import Partition, Rect


def rects(max_size: int = 6, min_m: int = 1):
    return st.integers(min_m, max_size - 1).flatmap(
        lambda m: st.integers(m, max(m, max_size - m)).map(lambda n: Rect(m, n)))


@st.composite
def partitions_in(draw, ctx: Rect):
    parts = sorted(draw(st.lists(st.integers(0, ctx.m), min_size=ctx.n, max_size=ctx.n)),
                   reverse=True)
    return Partition(tuple(p for p in parts if p), ctx)


def partitions(max_size: int = 7):
    return rects(max_size).flatmap(partitions_in)


def pairs(max_size: int = 7):
    return rects(max_size).flatmap(lambda c: st.tuples(partitions_in(c), partitions_in(c)))
