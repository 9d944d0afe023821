from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from _oracles import level_count_on_grid, takagi_oracle
from takagi.arith import DomainError
from takagi.oracle import DyadicBox, enclose, level_set_cover

boxes = st.integers(min_value=0, max_value=9).flatmap(
    lambda d: st.tuples(st.just(d), st.integers(min_value=0, max_value=2**d - 1))
)


@given(boxes)
def test_box_endpoints_exact(box):
    depth, index = box
    b = DyadicBox.at(depth, index)
    lo, hi = b.interval
    assert Fraction(b.left, 2**depth) == takagi_oracle(lo)
    assert Fraction(b.right, 2**depth) == takagi_oracle(hi)


@given(boxes)
def test_children_use_midpoint_rule(box):
    depth, index = box
    left, right = DyadicBox.at(depth, index).children()
    assert left == DyadicBox.at(depth + 1, 2 * index)
    assert right == DyadicBox.at(depth + 1, 2 * index + 1)


@settings(max_examples=50)
@given(boxes, st.integers(min_value=0, max_value=64))
def test_enclosure_contains_samples(box, j):
    depth, index = box
    b = DyadicBox.at(depth, index)
    lo, hi = enclose(b)
    x = Fraction(index * 64 + j, 64 * 2**depth)
    assert lo <= takagi_oracle(x) <= hi
    x = Fraction(3 * index + 1, 3 * 2**depth)  # non-dyadic point inside the box
    assert lo <= takagi_oracle(x) <= hi


def test_enclosure_examples():
    assert enclose(DyadicBox.at(0, 0)) == (0, Fraction(2, 3))
    assert enclose(DyadicBox.at(2, 0)) == (0, Fraction(2, 3))
    assert enclose(DyadicBox.at(2, 1)) == (Fraction(1, 2), Fraction(2, 3))


@pytest.mark.parametrize("y", [Fraction(1, 3), Fraction(22, 49), Fraction(7, 12), Fraction(1, 5)])
def test_cover_contains_known_points(y):
    from takagi.engine import enumerate_level_set

    cover = level_set_cover(y, 24)
    pts = enumerate_level_set(y).points
    assert all(cover.contains(x) for x in pts)
    assert len(cover.clusters) == len(pts)


@pytest.mark.parametrize("y, depth", [(Fraction(1, 2), 6), (Fraction(3, 8), 7), (Fraction(5, 16), 7)])
def test_cover_contains_grid_solutions(y, depth):
    cover = level_set_cover(y, depth)
    hits = [Fraction(i, 2**depth) for i in range(2**depth + 1) if takagi_oracle(Fraction(i, 2**depth)) == y]
    assert hits and len(hits) == level_count_on_grid(y, depth)
    assert all(cover.contains(x) for x in hits)


def test_cover_non_terminating_for_two_thirds():
    cover = level_set_cover(Fraction(2, 3), 20)
    assert cover.non_terminating
    assert cover.cluster_history[-1] > cover.cluster_history[-5]


def test_cover_box_cap():
    cover = level_set_cover(Fraction(2, 3), 30, max_boxes=64)
    assert cover.non_terminating and cover.depth < 30 and cover.box_count <= 64


def test_cover_domain():
    with pytest.raises(DomainError):
        level_set_cover(Fraction(3, 4))
    with pytest.raises(DomainError):
        level_set_cover(Fraction(1, 3), 99)
    with pytest.raises(DomainError):
        DyadicBox.at(2, 4)
