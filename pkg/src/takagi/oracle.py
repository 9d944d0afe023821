"""Brute-force enclosure of a level set by dyadic boxes.

On [i/2^m, (i+1)/2^m] the partial sum T_m is linear, and
T = T_m + 2^-m T(2^m x mod 1) with 0 <= T <= 2/3, so T on the box lies in
[min, max + (2/3) 2^-m] of the endpoint values.  Those endpoint values are
exact: at a dyadic point of depth m, T equals T_m and is an integer over 2^m,
and a midpoint satisfies N_mid = N_left + N_right + 1 at depth m + 1.
Everything is integer arithmetic; a box is discarded only when y provably
misses its enclosure, so every solution survives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import DomainError, RationalLike, as_rational, format_rational
from .evaluate import takagi

__all__ = ["MAX_DEPTH", "DyadicBox", "enclose", "IntervalCover", "level_set_cover"]

MAX_DEPTH = 48
DEFAULT_MAX_BOXES = 1 << 20


@dataclass(frozen=True)
class DyadicBox:
    depth: int
    index: int
    left: int  # 2^depth T(index / 2^depth)
    right: int  # 2^depth T((index + 1) / 2^depth)

    @classmethod
    def at(cls, depth: int, index: int) -> "DyadicBox":
        if not 0 <= index < 1 << depth:
            raise DomainError(f"box index {index} out of range at depth {depth}")
        scale = 1 << depth
        lo = takagi(Fraction(index, scale)) * scale
        hi = takagi(Fraction(index + 1, scale)) * scale
        return cls(depth, index, int(lo), int(hi))

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        scale = 1 << self.depth
        return Fraction(self.index, scale), Fraction(self.index + 1, scale)

    def children(self) -> tuple["DyadicBox", "DyadicBox"]:
        mid = self.left + self.right + 1
        d, i = self.depth + 1, 2 * self.index
        return DyadicBox(d, i, 2 * self.left, mid), DyadicBox(d, i + 1, mid, 2 * self.right)


def enclose(box: DyadicBox) -> tuple[Fraction, Fraction]:
    """Certified range of T over the box."""
    scale = 1 << box.depth
    lo = min(box.left, box.right)
    hi = max(box.left, box.right)
    return Fraction(lo, scale), Fraction(3 * hi + 2, 3 * scale)


def _hits(box: DyadicBox, p: int, q: int) -> bool:
    # y = p/q in [lo/2^m, (hi + 2/3)/2^m], multiplied through by 3 q 2^m
    lo = min(box.left, box.right)
    hi = max(box.left, box.right)
    target = 3 * p << box.depth
    return 3 * lo * q <= target <= (3 * hi + 2) * q


@dataclass(frozen=True)
class IntervalCover:
    ordinate: Fraction
    depth: int  # depth actually reached
    requested_depth: int
    clusters: tuple[tuple[Fraction, Fraction], ...]
    box_count: int
    cluster_history: tuple[int, ...]  # cluster count after each level
    non_terminating: bool  # refinement stopped early or the count is still growing

    def contains(self, x: Fraction) -> bool:
        return any(lo <= x <= hi for lo, hi in self.clusters)

    def to_dict(self) -> dict:
        return {
            "ordinate": format_rational(self.ordinate),
            "depth": self.depth,
            "requested_depth": self.requested_depth,
            "clusters": [[format_rational(lo), format_rational(hi)] for lo, hi in self.clusters],
            "box_count": self.box_count,
            "non_terminating": self.non_terminating,
        }


def _clusters(boxes: list[DyadicBox]) -> list[tuple[int, int]]:
    """Maximal runs of adjacent indices (boxes sharing an endpoint merge)."""
    runs: list[tuple[int, int]] = []
    for b in boxes:
        if runs and runs[-1][1] == b.index - 1:
            runs[-1] = (runs[-1][0], b.index)
        else:
            runs.append((b.index, b.index))
    return runs


def level_set_cover(y: RationalLike, depth: int = 30, max_boxes: Optional[int] = DEFAULT_MAX_BOXES) -> IntervalCover:
    """Subdivide [0, 1] breadth first, keeping boxes whose enclosure contains y."""
    y = as_rational(y)
    if not 0 <= y <= Fraction(2, 3):
        raise DomainError(f"level sets are nonempty only for 0 <= y <= 2/3, got {y}")
    if not 0 <= depth <= MAX_DEPTH:
        raise DomainError(f"depth must be in 0..{MAX_DEPTH}")
    p, q = y.numerator, y.denominator
    boxes = [DyadicBox(0, 0, 0, 0)]
    history = [1]
    reached = 0
    stopped = False
    for m in range(1, depth + 1):
        nxt = []
        for b in boxes:
            for c in b.children():
                if _hits(c, p, q):
                    nxt.append(c)
        if max_boxes is not None and len(nxt) > max_boxes:
            stopped = True
            break
        boxes = nxt
        reached = m
        history.append(len(_clusters(boxes)))
    scale = 1 << reached
    runs = _clusters(boxes)
    clusters = tuple((Fraction(a, scale), Fraction(b + 1, scale)) for a, b in runs)
    growing = len(history) > 4 and history[-1] > history[-5]
    return IntervalCover(y, reached, depth, clusters, len(boxes), tuple(history), stopped or growing)
