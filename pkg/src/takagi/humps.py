"""Humps, Catalan counts, the removed-interval system and bounds on lambda(S_2).

A balanced dyadic rational x0 = 0.e_1...e_2m (D_2m(x0) = 0) carries a hump:
a copy of the whole graph of T scaled by 4^-m above I(x0) = [x0, x0 + 4^-m],
whose projection onto the y-axis is J(x0) = [T(x0), T(x0) + (2/3) 4^-m].
S_2 is [0, 2/3] minus the projections of all first-generation humps.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Optional

from .arith import DomainError, format_rational
from .evaluate import takagi
from .expansion import t

__all__ = [
    "HUMP_ORDER_CAP",
    "catalan",
    "catalan_partial_sum",
    "HumpFilter",
    "HumpDescriptor",
    "enumerate_humps",
    "humps_to_csv",
    "j_interval",
    "RemovedIntervalSystem",
    "removed_intervals",
    "union_measure",
    "sigma_k",
    "sigma_recursion_holds",
    "sigma_partial_sum",
    "MeasureBounds",
    "s2_measure_bounds",
]

HUMP_ORDER_CAP = 14
TWO_THIRDS = Fraction(2, 3)


def catalan(n: int) -> int:
    if n < 0:
        raise DomainError("Catalan numbers are indexed from 0")
    return comb(2 * n, n) // (n + 1)


def catalan_partial_sum(N: int) -> Fraction:
    """sum_{n<=N} C_n 4^-n (tends to 2 from below)."""
    return sum((Fraction(catalan(n), 4**n) for n in range(N + 1)), Fraction(0))


class HumpFilter(str, enum.Enum):
    ALL = "all"
    FIRST_GENERATION = "first_generation"
    LEADING = "leading"
    NON_SUBSIDIARY = "non_subsidiary"


@dataclass(frozen=True)
class HumpDescriptor:
    x0: Fraction
    bits: str
    order: int
    generation: int
    leading: bool
    first_generation: bool
    subsidiary: bool
    I: tuple[Fraction, Fraction]
    J: tuple[Fraction, Fraction]

    def to_dict(self) -> dict:
        return {
            "x0": format_rational(self.x0),
            "binary": "0." + self.bits,
            "order": self.order,
            "generation": self.generation,
            "leading": self.leading,
            "first_generation": self.first_generation,
            "subsidiary": self.subsidiary,
            "I": [format_rational(v) for v in self.I],
            "J": [format_rational(v) for v in self.J],
        }


def _paths(m: int, mode: HumpFilter) -> Iterator[str]:
    """Balanced 0/1 strings of length 2m in lexicographic order.

    A 0 digit steps D up, a 1 digit steps it down.  Leading paths never go
    below zero; first-generation paths only return to zero at the end.
    """
    n = 2 * m
    leading_only = mode in (HumpFilter.LEADING, HumpFilter.NON_SUBSIDIARY)
    first_only = mode in (HumpFilter.FIRST_GENERATION, HumpFilter.NON_SUBSIDIARY)
    def walk(prefix: list[str], d: int) -> Iterator[str]:
        i = len(prefix)
        if i == n:
            yield "".join(prefix)
            return
        remaining = n - i
        for digit, step in (("0", 1), ("1", -1)):
            nd = d + step
            if abs(nd) > remaining - 1:
                continue
            if leading_only and nd < 0:
                continue
            if first_only and nd == 0 and i + 1 < n:
                continue
            prefix.append(digit)
            yield from walk(prefix, nd)
            prefix.pop()

    yield from walk([], 0)


def _profile(bits: str) -> tuple[int, bool]:
    d = 0
    zeros = 0
    leading = True
    for b in bits:
        d += 1 if b == "0" else -1
        if d == 0:
            zeros += 1
        if d < 0:
            leading = False
    return zeros, leading


def _is_first_gen_leading(bits: str) -> bool:
    if not bits:
        return False
    zeros, leading = _profile(bits)
    return leading and zeros == 1


def _descriptor(bits: str) -> HumpDescriptor:
    m = len(bits) // 2
    x0 = Fraction(int(bits, 2), 1 << len(bits))
    generation, leading = _profile(bits)
    first = generation == 1
    subsidiary = (
        first
        and leading
        and m >= 2
        and bits.endswith("011")
        and _is_first_gen_leading(bits[:-3] + "1")
    )
    width = Fraction(1, 4**m)
    y0 = takagi(x0)
    return HumpDescriptor(x0, bits, m, generation, leading, first, subsidiary, (x0, x0 + width), (y0, y0 + TWO_THIRDS * width))


def enumerate_humps(max_order: int, filter: HumpFilter | str = HumpFilter.ALL, cap: int = HUMP_ORDER_CAP) -> list[HumpDescriptor]:
    """Humps of orders 1..max_order, by order then binary string.

    ``non_subsidiary`` keeps the first-generation leading humps that are not
    subsidiary to a hump one order lower (the ones the Catalan bound counts).
    """
    mode = HumpFilter(filter)
    if not 1 <= max_order <= cap:
        raise DomainError(f"max_order must be in 1..{cap}, got {max_order}")
    out = []
    for m in range(1, max_order + 1):
        for bits in _paths(m, mode):
            h = _descriptor(bits)
            if mode is HumpFilter.NON_SUBSIDIARY and h.subsidiary:
                continue
            out.append(h)
    return out


def humps_to_csv(humps: Iterable[HumpDescriptor]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x0", "binary", "order", "generation", "leading", "first_generation", "subsidiary", "J_lo", "J_hi"])
    for h in humps:
        w.writerow([
            format_rational(h.x0), "0." + h.bits, h.order, h.generation,
            int(h.leading), int(h.first_generation), int(h.subsidiary),
            format_rational(h.J[0]), format_rational(h.J[1]),
        ])
    return buf.getvalue()


# -- the interval system ------------------------------------------------------


def j_length(k: int) -> Fraction:
    return TWO_THIRDS / 4**k


def j_interval(k: int) -> tuple[Fraction, Fraction]:
    """J_k = [t_k, t_k + (2/3) 4^-k] for k >= 3; J_1 = [1/2, 2/3]."""
    if k == 1:
        return Fraction(1, 2), TWO_THIRDS
    if k < 3:
        raise DomainError("J_k is defined for k = 1 and k >= 3")
    return t(k), t(k) + j_length(k)


def _j_tail_length(max_k: int) -> Fraction:
    """sum_{k > max_k} (2/3) 4^-k."""
    return Fraction(2, 9) / 4**max_k


@dataclass(frozen=True)
class RemovedIntervalSystem:
    depth_n: int
    max_k: int
    intervals: tuple[tuple[tuple[int, ...], Fraction, Fraction], ...]  # (k-tuple, lo, hi)
    tail_bound: Fraction  # total diameter of every interval not listed


def _admissible_tuples(depth_n: int, max_k: int) -> Iterator[tuple[int, ...]]:
    def extend(seq: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        yield seq
        if len(seq) > depth_n:
            return
        for k in range(max(3, seq[-1] - 1), max_k + 1):
            yield from extend(seq + (k,))

    for k0 in range(3, max_k + 1):
        yield from extend((k0,))


def removed_intervals(depth_n: int, max_k: int) -> RemovedIntervalSystem:
    """Every Psi_{k_0}^-1 o ... o Psi_{k_(n-1)}^-1 (J_{k_n}) with n <= depth_n and k_i <= max_k.

    Listing grows like max_k^(depth_n + 1); keep the parameters small.
    """
    if depth_n < 0 or max_k < 3:
        raise DomainError("need depth_n >= 0 and max_k >= 3")
    out = []
    total = Fraction(0)
    for seq in _admissible_tuples(depth_n, max_k):
        lo, hi = j_interval(seq[-1])
        for k in reversed(seq[:-1]):
            lo, hi = lo / 4 + t(k), hi / 4 + t(k)
        out.append((seq, lo, hi))
        total += hi - lo
    tail = Fraction(1, 12) - total
    return RemovedIntervalSystem(depth_n, max_k, tuple(out), tail)


def union_measure(intervals: Iterable[tuple[Fraction, Fraction]]) -> Fraction:
    """Lebesgue measure of a finite union of closed intervals (sort and merge)."""
    total = Fraction(0)
    cur_lo = cur_hi = None
    for lo, hi in sorted(intervals):
        if cur_hi is None or lo > cur_hi:
            if cur_hi is not None:
                total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        elif hi > cur_hi:
            cur_hi = hi
    if cur_hi is not None:
        total += cur_hi - cur_lo
    return total


class _UnionMeasure:
    """lambda(B_n(m) n [0, c]) for the union B_n(m) of listed intervals with first index >= m.

    With A_n(k) = J_k u Psi_k^-1(B_(n-1)(max(3, k-1))) and Psi_k^-1 a 1/4
    contraction onto [t_k, t_(k-1)), the part of A_n(k) below c is
        a + (F_(n-1)(m', 4(c - t_k)) - F_(n-1)(m', 4a)) / 4,
    a = min(c - t_k, diam J_k): the image of J_k n [t_k, c] under Psi_k is
    [0, 4a], and that part is already counted by a.
    """

    def __init__(self, max_k: int):
        self.max_k = max_k
        self.full_cache: dict[tuple[int, int], Fraction] = {}

    def piece(self, n: int, k: int, c: Optional[Fraction]) -> Fraction:
        """lambda(A_n(k) n [0, c]); c=None means everything."""
        jl = j_length(k)
        if c is None:
            a = jl
            inner = None
        else:
            if c <= t(k):
                return Fraction(0)
            if c >= t(k - 1):
                return self.piece(n, k, None)
            a = min(c - t(k), jl)
            inner = 4 * (c - t(k))
        if n == 0:
            return a
        m = max(3, k - 1)
        return a + (self.prefix(n - 1, m, inner) - self.prefix(n - 1, m, 4 * a)) / 4

    def full(self, n: int, m: int) -> Fraction:
        """lambda(B_n(m)) = sum over m <= k <= max_k of lambda(A_n(k))."""
        key = (n, m)
        if key not in self.full_cache:
            self.full_cache[key] = sum((self.piece(n, k, None) for k in range(m, self.max_k + 1)), Fraction(0))
        return self.full_cache[key]

    def prefix(self, n: int, m: int, c: Optional[Fraction]) -> Fraction:
        if c is None:
            return self.full(n, m)
        if c <= 0:
            return Fraction(0)
        # I_k lies entirely below c exactly when t_(k-1) <= c
        k = m
        while k <= self.max_k and t(k - 1) > c:
            k += 1
        # k is the first index whose whole I_k sits below c; the one before may be cut
        total = self.full(n, k) if k <= self.max_k else Fraction(0)
        if k - 1 >= m and k - 1 <= self.max_k:
            total += self.piece(n, k - 1, c)
        return total


def _diameter_sum(depth_n: int, max_k: int) -> Fraction:
    """Total diameter of the listed intervals, via d_n(k) = |J_k| + (1/4) sum_{k' >= max(3,k-1)} d_(n-1)(k')."""
    d = {k: j_length(k) for k in range(3, max_k + 1)}
    for _ in range(depth_n):
        suffix = {}
        acc = Fraction(0)
        for k in range(max_k, 2, -1):
            acc += d[k]
            suffix[k] = acc
        d = {k: j_length(k) + suffix[max(3, k - 1)] / 4 for k in range(3, max_k + 1)}
    return sum(d.values(), Fraction(0))


def sigma_k(k: int) -> Fraction:
    """Total diameter of the removed intervals inside I_k."""
    if k < 3:
        raise DomainError("sigma_k is defined for k >= 3")
    if k == 3:
        return Fraction(1, 32)
    return Fraction(1, 1 << (k + 1)) - Fraction(1, 1 << (2 * k - 1))


def sigma_recursion_holds(k: int) -> bool:
    """sigma_(k+1) = sigma_k - sigma_(k-1)/4 - (1/2) 4^-k, for k >= 4."""
    if k < 4:
        raise DomainError("the difference equation starts at k = 4")
    return sigma_k(k + 1) == sigma_k(k) - sigma_k(k - 1) / 4 - Fraction(1, 2 * 4**k)


def sigma_partial_sum(K: int) -> Fraction:
    return sum((sigma_k(k) for k in range(3, K + 1)), Fraction(0))


@dataclass(frozen=True)
class MeasureBounds:
    depth_n: int
    max_k: int
    lower: Fraction
    upper: Fraction
    union_measure: Fraction  # certified part of the removed set, J_1 included
    tail_bound: Fraction

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("lower", "upper", "union_measure", "tail_bound"):
            d[key] = format_rational(d[key])
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def s2_measure_bounds(depth_n: int, max_k: int) -> MeasureBounds:
    """Certified bounds lower <= lambda(S_2) <= upper.

    The removed set contains J_1, every listed interval and every J_k with
    k > max_k (all disjoint from the listed ones), so 2/3 minus their union
    bounds lambda(S_2) from above.  Everything else has total diameter
    1/12 minus what was listed, which bounds the extra removed measure.
    """
    if depth_n < 0 or max_k < 3:
        raise DomainError("need depth_n >= 0 and max_k >= 3")
    listed = _UnionMeasure(max_k).full(depth_n, 3)
    tail_j = _j_tail_length(max_k)
    union = Fraction(1, 6) + listed + tail_j
    tail = Fraction(1, 12) - _diameter_sum(depth_n, max_k) - tail_j
    upper = TWO_THIRDS - union
    return MeasureBounds(depth_n, max_k, upper - tail, upper, union, tail)
