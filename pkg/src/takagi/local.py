"""Local level sets: points x' with |D_n(x')| = |D_n(x)| for every n.

Starting from the leftmost point x (where D_n(x) >= 0 throughout), the other
members arise by flipping every binary digit inside a block that lies between
consecutive zeros of D_n.  Each zero adds one block, so m zeros give 2^(m+1)
members, with dyadic members counted twice (once per binary representation).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator, Optional

from .arith import BinaryExpansion, DomainError, RationalLike, as_rational, is_dyadic, to_binary
from .expansion import TakagiExpansion, Tail, expansion_to_abscissa

__all__ = [
    "LocalLevelSet",
    "local_level_set",
    "same_local_level_set",
    "d_zero_positions",
]

# Largest joint period examined by the exact equivalence test.
JOINT_PERIOD_CAP = 1 << 20


@dataclass(frozen=True)
class LocalLevelSet:
    seed: Fraction
    twos_count: Optional[int]  # None when 2 occurs infinitely often
    cardinality: Optional[int]  # 2^(m+1); None when uncountable
    members: tuple[Fraction, ...] = ()
    # dyadic members with the representations that occur: "+" ends in zeros,
    # "-" ends in ones, "+-" both (such a point is counted twice)
    dyadic_sides: tuple[tuple[Fraction, str], ...] = ()
    expansion: Optional[BinaryExpansion] = field(default=None, repr=False)

    @property
    def uncountable(self) -> bool:
        return self.cardinality is None

    @property
    def split(self) -> tuple[Fraction, ...]:
        return tuple(x for x, side in self.dyadic_sides if side == "+-")

    def iter_members(self, limit: Optional[int] = None) -> Iterator[Fraction]:
        """Members in flip order: bit b of the counter flips block b.

        Works for uncountable sets too, where only finitely many blocks are
        ever flipped at once.
        """
        if not self.uncountable:
            yield from itertools.islice(self.members, limit)
            return
        zeros = d_zero_positions(self.expansion)
        blocks: list[int] = []
        produced = 0
        for mask in itertools.count():
            if limit is not None and produced >= limit:
                return
            need = mask.bit_length()
            while len(blocks) < need:
                blocks.append(next(zeros))
            bounds = [0] + blocks[:need]
            x = self.seed
            for b in range(need):
                if mask >> b & 1:
                    x += _flip_delta(self.expansion, bounds[b], bounds[b + 1])
            yield x
            produced += 1


def _digits_value(exp: BinaryExpansion, lo: int, hi: int) -> Fraction:
    """sum of eps_i 2^-i over lo < i <= hi."""
    total = 0
    for i in range(lo + 1, hi + 1):
        total = 2 * total + exp.digit(i)
    return Fraction(total, 1 << hi)


def _flip_delta(exp: BinaryExpansion, lo: int, hi: Optional[int]) -> Fraction:
    """Change of value when digits lo < i <= hi are flipped (hi=None: the whole tail)."""
    if hi is None:
        head = _digits_value(exp, 0, lo)
        tail = exp.value - head
        return Fraction(1, 1 << lo) - 2 * tail
    block = _digits_value(exp, lo, hi)
    width = Fraction(1, 1 << lo) - Fraction(1, 1 << hi)
    return width - 2 * block


def _representation(x: Fraction) -> BinaryExpansion:
    if x == 1:
        return BinaryExpansion((), (1,), Fraction(1))
    return to_binary(x)


def d_zero_positions(exp: BinaryExpansion) -> Iterator[int]:
    """The n >= 1 with D_n = 0, in increasing order (possibly infinitely many)."""
    n = d = 0
    for eps in exp.preperiod:
        n += 1
        d += 1 - 2 * eps
        if d == 0:
            yield n
    steps = [1 - 2 * e for e in exp.period or (0,)]
    partials = list(itertools.accumulate(steps))
    drift = partials[-1]
    while True:
        # D shifts by the drift each period, so once a whole period misses
        # zero in the direction of travel every later period does too
        if drift > 0 and d + min(partials) > 0:
            return
        if drift < 0 and d + max(partials) < 0:
            return
        if drift == 0 and all(d + p != 0 for p in partials):
            return
        for step in steps:
            n += 1
            d += step
            if d == 0:
                yield n


def _zero_count(exp: BinaryExpansion) -> Optional[int]:
    """Number of zeros of D_n (n >= 1), or None if infinite."""
    period = exp.period or (0,)
    drift = sum(1 - 2 * e for e in period)
    if drift == 0:
        # a zero inside one period recurs in every period
        d = sum(1 - 2 * e for e in exp.preperiod)
        partials = itertools.accumulate(1 - 2 * e for e in period)
        if any(d + p == 0 for p in partials):
            return None
    return sum(1 for _ in d_zero_positions(exp))


def local_level_set(e: TakagiExpansion) -> LocalLevelSet:
    """The local level set containing the abscissa of the expansion e."""
    if e.tail is Tail.TRUNCATED:
        raise DomainError(f"truncated expansion {e} has no exact abscissa")
    seed = expansion_to_abscissa(e)
    twos = e.count(2)
    exp = _representation(seed)
    zeros = _zero_count(exp)
    if (zeros is None) != (twos == float("inf")) or (zeros is not None and zeros != twos):
        raise ArithmeticError(f"expansion {e} has {twos} twos but its abscissa has {zeros} zeros of D_n")
    if zeros is None:
        return LocalLevelSet(seed, None, None, expansion=exp)
    bounds = [0] + list(d_zero_positions(exp))
    deltas = [_flip_delta(exp, bounds[b], bounds[b + 1]) for b in range(len(bounds) - 1)]
    deltas.append(_flip_delta(exp, bounds[-1], None))
    sides: dict[Fraction, str] = {}
    tail_bit = len(deltas) - 1
    for mask in range(1 << len(deltas)):
        v = seed + sum((deltas[b] for b in range(len(deltas)) if mask >> b & 1), Fraction(0))
        if exp.is_dyadic and mask >> tail_bit & 1:
            side = "-"
        elif is_dyadic(v):
            side = "+"
        else:
            side = ""
        if v in sides and (side in sides[v] or not side):
            raise ArithmeticError("block flips produced an unexpected coincidence")
        sides[v] = "".join(sorted(sides.get(v, "") + side, key="+-".index))
    dyadic = tuple((v, sides[v]) for v in sorted(sides) if sides[v])
    return LocalLevelSet(seed, twos, 1 << len(deltas), tuple(sorted(sides)), dyadic, exp)


def _joint_prefix(exp: BinaryExpansion) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return exp.preperiod, exp.period or (0,)


def same_local_level_set(x1: RationalLike, x2: RationalLike, depth: Optional[int] = None) -> bool:
    """Whether |D_n(x1)| = |D_n(x2)| for all n >= 1.

    Exact by default: past the longer preperiod both digit streams repeat
    with the joint period L, so D_(s + jL + r) = a_i(r) + j d_i, and equality
    of absolute values for every j >= 0 reduces to a_1^2 = a_2^2,
    a_1 d_1 = a_2 d_2 and d_1^2 = d_2^2.  With ``depth`` only n <= depth is
    compared.
    """
    x1, x2 = as_rational(x1), as_rational(x2)
    for x in (x1, x2):
        if not 0 <= x <= 1:
            raise DomainError(f"local level sets live in [0, 1], got {x}")
    e1, e2 = _representation(x1), _representation(x2)
    if depth is not None:
        d1 = d2 = 0
        for n in range(1, depth + 1):
            d1 += 1 - 2 * e1.digit(n)
            d2 += 1 - 2 * e2.digit(n)
            if abs(d1) != abs(d2):
                return False
        return True
    pre1, per1 = _joint_prefix(e1)
    pre2, per2 = _joint_prefix(e2)
    s = max(len(pre1), len(pre2))
    L = len(per1) * len(per2) // gcd(len(per1), len(per2))
    if L > JOINT_PERIOD_CAP:
        raise ArithmeticError(f"joint period {L} too long for the exact test; pass depth")

    def digit(pre: tuple[int, ...], per: tuple[int, ...], n: int) -> int:
        if n <= len(pre):
            return pre[n - 1]
        return per[(n - len(pre) - 1) % len(per)]

    d1 = d2 = 0
    for n in range(1, s + 1):
        d1 += 1 - 2 * digit(pre1, per1, n)
        d2 += 1 - 2 * digit(pre2, per2, n)
        if abs(d1) != abs(d2):
            return False
    # a_i(r): D at offset r inside the first joint period; drift_i: change per period
    a1, a2 = [], []
    for n in range(s + 1, s + L + 1):
        d1 += 1 - 2 * digit(pre1, per1, n)
        d2 += 1 - 2 * digit(pre2, per2, n)
        a1.append(d1)
        a2.append(d2)
    drift1 = sum(1 - 2 * digit(pre1, per1, n) for n in range(s + 1, s + L + 1))
    drift2 = sum(1 - 2 * digit(pre2, per2, n) for n in range(s + 1, s + L + 1))
    if drift1 * drift1 != drift2 * drift2:
        return False
    return all(u * u == v * v and u * drift1 == v * drift2 for u, v in zip(a1, a2))
