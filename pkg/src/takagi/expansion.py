"""Interval maps on the ordinate axis and Takagi expansions.

The ordinate range [0, 2/3] splits into I_2 = [1/2, 2/3] and
I_k = [t_k, t_{k-1}) for k >= 3, where t_k = k/2^k.  Iterating
Psi(y) = 4(y - t_k) on y in I_k gives the itinerary k_0, k_1, ... (the
Takagi expansion), from which y and a solution x of T(x) = y are rebuilt.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

from .arith import DomainError, RationalLike, as_rational

__all__ = [
    "INF",
    "TWO_THIRDS",
    "HALF",
    "t",
    "OrdinateInterval",
    "ordinate_interval",
    "kappa",
    "psi",
    "psi_k",
    "psi_inverse",
    "phi_map",
    "Tail",
    "TakagiExpansion",
    "parse_expansion",
    "canonical_expansion",
    "expansion_to_ordinate",
    "expansion_to_abscissa",
    "AlternativeExpansion",
    "alternative_expansions",
    "FixedPoint",
    "fixed_point",
    "arithmetic_ordinate",
    "arithmetic_abscissa",
]

INF = math.inf
HALF = Fraction(1, 2)
TWO_THIRDS = Fraction(2, 3)

KappaValue = Union[int, float]


def t(k: int) -> Fraction:
    """t_k = k / 2^k."""
    return Fraction(k, 1 << k)


@dataclass(frozen=True)
class OrdinateInterval:
    k: int
    lower: Fraction
    upper: Fraction

    @property
    def closed(self) -> bool:
        return self.k == 2

    def __contains__(self, y: Fraction) -> bool:
        if self.k == 2:
            return self.lower <= y <= self.upper
        return self.lower <= y < self.upper


def ordinate_interval(k: int) -> OrdinateInterval:
    if k < 2:
        raise DomainError("I_k is defined for k >= 2")
    if k == 2:
        return OrdinateInterval(2, HALF, TWO_THIRDS)
    return OrdinateInterval(k, t(k), t(k - 1))


def _check_range(y: Fraction, name: str) -> None:
    if not 0 <= y <= TWO_THIRDS:
        raise DomainError(f"{name} is defined on [0, 2/3], got {y}")


def _kappa(y: Fraction) -> KappaValue:
    # y in (0, 1/2): smallest k >= 3 with t_k <= y, by galloping on the
    # decreasing sequence t_3 > t_4 > ...
    if y == 0:
        return INF
    if y >= HALF:
        return 2
    lo = 3
    hi = max(4, (y.denominator.bit_length() - y.numerator.bit_length()) + 2)
    while t(hi) > y:
        lo, hi = hi, 2 * hi
    while lo < hi:
        mid = (lo + hi) // 2
        if t(mid) <= y:
            hi = mid
        else:
            lo = mid + 1
    return lo


def kappa(y: RationalLike) -> KappaValue:
    """The k with y in I_k; ``INF`` for y = 0."""
    y = as_rational(y)
    _check_range(y, "kappa")
    return _kappa(y)


def psi(y: RationalLike) -> Fraction:
    """Psi(y) = 4(y - t_kappa(y)), with Psi(0) = 0."""
    y = as_rational(y)
    _check_range(y, "psi")
    if y == 0:
        return Fraction(0)
    return 4 * (y - t(_kappa(y)))


def psi_k(k: int, y: RationalLike) -> Fraction:
    """The component map 4(y - t_k) restricted to I_k (zero elsewhere)."""
    y = as_rational(y)
    return 4 * (y - t(k)) if y in ordinate_interval(k) else Fraction(0)


def psi_inverse(k: int, y: RationalLike) -> Fraction:
    """Inverse branch of Psi_k: y/4 + t_k."""
    return as_rational(y) / 4 + t(k)


def phi_map(y: RationalLike) -> Fraction:
    """Phi(y): 4^k (y - t_k) on I_k (k >= 3), 4(y - 1/2) for y >= 1/2, Phi(0) = 0."""
    y = as_rational(y)
    if y < 0:
        raise DomainError(f"Phi is defined on [0, inf), got {y}")
    if y == 0:
        return Fraction(0)
    if y >= HALF:
        return 4 * (y - HALF)
    k = _kappa(y)
    return (y - t(k)) * (1 << (2 * k))


class Tail(str, enum.Enum):
    TERMINATED = "terminated"
    PERIODIC = "periodic"
    TRUNCATED = "truncated"


@dataclass(frozen=True)
class TakagiExpansion:
    """A Takagi expansion ``[k_0, k_1, ...]``.

    ``terms`` holds the preperiod followed by one copy of the cycle when the
    tail is periodic (``cycle_start`` marks where the cycle begins).  A
    terminated expansion is implicitly followed by infinitely many ``INF``
    terms; a truncated one carries no information past ``terms``.
    """

    terms: tuple[int, ...]
    tail: Tail
    cycle_start: Optional[int] = None

    @property
    def prefix(self) -> tuple[int, ...]:
        if self.tail is Tail.PERIODIC:
            return self.terms[: self.cycle_start]
        return self.terms

    @property
    def cycle(self) -> tuple[int, ...]:
        if self.tail is Tail.PERIODIC:
            return self.terms[self.cycle_start :]
        return ()

    @property
    def exact(self) -> bool:
        return self.tail is not Tail.TRUNCATED

    def term(self, n: int) -> KappaValue:
        if n < len(self.terms):
            return self.terms[n]
        if self.tail is Tail.TERMINATED:
            return INF
        if self.tail is Tail.PERIODIC:
            cyc = self.cycle
            return cyc[(n - self.cycle_start) % len(cyc)]
        raise IndexError(f"term {n} lies beyond a truncated expansion")

    def unrolled(self, count: int) -> list[int]:
        """The first ``count`` finite terms (fewer if the expansion terminates)."""
        out = []
        for n in range(count):
            if self.tail is Tail.TRUNCATED and n >= len(self.terms):
                break
            k = self.term(n)
            if k == INF:
                break
            out.append(k)
        return out

    def pairs(self) -> Iterator[tuple[int, int]]:
        """Consecutive pairs (k_n, k_{n+1}) covering every constraint of the sequence."""
        terms = self.terms
        for i in range(len(terms) - 1):
            yield terms[i], terms[i + 1]
        if self.tail is Tail.PERIODIC:
            yield terms[-1], terms[self.cycle_start]

    def count(self, value: int) -> KappaValue:
        """Occurrences of ``value``; ``INF`` if it sits in a periodic cycle."""
        if self.tail is Tail.PERIODIC and value in self.cycle:
            return INF
        return self.terms.count(value)

    def __str__(self) -> str:
        if self.tail is Tail.PERIODIC:
            head = [str(k) for k in self.prefix]
            head.append("(" + " ".join(str(k) for k in self.cycle) + ")")
            return "[" + ",".join(head) + "]"
        body = [str(k) for k in self.terms]
        if self.tail is Tail.TRUNCATED:
            body.append("?")
        return "[" + ",".join(body) + "]"


def _normalized(terms: list[int], cycle_start: int) -> TakagiExpansion:
    """Periodic expansion with minimal cycle and minimal preperiod."""
    cycle = terms[cycle_start:]
    n = len(cycle)
    for p in range(1, n + 1):
        if n % p == 0 and cycle == cycle[:p] * (n // p):
            cycle = cycle[:p]
            break
    prefix = terms[:cycle_start]
    while prefix and prefix[-1] == cycle[-1]:
        cycle = [prefix.pop()] + cycle[:-1]
    return TakagiExpansion(tuple(prefix + cycle), Tail.PERIODIC, len(prefix))


def parse_expansion(text: str) -> TakagiExpansion:
    """Parse ``[k0,k1,...]``, ``[k0,...,(c1 c2 ...)]`` or ``[k0,...,?]``."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise DomainError(f"expansion must be bracketed: {text!r}")
    body = s[1:-1].strip()
    cycle: list[int] = []
    tail = Tail.TERMINATED
    if "(" in body:
        head, _, rest = body.partition("(")
        if not rest.endswith(")"):
            raise DomainError(f"unterminated cycle in {text!r}")
        cycle = [int(c) for c in rest[:-1].replace(",", " ").split()]
        body = head.rstrip().rstrip(",")
        tail = Tail.PERIODIC
        if not cycle:
            raise DomainError(f"empty cycle in {text!r}")
    parts = [p.strip() for p in body.split(",") if p.strip()]
    if parts and parts[-1] == "?":
        if tail is Tail.PERIODIC:
            raise DomainError(f"expansion cannot be both periodic and truncated: {text!r}")
        tail = Tail.TRUNCATED
        parts = parts[:-1]
    try:
        terms = [int(p) for p in parts]
    except ValueError as exc:
        raise DomainError(f"bad expansion terms in {text!r}") from exc
    if tail is Tail.PERIODIC:
        return _normalized(terms + cycle, len(terms))
    return TakagiExpansion(tuple(terms), tail)


def is_admissible(e: TakagiExpansion) -> bool:
    """Relaxed admissibility: k_n >= 2 and k_{n+1} >= k_n - 1."""
    if any(k < 2 for k in e.terms):
        return False
    return all(b >= a - 1 for a, b in e.pairs())


def is_canonically_admissible(e: TakagiExpansion) -> bool:
    """Admissibility of canonical expansions (adds: k_n >= 3 forces k_{n+1} >= 3)."""
    if not is_admissible(e):
        return False
    return all(not (a >= 3 and b < 3) for a, b in e.pairs())


def canonical_expansion(y: RationalLike, max_terms: int = 64) -> TakagiExpansion:
    """Itinerary of y under Psi, with exact cycle and termination detection."""
    y = as_rational(y)
    _check_range(y, "canonical_expansion")
    if max_terms < 1:
        raise DomainError("max_terms must be at least 1")
    seen: dict[Fraction, int] = {}
    terms: list[int] = []
    while len(terms) < max_terms:
        if y == 0:
            return TakagiExpansion(tuple(terms), Tail.TERMINATED)
        if y in seen:
            return _normalized(terms, seen[y])
        seen[y] = len(terms)
        k = _kappa(y)
        terms.append(k)
        y = 4 * (y - t(k))
    if y == 0:
        return TakagiExpansion(tuple(terms), Tail.TERMINATED)
    if y in seen:
        return _normalized(terms, seen[y])
    return TakagiExpansion(tuple(terms), Tail.TRUNCATED)


def _require_exact(e: TakagiExpansion) -> None:
    if e.tail is Tail.TRUNCATED:
        raise DomainError(f"truncated expansion {e} has no exact value")
    if not is_admissible(e):
        raise DomainError(f"expansion {e} violates k_n >= 2, k_(n+1) >= k_n - 1")


def _geometric_sum(prefix: tuple[int, ...], cycle: tuple[int, ...], weight) -> Fraction:
    """sum over n of weight(k_n, n) for prefix followed by the repeated cycle.

    ``weight(k, n)`` must scale as 4^-n under n -> n + 1 for a fixed k, which
    lets the periodic part be summed with the factor 1/(1 - 4^-p).
    """
    total = sum((weight(k, n) for n, k in enumerate(prefix)), Fraction(0))
    if cycle:
        s = len(prefix)
        one = sum((weight(k, s + i) for i, k in enumerate(cycle)), Fraction(0))
        total += one / (1 - Fraction(1, 4 ** len(cycle)))
    return total


def expansion_to_ordinate(e: TakagiExpansion) -> Fraction:
    """y = sum_n k_n / 2^(k_n + 2n)."""
    _require_exact(e)
    return _geometric_sum(e.prefix, e.cycle, lambda k, n: Fraction(k, 1 << (k + 2 * n)))


def expansion_to_abscissa(e: TakagiExpansion) -> Fraction:
    """x = sum_{n>=1} 2^-(k_(n-1) + 2(n-1)); T(x) equals the ordinate of e."""
    _require_exact(e)
    return _geometric_sum(e.prefix, e.cycle, lambda k, n: Fraction(1, 1 << (k + 2 * n)))


@dataclass(frozen=True)
class AlternativeExpansion:
    expansion: TakagiExpansion
    abscissa: Optional[Fraction]  # None when the expansion is truncated
    rewrites: int
    position: Optional[int] = None  # where the last rewrite was applied


def _splice(prefix: list[int], tail: TakagiExpansion) -> TakagiExpansion:
    if tail.tail is Tail.PERIODIC:
        return _normalized(prefix + list(tail.terms), len(prefix) + tail.cycle_start)
    return TakagiExpansion(tuple(prefix) + tail.terms, tail.tail)


def _rewrites(y: Fraction, e: TakagiExpansion, max_terms: int) -> Iterator[tuple[int, TakagiExpansion]]:
    """Every expansion one branching rewrite away from e, by position."""
    if e.tail is Tail.TERMINATED:
        positions = len(e.terms)
    elif e.tail is Tail.PERIODIC:
        positions = max(max_terms, len(e.terms))
    else:
        positions = len(e.terms)
    terms = e.unrolled(positions)
    yn = y
    for n, k in enumerate(terms):
        branch = (yn - t(k)) * (1 << (2 * k))
        if branch <= TWO_THIRDS:
            spliced = terms[:n] + list(range(k + 1, 1, -1))
            yield n, _splice(spliced, canonical_expansion(branch, max_terms))
        yn = 4 * (yn - t(k))


def alternative_expansions(y: RationalLike, depth: int = 2, max_terms: int = 64) -> list[AlternativeExpansion]:
    """The canonical expansion of y plus those reachable by <= depth rewrites.

    A rewrite at position n replaces the tail by ``k_n + 1, k_n, ..., 2``
    followed by the canonical expansion of ``4^k_n (y_n - t_k_n)``, which is
    possible whenever that value is at most 2/3.  Exploration is breadth
    first; each level is ordered by rewrite position, then by terms.
    """
    y = as_rational(y)
    _check_range(y, "alternative_expansions")
    if depth < 0:
        raise DomainError("depth must be nonnegative")

    def solution(e: TakagiExpansion, rewrites: int, position: Optional[int]) -> AlternativeExpansion:
        x = expansion_to_abscissa(e) if e.exact else None
        return AlternativeExpansion(e, x, rewrites, position)

    canon = canonical_expansion(y, max_terms)
    found = [solution(canon, 0, None)]
    seen = {canon}
    frontier = [canon]
    for level in range(1, depth + 1):
        children = []
        for parent in frontier:
            for n, child in _rewrites(y, parent, max_terms):
                if child not in seen:
                    seen.add(child)
                    children.append((n, child))
        children.sort(key=lambda item: (item[0], item[1].terms, item[1].tail.value))
        found.extend(solution(c, level, n) for n, c in children)
        frontier = [c for _, c in children]
        if not frontier:
            break
    return found


@dataclass(frozen=True)
class FixedPoint:
    k: int
    value: Fraction


def fixed_point(k: int) -> FixedPoint:
    """The fixed point 4 t_k / 3 of Psi_k (k >= 4)."""
    if k < 4:
        raise DomainError("Psi_k has a fixed point in [0, 1/2) only for k >= 4")
    return FixedPoint(k, Fraction(k, 3 << (k - 2)))


def arithmetic_ordinate(c: int, d: int) -> Fraction:
    """The ordinate whose expansion is c, c + d, c + 2d, ... (c >= 3, d >= 0)."""
    if c < 3 or d < 0:
        raise DomainError("arithmetic expansions need c >= 3 and d >= 0")
    r = Fraction(1, 1 << (d + 2))
    return (c / (1 - r) + d * r / (1 - r) ** 2) / (1 << c)


def arithmetic_abscissa(c: int, d: int) -> Fraction:
    """The abscissa 2^-c / (1 - 2^-(d+2)) built from the same expansion."""
    if c < 3 or d < 0:
        raise DomainError("arithmetic expansions need c >= 3 and d >= 0")
    return Fraction(1, 1 << c) / (1 - Fraction(1, 1 << (d + 2)))
