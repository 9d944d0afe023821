"""Level-set cardinalities, explicit level sets and witness ordinates.

Everything here is driven by the set equations

    L_0(y) = f_k[L_0(Psi y)]  u  U_j g_{k,j}[L(4^j Phi y)]      (y in I_k, k >= 3)
    L_0(y) = U_j g_{1,j}[L(4^j Phi y)]                            (y in I_2)

with L(y) = L_0(y) u (1 - L_0(y)).  Walking the Psi-orbit of y collects the
"hump hits" 4^j Phi(y_n) <= 2/3 along the way; the walk closes when the orbit
cycles, terminates in I_2, or reaches an ordinate certified to have a
two-point level set.  Whatever is not certified within the step budget is
reported as a lower bound, never as an exact count.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .arith import DomainError, RationalLike, as_rational, is_dyadic, to_binary
from .evaluate import takagi
from .expansion import (
    HALF,
    INF,
    TWO_THIRDS,
    TakagiExpansion,
    arithmetic_abscissa,
    arithmetic_ordinate,
    canonical_expansion,
    expansion_to_abscissa,
    kappa,
    phi_map,
    psi,
)

__all__ = [
    "DEFAULT_BUDGET",
    "AffineMap",
    "f_map",
    "g_map",
    "Kind",
    "CardinalityResult",
    "Verdict",
    "TwoPointResult",
    "Doubling",
    "LevelSetEnumeration",
    "WitnessConstruction",
    "is_two_point_level_set",
    "doubling_bound_check",
    "cardinality",
    "enumerate_level_set",
    "construct_witness",
    "plus_two_interval",
    "plus_two_samples",
    "minus_two_interval",
    "minus_two_samples",
    "verify_minus_two_claims",
]

DEFAULT_BUDGET = 10_000
# Zero-run certificates need the binary period; longer periods are skipped.
_PERIOD_CAP = 1 << 16


@dataclass(frozen=True)
class AffineMap:
    scale: Fraction
    offset: Fraction

    def __call__(self, x: Fraction) -> Fraction:
        return self.scale * x + self.offset

    def then(self, other: "AffineMap") -> "AffineMap":
        """other o self."""
        return AffineMap(other.scale * self.scale, other.scale * self.offset + other.offset)


def f_map(k: int) -> AffineMap:
    """f_k(x) = x/4 + 2^-k."""
    return AffineMap(Fraction(1, 4), Fraction(1, 1 << k))


def g_map(k: int, j: int) -> AffineMap:
    """g_{k,j}(x) = x/4^(k+j) + x_{k,j} with x_{k,j} = 2^-k - sum_{r<=j} 4^-(k+r)."""
    anchor = Fraction(1, 1 << k) - sum((Fraction(1, 4 ** (k + r)) for r in range(j + 1)), Fraction(0))
    return AffineMap(Fraction(1, 4 ** (k + j)), anchor)


class Kind(str, enum.Enum):
    EXACT = "exact"
    INFINITE = "infinite"
    AT_LEAST = "at_least"


@dataclass(frozen=True)
class CardinalityResult:
    kind: Kind
    count: Optional[int]
    certificate: str

    @property
    def exact(self) -> bool:
        return self.kind is Kind.EXACT

    def __str__(self) -> str:
        if self.kind is Kind.INFINITE:
            return "Infinite"
        label = "Exact" if self.kind is Kind.EXACT else "AtLeast"
        return f"{label}({self.count})"


class Verdict(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class TwoPointResult:
    verdict: Verdict
    certificate: str
    steps: int


class Doubling(str, enum.Enum):
    SUFFICIENT_FOR_TWO = "sufficient_for_two"
    NECESSITATES_MORE = "necessitates_more"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class LevelSetEnumeration:
    ordinate: Fraction
    points: tuple[Fraction, ...]
    complete: bool


@dataclass(frozen=True)
class WitnessConstruction:
    target_cardinality: int
    ordinate: Fraction
    recipe: str
    base_ordinate: Fraction
    confirmed: CardinalityResult


# -- two-point certificates -------------------------------------------------

CERT_ZERO_RUN = "no-3-zeros tail"
CERT_ARITHMETIC = "arithmetic k-progression tail"
CERT_CYCLE = "orbit cycle, no hump hit"
CERT_TERMINAL = "orbit ends in I_2"
CERT_ZERO = "L(0) = {0, 1}"
CERT_BOUNDARY = "t_k hit => infinite"
CERT_HALF = "y = 1/2 => infinite"
CERT_HIT_CYCLE = "orbit cycle through hump hit => infinite"
CERT_RECURRENT = "ordinate recurs through hump branch => infinite"
CERT_BUDGET = "budget exhausted"


def _cyclic_period_has_000(y: Fraction) -> Optional[bool]:
    """Whether the binary period of y, read cyclically, contains 000.

    Every Psi-orbit element has a rotation of this period as its eventual
    period, so one answer serves the whole orbit.  None if the period is
    longer than the cap (the certificate is then simply not attempted).
    """
    q = y.denominator
    odd = q >> ((q & -q).bit_length() - 1)
    if odd == 1:
        return None
    r = start = (y.numerator * pow(2, 64, odd)) % odd
    bits = []
    while True:
        r <<= 1
        if r >= odd:
            bits.append("1")
            r -= odd
        else:
            bits.append("0")
        if r == start:
            break
        if len(bits) > _PERIOD_CAP:
            return None
    s = "".join(bits)
    return "000" in s + s[:2]


@dataclass
class _OrbitContext:
    """Per-orbit cache for the zero-run shortcut."""

    period_has_000: Optional[bool] = None
    decided: bool = False


def _arithmetic_tail(z: Fraction, k: int, nxt: Fraction) -> Optional[tuple[int, int]]:
    """(c, d) if z has the expansion c, c+d, c+2d, ... satisfying the doubling bound."""
    if nxt == 0 or k < 3:
        return None
    d = kappa(nxt) - k
    if d < 0:
        return None
    # 2^(c+d+2) <= 3 c 4^c is the bound for the first pair; later pairs grow
    # the left side by 2^d and the right side by at least 4^d
    if (1 << (d + 2)) > 3 * k * (1 << k):
        return None
    if arithmetic_ordinate(k, d) != z:
        return None
    return k, d


def _two_point_certificate(z: Fraction, k: int, nxt: Fraction, ctx: _OrbitContext) -> Optional[tuple[str, object]]:
    """A certificate that |L(z)| = 2 for z in (0, 1/2), or None."""
    if not is_dyadic(z):
        if not ctx.decided:
            ctx.period_has_000 = _cyclic_period_has_000(z)
            ctx.decided = True
        if ctx.period_has_000 is False:
            exp = to_binary(z)
            window = "".join(map(str, exp.preperiod + exp.period * 3))
            first = window.index("1")
            if window.find("000", first + 1) == -1:
                return CERT_ZERO_RUN, None
    ap = _arithmetic_tail(z, k, nxt)
    if ap is not None:
        return CERT_ARITHMETIC, ap
    return None


def _check_open_half(y: Fraction) -> None:
    if not 0 < y < HALF:
        raise DomainError(f"two-point test is stated for 0 < y < 1/2, got {y}")


def is_two_point_level_set(y: RationalLike, budget: int = DEFAULT_BUDGET) -> TwoPointResult:
    """Decide |L(y)| = 2 via Phi(Psi^n y) > 2/3 for all n, when a certificate closes it."""
    y = as_rational(y)
    _check_open_half(y)
    ctx = _OrbitContext()
    seen: set[Fraction] = set()
    z = y
    for step in range(budget):
        if z in seen:
            return TwoPointResult(Verdict.YES, CERT_CYCLE, step)
        seen.add(z)
        if phi_map(z) <= TWO_THIRDS:
            return TwoPointResult(Verdict.NO, f"Phi(Psi^{step}(y)) <= 2/3", step)
        k = kappa(z)
        nxt = psi(z)
        cert = _two_point_certificate(z, k, nxt, ctx)
        if cert is not None:
            return TwoPointResult(Verdict.YES, cert[0], step)
        z = nxt
    return TwoPointResult(Verdict.UNKNOWN, CERT_BUDGET, budget)


def doubling_bound_check(k_seq: Union[Sequence[int], TakagiExpansion]) -> Doubling:
    """Growth test on consecutive expansion terms.

    Sufficient for two points: k_(n+1) <= 2 k_n + log2 k_n + log2 3 - 2 for
    every pair, i.e. 2^(k_(n+1)+2) <= 3 k_n 4^(k_n).  Forces more points:
    k_(n+1) >= 2 k_n + log2 k_n + log2 3 for some pair, i.e.
    2^(k_(n+1)) >= 3 k_n 4^(k_n).  Both are compared as integers.
    """
    if isinstance(k_seq, TakagiExpansion):
        pairs = list(k_seq.pairs())
    else:
        seq = [k for k in k_seq if k != INF]
        pairs = list(zip(seq, seq[1:]))
    sufficient = True
    for a, b in pairs:
        rhs = 3 * a << (2 * a)
        if (1 << b) >= rhs:
            return Doubling.NECESSITATES_MORE
        if (1 << (b + 2)) > rhs:
            sufficient = False
    return Doubling.SUFFICIENT_FOR_TWO if sufficient else Doubling.INCONCLUSIVE


# -- the recursion ----------------------------------------------------------


@dataclass
class _Node:
    """|L_0(y)| as exact, infinite or partial (a lower bound), with points."""

    kind: Kind
    count: int = 0
    points: Optional[list[Fraction]] = None  # L_0(y), when enumerating and known


class _Infinite(Exception):
    def __init__(self, tag: str):
        super().__init__(tag)
        self.tag = tag


def _is_boundary(z: Fraction) -> bool:
    """z = t_k for some k >= 3 (z in (0, 1/2))."""
    return z > 0 and z < HALF and phi_map(z) == 0


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator in [lo, hi] (lo <= hi)."""
    fl = lo.numerator // lo.denominator
    if Fraction(fl) == lo:
        return Fraction(fl)
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    # both in (fl, fl + 1): recurse on reciprocals of the fractional parts
    inner = _simplest_between(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / inner


def _two_point_abscissa(z: Fraction, cert: tuple[str, object], max_terms: int) -> Optional[Fraction]:
    """The single point of L_0(z) when |L(z)| = 2, if it is rational and found."""
    tag, data = cert
    if tag == CERT_ARITHMETIC:
        c, d = data
        return arithmetic_abscissa(c, d)
    e = canonical_expansion(z, max_terms)
    if e.exact:
        return expansion_to_abscissa(e)
    # x = sum 2^-(k_n + 2n); the unseen tail is at most (4/3) 2^-(3 + 2N)
    terms = e.terms
    partial = sum((Fraction(1, 1 << (k + 2 * n)) for n, k in enumerate(terms)), Fraction(0))
    slack = Fraction(4, 3 << (3 + 2 * len(terms)))
    guess = _simplest_between(partial, partial + slack)
    try:
        return guess if takagi(guess) == z else None
    except ArithmeticError:  # period too long to evaluate: leave the point unresolved
        return None


class _Walker:
    def __init__(self, budget: int, with_points: bool, max_terms: int = 64):
        self.budget = budget
        self.steps = 0
        self.with_points = with_points
        self.max_terms = max_terms
        self.memo: dict[Fraction, _Node] = {}
        self.stack: set[Fraction] = set()
        self.tags: set[str] = set()
        self.exhausted = False

    def full(self, w: Fraction) -> _Node:
        """|L(w)| = 2 |L_0(w)|, with points mirrored."""
        node = self.l0(w)
        pts = None
        if node.points is not None:
            pts = sorted(set(node.points) | {1 - x for x in node.points})
        return _Node(node.kind, 2 * node.count, pts)

    def l0(self, y: Fraction) -> _Node:
        if y in self.memo:
            return self.memo[y]
        if y > TWO_THIRDS:
            return _Node(Kind.EXACT, 0, [])
        if y == 0:
            self.tags.add(CERT_ZERO)
            return _Node(Kind.EXACT, 1, [Fraction(0)])
        if y == HALF:
            raise _Infinite(CERT_HALF)
        if _is_boundary(y):
            raise _Infinite(CERT_BOUNDARY)
        if y in self.stack:
            raise _Infinite(CERT_RECURRENT)

        orbit: list[Fraction] = []
        ks: list[int] = []
        hits: list[list[tuple[int, int, _Node]]] = []
        index: dict[Fraction, int] = {}
        ctx = _OrbitContext()
        tail: _Node
        cycle_from: Optional[int] = None
        z = y
        try:
            while True:
                if z in index:
                    s = index[z]
                    if any(hits[s:]):
                        raise _Infinite(CERT_HIT_CYCLE)
                    cycle_from = s
                    self.tags.add(CERT_CYCLE)
                    tail = _Node(Kind.EXACT, 1, None)
                    break
                if z in self.memo:
                    tail = self.memo[z]
                    break
                if z == HALF:
                    raise _Infinite(CERT_HALF)
                if _is_boundary(z):
                    raise _Infinite(CERT_BOUNDARY)
                if z in self.stack:
                    raise _Infinite(CERT_RECURRENT)
                if self.steps >= self.budget:
                    self.exhausted = True
                    tail = _Node(Kind.AT_LEAST, 1, None)
                    break
                self.steps += 1
                k = kappa(z)
                nxt = psi(z)
                if k >= 3:
                    cert = _two_point_certificate(z, k, nxt, ctx)
                    if cert is not None:
                        self.tags.add(cert[0])
                        pts = None
                        if self.with_points:
                            x = _two_point_abscissa(z, cert, self.max_terms)
                            pts = [x] if x is not None else None
                        tail = _Node(Kind.EXACT, 1, pts)
                        break
                index[z] = len(orbit)
                orbit.append(z)
                ks.append(k)
                self.stack.add(z)
                row = []
                w = phi_map(z)
                j = 0
                while w <= TWO_THIRDS:
                    row.append((k if k >= 3 else 1, j, self.full(w)))
                    w *= 4
                    j += 1
                hits.append(row)
                if k == 2:
                    self.tags.add(CERT_TERMINAL)
                    tail = _Node(Kind.EXACT, 0, [])
                    break
                z = nxt
        except _Infinite as exc:
            for v in orbit:
                self.memo[v] = _Node(Kind.INFINITE)
            raise exc
        finally:
            for v in orbit:
                self.stack.discard(v)

        return self._assemble(orbit, ks, hits, tail, cycle_from)

    def _assemble(self, orbit, ks, hits, tail: _Node, cycle_from: Optional[int]) -> _Node:
        if tail.kind is Kind.INFINITE:
            for v in orbit:
                self.memo[v] = tail
            raise _Infinite(CERT_RECURRENT)
        kind = tail.kind
        count = tail.count
        pts = tail.points
        if cycle_from is not None and self.with_points:
            # the cycle's single point is the fixed point of the composed f-maps
            comp = AffineMap(Fraction(1), Fraction(0))
            for k in reversed(ks[cycle_from:]):
                comp = comp.then(f_map(k))
            x = comp.offset / (1 - comp.scale)
            # x belongs to orbit[cycle_from]; walk it forward to the cycle's end
            for k in ks[cycle_from:]:
                x = 4 * (x - Fraction(1, 1 << k))
            pts = [x]
        results = []
        for n in range(len(orbit) - 1, -1, -1):
            k = ks[n]
            if k >= 3:
                pts = None if pts is None else [f_map(k)(x) for x in pts]
            for kk, j, node in hits[n]:
                count += node.count
                if node.kind is Kind.AT_LEAST:
                    kind = Kind.AT_LEAST
                if pts is not None:
                    if node.points is None:
                        pts = None
                    else:
                        g = g_map(kk, j)
                        pts = pts + [g(x) for x in node.points]
            results.append((orbit[n], _Node(kind, count, None if pts is None else sorted(set(pts)))))
        if kind is Kind.EXACT:
            for v, node in results:
                self.memo[v] = node
        return results[-1][1] if results else tail


def _walk(y: Fraction, budget: int, with_points: bool, max_terms: int = 64) -> tuple[_Node, _Walker, Optional[str]]:
    walker = _Walker(budget, with_points, max_terms)
    try:
        node = walker.l0(y)
    except _Infinite as exc:
        return _Node(Kind.INFINITE), walker, exc.tag
    return node, walker, None


def cardinality(y: RationalLike, budget: int = DEFAULT_BUDGET) -> CardinalityResult:
    """|L(y)| as Exact(2n), Infinite or AtLeast(2n)."""
    y = as_rational(y)
    if not 0 <= y <= TWO_THIRDS:
        raise DomainError(f"cardinality needs 0 <= y <= 2/3, got {y}")
    node, walker, tag = _walk(y, budget, with_points=False)
    if node.kind is Kind.INFINITE:
        return CardinalityResult(Kind.INFINITE, None, tag or CERT_RECURRENT)
    if node.kind is Kind.AT_LEAST:
        return CardinalityResult(Kind.AT_LEAST, 2 * node.count, CERT_BUDGET)
    return CardinalityResult(Kind.EXACT, 2 * node.count, "; ".join(sorted(walker.tags)))


def enumerate_level_set(y: RationalLike, budget: int = DEFAULT_BUDGET, max_terms: int = 64) -> LevelSetEnumeration:
    """All points of a finite level set, pushed through compositions of f_k and g_{k,j}.

    ``complete`` is False when the budget ran out or some certified point
    could not be pinned down as an exact rational.
    """
    y = as_rational(y)
    if not 0 <= y <= TWO_THIRDS:
        raise DomainError(f"level sets are nonempty only for 0 <= y <= 2/3, got {y}")
    node, walker, tag = _walk(y, budget, with_points=True, max_terms=max_terms)
    if node.kind is Kind.INFINITE:
        raise DomainError(f"L({y}) is infinite ({tag}); refusing to enumerate")
    if node.points is None:
        return LevelSetEnumeration(y, (), False)
    pts = sorted(set(node.points) | {1 - x for x in node.points})
    for x in pts:
        if takagi(x) != y:
            raise ArithmeticError(f"enumerated point {x} has T(x) = {takagi(x)} != {y}")
    complete = node.kind is Kind.EXACT and len(pts) == 2 * node.count
    return LevelSetEnumeration(y, tuple(pts), complete)


# -- witnesses --------------------------------------------------------------

_DEFAULT_HAT = Fraction(1, 3)
_DEFAULT_SEED = Fraction(3, 7)


def _power_of_two_exponent(n: int) -> Optional[int]:
    return n.bit_length() - 1 if n & (n - 1) == 0 else None


def construct_witness(n: int, budget: int = DEFAULT_BUDGET) -> WitnessConstruction:
    """An ordinate y with |L(y)| = 2n, confirmed by the recursion engine."""
    if n < 1:
        raise DomainError("n must be positive")
    target = 2 * n
    m2 = _power_of_two_exponent(target)
    if n == 1:
        y, recipe, base = _DEFAULT_HAT, "two-point base ordinate", _DEFAULT_HAT
    elif m2 is not None and m2 >= 3:
        m = m2
        y = sum((HALF / 4**i for i in range(m - 1)), Fraction(0)) + _DEFAULT_SEED / 4 ** (m - 1)
        recipe, base = f"2^m chain, m={m}: sum_(i<=m-2) (1/2) 4^-i + 4^-(m-1) s", _DEFAULT_SEED
    elif target % 4 == 0:
        m = target // 4
        y = HALF + _DEFAULT_HAT / 4**m
        recipe, base = f"4m, m={m}: 1/2 + 4^-m y_hat", _DEFAULT_HAT
    else:
        m = (target - 2) // 4
        y = Fraction(3, 8) + _DEFAULT_HAT / 4 ** (m + 2)
        recipe, base = f"4m+2, m={m}: 3/8 + 4^-(m+2) y_hat", _DEFAULT_HAT
    result = cardinality(y, budget)
    if not (result.exact and result.count == target):
        raise ArithmeticError(f"witness {y} for {target} points confirmed as {result}")
    return WitnessConstruction(target, y, recipe, base, result)


# -- the 2^m + 2 and 2^m - 2 constructions -----------------------------------


def plus_two_interval(m: int) -> tuple[Fraction, Fraction]:
    """Open interval inside I_3 whose two-point samples have 2^m + 2 points."""
    if m < 2:
        raise DomainError("m must be at least 2")
    lo = Fraction(3, 8) + sum((Fraction(1, 1 << (2 * j + 5)) for j in range(1, m - 1)), Fraction(0))
    lo += Fraction(3, 1 << (2 * m + 5))
    hi = Fraction(3, 8) + sum((Fraction(1, 1 << (2 * j + 5)) for j in range(1, m)), Fraction(0))
    return lo, hi


def _plus_two_point(m: int, s: Fraction) -> Fraction:
    # inverse of y' = 4^(m-2)(Phi(y) - sum_(j<=m-2) 2^-(2j-1)), Phi(y) = 64(y - 3/8)
    a = sum((Fraction(1, 1 << (2 * j - 1)) for j in range(1, m - 1)), Fraction(0))
    return Fraction(3, 8) + (a + s / 4 ** (m - 2)) / 64


def plus_two_samples(m: int, candidates: Sequence[Fraction], budget: int = DEFAULT_BUDGET) -> list[Fraction]:
    """Ordinates y in the 2^m + 2 interval whose side conditions are certified.

    Each candidate s in I_3 fixes y through y' = s; y is kept when both
    y' and Psi^(m-1)(y) carry two-point certificates.
    """
    lo, hi = plus_two_interval(m)
    out = []
    for s in candidates:
        s = as_rational(s)
        if not Fraction(3, 8) < s < HALF:
            continue
        y = _plus_two_point(m, s)
        if not lo < y < hi:
            continue
        z = y
        for _ in range(m - 1):
            z = psi(z)
        if z == 0 or z >= HALF:
            continue
        if is_two_point_level_set(s, budget).verdict is not Verdict.YES:
            continue
        if is_two_point_level_set(z, budget).verdict is not Verdict.YES:
            continue
        out.append(y)
    return out


def minus_two_interval(m: int) -> tuple[Fraction, Fraction]:
    """Open interval inside I_3 whose certified samples have 2^m - 2 points."""
    if m < 2:
        raise DomainError("m must be at least 2")
    lo = Fraction(3, 8) * sum((Fraction(1, 1 << (6 * j)) for j in range(m - 1)), Fraction(0))
    hi = Fraction(3, 8) * sum((Fraction(1, 1 << (6 * j)) for j in range(m - 2)), Fraction(0))
    hi += Fraction(1, 1 << (6 * (m - 2) + 1))
    return lo, hi


def _phi_inverse_i3(z: Fraction) -> Fraction:
    return Fraction(3, 8) + z / 64


def minus_two_samples(m: int, candidates: Sequence[Fraction], budget: int = DEFAULT_BUDGET) -> list[Fraction]:
    """Ordinates y with Phi^(m-2)(y) = s for candidates s in I_3, kept when
    Psi(Phi^n y) (n <= m-3) and Phi^(m-2)(y) are all certified two-point levels."""
    lo, hi = minus_two_interval(m)
    out = []
    for s in candidates:
        s = as_rational(s)
        if not Fraction(3, 8) < s < HALF:
            continue
        chain = [s]
        for _ in range(m - 2):
            chain.append(_phi_inverse_i3(chain[-1]))
        y = chain[-1]
        if not lo < y < hi:
            continue
        if is_two_point_level_set(s, budget).verdict is not Verdict.YES:
            continue
        ok = True
        for v in chain[1:]:  # Phi^n(y) for n = m-3, ..., 0
            w = psi(v)
            if not 0 < w < HALF or is_two_point_level_set(w, budget).verdict is not Verdict.YES:
                ok = False
                break
        if ok:
            out.append(y)
    return out


def _kappa_run(z: Fraction, count: int) -> tuple[list, list[Fraction]]:
    """(kappa(Psi^j z) for j = 1..count, [Psi^j z for j = 0..count])."""
    orbit = [z]
    for _ in range(count):
        orbit.append(psi(orbit[-1]))
    return [kappa(w) for w in orbit[1:]], orbit


def verify_minus_two_claims(m: int, y: RationalLike) -> bool:
    """Check the orbit structure behind the 2^m - 2 construction exactly.

    With y_n = Phi^(n-1)(y) (so y_1 = y), each y_n lies in I_3 and:
      * (kappa_1..kappa_6)(y_n) = (9,9,9,8,7,8) and Psi^7(y_n) = Psi(y_(n+2)),
        for n = 1..m-4;
      * kappa_1(y_(m-2)) = 9 and (kappa_1..kappa_5)(y_(m-3)) = (9,9,9,8,7);
      * Phi(Psi^j y_n) > 2/3 for n = 1..m-4, j = 1..6, and for n = m-3, j = 1..5.
    """
    y = as_rational(y)
    if m < 5:
        raise DomainError("the claims are stated for m >= 5")
    lo, hi = minus_two_interval(m)
    if not lo < y < hi:
        raise DomainError(f"{y} is not inside the 2^m - 2 interval for m = {m}")
    ys = [None, y]
    for _ in range(m - 1):
        ys.append(phi_map(ys[-1]))
    if any(kappa(ys[n]) != 3 for n in range(1, m)):
        return False
    for n in range(1, m - 3):
        ks, orbit = _kappa_run(ys[n], 7)
        if ks[:6] != [9, 9, 9, 8, 7, 8]:
            return False
        if orbit[7] != psi(ys[n + 2]):
            return False
        if any(phi_map(orbit[j]) <= TWO_THIRDS for j in range(1, 7)):
            return False
    if kappa(psi(ys[m - 2])) != 9:
        return False
    ks, orbit = _kappa_run(ys[m - 3], 5)
    if ks != [9, 9, 9, 8, 7]:
        return False
    return all(phi_map(orbit[j]) > TWO_THIRDS for j in range(1, 6))
