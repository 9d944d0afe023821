"""Exact values of phi, the partial sums T_k and the Takagi function T."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor

import numpy as np

from .arith import DomainError, RationalLike, as_rational, digit_sum_D

__all__ = [
    "ORBIT_CAP",
    "PartialEvaluation",
    "phi",
    "takagi_partial",
    "takagi",
    "takagi_parts",
    "check_functional_equation",
]

ORBIT_CAP = 10**6
_INT64_SAFE = 1 << 31


@dataclass(frozen=True)
class PartialEvaluation:
    k: int
    value: Fraction
    slope: int


def phi(x: RationalLike) -> Fraction:
    """Distance from x to the nearest integer."""
    x = as_rational(x)
    frac = x - floor(x)
    return min(frac, 1 - frac)


def takagi_partial(x: RationalLike, k: int) -> PartialEvaluation:
    """``T_k(x) = sum_{n<k} 2^-n phi(2^n x)`` with the slope of T_k at x.

    The slope is ``D_k(x)``, i.e. the slope on the dyadic interval
    ``[x, x + 2^-k)``; at x = 1 the slope of the last interval is used.
    """
    x = as_rational(x)
    if not 0 <= x <= 1:
        raise DomainError(f"takagi_partial needs 0 <= x <= 1, got {x}")
    if k < 0:
        raise DomainError("k must be nonnegative")
    p, q = x.numerator, x.denominator
    total = Fraction(0)
    r = p % q
    for n in range(k):
        total += Fraction(min(r, q - r), q << n)
        r = (2 * r) % q
    slope = -k if x == 1 else digit_sum_D(x, k)
    return PartialEvaluation(k, total, slope)


def _orbit(r0: int, q: int) -> np.ndarray:
    """Residues ``r0 * 2^n mod q`` over one full period (q odd, 0 < r0 < q)."""
    if q < _INT64_SAFE:
        r = np.array([r0], dtype=np.int64)
        while True:
            hits = np.flatnonzero(r[1:] == r0)
            if hits.size:
                return r[: hits[0] + 1]
            if r.size >= ORBIT_CAP:
                break
            mult = pow(2, int(r.size), q)
            r = np.concatenate([r, (r * mult) % q])
    else:
        out = [r0]
        r = (2 * r0) % q
        while r != r0:
            if len(out) >= ORBIT_CAP:
                break
            out.append(r)
            r = (2 * r) % q
        else:
            return np.array(out, dtype=object)
    raise ArithmeticError(
        f"orbit of 2^n x mod 1 has period above {ORBIT_CAP} (denominator {q}); "
        "refusing to approximate"
    )


def _weighted_bits(m: np.ndarray) -> int:
    """``sum_n m[n] * 2^(len-1-n)`` for a vector of residues below 2^30."""
    size = len(m)
    if m.dtype == object or size == 0 or int(m.max()) >= 1 << 30:
        total = 0
        for v in m:
            total = (total << 1) + int(v)
        return total
    # 32 consecutive terms fold into one int64 word below 2^62; the words are
    # then laid out as two big-endian 32-bit limb planes
    pad = (-size) % 32
    words = np.concatenate([m, np.zeros(pad, dtype=np.int64)]).reshape(-1, 32)
    words = words @ (np.int64(1) << np.arange(31, -1, -1, dtype=np.int64))
    low = (words & 0xFFFFFFFF).astype(">u4").tobytes()
    high = (words >> 32).astype(">u4").tobytes()
    total = int.from_bytes(low, "big") + (int.from_bytes(high, "big") << 32)
    return total >> pad


def takagi_parts(x: RationalLike) -> tuple[int, int, int]:
    """Unreduced T(x) as ``(numerator, small_denominator, cycle)``.

    ``T(x) = numerator / (small_denominator * cycle)`` where ``cycle`` is
    ``2^P - 1`` for the period P of 2^n x mod 1 (1 for dyadic x).  The orbit is
    eventually periodic; the preperiod is summed directly and the periodic tail
    in closed form.  Keeping the huge factor separate lets identities between
    values on a common orbit be checked with cheap multiplications.
    """
    x = as_rational(x)
    if not 0 <= x <= 1:
        raise DomainError(f"takagi needs 0 <= x <= 1, got {x}")
    p, q = x.numerator, x.denominator
    if q == 1:
        return 0, 1, 1
    s = (q & -q).bit_length() - 1
    odd = q >> s
    # preperiod: sum_{n<s} min(r_n, q - r_n) / (q 2^n), over the denominator q 2^s
    head = 0
    r = p
    for n in range(s):
        head += min(r, q - r) << (s - n)
        r = (2 * r) % q
    # now 2^s x mod 1 = r / q = (r >> s) / odd
    if odd == 1:
        return head, q << s, 1
    orbit = _orbit(r >> s, odd)
    period = len(orbit)
    m = np.minimum(orbit, odd - orbit)
    weighted = _weighted_bits(m)
    # T(2^s x mod 1) = 2 * weighted / (odd * (2^period - 1))
    cyc = (1 << period) - 1
    return head * cyc + (weighted << (s + 1)), q << s, cyc


@lru_cache(maxsize=4096)
def _takagi_cached(x: Fraction) -> Fraction:
    num, den, cyc = takagi_parts(x)
    return Fraction(num, den * cyc)


def takagi(x: RationalLike) -> Fraction:
    """Exact T(x) for rational x in [0, 1]."""
    return _takagi_cached(as_rational(x))


def _same_value(a: tuple[int, int, int], b: tuple[int, int, int], shift: Fraction = Fraction(0), half: bool = False) -> bool:
    """Exact test of ``a == (b / 2 if half else b) + shift`` on unreduced parts."""
    an, ad, ac = a
    bn, bd, bc = b
    if half:
        bd *= 2
    sn, sd = shift.numerator, shift.denominator
    if ac == bc:
        # a/(ad c) == bn/(bd c) + sn/sd, multiplied through by c*ad*bd*sd
        return an * bd * sd == (bn * sd + sn * bd * bc) * ad
    return an * bd * bc * sd == (bn * sd + sn * bd * bc) * ad * ac


def check_functional_equation(x: RationalLike) -> bool:
    """Check symmetry and the two-branch functional equation exactly at x."""
    x = as_rational(x)
    if not 0 <= x <= 1:
        raise DomainError(f"functional equation is stated on [0, 1], got {x}")
    here = takagi_parts(x)
    if not _same_value(here, takagi_parts(1 - x)):
        return False
    if x <= Fraction(1, 2) and not _same_value(here, takagi_parts(2 * x), x, half=True):
        return False
    if x >= Fraction(1, 2) and not _same_value(here, takagi_parts(2 * x - 1), 1 - x, half=True):
        return False
    return True
