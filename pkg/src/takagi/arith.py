"""Exact rationals and eventually periodic binary expansions.

Every quantity in the package is a :class:`fractions.Fraction`.  This module
adds the parsing/formatting conventions used on the command line and the
binary-digit machinery (expansions, digit excess ``D_k``, zero-run tests).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

RationalLike = Union[Fraction, int, str]

__all__ = [
    "DomainError",
    "BinaryExpansion",
    "as_rational",
    "parse_rational",
    "format_rational",
    "is_dyadic",
    "to_binary",
    "parse_binary",
    "digit_sum_D",
    "has_three_zero_run_after_first_one",
]


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer literal into a reduced fraction."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        if sep:
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational of the form p/q: {text!r}") from exc
    return value


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, int):
        return Fraction(x)
    # gmpy2.mpq and other numbers.Rational implementations
    try:
        return Fraction(x.numerator, x.denominator)
    except AttributeError:
        raise DomainError(f"expected an exact rational, got {type(x).__name__}") from None


def format_rational(x: Fraction) -> str:
    """Serialize as ``"p/q"`` in lowest terms (``"0"`` and integers bare)."""
    return str(Fraction(x))


def is_dyadic(x: Fraction) -> bool:
    d = x.denominator
    return d & (d - 1) == 0


@dataclass(frozen=True)
class BinaryExpansion:
    """``value = 0.<preperiod>(<period>)`` in base 2.

    Dyadic rationals use the representation ending in zeros, stored with an
    empty period.  Both parts are minimal.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    value: Fraction

    @property
    def is_dyadic(self) -> bool:
        return not self.period

    def digit(self, n: int) -> int:
        """The n-th digit after the binary point (1-based)."""
        if n < 1:
            raise IndexError("digits are numbered from 1")
        pre = len(self.preperiod)
        if n <= pre:
            return self.preperiod[n - 1]
        if not self.period:
            return 0
        return self.period[(n - pre - 1) % len(self.period)]

    def digits(self, count: int) -> list[int]:
        return [self.digit(n) for n in range(1, count + 1)]

    def iter_digits(self) -> Iterator[int]:
        yield from self.preperiod
        if not self.period:
            while True:
                yield 0
        while True:
            yield from self.period

    def evaluate(self) -> Fraction:
        """Re-evaluate the digit string as a fraction (round-trip check)."""
        pre = len(self.preperiod)
        head = Fraction(int("".join(map(str, self.preperiod)) or "0", 2), 1 << pre)
        if not self.period:
            return head
        p = len(self.period)
        cycle = int("".join(map(str, self.period)), 2)
        return head + Fraction(cycle, ((1 << p) - 1) << pre)

    def __str__(self) -> str:
        pre = "".join(map(str, self.preperiod))
        if not self.period:
            return "0." + (pre or "0")
        return f"0.{pre}({''.join(map(str, self.period))})"


def to_binary(x: RationalLike) -> BinaryExpansion:
    """Canonical eventually periodic binary expansion of ``x`` in [0, 1).

    Long division; the first repeated remainder closes the period, which
    makes both preperiod and period minimal.
    """
    x = as_rational(x)
    if not 0 <= x < 1:
        raise DomainError(f"binary expansion needs 0 <= x < 1, got {x}")
    p, q = x.numerator, x.denominator
    if q & (q - 1) == 0:
        # dyadic: exactly log2(q) digits, then zeros
        width = q.bit_length() - 1
        bits = format(p, "b").zfill(width) if width else ""
        digits = tuple(int(b) for b in bits)
        while digits and digits[-1] == 0:
            digits = digits[:-1]
        return BinaryExpansion(digits, (), x)

    # the preperiod length is the power of two in the denominator
    s = (q & -q).bit_length() - 1
    odd = q >> s
    head = (p << s) // q if s else 0
    digits_pre = tuple(int(b) for b in format(head, "b").zfill(s)) if s else ()
    r = (p << s) % q  # remainder scaled: remaining value = r / q
    # r / q == r' / odd with r' = r >> s
    r >>= s
    start = r
    period = []
    while True:
        r <<= 1
        if r >= odd:
            period.append(1)
            r -= odd
        else:
            period.append(0)
        if r == start:
            break
    # tails after fewer than s digits still have even denominators, so the
    # preperiod cannot be shorter than s
    return BinaryExpansion(digits_pre, tuple(period), x)


def parse_binary(text: str) -> BinaryExpansion:
    """Inverse of ``str(BinaryExpansion)``."""
    s = text.strip()
    if not s.startswith("0."):
        raise DomainError(f"binary expansion must start with '0.': {text!r}")
    body = s[2:]
    if "(" in body:
        pre, _, rest = body.partition("(")
        per = rest.rstrip(")")
    else:
        pre, per = body, ""
    try:
        pre_d = tuple(int(c, 2) for c in pre)
        per_d = tuple(int(c, 2) for c in per)
    except ValueError as exc:
        raise DomainError(f"bad binary digits in {text!r}") from exc
    value = BinaryExpansion(pre_d, per_d, Fraction(0)).evaluate()
    if value >= 1:
        raise DomainError(f"binary expansion {text!r} is not below 1")
    return to_binary(value)


def _ones_prefix(exp: BinaryExpansion, k: int) -> int:
    pre = exp.preperiod
    if k <= len(pre):
        return sum(pre[:k])
    ones = sum(pre)
    rest = k - len(pre)
    if exp.period:
        p = len(exp.period)
        full, part = divmod(rest, p)
        ones += full * sum(exp.period) + sum(exp.period[:part])
    return ones


def digit_sum_D(x: RationalLike | BinaryExpansion, k: int) -> int:
    """Excess of 0-digits over 1-digits among the first ``k`` binary digits."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    exp = x if isinstance(x, BinaryExpansion) else to_binary(x)
    return k - 2 * _ones_prefix(exp, k)


def has_three_zero_run_after_first_one(x: RationalLike) -> bool:
    """Whether ``000`` occurs somewhere after the first 1 in the expansion of x.

    Only defined for non-dyadic x in (0, 1).  Scanning the preperiod plus three
    copies of the period sees every run, including those crossing the seam.
    """
    x = as_rational(x)
    if not 0 < x < 1:
        raise DomainError(f"need 0 < x < 1, got {x}")
    if is_dyadic(x):
        raise DomainError(f"{x} is dyadic; the zero-run test needs a non-dyadic input")
    exp = to_binary(x)
    window = "".join(map(str, exp.preperiod + exp.period * 3))
    first = window.index("1")
    return window.find("000", first + 1) != -1
