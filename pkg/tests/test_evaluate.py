from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from _oracles import takagi_oracle, takagi_partial_oracle
from takagi.arith import DomainError, digit_sum_D
from takagi.evaluate import check_functional_equation, phi, takagi, takagi_parts, takagi_partial

unit = st.fractions(min_value=0, max_value=1, max_denominator=3000)


@given(unit)
def test_takagi_matches_orbit_oracle(x):
    assert takagi(x) == takagi_oracle(x)


@given(unit)
def test_symmetry(x):
    assert takagi(x) == takagi(1 - x)


@given(st.fractions(min_value=0, max_value=Fraction(1, 2), max_denominator=3000))
def test_left_branch(x):
    assert takagi(x) == x + takagi(2 * x) / 2


@given(st.fractions(min_value=Fraction(1, 2), max_value=1, max_denominator=3000))
def test_right_branch(x):
    assert takagi(x) == 1 - x + takagi(2 * x - 1) / 2


@given(unit)
def test_check_functional_equation(x):
    assert check_functional_equation(x)


@given(unit)
def test_range(x):
    assert 0 <= takagi(x) <= Fraction(2, 3)


@given(unit, st.integers(min_value=0, max_value=40))
def test_partial_sums(x, k):
    part = takagi_partial(x, k)
    assert part.value == takagi_partial_oracle(x, k)
    # the remainder is 2^-k T(2^k x mod 1), between 0 and (2/3) 2^-k
    assert 0 <= takagi(x) - part.value <= Fraction(2, 3) / 2**k


@given(st.fractions(min_value=0, max_value=1, max_denominator=500).filter(lambda x: x < 1), st.integers(min_value=1, max_value=20))
def test_partial_slope(x, k):
    # T_k is linear on [x, x + h] for small h inside the same dyadic interval
    h = Fraction(1, 2 ** (k + 12))
    part = takagi_partial(x, k)
    ahead = takagi_partial_oracle(x + h, k)
    assert (ahead - part.value) / h == part.slope == digit_sum_D(x, k)


@pytest.mark.parametrize("k", range(2, 65))
def test_inverse_powers_of_two(k):
    assert takagi(Fraction(1, 2**k)) == Fraction(k, 2**k)


def test_fixtures():
    assert takagi(Fraction(1, 4)) == Fraction(1, 2)
    assert takagi(Fraction(1, 7)) == Fraction(22, 49)
    assert takagi(Fraction(1, 3)) == Fraction(2, 3)
    assert takagi(0) == takagi(1) == 0


def test_phi():
    assert phi(Fraction(3, 4)) == Fraction(1, 4)
    assert phi(Fraction(7, 3)) == Fraction(1, 3)


def test_parts_consistent():
    num, den, cyc = takagi_parts(Fraction(5, 24))
    assert Fraction(num, den * cyc) == takagi_oracle(Fraction(5, 24))


def test_large_period():
    x = Fraction(1234, 10007)  # prime denominator, period 5003
    assert takagi(x) == takagi_oracle(x)


@pytest.mark.parametrize("bad", [Fraction(-1, 3), Fraction(4, 3)])
def test_domain(bad):
    with pytest.raises(DomainError):
        takagi(bad)
    with pytest.raises(DomainError):
        check_functional_equation(bad)
