import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from collatz_spectra.numtheory import (
    ResidueClass,
    binomial,
    extended_gcd,
    geometric_sum,
    multinomial,
    solve_congruence,
    solve_linear,
)

ints = st.integers(-10**6, 10**6)


@given(ints, ints)
def test_extended_gcd_bezout(a, b):
    if a == b == 0:
        with pytest.raises(ValueError):
            extended_gcd(a, b)
        return
    g, s, t = extended_gcd(a, b)
    assert g == math.gcd(a, b) > 0
    assert s * a + t * b == g


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 60))
def test_solve_congruence_matches_brute_force(a, b, m):
    cls = solve_congruence(a, b, m)
    sols = [n for n in range(m) if (a * n - b) % m == 0]
    if cls is None:
        assert sols == []
    else:
        assert sols == [n for n in range(m) if n in cls]


@given(st.integers(-100, 100), st.integers(1, 40), st.integers(-100, 100), st.integers(1, 40))
def test_intersect_is_crt(r1, m1, r2, m2):
    x = ResidueClass(r1, m1).intersect(ResidueClass(r2, m2))
    both = [n for n in range(m1 * m2) if (n - r1) % m1 == 0 and (n - r2) % m2 == 0]
    if x is None:
        assert both == []
    else:
        assert x.modulus == math.lcm(m1, m2)
        assert both == [n for n in range(m1 * m2) if n in x]


def test_residue_class_members():
    c = ResidueClass(-3, 8)
    assert c.rep == 5 and str(c) == "5 (mod 8)"
    assert c.least_positive() == 5
    assert c.positive_members(3) == [5, 13, 21]
    assert list(c.members_upto(30)) == [5, 13, 21, 29]
    assert c.density() == Fraction(1, 8)
    assert ResidueClass(0, 4).least_positive() == 4


@given(
    st.integers(0, 12), st.integers(0, 8), st.integers(-10**4, 10**4).filter(lambda c: c != 0)
)
def test_diophantine_substitution(e2, e3, c):
    b, a = 2**e2, 3**e3
    sol = solve_linear(c, b, a)
    assert 0 <= sol.x0 < b
    for q in range(-3, 4):
        x, y = sol.pair(q)
        assert b * y - a * x == c
        assert x in sol.x_class and y in sol.y_class


def test_diophantine_unsolvable():
    with pytest.raises(ValueError):
        solve_linear(3, 4, 6)


@given(st.integers(1, 60), st.integers(1, 60))
def test_pascal_recurrence(n, k):
    assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_multinomial():
    assert multinomial([2, 1, 1]) == 12
    assert multinomial([3]) == 1
    assert multinomial([]) == 1
    assert multinomial([1, 1, 1, 1]) == math.factorial(4)


@given(
    st.fractions(min_value=-3, max_value=3, max_denominator=20),
    st.fractions(min_value=-3, max_value=3, max_denominator=20),
    st.integers(0, 25),
)
def test_geometric_sum_termwise(a, r, n):
    assert geometric_sum(a, r, n) == sum((a * r**i for i in range(n)), Fraction(0))
