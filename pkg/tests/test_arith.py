import pytest
from hypothesis import given
from hypothesis import strategies as st

from syzlab.arith import binom_poly, binom_trunc, line_cohom, line_euler


def test_binom_trunc_examples():
    assert binom_trunc(5, 3) == 10
    assert binom_trunc(1, 3) == 0
    assert binom_trunc(0, 0) == 1
    assert binom_trunc(-4, 2) == 0


def test_binom_poly_examples():
    assert binom_poly(-1, 2) == 1
    assert binom_poly(5, 3) == 10
    assert binom_poly(-3, 2) == 6
    assert binom_poly(1, 3) == 0


def test_negative_k_rejected():
    with pytest.raises(ValueError):
        binom_trunc(3, -1)
    with pytest.raises(ValueError):
        binom_poly(3, -1)


def test_line_cohom_examples():
    assert line_cohom(2, -3, 2) == 1
    assert line_cohom(3, 2, 0) == 10
    assert line_cohom(2, -2, 1) == 0
    with pytest.raises(ValueError):
        line_cohom(2, 0, 3)
    with pytest.raises(ValueError):
        line_cohom(2, 0, -1)


def test_line_euler_examples():
    assert line_euler(2, -3) == 1
    assert line_euler(2, 0) == 1
    assert line_euler(3, -2) == 0


def test_huge_values_are_exact():
    # well past 2^64
    assert binom_trunc(200, 100) == 90548514656103281165404177077484163874504589675413336841320
    assert binom_poly(-200, 3) == -(200 * 201 * 202 // 6)


def falling(m, k):
    num = 1
    for j in range(k):
        num *= m - j
    den = 1
    for j in range(1, k + 1):
        den *= j
    assert num % den == 0
    return num // den


ints = st.integers(min_value=-60, max_value=60)
ks = st.integers(min_value=0, max_value=12)


@given(ints, ks)
def test_binom_poly_matches_falling_factorial(m, k):
    assert binom_poly(m, k) == falling(m, k)


@given(st.integers(min_value=0, max_value=60), ks)
def test_conventions_agree_above_k(m, k):
    if m >= k:
        assert binom_trunc(m, k) == binom_poly(m, k)
    else:
        assert binom_trunc(m, k) == 0


@given(ints, st.integers(min_value=1, max_value=12))
def test_pascal(m, k):
    assert binom_poly(m, k) == binom_poly(m - 1, k) + binom_poly(m - 1, k - 1)


@given(st.integers(min_value=1, max_value=8), ints)
def test_euler_is_alternating_sum(n, d):
    hs = [line_cohom(n, d, q) for q in range(n + 1)]
    assert all(h == 0 for h in hs[1:n])
    assert line_euler(n, d) == hs[0] + (-1) ** n * hs[n]


@given(st.integers(min_value=1, max_value=8), ints, st.data())
def test_serre_duality(n, d, data):
    q = data.draw(st.integers(min_value=0, max_value=n))
    assert line_cohom(n, d, q) == line_cohom(n, -d - n - 1, n - q)
