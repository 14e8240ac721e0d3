"""Exact integer helpers: the two binomial conventions and line-bundle cohomology on P^n.

Everything here works on Python ints, so there is no overflow and no floating
point.  Two binomials are exposed on purpose:

* ``binom_trunc(m, k)`` counts subsets and is 0 whenever ``m < k``.  Use it
  whenever the number is a dimension (global sections).
* ``binom_poly(m, k)`` is the degree-k polynomial m(m-1)...(m-k+1)/k!
  evaluated at m.  Use it for Euler characteristics and Hilbert polynomials.
"""

from __future__ import annotations

from math import comb

__all__ = ["binom_trunc", "binom_poly", "line_cohom", "line_euler"]


def binom_trunc(m: int, k: int) -> int:
    """C(m, k) for m >= k >= 0, else 0."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if m < k:
        return 0
    return comb(m, k)


def binom_poly(m: int, k: int) -> int:
    """Value of the polynomial binomial coefficient at an integer ``m`` (may be negative)."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if m >= 0:
        # comb returns 0 for 0 <= m < k, which is where the polynomial has its roots
        return comb(m, k)
    # upper negation: C(m, k) = (-1)^k C(k - m - 1, k)
    value = comb(k - m - 1, k)
    return -value if k % 2 else value


def line_cohom(n: int, d: int, q: int) -> int:
    """h^q(O_{P^n}(d))."""
    if n < 1:
        raise ValueError(f"projective dimension must be >= 1, got {n}")
    if not 0 <= q <= n:
        raise ValueError(f"cohomological degree {q} outside [0, {n}]")
    if q == 0:
        return binom_trunc(d + n, n)
    if q == n:
        return binom_trunc(-d - 1, n)
    return 0


def line_euler(n: int, d: int) -> int:
    """chi(O_{P^n}(d)), the Hilbert polynomial of P^n evaluated at d."""
    if n < 1:
        raise ValueError(f"projective dimension must be >= 1, got {n}")
    return binom_poly(d + n, n)
