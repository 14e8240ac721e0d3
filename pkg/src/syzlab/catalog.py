"""Numerical data of the standard pure resolution families."""

from __future__ import annotations

from .arith import binom_trunc
from .resolution import PureResolution, require_valid

__all__ = ["koszul", "compressed_gorenstein", "eagon_northcott", "FAMILIES"]


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def koszul(n: int) -> PureResolution:
    """Koszul complex on n+1 linear forms: linear, with binomial Betti numbers."""
    _need(n >= 2, f"koszul needs n >= 2, got {n}")
    return require_valid(PureResolution(n, tuple(range(n + 2)), tuple(binom_trunc(n + 1, i) for i in range(n + 2))))


def compressed_gorenstein(n: int, t: int) -> PureResolution:
    """Gorenstein algebra with socle degree 2t: d_i = t+i in the middle, d_{n+1} = 2t+n+1.

    At t = 1 this is the literal formula output, (0, 2, 3, ..., n+1, n+3), not
    the Koszul complex.
    """
    _need(n >= 2, f"compressed_gorenstein needs n >= 2, got {n}")
    _need(t >= 1, f"compressed_gorenstein needs t >= 1, got {t}")
    degrees = (0,) + tuple(t + i for i in range(1, n + 1)) + (2 * t + n + 1,)
    alpha = [
        binom_trunc(t + i - 1, i - 1) * binom_trunc(t + n + 1, n + 1 - i)
        - binom_trunc(t + n - i, n + 1 - i) * binom_trunc(t + n, i - 1)
        for i in range(1, n + 1)
    ]
    return require_valid(PureResolution(n, degrees, (1, *alpha, 1)))


def eagon_northcott(n: int, d: int, a: int) -> PureResolution:
    """Eagon-Northcott complex of the maximal minors of a (d-forms) matrix, first step of degree d*a."""
    _need(n >= 2, f"eagon_northcott needs n >= 2, got {n}")
    _need(d >= 1 and a >= 1, f"eagon_northcott needs d, a >= 1, got d={d}, a={a}")
    degrees = (0,) + tuple(d * (a + i - 1) for i in range(1, n + 2))
    betti = (1,) + tuple(binom_trunc(a + n, a + i - 1) * binom_trunc(a + i - 2, i - 1) for i in range(1, n + 2))
    return require_valid(PureResolution(n, degrees, betti))


FAMILIES = {
    "koszul": koszul,
    "gorenstein": compressed_gorenstein,
    "eagon-northcott": eagon_northcott,
}
