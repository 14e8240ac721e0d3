"""Dimension bookkeeping along long exact sequences.

A long exact sequence of finite-dimensional spaces v_0 -> v_1 -> ... -> v_{m-1}
(with zeros at both ends) exists exactly when there are ranks r_j >= 0 of the
maps such that dim v_j = r_{j-1} + r_j and the two outer ranks vanish.  The
solver keeps an interval for every dimension and every rank and tightens them
until nothing moves.  The constraint graph is a path, so bound propagation is
exact here: the result is the projection of the feasible set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

__all__ = ["CohomDim", "Inconsistent", "chase_ses"]


class Inconsistent(ArithmeticError):
    """No exact sequence has the prescribed dimensions."""


@dataclass(frozen=True)
class CohomDim:
    """Dimension of a cohomology group: known, bounded, or unbounded above (hi is None)."""

    lo: int = 0
    hi: int | None = None

    def __post_init__(self):
        if self.lo < 0:
            raise ValueError(f"lower bound must be >= 0, got {self.lo}")
        if self.hi is not None and self.hi < self.lo:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def known(cls, k: int) -> "CohomDim":
        return cls(k, k)

    @classmethod
    def interval(cls, lo: int, hi: int) -> "CohomDim":
        return cls(lo, hi)

    @classmethod
    def unknown(cls) -> "CohomDim":
        return cls(0, None)

    @property
    def is_known(self) -> bool:
        return self.hi == self.lo

    @property
    def value(self) -> int:
        if not self.is_known:
            raise ValueError(f"{self} is not determined")
        return self.lo

    def is_zero(self) -> bool:
        return self.hi == 0

    def is_positive(self) -> bool:
        return self.lo > 0

    def scale(self, m: int) -> "CohomDim":
        return CohomDim(self.lo * m, None if self.hi is None else self.hi * m)

    def meet(self, other: "CohomDim") -> "CohomDim":
        lo = max(self.lo, other.lo)
        hi = _min_hi(self.hi, other.hi)
        if hi is not None and hi < lo:
            raise Inconsistent(f"{self} and {other} do not intersect")
        return CohomDim(lo, hi)

    def __str__(self) -> str:
        if self.hi is None:
            return "?"
        if self.is_known:
            return str(self.lo)
        return f"{self.lo}..{self.hi}"

    @classmethod
    def parse(cls, text: str) -> "CohomDim":
        text = text.strip()
        if text == "?":
            return cls.unknown()
        if ".." in text:
            lo, hi = text.split("..")
            return cls(int(lo), int(hi))
        return cls.known(int(text))


def _min_hi(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _sub_hi(a: int | None, b: int) -> int | None:
    return None if a is None else a - b


def chase_ses(chain: Sequence[CohomDim]) -> list[CohomDim]:
    """Tighten the dimensions of a long exact sequence 0 -> v_0 -> ... -> v_{m-1} -> 0.

    For a short exact sequence 0 -> A -> B -> C -> 0 on P^n the chain is
    H^0A, H^0B, H^0C, H^1A, ..., H^nC.  Raises :class:`Inconsistent` when the
    known entries admit no exact sequence.
    """
    m = len(chain)
    vlo = [c.lo for c in chain]
    vhi = [c.hi for c in chain]
    # rank[j] = rank of the map into v_j; v_j = rank[j] + rank[j + 1]
    rlo = [0] * (m + 1)
    rhi: list[int | None] = [None] * (m + 1)
    rhi[0] = rhi[m] = 0

    def tighten(j: int) -> bool:
        moved = False
        for own, other in ((j, j + 1), (j + 1, j)):
            new_lo = vlo[j] - rhi[other] if rhi[other] is not None else 0
            new_hi = _sub_hi(vhi[j], rlo[other])
            if new_lo > rlo[own]:
                rlo[own] = new_lo
                moved = True
            if new_hi is not None and (rhi[own] is None or new_hi < rhi[own]):
                rhi[own] = new_hi
                moved = True
            if rhi[own] is not None and rhi[own] < rlo[own]:
                raise Inconsistent(f"no exact sequence fits the dimensions {[str(c) for c in chain]}")
        lo = rlo[j] + rlo[j + 1]
        hi = None if rhi[j] is None or rhi[j + 1] is None else rhi[j] + rhi[j + 1]
        if lo > vlo[j]:
            vlo[j] = lo
            moved = True
        if hi is not None and (vhi[j] is None or hi < vhi[j]):
            vhi[j] = hi
            moved = True
        if vhi[j] is not None and vhi[j] < vlo[j]:
            raise Inconsistent(f"no exact sequence fits the dimensions {[str(c) for c in chain]}")
        return moved

    # a forward and a backward sweep reach the fixpoint on a path; the cap guards against bugs
    for _ in range(4 * m + 8):
        moved = False
        for j in range(m):
            moved |= tighten(j)
        for j in reversed(range(m)):
            moved |= tighten(j)
        if not moved:
            return [CohomDim(lo, hi) for lo, hi in zip(vlo, vhi)]
    raise RuntimeError("interval propagation did not converge")
