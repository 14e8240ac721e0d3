"""Pure resolutions of line-bundle sums on P^n.

A resolution is the exact complex

    0 -> O^{b_{n+1}}(-d_{n+1}) -> ... -> O^{b_1}(-d_1) -> O^{b_0}(-d_0) -> 0

described by its degree sequence ``d`` and Betti vector ``b``.  The F-side
syzygies come from splitting the dual complex twisted by -d_{n+1}:

    0 -> F_{j-1} -> L_j -> F_j -> 0,   L_j = O^{b_j}(d_j - d_{n+1}),

with F_0 = O^{b_0}(-d_{n+1}) and F_n = O^{b_{n+1}}.  The G-side syzygies come
from splitting the complex itself; G_i of a resolution is exactly F_i of its
dual resolution, which is how G-side quantities are computed throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm, prod
from typing import Any, Sequence

from .arith import binom_poly, line_euler
from .nodes import Dual, LineSum, SheafNode, Syzygy, SyzygyId, Tensor, canonical

__all__ = [
    "PureResolution",
    "InvalidResolution",
    "ValidationReport",
    "InequalityCheck",
    "validate",
    "require_valid",
    "hilbert_defect",
    "hk_betti",
    "normalize",
    "dualize",
    "betti_inequalities",
    "syzygy_rank_c1",
    "euler_char",
    "working_resolution",
    "json_int",
    "parse_int",
]

# integers beyond this go to JSON as decimal strings
JSON_SAFE_INT = 2**53 - 1


class InvalidResolution(ValueError):
    pass


@dataclass(frozen=True)
class PureResolution:
    n: int
    degrees: tuple[int, ...]
    betti: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        object.__setattr__(self, "betti", tuple(int(b) for b in self.betti))
        if self.n < 2:
            raise InvalidResolution(f"projective dimension must be >= 2, got n={self.n}")
        if len(self.degrees) != self.n + 2 or len(self.betti) != self.n + 2:
            raise InvalidResolution(
                f"need n+2 = {self.n + 2} degrees and Betti numbers, "
                f"got {len(self.degrees)} and {len(self.betti)}"
            )

    @property
    def top(self) -> int:
        """d_{n+1}."""
        return self.degrees[-1]

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": json_int(self.n),
            "degrees": [json_int(d) for d in self.degrees],
            "betti": [json_int(b) for b in self.betti],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "PureResolution":
        try:
            n = parse_int(data["n"])
            degrees = [parse_int(d) for d in data["degrees"]]
            betti = [parse_int(b) for b in data["betti"]]
        except (KeyError, TypeError) as exc:
            raise InvalidResolution(f"malformed resolution JSON: {exc}") from None
        return cls(n, tuple(degrees), tuple(betti))


def json_int(value: int) -> int | str:
    return value if -JSON_SAFE_INT <= value <= JSON_SAFE_INT else str(value)


def parse_int(value: Any) -> int:
    if isinstance(value, bool):
        raise InvalidResolution(f"expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise InvalidResolution(f"expected an integer, got {value!r}")


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    defect: tuple[int, ...] | None = None

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(res: PureResolution) -> ValidationReport:
    report = ValidationReport()
    d = res.degrees
    for i in range(len(d) - 1):
        if d[i] >= d[i + 1]:
            report.violations.append(f"degrees not strictly increasing: d_{i}={d[i]} >= d_{i + 1}={d[i + 1]}")
    for i, b in enumerate(res.betti):
        if b < 1:
            report.violations.append(f"Betti number b_{i}={b} is not positive")
    defect = hilbert_defect(res)
    if any(defect):
        report.defect = defect
        report.violations.append(f"nonzero Hilbert defect, binomial-basis coefficients {list(defect)}")
    return report


def require_valid(res: PureResolution) -> PureResolution:
    report = validate(res)
    if not report.ok:
        raise InvalidResolution("; ".join(report.violations))
    return res


def hilbert_defect(res: PureResolution) -> tuple[int, ...]:
    """Coefficients of sum_i (-1)^i b_i chi(O(t - d_i)) in the basis C(t, k), k = 0..n.

    Every integer-valued polynomial has integer coordinates in this basis, and
    Vandermonde's identity C(t + s, n) = sum_k C(s, n-k) C(t, k) gives them
    directly.  All zero exactly when the Betti data is consistent with exactness.
    """
    n = res.n
    return tuple(
        sum((-1) ** i * b * binom_poly(n - d, n - k) for i, (d, b) in enumerate(zip(res.degrees, res.betti)))
        for k in range(n + 1)
    )


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def hk_betti(degrees: Sequence[int], n: int | None = None) -> tuple[int, ...]:
    """Smallest positive integral Betti vector making ``degrees`` exactness-consistent.

    b_i is proportional to 1 / prod_{j != i} |d_j - d_i|; scaling by the lcm of
    the products gives the primitive solution.
    """
    degrees = tuple(int(d) for d in degrees)
    if n is None:
        n = len(degrees) - 2
    if len(degrees) != n + 2:
        raise InvalidResolution(f"need {n + 2} degrees for n={n}, got {len(degrees)}")
    if n < 2:
        raise InvalidResolution(f"projective dimension must be >= 2, got n={n}")
    if any(a >= b for a, b in zip(degrees, degrees[1:])):
        raise InvalidResolution(f"degrees must be strictly increasing: {degrees}")

    # the exactness conditions: n+1 equations in n+2 unknowns, expect rank n+1
    system = [
        [Fraction((-1) ** i * binom_poly(n - d, n - k)) for i, d in enumerate(degrees)]
        for k in range(n + 1)
    ]
    rank = _rank(system)
    if rank != n + 1:
        raise AssertionError(f"exactness system has rank {rank}, expected {n + 1}")

    products = [prod(abs(dj - di) for j, dj in enumerate(degrees) if j != i) for i, di in enumerate(degrees)]
    scale = lcm(*products)
    betti = tuple(scale // p for p in products)
    if any(hilbert_defect(PureResolution(n, degrees, betti))):
        raise AssertionError("product formula did not solve the exactness conditions")
    return betti


def normalize(res: PureResolution) -> PureResolution:
    d0 = res.degrees[0]
    if d0 == 0:
        return res
    return PureResolution(res.n, tuple(d - d0 for d in res.degrees), res.betti)


def dualize(res: PureResolution) -> PureResolution:
    """Dual complex twisted back to start in degree 0: d~_i = d_{n+1} - d_{n+1-i}, b~_i = b_{n+1-i}."""
    top = res.top
    return PureResolution(res.n, tuple(top - d for d in reversed(res.degrees)), tuple(reversed(res.betti)))


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    value: int
    bound: int

    @property
    def holds(self) -> bool:
        return self.value >= self.bound


def betti_inequalities(res: PureResolution) -> list[InequalityCheck]:
    n, b = res.n, res.betti
    checks = [InequalityCheck("b_1 - b_0 >= n", b[1] - b[0], n)]
    for i in range(2, n):
        if 2 * i <= n + 1:
            checks.append(InequalityCheck(f"b_{i} >= 2n-2i+3", b[i], 2 * n - 2 * i + 3))
        if 2 * i >= n + 1:
            checks.append(InequalityCheck(f"b_{i} >= 2i+1", b[i], 2 * i + 1))
    checks.append(InequalityCheck("b_n - b_{n+1} >= n", b[n] - b[n + 1], n))
    return checks


@lru_cache(maxsize=256)
def working_resolution(res: PureResolution, side: str) -> PureResolution:
    """The normalized resolution whose F-side syzygies are the requested side's syzygies."""
    base = normalize(res)
    if side == "F":
        return base
    if side == "G":
        return dualize(base)
    raise ValueError(f"side must be 'F' or 'G', got {side!r}")


def syzygy_rank_c1(res: PureResolution, sid: SyzygyId) -> tuple[int, int]:
    """Rank and first Chern class of F_i or G_i, by additivity along the splitting sequences."""
    sid.check_range(res.n)
    w = working_resolution(res, sid.side)
    i, top = sid.index, w.top
    rank = sum((-1) ** (i - k) * w.betti[k] for k in range(i + 1))
    c1 = sum((-1) ** (i - k) * w.betti[k] * (w.degrees[k] - top) for k in range(i + 1))
    if rank <= 0:
        raise InvalidResolution(f"{sid.label} has non-positive rank {rank}: inconsistent Betti data")
    return rank, c1


def _chi_f(w: PureResolution, i: int, t: int) -> int:
    n, top = w.n, w.top
    if i == 0:
        return w.betti[0] * line_euler(n, t - top)
    return w.betti[i] * line_euler(n, t + w.degrees[i] - top) - _chi_f(w, i - 1, t)


def _chi_f_dual(w: PureResolution, i: int, t: int) -> int:
    n, top = w.n, w.top
    if i == 0:
        return w.betti[0] * line_euler(n, t + top)
    return w.betti[i] * line_euler(n, t + top - w.degrees[i]) - _chi_f_dual(w, i - 1, t)


def _chi_tensor(w: PureResolution, a: int, b: int, t: int) -> int:
    top = w.top
    if a == 0:
        return w.betti[0] * _chi_f_dual(w, b, t - top)
    return w.betti[a] * _chi_f_dual(w, b, t + w.degrees[a] - top) - _chi_tensor(w, a - 1, b, t)


def euler_char(res: PureResolution, node: SheafNode, t: int = 0) -> int:
    """chi(node(t)) by additivity over the splitting sequences, down to line bundles."""
    base, shift = canonical(node)
    t += shift
    if isinstance(base, LineSum):
        return sum(m * line_euler(res.n, d + t) for d, m in base.terms)
    if isinstance(base, Syzygy):
        base.id.check_range(res.n)
        return _chi_f(working_resolution(res, base.id.side), base.id.index, t)
    if isinstance(base, Dual):
        sid = base.node.id
        sid.check_range(res.n)
        return _chi_f_dual(working_resolution(res, sid.side), sid.index, t)
    if isinstance(base, Tensor):
        base.a.check_range(res.n)
        base.b.check_range(res.n)
        return _chi_tensor(working_resolution(res, base.a.side), base.a.index, base.b.index, t)
    raise TypeError(f"unsupported node {node!r}")
