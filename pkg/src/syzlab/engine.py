"""Cohomology of syzygy bundles, their duals and F_a x F_b^v, by chasing exact sequences.

Only line-bundle cohomology is computed directly.  Everything else is
propagated through the splitting sequences with :func:`chase_ses`, so every
entry is sound; an entry is ``Known`` only when exactness alone forces it.

For a fixed twist t the F-side objects form a chain

    0 -> F_{j-1}(t) -> L_j(t) -> F_j(t) -> 0,   j = 1..n,

with line sums at both ends, and the duals F_j^v(t) form the mirror chain.
Each chain is solved from the F_0 end, from the F_n end, and jointly; the two
one-sided answers must agree wherever both are Known.  Tensor products
T[a][b] = F_a x F_b^v sit on a grid whose rows come from tensoring the F_a
sequences by F_b^v and whose columns come from tensoring the dual sequences by
F_a.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .arith import line_cohom
from .chase import CohomDim, Inconsistent, chase_ses
from .nodes import Dual, LineSum, SheafNode, Syzygy, Tensor, canonical, node_label
from .resolution import PureResolution, normalize, require_valid, working_resolution

__all__ = [
    "EngineDisagreement",
    "CohomologyEngine",
    "CohomologyTable",
    "engine_for",
    "default_window",
    "cohom_table",
    "cohom",
    "hd",
]

Table = tuple  # tuple[CohomDim, ...] indexed by q = 0..n


class EngineDisagreement(Inconsistent):
    """Two independent routes produced different Known values for the same group."""


def default_window(res: PureResolution) -> tuple[int, int]:
    top = normalize(res).top
    return (-top - res.n - 1, top + res.n + 1)


def _meet_tables(a: Table, b: Table) -> Table:
    return tuple(x.meet(y) for x, y in zip(a, b))


def _scale(table: Table, m: int) -> Table:
    return tuple(c.scale(m) for c in table)


def _unknown_table(n: int) -> Table:
    return tuple(CohomDim.unknown() for _ in range(n + 1))


def _chase_triple(a: Table, b: Table, c: Table) -> tuple[Table, Table, Table]:
    flat = [x for q in range(len(a)) for x in (a[q], b[q], c[q])]
    out = chase_ses(flat)
    return tuple(out[0::3]), tuple(out[1::3]), tuple(out[2::3])


def _check_agreement(first: Table, second: Table, what: str) -> None:
    for q, (x, y) in enumerate(zip(first, second)):
        if x.is_known and y.is_known and x.lo != y.lo:
            raise EngineDisagreement(f"h^{q}({what}): one route gives {x.lo}, the other {y.lo}")


class _Chain:
    """Objects X_0..X_n linked by 0 -> X_{j-1} -> M_j -> X_j -> 0 (j = 1..n)."""

    def __init__(self, objects: list[Table], middles: Sequence[Table]):
        self.x = objects
        self.m = middles  # m[j - 1] is M_j

    def apply(self, j: int) -> bool:
        a, _, c = _chase_triple(self.x[j - 1], self.m[j - 1], self.x[j])
        moved = a != self.x[j - 1] or c != self.x[j]
        self.x[j - 1], self.x[j] = a, c
        return moved


def _solve_chain(first: Table, last: Table, middles: Sequence[Table], what: str) -> list[Table]:
    n = len(middles)
    width = len(first)

    def fresh() -> _Chain:
        return _Chain([first] + [_unknown_table(width - 1) for _ in range(n - 1)] + [last], middles)

    forward = fresh()
    for j in range(1, n + 1):
        forward.apply(j)
    backward = fresh()
    for j in range(n, 0, -1):
        backward.apply(j)

    joint = fresh()
    for k in range(n + 1):
        _check_agreement(forward.x[k], backward.x[k], f"{what}[{k}]")
        joint.x[k] = _meet_tables(forward.x[k], backward.x[k])
    moved = True
    while moved:
        moved = False
        for j in range(1, n + 1):
            moved |= joint.apply(j)
    return joint.x


class _SideEngine:
    """F-side computations on one normalized resolution."""

    def __init__(self, w: PureResolution):
        self.w = w
        self.n = w.n
        self.top = w.top
        self._memo: dict[tuple, object] = {}

    def line(self, terms: Iterable[tuple[int, int]], t: int) -> Table:
        terms = list(terms)
        return tuple(
            CohomDim.known(sum(m * line_cohom(self.n, d + t, q) for d, m in terms)) for q in range(self.n + 1)
        )

    def _cached(self, key, compute):
        hit = self._memo.get(key)
        if hit is None:
            # concurrent inserts are idempotent: every writer computes the same value
            hit = self._memo.setdefault(key, compute())
        return hit

    def syz_chain(self, t: int) -> list[Table]:
        """Tables of F_0(t), ..., F_n(t)."""
        return self._cached(("F", t), lambda: self._syz_chain(t))

    def _syz_chain(self, t: int) -> list[Table]:
        w, top = self.w, self.top
        first = self.line([(t - top, w.betti[0])], 0)
        last = self.line([(t, w.betti[-1])], 0)
        middles = [self.line([(t + w.degrees[j] - top, w.betti[j])], 0) for j in range(1, self.n + 1)]
        return _solve_chain(first, last, middles, f"F({t})")

    def dual_chain(self, t: int) -> list[Table]:
        """Tables of F_0^v(t), ..., F_n^v(t)."""
        return self._cached(("Fv", t), lambda: self._dual_chain(t))

    def _dual_chain(self, t: int) -> list[Table]:
        # Y_j = F_{n-j}^v sits in 0 -> Y_{j-1} -> L_{n-j+1}^v -> Y_j -> 0
        w, top, n = self.w, self.top, self.n
        first = self.line([(t, w.betti[-1])], 0)
        last = self.line([(t + top, w.betti[0])], 0)
        middles = [self.line([(t + top - w.degrees[n - j + 1], w.betti[n - j + 1])], 0) for j in range(1, n + 1)]
        ys = _solve_chain(first, last, middles, f"F^v({t})")
        return ys[::-1]

    def syz(self, i: int, t: int) -> Table:
        return self.syz_chain(t)[i]

    def syz_dual(self, i: int, t: int) -> Table:
        return self.dual_chain(t)[i]

    def tensor_grid(self, t: int) -> list[list[Table]]:
        """T[a][b] = F_a x F_b^v (t) for 0 <= a, b <= n."""
        return self._cached(("T", t), lambda: self._tensor_grid(t))

    def _tensor_grid(self, t: int) -> list[list[Table]]:
        w, top, n = self.w, self.top, self.n
        b0, bl = w.betti[0], w.betti[-1]
        unknown = _unknown_table(n)

        def boundary() -> list[list[Table]]:
            grid = [[unknown] * (n + 1) for _ in range(n + 1)]
            for b in range(n + 1):
                grid[0][b] = _scale(self.syz_dual(b, t - top), b0)
                grid[n][b] = _scale(self.syz_dual(b, t), bl)
            for a in range(1, n):
                grid[a][0] = _scale(self.syz(a, t + top), b0)
                grid[a][n] = _scale(self.syz(a, t), bl)
            return grid

        # row b: 0 -> T[a-1][b] -> b_a F_b^v(t + d_a - top) -> T[a][b] -> 0
        row_mid = {
            (a, b): _scale(self.syz_dual(b, t + w.degrees[a] - top), w.betti[a])
            for a in range(1, n + 1)
            for b in range(1, n)
        }
        # column a: 0 -> T[a][b] -> b_b F_a(t + top - d_b) -> T[a][b-1] -> 0
        col_mid = {
            (a, b): _scale(self.syz(a, t + top - w.degrees[b]), w.betti[b])
            for a in range(1, n)
            for b in range(1, n + 1)
        }

        def row_step(grid, a, b) -> bool:
            x, _, y = _chase_triple(grid[a - 1][b], row_mid[a, b], grid[a][b])
            moved = x != grid[a - 1][b] or y != grid[a][b]
            grid[a - 1][b], grid[a][b] = x, y
            return moved

        def col_step(grid, a, b) -> bool:
            x, _, y = _chase_triple(grid[a][b], col_mid[a, b], grid[a][b - 1])
            moved = x != grid[a][b] or y != grid[a][b - 1]
            grid[a][b], grid[a][b - 1] = x, y
            return moved

        rows = boundary()
        for b in range(1, n):
            chain = _solve_chain(rows[0][b], rows[n][b], [row_mid[a, b] for a in range(1, n + 1)], f"T[.][{b}]({t})")
            for a in range(n + 1):
                rows[a][b] = chain[a]
        cols = boundary()
        for a in range(1, n):
            # the column chain runs from b = n down to b = 0
            chain = _solve_chain(
                cols[a][n], cols[a][0], [col_mid[a, b] for b in range(n, 0, -1)], f"T[{a}][.]({t})"
            )
            for k, b in enumerate(range(n, -1, -1)):
                cols[a][b] = chain[k]

        grid = boundary()
        for a in range(n + 1):
            for b in range(n + 1):
                _check_agreement(rows[a][b], cols[a][b], f"F_{a} x F_{b}^v({t})")
                grid[a][b] = _meet_tables(rows[a][b], cols[a][b])
        moved = True
        while moved:
            moved = False
            for b in range(1, n):
                for a in range(1, n + 1):
                    moved |= row_step(grid, a, b)
            for a in range(1, n):
                for b in range(1, n + 1):
                    moved |= col_step(grid, a, b)
        return grid


@dataclass
class CohomologyTable:
    node: SheafNode
    n: int
    window: tuple[int, int]
    entries: dict[tuple[int, int], CohomDim] = field(default_factory=dict)

    def column(self, t: int) -> list[CohomDim]:
        return [self.entries[q, t] for q in range(self.n + 1)]

    def twists(self) -> range:
        return range(self.window[0], self.window[1] + 1)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t"] + [f"q{q}" for q in range(self.n + 1)])
        for t in self.twists():
            writer.writerow([t] + [str(c) for c in self.column(t)])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "bundle": node_label(self.node),
            "window": list(self.window),
            "rows": [{"t": t, "h": [str(c) for c in self.column(t)]} for t in self.twists()],
        }


class CohomologyEngine:
    """Memoized cohomology evaluator for one resolution (either side)."""

    def __init__(self, res: PureResolution):
        self.res = require_valid(normalize(res))
        self.n = res.n
        self._sides = {side: _SideEngine(working_resolution(self.res, side)) for side in ("F", "G")}

    def cohom(self, node: SheafNode, t: int = 0) -> Table:
        base, shift = canonical(node)
        t += shift
        n = self.n
        if isinstance(base, LineSum):
            return self._sides["F"].line(base.terms, t)
        if isinstance(base, Syzygy):
            base.id.check_range(n)
            return self._sides[base.id.side].syz(base.id.index, t)
        if isinstance(base, Dual):
            sid = base.node.id
            sid.check_range(n)
            return self._sides[sid.side].syz_dual(sid.index, t)
        if isinstance(base, Tensor):
            base.a.check_range(n)
            base.b.check_range(n)
            table = self._sides[base.a.side].tensor_grid(t)[base.a.index][base.b.index]
            if base.a == base.b and t == 0:
                # the identity is a nonzero endomorphism
                table = (table[0].meet(CohomDim(1, None)),) + table[1:]
            return table
        raise TypeError(f"unsupported node {node!r}")

    def table(self, node: SheafNode, window: tuple[int, int] | None = None) -> CohomologyTable:
        window = window or default_window(self.res)
        lo, hi = window
        if lo > hi:
            raise ValueError(f"empty twist window {window}")
        table = CohomologyTable(node, self.n, (lo, hi))
        for t in range(lo, hi + 1):
            for q, c in enumerate(self.cohom(node, t)):
                table.entries[q, t] = c
        return table

    def hd(self, node: SheafNode, window: tuple[int, int] | None = None) -> CohomDim:
        """Homological dimension, read off the vanishing of intermediate cohomology over the window.

        hd <= d iff h^q(node(t)) = 0 for 1 <= q <= n-d-1 and every t.
        """
        n = self.n
        table = self.table(node, window)
        status = []  # per d: True (vanishes), False (some group nonzero), None (undetermined)
        for d in range(n):
            cells = [table.entries[q, t] for q in range(1, n - d) for t in table.twists()]
            if all(c.is_zero() for c in cells):
                status.append(True)
            elif any(c.is_positive() for c in cells):
                status.append(False)
            else:
                status.append(None)
        upper = status.index(True) if True in status else n - 1
        lower = 0
        for d in range(upper):
            if status[d] is False:
                lower = d + 1
        return CohomDim(lower, upper)


@lru_cache(maxsize=128)
def engine_for(res: PureResolution) -> CohomologyEngine:
    return CohomologyEngine(res)


def cohom(res: PureResolution, node: SheafNode, t: int = 0) -> Table:
    return engine_for(res).cohom(node, t)


def cohom_table(res: PureResolution, node: SheafNode, window: tuple[int, int] | None = None) -> CohomologyTable:
    return engine_for(res).table(node, window)


def hd(res: PureResolution, node: SheafNode, window: tuple[int, int] | None = None) -> CohomDim:
    return engine_for(res).hd(node, window)
