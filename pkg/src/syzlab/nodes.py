"""Symbolic sheaf expressions built over a pure resolution.

Nodes are immutable and hashable.  Build them through :func:`twist`,
:func:`dual`, :func:`tensor` and :func:`line_sum`, which keep expressions in
canonical form: twists are pushed into line sums, ``dual(dual(x)) == x`` and
the dual of a line sum negates its twists.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

__all__ = [
    "SyzygyId",
    "LineSum",
    "Syzygy",
    "Dual",
    "Twist",
    "Tensor",
    "SheafNode",
    "line_sum",
    "syzygy",
    "twist",
    "dual",
    "tensor",
    "canonical",
    "node_label",
    "parse_bundle",
]


@dataclass(frozen=True, order=True)
class SyzygyId:
    """Syzygy F_i (dual-twisted chain) or G_i (original chain), 1 <= i <= n-1."""

    side: str
    index: int

    def __post_init__(self):
        if self.side not in ("F", "G"):
            raise ValueError(f"side must be 'F' or 'G', got {self.side!r}")
        if self.index < 1:
            raise ValueError(f"syzygy index must be >= 1, got {self.index}")

    def check_range(self, n: int) -> None:
        if not 1 <= self.index <= n - 1:
            raise ValueError(f"{self.label} out of range: index must lie in [1, {n - 1}]")

    @property
    def label(self) -> str:
        return f"{self.side}_{self.index}"


@dataclass(frozen=True)
class LineSum:
    terms: tuple  # sorted ((twist, multiplicity), ...), multiplicities > 0


@dataclass(frozen=True)
class Syzygy:
    id: SyzygyId


@dataclass(frozen=True)
class Dual:
    node: "SheafNode"


@dataclass(frozen=True)
class Twist:
    node: "SheafNode"
    t: int


@dataclass(frozen=True)
class Tensor:
    """F_a tensor (F_b)^dual, both syzygies taken on the same side."""

    a: SyzygyId
    b: SyzygyId

    def __post_init__(self):
        if self.a.side != self.b.side:
            raise ValueError("tensor factors must come from the same side")


SheafNode = Union[LineSum, Syzygy, Dual, Twist, Tensor]


def line_sum(pairs: Iterable[tuple[int, int]]) -> LineSum:
    """Direct sum of O(twist)^mult from ``(twist, mult)`` pairs."""
    acc: dict[int, int] = {}
    for d, mult in pairs:
        if mult < 0:
            raise ValueError("multiplicities must be non-negative")
        acc[d] = acc.get(d, 0) + mult
    return LineSum(tuple(sorted((d, m) for d, m in acc.items() if m)))


def syzygy(side: str, index: int) -> Syzygy:
    return Syzygy(SyzygyId(side, index))


def twist(node: SheafNode, t: int) -> SheafNode:
    if t == 0:
        return node
    if isinstance(node, LineSum):
        return LineSum(tuple((d + t, m) for d, m in node.terms))
    if isinstance(node, Twist):
        return twist(node.node, node.t + t)
    return Twist(node, t)


def dual(node: SheafNode) -> SheafNode:
    if isinstance(node, LineSum):
        return line_sum((-d, m) for d, m in node.terms)
    if isinstance(node, Dual):
        return node.node
    if isinstance(node, Twist):
        return twist(dual(node.node), -node.t)
    if isinstance(node, Tensor):
        # (F_a x F_b^v)^v = F_b x F_a^v
        return Tensor(node.b, node.a)
    return Dual(node)


def tensor(a: SyzygyId, b: SyzygyId) -> Tensor:
    return Tensor(a, b)


def canonical(node: SheafNode) -> tuple[SheafNode, int]:
    """Split ``node`` into a twist-free base and a twist.

    The base is a LineSum, Syzygy, Dual(Syzygy) or Tensor.  Raw dataclass trees
    (built without the helpers) are normalized on the way.
    """
    if isinstance(node, Twist):
        base, t = canonical(node.node)
        if isinstance(base, LineSum):
            return twist(base, t + node.t), 0
        return base, t + node.t
    if isinstance(node, Dual):
        base, t = canonical(node.node)
        if isinstance(base, Syzygy):
            return Dual(base), -t
        return canonical(twist(dual(base), -t))
    if isinstance(node, LineSum):
        return line_sum(node.terms), 0
    return node, 0


def node_label(node: SheafNode) -> str:
    base, t = canonical(node)
    if isinstance(base, LineSum):
        if not base.terms:
            return "0"
        return " + ".join(f"O({d})" + (f"^{m}" if m != 1 else "") for d, m in base.terms)
    if isinstance(base, Syzygy):
        text = base.id.label
    elif isinstance(base, Dual):
        text = f"{base.node.id.label}^v"
    else:
        text = f"{base.a.label} x {base.b.label}^v"
    return f"{text}({t})" if t else text


_SYZ = r"([FG])_?(\d+)"
_DUAL_MARK = r"(?:\*|\^v|\^\*)"
_TWIST = r"(?:\((-?\d+)\))?"
_SYZ_RE = re.compile(rf"^{_SYZ}({_DUAL_MARK})?{_TWIST}$")
_TENSOR_RE = re.compile(rf"^{_SYZ}\s*(?:x|⊗)\s*{_SYZ}{_DUAL_MARK}{_TWIST}$")
_LINE_RE = re.compile(r"^(\d*)\s*O\((-?\d+)\)(?:\^(\d+))?$")


def parse_bundle(spec: str) -> SheafNode:
    """Parse a bundle spec.

    Accepted forms: ``F1``, ``G_2``, ``F1*`` or ``F1^v`` (dual), ``F1xF1*``
    (F_1 tensor F_1^v), line sums such as ``O(-2)^3+O(1)``; any syzygy form
    takes an optional trailing twist, e.g. ``F2*(-3)``.
    """
    s = spec.strip().replace(" ", "")
    m = _TENSOR_RE.match(s)
    if m:
        a = SyzygyId(m.group(1), int(m.group(2)))
        b = SyzygyId(m.group(3), int(m.group(4)))
        return twist(Tensor(a, b), int(m.group(5) or 0))
    m = _SYZ_RE.match(s)
    if m:
        node: SheafNode = syzygy(m.group(1), int(m.group(2)))
        if m.group(3):
            node = dual(node)
        return twist(node, int(m.group(4) or 0))
    pairs = []
    for part in s.split("+"):
        lm = _LINE_RE.match(part)
        if not lm:
            raise ValueError(f"cannot parse bundle spec {spec!r}")
        mult = int(lm.group(1) or 1) * int(lm.group(3) or 1)
        pairs.append((int(lm.group(2)), mult))
    return line_sum(pairs)
