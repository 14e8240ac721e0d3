"""Simplicity and exceptionality decisions for syzygy bundles, with reason chains.

Every verdict is ``yes``, ``no`` or ``undetermined`` and carries the list of
criteria that produced it together with exact integer witnesses.  A verdict
is never ``yes`` or ``no`` on the strength of a cohomology dimension that the
engine could not pin down.

Exceptionality is decided by induction along the syzygy chain.  The first
bundle is settled by the two numerical conditions on (b_0, b_1, d_1); each
later bundle by the vanishing of two cohomology groups given that the
previous bundle is exceptional.  The same induction run on the dual
resolution reaches the bundles from the other end (F_i and G_{n-i} share their
endomorphism bundle), and per-bundle verdicts combine both runs.  In the
middle case for odd n, with the two groups of equal nonzero dimension, the
answer depends on whether a connecting map is an isomorphism; that case is
reported as undetermined and is never turned into a ``yes``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .arith import binom_trunc
from .chase import CohomDim
from .engine import engine_for
from .nodes import SyzygyId, dual, syzygy, tensor, twist
from .resolution import PureResolution, dualize, json_int, require_valid, working_resolution

__all__ = [
    "YES",
    "NO",
    "UNDETERMINED",
    "Reason",
    "Verdict",
    "Check",
    "TwoSidedMismatch",
    "NegativeSigma",
    "ExceptionalityReport",
    "PairReport",
    "sigma1",
    "sigma2",
    "sigma_sides",
    "check_simplicity",
    "simplicity_steps",
    "check_exceptionality",
    "cokernel_pair_conditions",
    "steiner_pair_check",
    "steiner_corollary",
]

YES, NO, UNDETERMINED = "yes", "no", "undetermined"

REF_EXTREME_BETTI = "extreme Betti number equal to 1 makes every syzygy simple"
REF_RANK_N = "end syzygy of rank n is stable, hence every syzygy is simple"
REF_COKERNEL_INEQ = "generic cokernel bundle with q <= 1 at the first or last map is simple"
REF_PROPAGATION = "simplicity of F_1 or F_{n-1} propagates to every syzygy"
REF_DIRECT_END = "h^0 of the endomorphism bundle, by exact-sequence chase"
REF_EXC_FIRST = "first syzygy exceptional iff b_0^2+b_1^2-C(d_1+n,n)b_0b_1 = 1 and d_1 <= n"
REF_EXC_STEP = "F_i exceptional given F_{i-1} exceptional iff the two boundary groups vanish"
REF_EXC_MIDDLE = "odd n, middle index: exceptional iff the connecting map is an isomorphism (open case)"
REF_EXC_ALL = "all syzygies exceptional iff the first-syzygy conditions and every step condition hold"
REF_DUAL_CHAIN = "F_i and G_{n-i} have isomorphic endomorphism bundles"


class TwoSidedMismatch(ArithmeticError):
    pass


class NegativeSigma(ArithmeticError):
    pass


def _witness(**values: Any) -> dict[str, Any]:
    return {k: json_int(v) if isinstance(v, int) and not isinstance(v, bool) else v for k, v in values.items()}


@dataclass
class Reason:
    criterion: str
    ref: str
    witness: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"criterion": self.criterion, "ref": self.ref, "witness": self.witness}


@dataclass
class Verdict:
    bundle: str
    status: str
    reasons: list[Reason] = field(default_factory=list)

    def __post_init__(self):
        if self.status not in (YES, NO, UNDETERMINED):
            raise ValueError(f"bad status {self.status!r}")
        if not self.reasons:
            raise ValueError("a verdict must cite at least one reason")

    def to_dict(self) -> dict[str, Any]:
        return {"bundle": self.bundle, "status": self.status, "reasons": [r.to_dict() for r in self.reasons]}


@dataclass
class Check:
    """One condition inside a pair report."""

    name: str
    status: str
    witness: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"condition": self.name, "status": self.status, "witness": self.witness}


# -- closed-form cohomology sums -------------------------------------------------


def _check_middle_index(res: PureResolution, i: int) -> None:
    if not 2 <= i <= res.n - 1:
        raise ValueError(f"index {i} outside [2, {res.n - 1}]")


def sigma_sides(res: PureResolution, i: int) -> tuple[int, int, int, int]:
    """Front and back closed forms (s1_front, s1_back, s2_front, s2_back).

    s1 = h^i(F_i^v(d_i - d_{n+1})) and s2 = h^{n-i+1}(F_{i-1}(d_{n+1} - d_i)),
    each counted once from the b_0 end and once from the b_{n+1} end.
    """
    w = working_resolution(res, "F")
    _check_middle_index(w, i)
    n, d, b = w.n, w.degrees, w.betti
    sign = -1 if n % 2 == 0 else 1  # back sums carry (-1)^{k+1} for even n, (-1)^k for odd n
    s1_front = sum((-1) ** k * b[k] * binom_trunc(d[i] - d[k] + n, n) for k in range(i + 1))
    s1_back = sum(sign * (-1) ** k * b[k] * binom_trunc(d[k] - d[i] - 1, n) for k in range(i + 1, n + 2))
    s2_front = sum((-1) ** k * b[k] * binom_trunc(d[i] - d[k] - 1, n) for k in range(i))
    s2_back = sum(sign * (-1) ** k * b[k] * binom_trunc(d[k] - d[i] + n, n) for k in range(i, n + 2))
    return s1_front, s1_back, s2_front, s2_back


def _checked(front: int, back: int, what: str) -> int:
    if front != back:
        raise TwoSidedMismatch(f"{what}: front sum {front} != back sum {back}")
    if front < 0:
        raise NegativeSigma(f"{what} = {front} < 0")
    return front


def sigma1(res: PureResolution, i: int) -> int:
    """h^i(F_i^v(d_i - d_{n+1}))."""
    s1f, s1b, _, _ = sigma_sides(res, i)
    return _checked(s1f, s1b, f"sigma1({i})")


def sigma2(res: PureResolution, i: int) -> int:
    """h^{n-i+1}(F_{i-1}(d_{n+1} - d_i))."""
    _, _, s2f, s2b = sigma_sides(res, i)
    return _checked(s2f, s2b, f"sigma2({i})")


# -- simplicity -------------------------------------------------------------------


def _end_h0(res: PureResolution, side: str, i: int) -> CohomDim:
    sid = SyzygyId(side, i)
    return engine_for(res).cohom(tensor(sid, sid), 0)[0]


def simplicity_steps(res: PureResolution, side: str = "F"):
    """Yield (step name, verdicts or None) for every cascade step, in order.

    A step yields None when its criterion does not fire.  The last step (the
    engine) always yields verdicts.  Lazy, so callers that stop at the first
    firing step never touch the engine.
    """
    require_valid(res)
    w = working_resolution(res, side)
    n, d, b = w.n, w.degrees, w.betti
    labels = [f"{side}_{i}" for i in range(1, n)]

    def everyone(reason: Reason) -> list[Verdict]:
        return [Verdict(label, YES, [reason]) for label in labels]

    fired = b[0] == 1 or b[-1] == 1
    yield "extreme-betti", (
        everyone(Reason("extreme-betti", REF_EXTREME_BETTI, _witness(b_0=b[0], b_last=b[-1]))) if fired else None
    )

    fired = b[1] - b[0] == n or b[n] - b[n + 1] == n
    witness = _witness(n=n, rank_first=b[1] - b[0], rank_last=b[n] - b[n + 1])
    yield "end-rank-n", everyone(Reason("end-rank-n", REF_RANK_N, witness)) if fired else None

    q_first = b[0] ** 2 + b[1] ** 2 - binom_trunc(d[1] + n, n) * b[0] * b[1]
    q_last = b[-1] ** 2 + b[n] ** 2 - binom_trunc(d[n + 1] - d[n] + n, n) * b[-1] * b[n]
    witness = _witness(q_first=q_first, q_last=q_last, assumes="generic first/last map")
    fired = q_first <= 1 or q_last <= 1
    yield "cokernel-inequality", everyone(Reason("cokernel-inequality", REF_COKERNEL_INEQ, witness)) if fired else None

    yield "engine", _engine_simplicity(res, side, labels)


def _engine_simplicity(res: PureResolution, side: str, labels: list[str]) -> list[Verdict]:
    n = res.n
    ends = {i: _end_h0(res, side, i) for i in sorted({1, n - 1})}
    for i, h0 in ends.items():
        if h0.is_known and h0.value == 1:
            reason = Reason(
                "end-syzygy-simple",
                REF_PROPAGATION,
                _witness(bundle=f"{side}_{i}", h0_end=str(h0), ref_detail=REF_DIRECT_END),
            )
            return [Verdict(label, YES, [reason]) for label in labels]
    # neither end is known simple: settle each bundle on its own h^0(End)
    verdicts = []
    for i in range(1, n):
        h0 = ends[i] if i in ends else _end_h0(res, side, i)
        witness = _witness(h0_end=str(h0))
        if h0.is_known and h0.value == 1:
            verdicts.append(Verdict(labels[i - 1], YES, [Reason("direct-end", REF_DIRECT_END, witness)]))
        elif h0.lo > 1:
            verdicts.append(Verdict(labels[i - 1], NO, [Reason("direct-end", REF_DIRECT_END, witness)]))
        else:
            missing = {**witness, "missing": f"h^0(End {labels[i - 1]})"}
            verdicts.append(Verdict(labels[i - 1], UNDETERMINED, [Reason("undetermined-end", REF_DIRECT_END, missing)]))
    return verdicts


def check_simplicity(res: PureResolution, side: str = "F") -> list[Verdict]:
    """One verdict per syzygy; the first criterion that fires is reported."""
    for _, verdicts in simplicity_steps(res, side):
        if verdicts is not None:
            return verdicts
    raise AssertionError("the engine step always answers")


# -- exceptionality ---------------------------------------------------------------


@dataclass
class _Step:
    status: str
    reasons: list[Reason]
    conjecture: bool = False


def _first_conditions(w: PureResolution) -> tuple[Reason, bool, Reason, bool]:
    n, d, b = w.n, w.degrees, w.betti
    q = b[0] ** 2 + b[1] ** 2 - binom_trunc(d[1] + n, n) * b[0] * b[1]
    cond_i = Reason("condition-i", REF_EXC_FIRST, _witness(value=q, required=1, holds=q == 1))
    cond_ii = Reason("condition-ii", REF_EXC_FIRST, _witness(d_1=d[1], n=n, holds=d[1] <= n))
    return cond_i, q == 1, cond_ii, d[1] <= n


def _step_condition(w: PureResolution, i: int) -> _Step:
    """Condition on F_i assuming F_{i-1} is exceptional."""
    n = w.n
    s1, s2 = sigma1(w, i), sigma2(w, i)
    middle = n % 2 == 1 and 2 * i == n + 1
    case = "middle" if middle else ("half" if 2 * i == n else "generic")
    witness = _witness(i=i, sigma1=s1, sigma2=s2, case=case)
    if s1 == 0 and s2 == 0:
        return _Step(YES, [Reason("condition-iii", REF_EXC_STEP, witness)])
    if not middle:
        return _Step(NO, [Reason("condition-iii", REF_EXC_STEP, witness)])
    if s1 != s2:
        # spaces of different dimension cannot be isomorphic
        return _Step(NO, [Reason("condition-iii", REF_EXC_MIDDLE, witness)])
    return _Step(
        UNDETERMINED,
        [Reason("conjecture", REF_EXC_MIDDLE, {**witness, "missing": "rank of the connecting map"})],
        conjecture=True,
    )


def _induction(w: PureResolution, side: str) -> tuple[list[_Step], list[Reason]]:
    """Per-bundle outcome of the induction from the first syzygy upward, plus the raw sub-results."""
    n = w.n
    cond_i, ok_i, cond_ii, ok_ii = _first_conditions(w)
    conditions = [cond_i, cond_ii]
    steps = [_Step(YES if ok_i and ok_ii else NO, [cond_i, cond_ii])]
    for i in range(2, n):
        step = _step_condition(w, i)
        conditions.extend(step.reasons)
        prev = steps[-1]
        if prev.status == YES:
            steps.append(step)
        else:
            hold = Reason(
                "induction-blocked",
                REF_EXC_STEP,
                _witness(requires=f"{side}_{i - 1} exceptional", previous=prev.status),
            )
            steps.append(_Step(UNDETERMINED, [hold] + step.reasons, conjecture=step.conjecture))
    return steps, conditions


@dataclass
class ExceptionalityReport:
    side: str
    bundles: list[Verdict]
    aggregate: Verdict
    conditions: list[Reason]

    def to_dict(self) -> dict[str, Any]:
        return {
            "side": self.side,
            "bundles": [v.to_dict() for v in self.bundles],
            "aggregate": self.aggregate.to_dict(),
            "conditions": [r.to_dict() for r in self.conditions],
        }


def _tag(reasons: list[Reason], route: str) -> list[Reason]:
    return [Reason(r.criterion, r.ref, {**r.witness, "route": route}) for r in reasons]


def check_exceptionality(res: PureResolution, side: str = "F") -> ExceptionalityReport:
    require_valid(res)
    w = working_resolution(res, side)
    n = w.n
    other = "G" if side == "F" else "F"
    labels = [f"{side}_{i}" for i in range(1, n)]

    simple = check_simplicity(res, side)
    if any(v.status != YES for v in simple):
        blocked = [s.bundle for s in simple if s.status != YES]
        reason = Reason("simplicity-required", REF_EXC_ALL, _witness(not_simple=blocked))
        bundles = [Verdict(label, UNDETERMINED, [reason]) for label in labels]
        return ExceptionalityReport(side, bundles, Verdict(f"{side}_*", UNDETERMINED, [reason]), [])

    up, conditions = _induction(w, side)
    # the induction on the dual resolution reaches F_i as its bundle n-i
    down, _ = _induction(dualize(w), other)

    bundles = []
    for i in range(1, n):
        a, c = up[i - 1], down[n - i - 1]
        statuses = {a.status, c.status}
        reasons = _tag(a.reasons, f"{side}-chain") + _tag(c.reasons, f"{other}-chain:{other}_{n - i}")
        if YES in statuses and NO in statuses:
            raise ArithmeticError(f"{labels[i - 1]}: the two induction chains contradict each other")
        if NO in statuses:
            status = NO
        elif YES in statuses and not (a.conjecture or c.conjecture):
            status = YES
        else:
            status = UNDETERMINED
        if c.status != UNDETERMINED or status != UNDETERMINED:
            reasons.append(Reason("dual-chain", REF_DUAL_CHAIN, _witness(partner=f"{other}_{n - i}")))
        bundles.append(Verdict(labels[i - 1], status, reasons))

    statuses = [v.status for v in bundles]
    if all(s == YES for s in statuses):
        agg = YES
    elif NO in statuses:
        agg = NO
    else:
        agg = UNDETERMINED
    summary = _witness(
        bundles={v.bundle: v.status for v in bundles},
        conditions={_cond_key(r): _cond_status(r) for r in conditions},
    )
    aggregate = Verdict(f"{side}_*", agg, [Reason("all-bundles", REF_EXC_ALL, summary)])
    return ExceptionalityReport(side, bundles, aggregate, conditions)


def _cond_key(r: Reason) -> str:
    if r.criterion in ("condition-iii", "conjecture"):
        return f"iii[{r.witness['i']}]"
    return r.criterion.replace("condition-", "")


def _cond_status(r: Reason) -> str:
    if r.criterion == "conjecture":
        return UNDETERMINED
    if "holds" in r.witness:
        return YES if r.witness["holds"] else NO
    return YES if r.witness["sigma1"] == 0 and r.witness["sigma2"] == 0 else NO


# -- cokernel / Steiner pairs -----------------------------------------------------


def _status_zero(c: CohomDim) -> str:
    if c.is_zero():
        return YES
    if c.is_positive():
        return NO
    return UNDETERMINED


@dataclass
class PairReport:
    """Pair (F_{i-1}, O(d_i - d_{n+1})) and the cokernel F_i."""

    bundle: str
    index: int
    checks: list[Check]
    dim_w: CohomDim
    q_value: int | None
    status: str
    conclusion: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "bundle": self.bundle,
            "index": self.index,
            "status": self.status,
            "dim_W": str(self.dim_w),
            "q": None if self.q_value is None else json_int(self.q_value),
            "checks": [c.to_dict() for c in self.checks],
            "conclusion": self.conclusion,
        }


def _pair_groups(res: PureResolution, i: int, side: str):
    w = working_resolution(res, side)
    _check_middle_index(w, i)
    shift = w.top - w.degrees[i]
    eng = engine_for(res)
    prev = syzygy(side, i - 1)
    hom_side = eng.cohom(twist(prev, shift), 0)  # Ext^k(O(d_i - d_{n+1}), F_{i-1})
    dual_side = eng.cohom(twist(dual(prev), -shift), 0)  # Ext^k(F_{i-1}, O(d_i - d_{n+1}))
    return w, hom_side, dual_side


def _fold(statuses) -> str:
    statuses = list(statuses)
    if all(s == YES for s in statuses):
        return YES
    if NO in statuses:
        return NO
    return UNDETERMINED


def cokernel_pair_conditions(res: PureResolution, i: int, side: str = "F") -> PairReport:
    require_valid(res)
    w, hom_side, dual_side = _pair_groups(res, i, side)
    prev = f"{side}_{i - 1}"
    simple = {v.bundle: v.status for v in check_simplicity(res, side)}
    dim_w = dual_side[0]
    b_i = w.betti[i]
    w_status = YES if dim_w.lo >= 3 else (NO if dim_w.hi is not None and dim_w.hi < 3 else UNDETERMINED)
    checks = [
        Check("simple", simple[prev], _witness(bundle=prev, line_bundle="simple")),
        Check("hom-vanishes", _status_zero(hom_side[0]), _witness(h0=str(hom_side[0]))),
        Check("ext1-vanishes", _status_zero(hom_side[1]), _witness(h1=str(hom_side[1]))),
        Check("globally-generated", YES, _witness(reason=f"quotient of O^{b_i}")),
        Check("dim-W-at-least-3", w_status, _witness(dim_W=str(dim_w), b_i=b_i)),
    ]
    q_value = 1 + b_i**2 - dim_w.value * b_i if dim_w.is_known else None
    return PairReport(f"{side}_{i}", i, checks, dim_w, q_value, _fold(c.status for c in checks))


def steiner_pair_check(res: PureResolution, i: int, side: str = "F") -> PairReport:
    """Cokernel conditions plus the higher Ext vanishings of a strongly exceptional pair."""
    report = cokernel_pair_conditions(res, i, side)
    w, hom_side, dual_side = _pair_groups(res, i, side)
    n = w.n
    for k in range(2, n + 1):
        report.checks.append(Check(f"ext{k}(E1,E0)-vanishes", _status_zero(hom_side[k]), _witness(h=str(hom_side[k]))))
    for k in range(1, n + 1):
        report.checks.append(Check(f"ext{k}(E0,E1)-vanishes", _status_zero(dual_side[k]), _witness(h=str(dual_side[k]))))
    report.status = _fold(c.status for c in report.checks)
    cond_i, ok_i, _, _ = _first_conditions(w)
    blockers = []
    if report.status != YES:
        blockers.append(f"pair not shown strongly exceptional ({report.status})")
    if not ok_i:
        blockers.append(f"condition (i) fails with value {cond_i.witness['value']}")
    if blockers:
        report.conclusion = "corollary withheld: " + "; ".join(blockers)
    else:
        report.conclusion = "strongly exceptional pair; condition (i) holds"
    return report


def steiner_corollary(res: PureResolution, side: str = "F") -> Verdict:
    """All pairs strongly exceptional and condition (i) give exceptionality of every syzygy."""
    require_valid(res)
    w = working_resolution(res, side)
    reports = [steiner_pair_check(res, i, side) for i in range(2, w.n)]
    cond_i, ok_i, _, _ = _first_conditions(w)
    witness = _witness(pairs={r.bundle: r.status for r in reports}, condition_i=cond_i.witness["value"])
    if ok_i and all(r.status == YES for r in reports):
        return Verdict(f"{side}_*", YES, [Reason("steiner-corollary", REF_EXC_ALL, witness)])
    # the corollary is only a sufficient condition
    return Verdict(f"{side}_*", UNDETERMINED, [Reason("steiner-corollary", REF_EXC_ALL, witness)])
