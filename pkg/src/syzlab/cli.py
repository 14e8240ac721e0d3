"""Command-line front end.

    syzlab generate koszul --n 3
    syzlab check res.json --which exceptional --side G
    syzlab cohomology --family koszul --n 2 --bundle F1 --window=-5:2
    syzlab verify res.json

Exit codes: 0 all yes / all checks pass, 1 some no / some check failed,
2 invalid input, 3 some undetermined and no no.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

from . import catalog
from .chase import Inconsistent
from .criteria import (
    NO,
    UNDETERMINED,
    NegativeSigma,
    TwoSidedMismatch,
    check_exceptionality,
    check_simplicity,
    sigma_sides,
)
from .engine import engine_for
from .nodes import dual, parse_bundle, syzygy, twist
from .resolution import (
    InvalidResolution,
    PureResolution,
    betti_inequalities,
    dualize,
    hilbert_defect,
    hk_betti,
    json_int,
    normalize,
)

EXIT_OK, EXIT_NO, EXIT_INVALID, EXIT_UNDETERMINED = 0, 1, 2, 3
WINDOW_ENV = "SYZLAB_WINDOW"
FAMILY_CHOICES = ["koszul", "gorenstein", "eagon-northcott", "hk"]


class UsageError(Exception):
    pass


def _dump(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def parse_window(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"window must look like LO:HI, got {text!r}") from None
    if lo > hi:
        raise UsageError(f"window {text!r} has LO > HI")
    return lo, hi


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"family {args.family} needs {', '.join(missing)}")


def _generate(args) -> PureResolution:
    fam = args.family
    if fam == "koszul":
        _need(args, "n")
        return catalog.koszul(args.n)
    if fam == "gorenstein":
        _need(args, "n", "t")
        return catalog.compressed_gorenstein(args.n, args.t)
    if fam == "eagon-northcott":
        _need(args, "n", "d", "a")
        return catalog.eagon_northcott(args.n, args.d, args.a)
    if fam == "hk":
        _need(args, "degrees")
        try:
            degrees = [int(x) for x in args.degrees.split(",")]
        except ValueError:
            raise UsageError(f"--degrees must be comma-separated integers, got {args.degrees!r}") from None
        n = args.n if args.n is not None else len(degrees) - 2
        return PureResolution(n, tuple(degrees), hk_betti(degrees, n))
    raise UsageError(f"unknown family {fam!r}")


def _load(args) -> PureResolution:
    if (args.input is None) == (args.family is None):
        raise UsageError("give exactly one input: a resolution JSON path ('-' for stdin) or --family")
    if args.family is not None:
        return _generate(args)
    try:
        if args.input == "-":
            data = json.load(sys.stdin)
        else:
            with open(args.input, encoding="utf-8") as fh:
                data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.input} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("resolution JSON must be an object with n, degrees, betti")
    return PureResolution.from_dict(data)


def _window(args) -> tuple[int, int] | None:
    if args.window is not None:
        return parse_window(args.window)
    env = os.environ.get(WINDOW_ENV)
    if env:
        return parse_window(env)
    return None


# -- generate -------------------------------------------------------------------


def cmd_generate(args) -> tuple[int, str]:
    return EXIT_OK, _dump(_generate(args).to_dict())


# -- check ----------------------------------------------------------------------


def _exit_for(statuses) -> int:
    statuses = list(statuses)
    if NO in statuses:
        return EXIT_NO
    if UNDETERMINED in statuses:
        return EXIT_UNDETERMINED
    return EXIT_OK


def _pretty_verdict(v: dict) -> list[str]:
    lines = [f"{v['bundle']:<6} {v['status']}"]
    for r in v["reasons"]:
        wit = ", ".join(f"{k}={val}" for k, val in r["witness"].items())
        lines.append(f"    {r['criterion']}: {r['ref']}" + (f" [{wit}]" if wit else ""))
    return lines


def cmd_check(args) -> tuple[int, str]:
    res = _load(args)
    out: dict[str, Any] = {"resolution": res.to_dict(), "side": args.side}
    statuses = []
    if args.which in ("simplicity", "both"):
        simple = check_simplicity(res, args.side)
        out["simplicity"] = [v.to_dict() for v in simple]
        statuses += [v.status for v in simple]
    if args.which in ("exceptional", "both"):
        report = check_exceptionality(res, args.side)
        out["exceptionality"] = report.to_dict()
        statuses += [v.status for v in report.bundles]
    code = _exit_for(statuses)
    if args.format == "pretty":
        lines = [f"resolution n={res.n} degrees={list(res.degrees)} betti={list(res.betti)} side={args.side}"]
        if "simplicity" in out:
            lines.append("simplicity:")
            for v in out["simplicity"]:
                lines += ["  " + x for x in _pretty_verdict(v)]
        if "exceptionality" in out:
            lines.append("exceptionality:")
            for v in out["exceptionality"]["bundles"] + [out["exceptionality"]["aggregate"]]:
                lines += ["  " + x for x in _pretty_verdict(v)]
        return code, "\n".join(lines) + "\n"
    return code, _dump(out)


# -- cohomology -----------------------------------------------------------------


def cmd_cohomology(args) -> tuple[int, str]:
    res = _load(args)
    try:
        node = parse_bundle(args.bundle)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    table = engine_for(res).table(node, _window(args))
    if args.format == "json":
        return EXIT_OK, _dump(table.to_dict())
    if args.format == "pretty":
        rows = [["t"] + [f"h^{q}" for q in range(res.n + 1)]]
        rows += [[str(t)] + [str(c) for c in table.column(t)] for t in table.twists()]
        widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
        lines = [table.to_dict()["bundle"]]
        lines += ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in rows]
        return EXIT_OK, "\n".join(lines) + "\n"
    return EXIT_OK, table.to_csv()


# -- verify ---------------------------------------------------------------------


def _entry(name: str, status: str, **witness) -> dict[str, Any]:
    return {"check": name, "status": status, "witness": witness}


def verify_report(res: PureResolution, window: tuple[int, int] | None = None) -> list[dict[str, Any]]:
    """Structural, exactness and identity checks on one resolution; exactness gates the rest."""
    report = []
    d, b = res.degrees, res.betti
    structural = [f"d_{i} >= d_{i + 1}" for i in range(len(d) - 1) if d[i] >= d[i + 1]]
    structural += [f"b_{i} = {x}" for i, x in enumerate(b) if x < 1]
    report.append(_entry("structure", "fail" if structural else "pass", violations=structural))
    defect = hilbert_defect(res)
    report.append(
        _entry("hilbert_defect", "fail" if any(defect) else "pass", coefficients=[json_int(c) for c in defect])
    )
    later = ["lem_coeff", "hd", "betti_inequalities", "sigma_two_sided", "sigma_engine"]
    if structural or any(defect):
        return report + [_entry(name, "skipped", reason="resolution is not exact") for name in later]

    w = normalize(res)
    n, top = w.n, w.top
    eng = engine_for(w)

    bad = []
    for side in ("F", "G"):
        ws = w if side == "F" else dualize(w)
        for i in range(2, n + 1):
            h0 = eng.cohom(twist(dual(syzygy(side, i - 1)), ws.degrees[i] - top), 0)[0]
            if not (h0.is_known and h0.value == ws.betti[i]):
                bad.append({"bundle": f"{side}_{i - 1}", "h0": str(h0), "b_i": json_int(ws.betti[i])})
    report.append(_entry("lem_coeff", "fail" if bad else "pass", mismatches=bad))

    bad = []
    for side in ("F", "G"):
        for i in range(1, n):
            got = eng.hd(syzygy(side, i), window)
            if not (got.is_known and got.value == i):
                bad.append({"bundle": f"{side}_{i}", "hd": str(got), "expected": i})
    report.append(_entry("hd", "fail" if bad else "pass", mismatches=bad))

    failed = [{"inequality": c.name, "value": json_int(c.value), "bound": c.bound} for c in betti_inequalities(w) if not c.holds]
    report.append(_entry("betti_inequalities", "fail" if failed else "pass", violations=failed))

    bad = []
    values = {}
    for i in range(2, n):
        s1f, s1b, s2f, s2b = sigma_sides(w, i)
        values[i] = (s1f, s2f)
        if s1f != s1b or s2f != s2b or min(s1f, s2f) < 0:
            bad.append({"i": i, "sigma1": [s1f, s1b], "sigma2": [s2f, s2b]})
    report.append(_entry("sigma_two_sided", "fail" if bad else "pass", mismatches=bad))

    bad = []
    for i, (s1, s2) in values.items():
        h1 = eng.cohom(twist(dual(syzygy("F", i)), w.degrees[i] - top), 0)[i]
        h2 = eng.cohom(twist(syzygy("F", i - 1), top - w.degrees[i]), 0)[n - i + 1]
        if (h1.is_known and h1.value != s1) or (h2.is_known and h2.value != s2):
            bad.append({"i": i, "sigma1": s1, "engine1": str(h1), "sigma2": s2, "engine2": str(h2)})
    report.append(_entry("sigma_engine", "fail" if bad else "pass", mismatches=bad))
    return report


def cmd_verify(args) -> tuple[int, str]:
    res = _load(args)
    report = verify_report(res, _window(args))
    code = EXIT_OK if all(e["status"] == "pass" for e in report) else EXIT_NO
    if args.format == "pretty":
        lines = []
        for e in report:
            wit = ", ".join(f"{k}={v}" for k, v in e["witness"].items())
            lines.append(f"{e['check']:<20} {e['status']:<8} {wit}")
        return code, "\n".join(lines) + "\n"
    return code, _dump({"resolution": res.to_dict(), "checks": report})


# -- argument parsing -----------------------------------------------------------


def _add_family_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="dimension of projective space")
    p.add_argument("--d", type=int, help="Eagon-Northcott form degree")
    p.add_argument("--a", type=int, help="Eagon-Northcott matrix size parameter")
    p.add_argument("--t", type=int, help="Gorenstein socle parameter")
    p.add_argument("--degrees", help="comma-separated degree sequence for hk")


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", help="resolution JSON file, or - for stdin")
    p.add_argument("--family", choices=FAMILY_CHOICES, help="generate the input inline instead of reading a file")
    _add_family_params(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="syzlab", description="Pure resolutions and their syzygy bundles on P^n.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="print a resolution from a named family")
    p.add_argument("family", choices=FAMILY_CHOICES)
    _add_family_params(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("check", help="simplicity / exceptionality verdicts")
    _add_input(p)
    p.add_argument("--which", choices=["simplicity", "exceptional", "both"], default="both")
    p.add_argument("--side", choices=["F", "G"], default="F")
    p.add_argument("--format", choices=["json", "pretty"], default="json")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("cohomology", help="cohomology table of a bundle over a twist window")
    _add_input(p)
    p.add_argument("--bundle", required=True, help="F1, G2, F1*, F1xF1*, F2*(-3), O(-2)^3+O(1), ...")
    p.add_argument("--window", help=f"LO:HI (overrides ${WINDOW_ENV}); write --window=-5:2 for negative LO")
    p.add_argument("--format", choices=["csv", "json", "pretty"], default="csv")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("verify", help="run the exactness and identity checks")
    _add_input(p)
    p.add_argument("--window", help="twist window used for homological dimension, LO:HI")
    p.add_argument("--format", choices=["json", "pretty"], default="json")
    p.set_defaults(func=cmd_verify)
    return parser


def _join_window(argv: list[str]) -> list[str]:
    # let "--window -5:2" through argparse, which would take -5:2 for an option
    out = []
    it = iter(argv)
    for a in it:
        if a == "--window":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--window={nxt}")
        else:
            out.append(a)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = _join_window(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        code, text = args.func(args)
    except (UsageError, InvalidResolution, ValueError) as exc:
        print(f"syzlab: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (Inconsistent, TwoSidedMismatch, NegativeSigma) as exc:
        # exact input, yet contradictory numbers: an internal failure, not a verdict
        print(f"syzlab: internal error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(text)
    return code


__all__ = ["main", "build_parser", "verify_report", "parse_window"]
