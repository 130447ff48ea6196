"""Command-line interface.

Exit codes: 0 success or verified terminal, 1 verified negative (non-terminal,
or no verdict reachable), 2 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Optional

from . import __version__
from .baskets import DEFAULT_R_BOUND, case_212_bounds, proof_table, run_enumeration
from .catalog import ConsistencyError, enumerate_contractions, verify_weights
from .duval import ChainConfig, partial_resolution_profile
from .filtration import WPoly, ord_w, special_surface_type
from .numeric import format_rat, mod_inverse
from .rr import (
    Basket,
    FictitiousPoint,
    InconsistentBasketError,
    a_e3,
    compare_index_two_closed_form,
    dim_quotient,
    sum_v,
)
from .wblowup import DEFAULT_CERT_BOUND, TERMINAL

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INCONSISTENT = 2


class Output:
    """Collects results and checks, then renders them as JSON or a table."""

    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.results: list[dict] = []
        self.checks: list[dict] = []
        self.lines: list[str] = []

    def result(self, item: dict):
        self.results.append(item)

    def check(self, name: str, passed: bool, lhs, rhs):
        self.checks.append({"name": name, "pass": bool(passed),
                            "lhs": jsonable(lhs), "rhs": jsonable(rhs)})

    def text(self, line: str = ""):
        self.lines.append(line)

    @property
    def all_pass(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_dict(self) -> dict:
        return {"command": self.command, "inputs": jsonable(self.inputs),
                "results": jsonable(self.results), "checks": self.checks}

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=2)
        out = list(self.lines)
        if self.checks:
            out.append("")
            out.append("checks:")
            for c in self.checks:
                mark = "ok  " if c["pass"] else "FAIL"
                out.append(f"  {mark} {c['name']}: {fmt_value(c['lhs'])} vs {fmt_value(c['rhs'])}")
        return "\n".join(out)


def jsonable(x):
    if isinstance(x, Fraction):
        return format_rat(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return "inf" if x == float("inf") else x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(y) for y in x]
    return str(x)


def fmt_value(x) -> str:
    if isinstance(x, list):
        return "[" + ", ".join(fmt_value(y) for y in x) + "]"
    return str(x)


def table(headers: list[str], rows: list[list[Any]]) -> list[str]:
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return lines


def basket_json(J: Basket) -> list[dict]:
    return [{"r": p.r, "v": p.v, **({"b": p.b} if p.b is not None else {})} for p in J]


def parse_basket(text: str) -> Basket:
    """``"r:v,r:v:b,..."``; the empty string is the empty basket."""
    pts = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        parts = [int(x) for x in item.split(":")]
        if len(parts) not in (2, 3):
            raise argparse.ArgumentTypeError(f"bad basket entry {item!r}; use r:v or r:v:b")
        pts.append(FictitiousPoint(*parts))
    return Basket(tuple(pts))


def parse_ints(text: str) -> list[int]:
    text = text.strip()
    return [int(x) for x in text.split(",")] if text else []


def parse_weights(text: str) -> tuple[int, int, int, int]:
    w = parse_ints(text)
    if len(w) != 4:
        raise argparse.ArgumentTypeError("weights need four comma-separated integers")
    return tuple(w)


# ----------------------------------------------------------------- commands


def cmd_proof_table(args, out: Output) -> int:
    rows = proof_table()
    trows = []
    for row in rows:
        item = {"shape": row.shape, "indices": row.indices_text, "aE3": row.a_e3_text}
        if row.family is not None:
            item["family"] = True
        else:
            item["basket"] = basket_json(row.J)
        out.result(item)
        trows.append([row.shape, row.indices_text, row.a_e3_text])
    out.lines += table(["shape", "indices", "aE3"], trows)
    return EXIT_OK


def _candidate_json(c) -> dict:
    return {"basket": basket_json(c.J), "a": c.a, "E3": c.E3, "r": c.r, "e": c.e,
            "case": c.case_label}


def cmd_baskets(args, out: Output) -> int:
    rep = run_enumeration(args.d, args.r_bound)
    out.result({"stage": "pre-exclusion",
                "candidates": [_candidate_json(c) for c in rep.pre_exclusion]})
    out.text(f"d = {args.d}: candidates before exclusion ({len(rep.pre_exclusion)})")
    out.lines += table(["J", "a", "E3", "r", "e", "case"],
                       [[c.J, c.a, c.E3, c.r, c.e, c.case_label] for c in rep.pre_exclusion])
    if rep.exclusions:
        ex = []
        out.text("")
        out.text("E.c2 consistency over b assignments:")
        for record in rep.exclusions:
            c = record.candidate
            assigns = []
            for B, verdict in record.assignments:
                assigns.append({"basket": basket_json(B), "consistent": verdict.consistent,
                                "A": verdict.A, "Ec2_solves": verdict.solves})
                A = ", ".join(f"A{i}={format_rat(v)}" for i, v in verdict.A.items())
                sol = ", ".join(f"i={i}: {format_rat(v)}" for i, v in verdict.solves.items())
                tag = "consistent" if verdict.consistent else "contradiction"
                out.text(f"  J={B} a={c.a} e={c.e}: {A}; E.c2 from {sol} -> {tag}")
            ex.append({"candidate": _candidate_json(c), "excluded": record.excluded,
                       "assignments": assigns})
        out.result({"stage": "exclusion", "records": ex})
    out.result({"stage": "final", "candidates": [_candidate_json(c) for c in rep.candidates]})
    out.text("")
    out.text(f"final candidates ({len(rep.candidates)})")
    out.lines += table(["J", "a", "E3", "r", "e", "case"],
                       [[c.J, c.a, c.E3, c.r, c.e, c.case_label] for c in rep.candidates])
    for fam in rep.families:
        out.result({"stage": "family", "indices": fam.label(), "aE3": fam.a_e3_formula(),
                    "prefix": [list(p) for p in fam.prefix], "v": fam.v, "r_min": fam.r_min})
    for note in rep.family_notes:
        out.text(note)
    if rep.truncated:
        out.text(f"note: unbounded families materialized only up to r = {args.r_bound}")
    out.result({"stage": "meta", "truncated": rep.truncated, "notes": rep.family_notes})
    for c in rep.candidates:
        rE3 = c.r * c.E3
        out.check(f"r*E3 integral for J={c.J} a={c.a}", rE3.denominator == 1 and rE3 > 0,
                  rE3, "positive integer")
        q = dim_quotient(2, c.a, c.J) if c.a >= 2 else None
        out.check(f"dim O/I_2 = 1 + d for J={c.J} a={c.a}", q == 1 + args.d, q, 1 + args.d)
    return EXIT_OK if out.all_pass else EXIT_INCONSISTENT


def cmd_contractions(args, out: Output) -> int:
    try:
        found = enumerate_contractions(args.N, args.cert_bound)
    except ConsistencyError as exc:
        out.text(f"consistency failure: {exc}")
        out.check("every listed blow-up verifies", False, str(exc), True)
        return EXIT_INCONSISTENT
    rows = []
    for c in found:
        out.result({"kind": c.kind, "s": c.st[0] if c.st else None,
                    "t": c.st[1] if c.st else None, "weights": list(c.weights.w),
                    "a": c.a, "E3": c.E3, "basket": basket_json(c.basket),
                    "verified": c.verified})
        label = f"(s,t)=({c.st[0]},{c.st[1]})" if c.st else c.kind
        rows.append([label, c.weights, c.a, c.E3, c.basket, "verified"])
        for chk in c.report.checks:
            out.check(f"{c.weights}: {chk.name}", chk.passed, chk.lhs, chk.rhs)
    out.text(f"N = {args.N}: {len(found)} weighted blow-ups")
    out.lines += table(["entry", "weights", "a", "E3", "basket", "status"], rows)
    return EXIT_OK if out.all_pass else EXIT_INCONSISTENT


def cmd_verify(args, out: Output) -> int:
    rep = verify_weights(args.N, args.weights, args.cert_bound)
    an = rep.analysis
    reports = []
    for sr in an.reports:
        item = {"chart": sr.chart, "location": sr.location, "kind": sr.kind,
                "verdict": sr.verdict, "detail": sr.detail}
        if sr.action is not None:
            item["action"] = {"r": sr.action.r, "weights": list(sr.action.weights),
                              "display": str(sr.action)}
        if sr.germ is not None:
            item["germ"] = sr.germ.to_str(("u1", "u2", "u3", "u4"))
        if sr.certificate is not None:
            item["certificate"] = {"kind": sr.certificate.kind,
                                   "data": {k: v for k, v in sr.certificate.data},
                                   "summary": sr.certificate.summary(),
                                   "reverified": sr.certificate.verify()}
        reports.append(item)
    res = {"verdict": rep.verdict, "a": rep.a, "E3": rep.E3,
           "exceptional": an.exceptional.to_str(), "exceptional_verdict": an.exceptional_verdict,
           "charts": [ch.describe() for ch in an.charts], "reports": reports}
    if rep.basket is not None:
        res.update(basket=basket_json(rep.basket), r=rep.r, e=rep.e, case=rep.case_label)
    out.result(res)
    out.text(f"N = {args.N}, weights {rep.weights}: {rep.verdict}")
    out.text(f"  discrepancy a = {rep.a}, E^3 = {rep.E3}")
    out.text(f"  exceptional divisor: {an.exceptional.to_str()} = 0 ({an.exceptional_verdict})")
    for ch in an.charts:
        out.text("  " + ch.describe())
    out.text("singularities:")
    for sr in an.reports:
        out.text("  " + sr.describe())
    if rep.basket is not None:
        out.text(f"basket J = {rep.basket}, r = {rep.r}, e = {rep.e}, case = {rep.case_label}")
    for chk in rep.checks:
        out.check(chk.name, chk.passed, chk.lhs, chk.rhs)
    if not out.all_pass:
        return EXIT_INCONSISTENT
    return EXIT_OK if rep.verdict == TERMINAL else EXIT_NEGATIVE


def cmd_rr_dims(args, out: Output) -> int:
    J, a = args.basket, args.a
    qe = a_e3(J)
    out.text(f"J = {J}, a = {a}: aE3 = {qe}, sum v = {sum_v(J)}")
    res = {"aE3": qe, "sum_v": sum_v(J), "index": J.index, "e": mod_inverse(a, J.index)}
    try:
        dims = [dim_quotient(i, a, J) for i in range(1, a + 1)]
    except InconsistentBasketError as exc:
        out.text(f"inconsistent basket: {exc}")
        out.check("dim O/I_i is a nonnegative integer", False, str(exc), "integer")
        out.result(res)
        return EXIT_INCONSISTENT
    res["dim_O_quotient"] = dims
    res["dim_m_quotient"] = [x - 1 for x in dims]
    rows = [[i, x, x - 1] for i, x in enumerate(dims, start=1)]
    out.lines += table(["i", "dim O/I_i", "dim m/I_i"], rows)
    if a >= 2:
        d = dims[1] - 1
        out.check("sum_v = 3 - dim m/I_2", sum_v(J) == 3 - d, sum_v(J), 3 - d)
    if a == 4 and len(J) == 1 and J.points[0].v == 2:
        cmp = []
        out.text("")
        out.text("closed form for {(r, 2)}, a = 4 (stated as a colength in m):")
        for i in (3, 4):
            c = compare_index_two_closed_form(i, J.points[0].r)
            cmp.append({"i": i, "closed_form": c.closed_form, "dim_O_quotient": c.colength_in_O,
                        "dim_m_quotient": c.colength_in_m,
                        "matches_O_reading": c.matches_O_reading,
                        "matches_m_reading": c.matches_m_reading})
            out.text(f"  i={i}: closed form {c.closed_form}; dim O/I_i = {c.colength_in_O}; "
                     f"dim m/I_i = {c.colength_in_m}")
        res["closed_form_comparison"] = cmp
        out.text("  open question: the closed form matches dim O/I_i, not dim m/I_i")
    out.result(res)
    return EXIT_OK if out.all_pass else EXIT_INCONSISTENT


def cmd_duval(args, out: Output) -> int:
    cfg = ChainConfig.from_bitmask(args.s, args.contracted)
    prof = partial_resolution_profile(cfg)
    out.result({"s": prof.s, "contracted": cfg.contracted_indices, "s1": prof.s1,
                "s2": prof.s2, "intersections": list(prof.intersections), "mult": prof.mult})
    out.text(f"A_{prof.s} chain, contracted curves {cfg.contracted_indices}")
    out.text(f"  end singularities A_{prof.s1}, A_{prof.s2}; C.E = "
             f"{prof.intersections[0]}, {prof.intersections[1]}; multiplicity {prof.mult}")
    want = (Fraction(1, prof.s1 + 1), Fraction(1, prof.s2 + 1))
    out.check("C.E = 1/(s_i + 1)", prof.intersections == want, list(prof.intersections),
              list(want))
    out.check("s1 + s2 < s", prof.s1 + prof.s2 < prof.s, prof.s1 + prof.s2, prof.s)
    return EXIT_OK if out.all_pass else EXIT_INCONSISTENT


def cmd_special_surface(args, out: Output) -> int:
    p = WPoly(args.p)
    s = special_surface_type(args.a, p, args.N)
    out.result({"type": s, "ord_p": ord_w(p), "ord_p2_plus_wN": ord_w(p * p + WPoly.monomial(args.N))})
    out.text(f"a = {args.a}, p = {list(p.coeffs)}, N = {args.N}: special surface of type A_{s}")
    out.check("s <= 2a - 1", s <= 2 * args.a - 1, s, 2 * args.a - 1)
    if args.r1 is not None and args.r2 is not None:
        b = case_212_bounds(args.r1, args.r2)
        out.check("s >= r1 + r2 - 1", s >= b.min_special_type, s, b.min_special_type)
        out.check("2a <= r1 + r2", b.admits(args.a), 2 * args.a, args.r1 + args.r2)
        return EXIT_OK if out.all_pass else EXIT_NEGATIVE
    return EXIT_OK if out.all_pass else EXIT_INCONSISTENT


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ca1-contractions",
        description="Weighted blow-ups of cA1 points and the Riemann-Roch numerics behind them.")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("baskets", parents=[common], help="enumerate baskets for a given d")
    p.add_argument("--d", type=int, required=True, choices=(0, 1, 2, 3))
    p.add_argument("--r-bound", type=int, default=DEFAULT_R_BOUND)
    p.set_defaults(func=cmd_baskets)

    p = sub.add_parser("proof-table", parents=[common],
                       help="baskets with sum v = 3 and aE3 > 0")
    p.set_defaults(func=cmd_proof_table)

    p = sub.add_parser("contractions", parents=[common],
                       help="list and verify the weighted blow-ups for N")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--cert-bound", type=int, default=DEFAULT_CERT_BOUND)
    p.set_defaults(func=cmd_contractions)

    p = sub.add_parser("verify", parents=[common], help="analyze one weighted blow-up")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--weights", type=parse_weights, required=True)
    p.add_argument("--cert-bound", type=int, default=DEFAULT_CERT_BOUND)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rr-dims", parents=[common], help="dim O/f_*O(-iE) for i = 1..a")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--basket", type=parse_basket, required=True,
                   help='points "r:v" or "r:v:b", comma separated; "" for none')
    p.set_defaults(func=cmd_rr_dims)

    p = sub.add_parser("duval", parents=[common], help="partial resolution of an A_s point")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--contracted", type=int, required=True,
                   help="bitmask; bit k-1 set means F_k is contracted")
    p.set_defaults(func=cmd_duval)

    p = sub.add_parser("special-surface", parents=[common],
                       help="type of xy + (p + c w^a)^2 + w^N")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--p", type=parse_ints, required=True,
                   help="coefficients of p(w) from w^0 upward, comma separated")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--r1", type=int)
    p.add_argument("--r2", type=int)
    p.set_defaults(func=cmd_special_surface)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = {k: v for k, v in vars(args).items() if k not in ("func", "command", "format")}
    if "basket" in inputs:
        inputs["basket"] = basket_json(inputs["basket"])
    out = Output(args.command, inputs)
    try:
        code = args.func(args, out)
    except ValueError as exc:
        parser.error(str(exc))
    print(out.render(args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
