"""quintsect - evaluate pFq / psi series and check fifth-root sum identities.

Usage examples:
  quintsect eval pfq 1,0.5;1.5 @ -0.25
  quintsect eval "psi (1:1);(2:1) @ 1"
  quintsect eval fn lower-incomplete-gamma:a=0.5 @ 1
  quintsect verify --case eq4.6-arctan --x 0.5 --tol 1e-9
  quintsect verify --theorem pfq-even --spec "0F1;1.5" --c -0.25 --x 0.8
  quintsect verify-all --tol 1e-8 --out report.csv
  quintsect sweep --case eq4.2-sin --x-min 0 --x-max 2 --steps 50 --out sweep.csv
  quintsect diagnose pfq 1,1;2 @ 1

Complex numbers are written ``re[,im]``.  Exit codes: 0 ok, 2 parse error or
unknown case, 3 domain error / not evaluable, 4 series did not converge,
5 identity failed, 6 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import tempfile
from dataclasses import dataclass

from . import catalog
from .errors import DomainError, QuintsectError, SpecError
from .hypergeom import (FoxWrightSpec, PFQSpec, classify_fox_wright, classify_pfq, eval_fox_wright,
                        eval_pfq)
from .identities import TheoremId, TheoremInstance, Verdict, check_identity
from .series import SeriesEvaluation, ToleranceConfig
from .special import FUNCTION_TAGS, REPRESENTATIONS, eval_oracle, representation_series

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_NONCONVERGENCE = 4
EXIT_FAIL = 5
EXIT_IO = 6

FORMATS = ("human", "csv", "structured-records")


class UsageError(Exception):
    """Bad command-line input; maps to exit code 2."""


# ---------------------------------------------------------------- parsing

def parse_complex(text: str) -> complex:
    parts = [p.strip() for p in text.strip().split(",")]
    if not 1 <= len(parts) <= 2 or not all(parts):
        raise UsageError(f"bad complex number {text!r}; expected re[,im]")
    try:
        re_, im = float(parts[0]), float(parts[1]) if len(parts) == 2 else 0.0
    except ValueError:
        raise UsageError(f"bad complex number {text!r}; expected re[,im]") from None
    return complex(re_, im)


def _scalar(text: str):
    # real parameters stay real so exact spec checks still apply
    z = parse_complex(text)
    return z.real if z.imag == 0 else z


def _scalar_list(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    return tuple(_scalar(t) for t in text.split(","))


_PAIR = re.compile(r"\(\s*([^():]+?)\s*:\s*([^():]+?)\s*\)")


def _pair_list(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    pairs = _PAIR.findall(text)
    if _PAIR.sub("", text).replace(",", "").strip() or not pairs:
        raise UsageError(f"bad pair list {text!r}; expected (a:A),(b:B)")
    out = []
    for a, w in pairs:
        if "," in a or "," in w:
            raise UsageError(f"pair parameters must be real in {text!r}")
        try:
            out.append((float(a), float(w)))
        except ValueError:
            raise UsageError(f"bad pair ({a}:{w})") from None
    return tuple(out)


_LABEL = re.compile(r"^\s*(\d+)\s*[Ff]\s*(\d+)\s*$")


def parse_pfq_lists(text: str) -> PFQSpec:
    """``a1,a2;b1`` or, with an optional label, ``2F1;a1,a2;b1`` / ``0F1;1.5``."""
    parts = text.split(";")
    label = _LABEL.match(parts[0])
    if label:
        p, q = int(label.group(1)), int(label.group(2))
        rest = parts[1:]
        if len(rest) == 1:
            lists = ((), _scalar_list(rest[0])) if p == 0 else (_scalar_list(rest[0]), ())
        elif len(rest) == 2:
            lists = (_scalar_list(rest[0]), _scalar_list(rest[1]))
        else:
            raise UsageError(f"bad pFq spec {text!r}")
        if (len(lists[0]), len(lists[1])) != (p, q):
            raise UsageError(f"{p}F{q} label does not match {len(lists[0])} / {len(lists[1])} parameters")
    elif len(parts) == 2:
        lists = (_scalar_list(parts[0]), _scalar_list(parts[1]))
    else:
        raise UsageError(f"bad pFq spec {text!r}; expected a1,a2;b1")
    try:
        return PFQSpec(*lists)
    except SpecError as exc:
        raise UsageError(str(exc)) from None


def parse_psi_lists(text: str) -> FoxWrightSpec:
    parts = text.split(";")
    if len(parts) != 2:
        raise UsageError(f"bad psi spec {text!r}; expected (a:A),...;(b:B),...")
    try:
        return FoxWrightSpec(_pair_list(parts[0]), _pair_list(parts[1]))
    except SpecError as exc:
        raise UsageError(str(exc)) from None


def parse_params(items) -> dict:
    out = {}
    for item in items:
        for kv in filter(None, item.split(",")):
            key, sep, val = kv.partition("=")
            if not sep or not key.strip():
                raise UsageError(f"bad parameter {kv!r}; expected key=value")
            try:
                out[key.strip()] = float(val)
            except ValueError:
                raise UsageError(f"bad parameter value in {kv!r}") from None
    return out


@dataclass(frozen=True)
class Expression:
    kind: str           # pfq | psi | fn
    spec: object        # PFQSpec, FoxWrightSpec or function tag
    arg: complex
    params: dict


def parse_expression(text: str) -> Expression:
    """``pfq a;b @ z``, ``psi (a:A);(b:B) @ z`` or ``fn name[:k=v] @ x``."""
    head, sep, arg = text.partition("@")
    if not sep:
        raise UsageError(f"missing '@ argument' in {text!r}")
    kind, _, body = head.strip().partition(" ")
    z = parse_complex(arg)
    if kind == "pfq":
        return Expression("pfq", parse_pfq_lists(body), z, {})
    if kind == "psi":
        return Expression("psi", parse_psi_lists(body), z, {})
    if kind == "fn":
        name, _, plist = body.strip().partition(":")
        if name not in REPRESENTATIONS:
            raise UsageError(f"unknown function {name!r}; choose from {', '.join(FUNCTION_TAGS)}")
        params = parse_params([plist]) if plist else {}
        unknown = set(params) - set(REPRESENTATIONS[name].defaults)
        if unknown:
            raise UsageError(f"{name} takes no parameter(s) {sorted(unknown)}")
        return Expression("fn", name, z, params)
    raise UsageError(f"unknown expression kind {kind!r}; expected pfq, psi or fn")


# ---------------------------------------------------------------- output

def fmt(v: float) -> str:
    return "%.17g" % v


def _emit(rows: list[dict], fmt_name: str, out: str | None, human=None) -> None:
    if fmt_name == "human":
        text = human(rows) if human else "".join(
            "\n".join(f"{k}: {v}" for k, v in row.items()) + "\n" for row in rows)
    elif fmt_name == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if rows:
            writer.writerow(rows[0].keys())
            for row in rows:
                writer.writerow(fmt(v) if isinstance(v, float) else v for v in row.values())
        text = buf.getvalue()
    else:
        text = "".join(json.dumps(row) + "\n" for row in rows)
    if out is None:
        sys.stdout.write(text)
    else:
        write_atomic(out, text)


def write_atomic(path: str, text: str) -> None:
    """Write to a temp file next to ``path`` and rename it into place."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".quintsect-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json_float(v: float):
    # JSON has no inf / nan; keep them as strings
    return v if math.isfinite(v) else repr(v)


def _tolerance(args) -> ToleranceConfig:
    overrides = {}
    if getattr(args, "rel_tol", None) is not None:
        overrides["rel_tol"] = args.rel_tol
    if getattr(args, "max_terms", None) is not None:
        overrides["max_terms"] = args.max_terms
    try:
        return ToleranceConfig.from_env(**overrides)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------- commands

def _diagnostics(expr: Expression) -> str:
    if expr.kind == "pfq":
        return classify_pfq(expr.spec, expr.arg).describe()
    if expr.kind == "psi":
        return classify_fox_wright(expr.spec.cancelled(), expr.arg).describe()
    rep = REPRESENTATIONS[expr.spec]
    p = {**rep.defaults, **expr.params}
    return classify_pfq(rep.spec(p), rep.argument(expr.arg)).describe()


def _evaluate(expr: Expression, tol: ToleranceConfig) -> SeriesEvaluation:
    if expr.kind == "pfq":
        return eval_pfq(expr.spec, expr.arg, tol)
    if expr.kind == "psi":
        return eval_fox_wright(expr.spec, expr.arg, tol)
    return representation_series(expr.spec, expr.arg, tol, expr.params or None)


def cmd_eval(args) -> int:
    expr = parse_expression(" ".join(args.expression))
    tol = _tolerance(args)
    ev = _evaluate(expr, tol)
    row = {
        "value_re": ev.value.real,
        "value_im": ev.value.imag,
        "terms_used": ev.terms_used,
        "tail_estimate": ev.tail_estimate,
        "status": str(ev.status),
        "low_confidence": ev.low_confidence,
        "diagnostics": _diagnostics(expr),
    }
    if expr.kind == "fn":
        oracle = eval_oracle(expr.spec, expr.arg, expr.params or None)
        row["oracle_re"], row["oracle_im"] = oracle.real, oracle.imag

    def human(rows):
        r = rows[0]
        value = complex(r["value_re"], r["value_im"])
        lines = [f"value: {value.real!r}" if value.imag == 0 else f"value: {value.real!r},{value.imag!r}",
                 f"terms_used: {r['terms_used']}",
                 f"tail_estimate: {r['tail_estimate']!r}",
                 f"status: {r['status']}" + (" (low confidence)" if r["low_confidence"] else ""),
                 r["diagnostics"]]
        if "oracle_re" in r:
            lines.append(f"oracle: {r['oracle_re']!r},{r['oracle_im']!r}")
        return "\n".join(lines) + "\n"

    if args.format == "structured-records":
        row = {k: _json_float(v) if isinstance(v, float) else v for k, v in row.items()}
    _emit([row], args.format, args.out, human)
    return EXIT_OK if ev.converged else EXIT_NONCONVERGENCE


def _theorem_instance(args) -> TheoremInstance:
    tid = TheoremId(args.theorem)
    if args.spec is None or args.c is None:
        raise UsageError("--theorem needs --spec and --c")
    spec = parse_pfq_lists(args.spec) if tid.family == "pfq" else parse_psi_lists(args.spec)
    return TheoremInstance(tid, spec, parse_complex(args.c), parse_complex(args.x))


def _residual_row(res) -> dict:
    ratio = res.ratio
    return {
        "lhs_re": res.lhs.real, "lhs_im": res.lhs.imag,
        "rhs_re": res.rhs.real, "rhs_im": res.rhs.imag,
        "residual": res.residual,
        "ratio_re": ratio.real if ratio is not None else math.nan,
        "ratio_im": ratio.imag if ratio is not None else math.nan,
        "verdict": str(res.verdict),
        "detail": res.detail,
    }


def cmd_verify(args) -> int:
    if (args.case is None) == (args.theorem is None):
        raise UsageError("give exactly one of --case or --theorem")
    tol = _tolerance(args)
    if args.case is not None:
        if args.case not in catalog.CASES:
            raise UsageError(f"unknown case {args.case!r}")
        params = parse_params(args.param)
        try:
            res = catalog.verify_case(args.case, parse_complex(args.x), tol, args.tol, params or None)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        label = args.case
    else:
        res = check_identity(_theorem_instance(args), tol, args.tol)
        label = args.theorem
    row = {"target": label, "x": args.x, **_residual_row(res)}

    def human(rows):
        r = rows[0]
        return (f"{r['target']} at x = {r['x']}\n"
                f"lhs: {r['lhs_re']!r},{r['lhs_im']!r}\n"
                f"rhs: {r['rhs_re']!r},{r['rhs_im']!r}\n"
                f"residual: {r['residual']!r}\n"
                f"verdict: {r['verdict']}" + (f" ({r['detail']})" if r["detail"] else "") + "\n")

    if args.format == "structured-records":
        row = {k: _json_float(v) if isinstance(v, float) else v for k, v in row.items()}
    _emit([row], args.format, args.out, human)
    return {Verdict.PASS: EXIT_OK, Verdict.FAIL: EXIT_FAIL, Verdict.NOT_EVALUABLE: EXIT_DOMAIN}[res.verdict]


def _joined(values) -> str:
    return ";".join(fmt(v) for v in values)


def cmd_verify_all(args) -> int:
    tol = _tolerance(args)
    cases = None
    if args.catalog:
        try:
            cases = catalog.load_catalog(args.catalog)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        except (ValueError, json.JSONDecodeError) as exc:
            raise UsageError(str(exc)) from None
    reports = catalog.verify_all(identity_tol=args.tol, tol=tol, cases=cases)
    fmt_name = args.format or ("csv" if args.out else "human")
    rows = []
    for rep in reports:
        ratios = [r if r is not None else complex(math.nan, math.nan) for r in rep.ratios()]
        rows.append({
            "case_id": rep.case.case_id,
            "label": rep.case.label,
            "function": rep.case.function,
            "params": ";".join(f"{k}={fmt(v)}" for k, v in sorted(rep.case.params.items())),
            "points": _joined(complex(x).real for x in rep.points),
            "residuals": _joined(r.residual for r in rep.results),
            "ratios_re": _joined(r.real for r in ratios),
            "ratios_im": _joined(r.imag for r in ratios),
            "max_residual": rep.max_residual,
            "status": str(rep.status),
        })

    def human(rows):
        lines = []
        for r in rows:
            line = f"{r['case_id']:<18} {r['label']:<7} {r['status']:<11} max residual {r['max_residual']:.3e}"
            if r["status"] == "discrepant":
                line += f"  lhs/rhs = {r['ratios_re']}"
            lines.append(line)
        return "\n".join(lines) + "\n"

    if fmt_name == "structured-records":
        rows = [{**r, "max_residual": _json_float(r["max_residual"])} for r in rows]
    _emit(rows, fmt_name, args.out, human)
    unverified = any(rep.status is catalog.CaseStatus.UNVERIFIED for rep in reports)
    return EXIT_DOMAIN if unverified else EXIT_OK


def cmd_sweep(args) -> int:
    if args.case not in catalog.CASES:
        raise UsageError(f"unknown case {args.case!r}")
    if args.steps < 1:
        raise UsageError("--steps must be >= 1")
    tol = _tolerance(args)
    params = parse_params(args.param) or None
    rows = []
    for i in range(args.steps + 1):
        x = args.x_min + (args.x_max - args.x_min) * i / args.steps
        try:
            res = catalog.verify_case(args.case, x, tol, args.tol, params)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        rows.append({"x": x, "lhs_re": res.lhs.real, "lhs_im": res.lhs.imag,
                     "rhs_re": res.rhs.real, "rhs_im": res.rhs.imag, "residual": res.residual})
    if args.format == "structured-records":
        rows = [{k: _json_float(v) for k, v in r.items()} for r in rows]
    _emit(rows, args.format or "csv", args.out)
    return EXIT_OK


def cmd_diagnose(args) -> int:
    expr = parse_expression(" ".join(args.expression))
    sys.stdout.write(_diagnostics(expr) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rel-tol", type=float, help="series truncation tolerance (default 1e-14)")
    common.add_argument("--max-terms", type=int, help="term cap; overrides QUINTSECT_MAX_TERMS")
    common.add_argument("--out", help="write output to this file (atomically)")

    parser = argparse.ArgumentParser(prog="quintsect", description=__doc__.splitlines()[0],
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a pFq, psi or catalog function")
    p.add_argument("expression", nargs="+")
    p.add_argument("--format", choices=FORMATS, default="human")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", parents=[common], help="check one identity at one point")
    p.add_argument("--case")
    p.add_argument("--theorem", choices=[t.value for t in TheoremId])
    p.add_argument("--spec", help="pFq lists 'a1,a2;b1' (optionally '2F1;...') or psi pairs")
    p.add_argument("--c", help="scale c in c x^2 (theorem mode)")
    p.add_argument("--x", required=True)
    p.add_argument("--param", action="append", default=[], help="case parameter, e.g. a=0.5")
    p.add_argument("--tol", type=float, default=catalog.DEFAULT_IDENTITY_TOL, help="identity tolerance")
    p.add_argument("--format", choices=FORMATS, default="human")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-all", parents=[common], help="run the whole catalog")
    p.add_argument("--tol", type=float, default=catalog.DEFAULT_IDENTITY_TOL, help="identity tolerance")
    p.add_argument("--catalog", help="catalog file (JSON lines) overriding params and sample points")
    p.add_argument("--format", choices=FORMATS)
    p.set_defaults(func=cmd_verify_all)

    p = sub.add_parser("sweep", parents=[common], help="residuals of one case over a grid")
    p.add_argument("--case", required=True)
    p.add_argument("--x-min", type=float, required=True)
    p.add_argument("--x-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--param", action="append", default=[])
    p.add_argument("--tol", type=float, default=catalog.DEFAULT_IDENTITY_TOL)
    p.add_argument("--format", choices=FORMATS)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("diagnose", help="convergence classification only")
    p.add_argument("expression", nargs="+")
    p.set_defaults(func=cmd_diagnose)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, SpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN if isinstance(exc, DomainError) else EXIT_PARSE
    except QuintsectError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
