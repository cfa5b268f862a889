"""Command-line front end: ``eval``, ``verify`` and ``list-identities``.

Results go to standard output, diagnostics and timings to standard error.
Exit codes: 0 success, 1 usage/configuration error, 2 divergent series
(``eval``) or failed checks (``verify``).
"""
from __future__ import annotations

import argparse
import collections
import csv
import io
import json
import math
import re
import sys
import time
from typing import Any, Optional, Sequence

from .appell import (
    DiscreteParams,
    EvalPoint,
    HumbertKind,
    ParameterSet,
    eval_discrete_f2,
    eval_f2,
    eval_humbert,
)
from .errors import ConfigError, DiscreteAppellError, DivergenceError
from .identities import SUITE_VERSION, catalog, default_grid, run_suite
from .results import Family, IdentityCheckResult, IdentityId, Variant, complex_pair, format_complex
from .series import SeriesStatus, SummationConfig

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2

_COMPLEX_RE = re.compile(
    r"""^(?:
        (?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
        (?P<im>[+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)[ij]
      | (?P<re_only>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|[+-]?inf|nan)
      | (?P<im_only>[+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)[ij]
    )$""",
    re.VERBOSE,
)


def parse_complex(text: str) -> complex:
    """Parse ``re``, ``re+imi``, ``re-imi`` or ``imi`` (``j`` is accepted for ``i``)."""
    m = _COMPLEX_RE.match(str(text).strip())
    if not m:
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r} (use re or re+imi)")

    def num(s: str) -> float:
        return float(s + "1") if s in ("", "+", "-") else float(s)

    if m.group("re_only") is not None:
        return complex(float(m.group("re_only")), 0.0)
    if m.group("im_only") is not None:
        return complex(0.0, num(m.group("im_only")))
    return complex(float(m.group("re")), num(m.group("im")))


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return value


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


FAMILY_ALIASES: dict[str, tuple[Family, ...]] = {
    "diff": (Family.DIFF_FORMULA, Family.DIFF_OP_FORMULA),
    "sum": (Family.FINITE_SUM, Family.INFINITE_SUM),
    "recursion": (Family.RECURSION,),
    "ladder": (Family.LADDER_DIFFERENTIAL, Family.LADDER_DIFFERENCE),
    "pairwise": (Family.PAIRWISE_DIFFERENTIAL, Family.PAIRWISE_DIFFERENCE),
    "reduction": (Family.REDUCTION,),
    "humbert": (Family.HUMBERT_LIMIT,),
    "integral": (Family.INTEGRAL_REP,),
    "difference-eq": (Family.DIFFERENCE_EQ,),
}


def resolve_families(names: Sequence[str]) -> set[Family]:
    """Family names (exact, case-insensitive) or the short aliases above."""
    out: set[Family] = set()
    by_value = {f.value.lower(): f for f in Family}
    for name in names:
        key = name.lower()
        if key in FAMILY_ALIASES:
            out.update(FAMILY_ALIASES[key])
        elif key in by_value:
            out.add(by_value[key])
        else:
            known = sorted(FAMILY_ALIASES) + sorted(f.value for f in Family)
            raise ConfigError(f"unknown family {name!r}; known: {', '.join(known)}")
    return out


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="discrete-appell", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file with option values (command-line flags win)")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    ev = sub.add_parser("eval", help="evaluate one function at one point")
    kind = ev.add_mutually_exclusive_group()
    kind.add_argument("--f2", action="store_true", help="classical Appell F2 (ignores t, k)")
    kind.add_argument("--humbert", choices=("psi1", "psi2"), help="discrete Humbert function")
    ev.add_argument("--classical", action="store_true", help="with --humbert: classical (no t, k)")
    ev.add_argument("--variant", choices=("v1", "v2", "v3"), default="v1")
    for name in ("a", "b1", "b2", "c1", "c2"):
        ev.add_argument(f"--{name}", type=parse_complex, default=None)
    for name in ("t1", "t2", "t"):
        ev.add_argument(f"--{name}", type=parse_complex, default=None)
    for name in ("k1", "k2", "k"):
        ev.add_argument(f"--{name}", type=_nonneg_int, default=None)
    ev.add_argument("--x", type=parse_complex, default=None)
    ev.add_argument("--y", type=parse_complex, default=None)
    ev.add_argument("--max-diagonal", type=int, default=None)
    ev.add_argument("--rel-tolerance", type=float, default=None)
    _add_output(ev)

    ver = sub.add_parser("verify", help="run the identity suite")
    ver.add_argument("--family", action="append", default=[], help="family or alias; repeatable")
    ver.add_argument("--variant", choices=("v1", "v2"), action="append", default=[])
    ver.add_argument("--match", default=None, help="substring of the identity id")
    ver.add_argument("--order", type=int, default=64, help="largest quadrature order")
    ver.add_argument("--seed", type=int, default=None, help="jitter the default grid")
    ver.add_argument("--tolerance", action="append", default=[], metavar="FAMILY=TOL",
                     help="re-judge a family at another relative tolerance; repeatable")
    ver.add_argument("--max-diagonal", type=int, default=None)
    ver.add_argument("--rel-tolerance", type=float, default=None)
    _add_output(ver)

    ls = sub.add_parser("list-identities", help="dump the identity catalog")
    ls.add_argument("--seed", type=int, default=None)
    _add_output(ls)
    return parser


# -- config file handling -------------------------------------------------------


def _load_config(path: str) -> dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path!r} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    return {str(k).replace("-", "_"): v for k, v in data.items()}


_COMPLEX_KEYS = {"a", "b1", "b2", "c1", "c2", "t1", "t2", "t", "x", "y"}


def _apply_config(args: argparse.Namespace, data: dict[str, Any], explicit: set[str]) -> None:
    for key, value in data.items():
        if key in ("command", "config"):
            continue
        if not hasattr(args, key):
            raise ConfigError(f"config key {key!r} is not an option of {args.command!r}")
        if key in explicit:
            continue
        if key in _COMPLEX_KEYS and value is not None:
            value = parse_complex(str(value)) if isinstance(value, str) else complex(value)
        setattr(args, key, value)


def _explicit_dests(parser: argparse.ArgumentParser, argv: Sequence[str]) -> set[str]:
    """Destinations given on the command line (so config values do not override them)."""
    flags = {a.split("=", 1)[0] for a in argv if a.startswith("--")}
    out = set()
    actions = list(parser._actions)
    for act in parser._actions:
        if isinstance(act, argparse._SubParsersAction):
            for sp in act.choices.values():
                actions.extend(sp._actions)
    for act in actions:
        if any(opt in flags for opt in act.option_strings):
            out.add(act.dest)
    return out


def _summation_config(args: argparse.Namespace) -> SummationConfig:
    overrides = {}
    if getattr(args, "max_diagonal", None) is not None:
        overrides["max_diagonal"] = int(args.max_diagonal)
    if getattr(args, "rel_tolerance", None) is not None:
        overrides["rel_tolerance"] = float(args.rel_tolerance)
    return SummationConfig.from_env(**overrides)


# -- eval ---------------------------------------------------------------------


def _require(args: argparse.Namespace, names: Sequence[str], what: str) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise ConfigError(f"{what} needs " + ", ".join("--" + n for n in missing))


def cmd_eval(args: argparse.Namespace, out) -> int:
    cfg = _summation_config(args)
    _require(args, ("x", "y"), "eval")
    p = EvalPoint(args.x, args.y)
    variant = Variant(args.variant.upper())
    if args.humbert:
        _require(args, ("a", "c1", "c2") + (("b1",) if args.humbert == "psi1" else ()), "--humbert")
    else:
        _require(args, ("a", "b1", "b2", "c1", "c2"), "eval")
    zero = 0j
    params = ParameterSet(*(getattr(args, n) if getattr(args, n) is not None else zero
                            for n in ("a", "b1", "b2", "c1", "c2")))
    d: Optional[DiscreteParams] = None
    if not args.f2 and not (args.humbert and args.classical):
        if variant is Variant.V2:
            _require(args, ("t", "k"), "variant v2")
            d = DiscreteParams.v2(args.t, args.k)
        elif variant is Variant.V3:
            _require(args, ("t1", "t2", "k"), "variant v3")
            d = DiscreteParams.v3(args.t1, args.t2, args.k)
        else:
            _require(args, ("t1", "t2", "k1", "k2"), "variant v1")
            d = DiscreteParams.v1(args.t1, args.t2, args.k1, args.k2)

    if args.f2:
        function = "F2"
    elif args.humbert:
        function = f"{HumbertKind(args.humbert.capitalize()).value}" + ("" if d is None else f"/{variant.value}")
    else:
        function = f"F2/{variant.value}"
    record: dict[str, Any] = {
        "function": function,
        "params": params.as_dict(),
        "discrete": None if d is None else d.as_dict(),
        **p.as_dict(),
    }
    try:
        if args.f2:
            res = eval_f2(params, p, cfg)
        elif args.humbert:
            hv = Variant.V2 if variant is Variant.V2 else Variant.V1
            res = eval_humbert(HumbertKind(args.humbert.capitalize()), hv, params, d, p, cfg)
        else:
            res = eval_discrete_f2(params, d, p, cfg)
    except DivergenceError as exc:
        record.update(value=None, status=SeriesStatus.DIVERGENT.value, terms_used=None, tail_estimate=None)
        _emit_eval(record, args.format, out)
        print(f"discrete-appell: {exc}", file=sys.stderr)
        return EXIT_FAIL
    record.update(
        value=res.value,
        status=res.status.value,
        terms_used=res.terms_used,
        tail_estimate=res.tail_estimate,
    )
    _emit_eval(record, args.format, out)
    return EXIT_OK if res.ok else EXIT_FAIL


def _emit_eval(record: dict[str, Any], fmt: str, out) -> None:
    value = record["value"]
    if fmt == "json":
        rec = dict(record, value=None if value is None else complex_pair(value))
        out.write(json.dumps(rec, sort_keys=True) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["function", "value", "status", "terms_used", "tail_estimate"])
        w.writerow([record["function"], "" if value is None else format_complex(value), record["status"],
                     "" if record["terms_used"] is None else record["terms_used"],
                     "" if record["tail_estimate"] is None else repr(record["tail_estimate"])])
    else:
        out.write(f"function       {record['function']}\n")
        out.write(f"value          {'nan' if value is None else format_complex(value)}\n")
        out.write(f"status         {record['status']}\n")
        out.write(f"terms_used     {record['terms_used']}\n")
        out.write(f"tail_estimate  {record['tail_estimate']}\n")


# -- verify -------------------------------------------------------------------


def _parse_tolerances(items: Sequence[str]) -> dict[Family, float]:
    out: dict[Family, float] = {}
    for item in items:
        if "=" not in item:
            raise ConfigError(f"--tolerance expects FAMILY=TOL, got {item!r}")
        name, tol = item.split("=", 1)
        try:
            value = float(tol)
        except ValueError:
            raise ConfigError(f"bad tolerance {tol!r}")
        if not value > 0:
            raise ConfigError("tolerances must be positive")
        for fam in resolve_families([name]):
            out[fam] = value
    return out


def _rejudge(res: IdentityCheckResult, tol: float) -> IdentityCheckResult:
    res.tolerance = tol
    res.passed = bool(math.isfinite(res.rel_residual) and res.rel_residual <= tol)
    return res


def cmd_verify(args: argparse.Namespace, out) -> int:
    cfg = _summation_config(args)
    families = resolve_families(args.family) if args.family else None
    variants = {Variant(v.upper()) for v in args.variant}
    tolerances = _parse_tolerances(args.tolerance)
    match = args.match

    def accept(ident: IdentityId) -> bool:
        if families is not None and ident.family not in families:
            return False
        if variants and ident.variant not in variants:
            return False
        return match is None or match in str(ident)

    grid = default_grid(args.seed)
    started = time.perf_counter()
    report = run_suite(accept, grid, cfg, rule_order=args.order)
    for res in report.results:
        if res.id.family in tolerances:
            _rejudge(res, tolerances[res.id.family])
    print(f"discrete-appell: verify finished in {time.perf_counter() - started:.2f} s", file=sys.stderr)

    summary = report.summary
    if args.format == "json":
        doc = {
            "suite_version": SUITE_VERSION,
            "grid": {"seed": args.seed, "order": args.order, "points": [g.as_dict() for g in grid]},
            "results": [r.to_dict() for r in report.results],
            "skipped": [{"id": str(i), "point": pt, "reason": why} for i, pt, why in report.skipped],
            "summary": summary,
        }
        out.write(json.dumps(doc, indent=1, sort_keys=False) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["id", "point", "lhs", "rhs", "abs_residual", "rel_residual", "passed", "notes"])
        for r in report.results:
            w.writerow([str(r.id), json.dumps(r.point, sort_keys=True), format_complex(r.lhs),
                        format_complex(r.rhs), repr(r.abs_residual), repr(r.rel_residual), r.passed, r.notes])
    else:
        for r in report.results:
            mark = "PASS" if r.passed else "FAIL"
            out.write(f"{mark} {str(r.id):<48} rel={r.rel_residual:.3e} tol={r.tolerance:.0e}\n")
        for ident, _, why in report.skipped:
            out.write(f"SKIP {str(ident):<48} {why}\n")
        out.write(f"summary: pass={summary['pass']} fail={summary['fail']} skip={summary['skip']}\n")
    return EXIT_OK if summary["fail"] == 0 else EXIT_FAIL


# -- list-identities ------------------------------------------------------------


def cmd_list(args: argparse.Namespace, out) -> int:
    ids = sorted({c.id for c in catalog(default_grid(args.seed))}, key=IdentityId.sort_key)
    counts = collections.Counter((i.family.value, i.variant.value) for i in ids)
    if args.format == "json":
        doc = {
            "suite_version": SUITE_VERSION,
            "identities": [str(i) for i in ids],
            "counts": [{"family": f, "variant": v, "count": n} for (f, v), n in sorted(counts.items())],
        }
        out.write(json.dumps(doc, indent=1) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["family", "variant", "detail"])
        for i in ids:
            w.writerow([i.family.value, i.variant.value, i.detail])
    else:
        for i in ids:
            out.write(f"{i}\n")
        out.write("\n")
        for (f, v), n in sorted(counts.items()):
            out.write(f"{f:<22} {v}  {n}\n")
    return EXIT_OK


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "list-identities": cmd_list}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    buf = io.StringIO()
    try:
        if args.config:
            _apply_config(args, _load_config(args.config), _explicit_dests(parser, argv))
        status = COMMANDS[args.command](args, buf)
    except (ConfigError, argparse.ArgumentTypeError) as exc:
        print(f"discrete-appell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DiscreteAppellError as exc:
        sys.stdout.write(buf.getvalue())
        print(f"discrete-appell: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    # output is buffered and flushed once
    sys.stdout.write(buf.getvalue())
    sys.stdout.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
