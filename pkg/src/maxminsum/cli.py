"""Command-line entry point.

Exit codes: 0 success, 1 a claim or validation failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bounds import bound_reports
from .constructions import ConstructionError
from .design import (DesignError, NotSteinerError, design_from_json, dual_sum_stats, dumps,
                     sum_stats, verify_sts)
from .frc import (BLOCKS_AS_NODES, DUAL_POINTS_AS_NODES, FrcError, balance_report, load_popularity,
                  placement_from_design, simulate_repair)
from .pipeline import MAPPINGS, ORDERS, dual_report, generate_design
from .reproduce import CLAIMS, format_table, run_claims
from .search import OBJECTIVE_ALIASES, SearchError, SearchTask, run_task

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

VALID_CLASSES = {"bose": "n = 3 mod 6 with n >= 9", "skolem": "n = 1 mod 6 with n >= 7"}


class UsageError(Exception):
    pass


def _emit(doc: dict, args: argparse.Namespace) -> None:
    if getattr(args, "format", "json") == "text":
        text = _as_text(doc)
    else:
        text = dumps(doc)
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _as_text(doc: dict, indent: str = "") -> str:
    lines = []
    for key in sorted(doc):
        value = doc[key]
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_as_text(value, indent + "  ").rstrip("\n"))
        else:
            lines.append(f"{indent}{key}: {json.dumps(value) if isinstance(value, list) else value}")
    return "\n".join(lines) + "\n"


def _load_design(path: str):
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise DesignError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise DesignError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc
    return design_from_json(doc)


def cmd_generate(args) -> int:
    if args.construction == "bose" and not (args.n % 6 == 3 and args.n >= 9) or \
            args.construction == "skolem" and not (args.n % 6 == 1 and args.n >= 7):
        raise UsageError(f"{args.construction} needs {VALID_CLASSES[args.construction]}; got n={args.n}")
    design = generate_design(args.construction, args.n, args.mapping, args.order)
    _emit(design.to_json(), args)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        doc = json.loads(Path(args.design).read_text())
    except OSError as exc:
        raise DesignError(f"cannot read {args.design}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise DesignError(f"{args.design}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("n"), int) or not isinstance(doc.get("blocks"), list):
        raise DesignError("design document needs integer 'n' and a 'blocks' list")
    report = verify_sts(doc["n"], doc["blocks"])
    out = report.to_json()
    if report.ok:
        # block labels are checked only once the system itself is valid
        design_from_json(doc)
    _emit(out, args)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_stats(args) -> int:
    design = _load_design(args.design)
    doc = {
        "n": design.system.n,
        "sums": sum_stats(design.system).to_json(),
        "dual_sums": dual_sum_stats(design.system, design.labeling).to_json(),
    }
    _emit(doc, args)
    return EXIT_OK


def cmd_bounds(args) -> int:
    system = labeling = None
    if args.design:
        design = _load_design(args.design)
        system, labeling = design.system, design.labeling
        if args.n is not None and args.n != system.n:
            raise UsageError("--n disagrees with the design file")
        n = system.n
    elif args.n is None:
        raise UsageError("bounds needs --n or --design")
    else:
        n = args.n
    try:
        reports = bound_reports(n, args.k, args.t, system, labeling)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    doc = {"bounds": [r.to_json() for r in reports]}
    failed = any(r.satisfied is False for r in reports)
    if args.format == "text":
        rows = [f"{'bound':<22} {'relation':<8} {'value':>14} {'observed':>10} satisfied"]
        for r in reports:
            j = r.to_json()
            rows.append(f"{j['name']:<22} {j['relation']:<8} {j['value']:>14} "
                        f"{j['observed'] or '-':>10} {'-' if r.satisfied is None else r.satisfied}")
        text = "\n".join(rows) + "\n"
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
    else:
        _emit(doc, args)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_dual(args) -> int:
    if args.construction == "bose" and not (args.n % 6 == 3 and args.n >= 9) or \
            args.construction == "skolem" and not (args.n % 6 == 1 and args.n >= 7):
        raise UsageError(f"{args.construction} needs {VALID_CLASSES[args.construction]}; got n={args.n}")
    design, report = dual_report(args.construction, args.n, args.order, args.mapping)
    if args.design_out:
        Path(args.design_out).write_text(dumps(design.to_json()))
    doc = {"design": design.to_json(), "report": report.to_json()}
    _emit(doc, args)
    mismatch = report.min_matches is False or report.max_matches is False
    return EXIT_FAIL if mismatch else EXIT_OK


def cmd_search(args) -> int:
    design = _load_design(args.design)
    objective = OBJECTIVE_ALIASES[args.objective]
    try:
        task = SearchTask(design.system, objective, args.mode, args.budget, args.allow_large)
        result = run_task(task, jobs=args.jobs, backend=args.backend)
    except SearchError as exc:
        raise UsageError(str(exc)) from exc
    _emit(result.to_json(), args)
    return EXIT_OK


def cmd_frc(args) -> int:
    design = _load_design(args.design)
    popularity = load_popularity(args.popularity) if args.popularity else None
    frc = placement_from_design(design.system, args.mode, design.labeling, popularity)
    doc = {"placement": frc.to_json(), "balance": balance_report(frc).to_json()}
    if args.fail is not None:
        doc["repair"] = simulate_repair(frc, args.fail).to_json()
    _emit(doc, args)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    groups = ("fast", "medium", "long") if args.long else ("fast", "medium")
    if args.fast_only:
        groups = ("fast",)
    keys = set(args.only) if args.only else None
    if keys:
        unknown = keys - {c.key for c in CLAIMS}
        if unknown:
            raise UsageError(f"unknown claim(s): {', '.join(sorted(unknown))}")
    outcomes = run_claims(groups, keys)
    if args.format == "json":
        doc = {"claims": [{"claim": o.claim.key, "group": o.claim.group, "title": o.claim.title,
                           "status": o.status, "detail": o.detail} for o in outcomes]}
        _emit(doc, args)
    else:
        text = format_table(outcomes) + "\n"
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
    return EXIT_FAIL if any(o.status == "fail" for o in outcomes) else EXIT_OK


def _common(default_format: str = "json") -> argparse.ArgumentParser:
    # a fresh parent per subcommand, so per-command defaults cannot leak
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=default_format)
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maxminsum",
                                     description="Access-balanced Steiner triple systems toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[_common()], help="build a Bose or Skolem design file")
    p.add_argument("--construction", choices=("bose", "skolem"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mapping", choices=MAPPINGS, default="paper")
    p.add_argument("--order", choices=ORDERS, help="attach this block labeling")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", parents=[_common()], help="check the Steiner property of a design file")
    p.add_argument("design")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", parents=[_common()], help="block-sum and dual-sum statistics")
    p.add_argument("design")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bounds", parents=[_common()], help="closed-form bounds, optionally checked")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--design", help="check the bounds against this design file")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("dual", parents=[_common()], help="labeled design plus dual-sum report")
    p.add_argument("--construction", choices=("bose", "skolem"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--order", choices=ORDERS, default="yxi")
    p.add_argument("--mapping", choices=MAPPINGS, default="paper")
    p.add_argument("--design-out", help="also write the labeled design file here")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("search", parents=[_common()], help="exhaustive relabeling search")
    p.add_argument("--design", required=True)
    p.add_argument("--objective", choices=sorted(OBJECTIVE_ALIASES), default="maxmin")
    p.add_argument("--mode", choices=("full", "reduced"), default="full")
    p.add_argument("--budget", type=int, default=0, help="node limit per subtask (0: none)")
    p.add_argument("--jobs", type=int, help="worker processes (default: $MAXMINSUM_JOBS or 1)")
    p.add_argument("--allow-large", action="store_true", help="lift the reduced-search size cap")
    p.add_argument("--backend", choices=("cython", "python"))
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("frc", parents=[_common()], help="FRC placement, balance and repair")
    p.add_argument("--design", required=True)
    p.add_argument("--mode", choices=(BLOCKS_AS_NODES, DUAL_POINTS_AS_NODES), default=BLOCKS_AS_NODES)
    p.add_argument("--popularity", help="JSON array of integers or 'p/q' strings")
    p.add_argument("--fail", type=int, help="simulate repair of this node")
    p.set_defaults(func=cmd_frc)

    p = sub.add_parser("reproduce", parents=[_common("text")], help="run the claim checks")
    p.add_argument("--long", action="store_true", help="include the long group")
    p.add_argument("--fast-only", action="store_true", help="run only the fast group")
    p.add_argument("--only", nargs="+", metavar="CLAIM", help="restrict to these claims")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotSteinerError, DesignError, FrcError, ConstructionError) as exc:
        sys.stdout.write(dumps({"error": type(exc).__name__, "message": str(exc)}))
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
