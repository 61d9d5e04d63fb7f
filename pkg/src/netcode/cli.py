"""Command-line front end.

Subcommands build protocols, run the exhaustive checks, compute bound
reports and drive the whole verification suite. Reports are deterministic
for a fixed configuration (pass --no-timestamp for byte-identical reruns)
and are emitted as text, JSON or CSV.

Exit status: 0 all checks passed, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv as _csv
import io
import json
import os
import sys
from dataclasses import replace
from datetime import datetime, timezone
from fractions import Fraction

from .bounds import bound_report
from .codes import Code, ParityCheckCode, RepetitionCode, load_explicit_code
from .engine import execute_static
from .errors import CapacityError, ParameterError
from .codes import Word
from .graphs import Graph, graph_from_spec, hamiltonian_cycle
from .protocols import (build_cycle_graph, cycle_correct, parity_protocol,
                        triangle_protocol, trivial_correct, trivial_detect)
from .suite import SuiteConfig, quick_config, run_suite
from .verify import Budgets, exhaustive_correct_check, exhaustive_detect_check

DEFAULT_BUDGET = 1 << 24


class UsageError(Exception):
    pass


def _default_budget() -> int:
    raw = os.environ.get("NETCODE_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"NETCODE_BUDGET={raw!r} is not an integer") from exc


def _load_config_file(path) -> dict:
    values = {}
    try:
        text = open(path).read()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        if "=" not in ln:
            raise UsageError(f"bad config line {ln!r} (want key=value)")
        key, _, value = ln.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="key=value file; flags override it")
    parser.add_argument("--format", choices=("text", "json", "csv"), default="text")
    parser.add_argument("--output", help="write the report here as well")
    parser.add_argument("--no-timestamp", action="store_true",
                        help="omit the timestamp field for byte-identical reruns")
    parser.add_argument("--budget", type=int, default=None,
                        help=f"execution budget (default {DEFAULT_BUDGET}, "
                             "or NETCODE_BUDGET)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for optional sampled smoke modes")
    parser.add_argument("--workers", type=int, default=os.cpu_count() or 1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netcode",
        description="simulate error detection/correction protocols on graphs, "
                    "compute exact lower bounds, verify exhaustively")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="run a detection protocol exhaustively")
    p.add_argument("--graph", help="cycle:n | complete:n | path:n | file")
    p.add_argument("--code", default="rep", help="rep | parity | file:PATH")
    p.add_argument("--m", type=int)
    p.add_argument("--protocol",
                   choices=("trivial", "parity", "cycle", "triangle"))
    p.add_argument("--root", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("correct", help="run a correction protocol exhaustively")
    p.add_argument("--graph")
    p.add_argument("--code", default="rep")
    p.add_argument("--m", type=int)
    p.add_argument("--protocol", default="cycle",
                   choices=("cycle", "triangle", "trivial"))
    p.add_argument("--t", type=int, default=1, help="error budget (0 or 1)")
    _add_common(p)

    p = sub.add_parser("bounds", help="compute the lower-bound report")
    p.add_argument("--graph", help="needed for the LP bound")
    p.add_argument("--n", type=int)
    p.add_argument("--k", help="dimension, e.g. 2 or 3/2")
    p.add_argument("--d", type=int)
    p.add_argument("--mds", action="store_true", help="include the MDS form")
    _add_common(p)

    p = sub.add_parser("verify-all", help="run the whole verification suite")
    p.add_argument("--quick", action="store_true",
                   help="smaller instances, same checks")
    p.add_argument("--mutate", action="store_true", help=argparse.SUPPRESS)
    _add_common(p)
    return parser


def _resolve_code(spec: str, n: int, m: int) -> Code:
    if spec == "rep":
        return RepetitionCode(n, m)
    if spec == "parity":
        return ParityCheckCode(n, m)
    if spec.startswith("file:"):
        code = load_explicit_code(spec[5:])
        if code.n != n or code.m != m:
            raise UsageError(f"code file is ({code.n},{code.m}), expected ({n},{m})")
        return code
    raise UsageError(f"unknown code {spec!r} (want rep, parity or file:PATH)")


def _ring_order(g: Graph):
    order = hamiltonian_cycle(g)
    if order is None:
        raise UsageError("graph has no Hamiltonian cycle; ring protocols need one")
    return order


def _build_detect(args, g: Graph, code: Code):
    if args.protocol == "trivial":
        return trivial_detect(g, code, root=args.root)
    if args.protocol == "parity":
        return parity_protocol(g, args.m, root=args.root)
    if args.protocol == "cycle":
        graph = build_cycle_graph(g.n, args.m)
        return cycle_correct(graph, order=_ring_order(g)).detection
    if g.n != 3:
        raise UsageError("the triangle protocol needs a 3-vertex graph")
    return triangle_protocol(args.m).detection


def _build_correct(args, g: Graph, code: Code):
    if args.protocol == "trivial":
        return trivial_correct(g, code, t=args.t)
    if args.protocol == "cycle":
        graph = build_cycle_graph(g.n, args.m)
        return cycle_correct(graph, order=_ring_order(g))
    if g.n != 3:
        raise UsageError("the triangle protocol needs a 3-vertex graph")
    return triangle_protocol(args.m)


def _timestamp(args) -> str | None:
    if args.no_timestamp:
        return None
    return datetime.now(timezone.utc).isoformat()


def _emit(args, payload: dict, text: str, csv_text: str) -> None:
    stamp = _timestamp(args)
    if stamp is not None:
        payload = dict(payload, timestamp=stamp)
        text = f"# {stamp}\n" + text
    rendered = {
        "text": text,
        "json": json.dumps(payload, sort_keys=True, indent=2) + "\n",
        "csv": csv_text,
    }[args.format]
    sys.stdout.write(text if args.format == "text" else rendered)
    if not text.endswith("\n") and args.format == "text":
        sys.stdout.write("\n")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(rendered)


def _checks_csv(report) -> str:
    buf = io.StringIO()
    writer = _csv.writer(buf, lineterminator="\n")
    writer.writerow(["check", "passed", "counterexample", "details"])
    for c in report.checks:
        writer.writerow([c.name, c.passed, c.counterexample or "",
                         " ".join(f"{k}={v}" for k, v in c.details.items())])
    return buf.getvalue()


def _budgets(args) -> Budgets:
    budget = args.budget if args.budget is not None else _default_budget()
    return Budgets(executions=budget)


def _need(args, *names):
    """Required settings may come from flags or the config file."""
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing required option(s): "
                         + ", ".join(f"--{n}" for n in missing))


def cmd_detect(args) -> int:
    _need(args, "graph", "m", "protocol")
    g = graph_from_spec(args.graph)
    code = _resolve_code(args.code, g.n, args.m)
    schedule = _build_detect(args, g, code)
    report = exhaustive_detect_check(schedule, g, code, _budgets(args))
    zero = Word.from_values([0] * g.n, args.m)
    transcript, _ = execute_static(schedule, g, zero)
    per_edge = {f"{u}-{v}": len(transcript.on_edge((u, v)))
                for u, v in g.sorted_edges()}
    lines = report.lines()
    lines.append("per-edge bits: " +
                 ", ".join(f"{e}:{b}" for e, b in sorted(per_edge.items())))
    payload = {"command": "detect", "graph": args.graph, "code": args.code,
               "m": args.m, "protocol": args.protocol,
               "per_edge_bits": per_edge, "report": report.to_dict()}
    _emit(args, payload, "\n".join(lines) + "\n", _checks_csv(report))
    return 0 if report.passed else 1


def cmd_correct(args) -> int:
    _need(args, "graph", "m")
    if args.t not in (0, 1):
        raise UsageError(f"t={args.t} is out of contract; only t in {{0,1}} is supported")
    g = graph_from_spec(args.graph)
    code = _resolve_code(args.code, g.n, args.m)
    protocol = _build_correct(args, g, code)
    report = exhaustive_correct_check(protocol, g, code, args.t, _budgets(args))
    payload = {"command": "correct", "graph": args.graph, "code": args.code,
               "m": args.m, "protocol": args.protocol, "t": args.t,
               "report": report.to_dict()}
    _emit(args, payload, "\n".join(report.lines()) + "\n", _checks_csv(report))
    return 0 if report.passed else 1


def cmd_bounds(args) -> int:
    _need(args, "n", "k")
    try:
        k = Fraction(args.k)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad dimension {args.k!r}") from exc
    g = graph_from_spec(args.graph) if args.graph else None
    report = bound_report(args.n, k, args.d, g, mds=args.mds)
    payload = {"command": "bounds", "graph": args.graph, "mds": args.mds,
               "report": report.to_dict()}
    _emit(args, payload, report.to_text() + "\n", report.to_csv())
    return 0


def cmd_verify_all(args) -> int:
    cfg = quick_config() if args.quick else SuiteConfig()
    budget = args.budget if args.budget is not None else _default_budget()
    cfg = replace(cfg, budget=budget, mutate=args.mutate)
    results = run_suite(cfg, workers=max(1, args.workers))
    timed = not args.no_timestamp
    lines = []
    for r in results:
        lines.append(r.header() + (f" ({r.elapsed:.1f}s)" if timed else ""))
        lines.extend("  " + ln for ln in r.lines)
    passed = all(r.passed for r in results)
    lines.append(f"{'PASS' if passed else 'FAIL'} overall "
                 f"({sum(r.passed for r in results)}/{len(results)} criteria)")
    payload = {
        "command": "verify-all", "quick": args.quick, "passed": passed,
        "criteria": [{"name": r.name, "passed": r.passed, "lines": r.lines,
                      "details": r.details,
                      **({"elapsed_s": round(r.elapsed, 1)} if timed else {})}
                     for r in results],
    }
    buf = io.StringIO()
    writer = _csv.writer(buf, lineterminator="\n")
    writer.writerow(["criterion", "passed"])
    for r in results:
        writer.writerow([r.name, r.passed])
    _emit(args, payload, "\n".join(lines) + "\n", buf.getvalue())
    return 0 if passed else 1


_COMMANDS = {
    "detect": cmd_detect,
    "correct": cmd_correct,
    "bounds": cmd_bounds,
    "verify-all": cmd_verify_all,
}

_CONFIG_TYPES = {"m": int, "n": int, "d": int, "t": int, "root": int,
                 "budget": int, "seed": int, "workers": int,
                 "quick": lambda v: v.lower() in ("1", "true", "yes"),
                 "mds": lambda v: v.lower() in ("1", "true", "yes"),
                 "no_timestamp": lambda v: v.lower() in ("1", "true", "yes")}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        # apply config-file values as defaults, flags still win
        if "--config" in argv:
            path = argv[argv.index("--config") + 1]
            values = _load_config_file(path)
            typed = {}
            for key, value in values.items():
                typed[key] = _CONFIG_TYPES.get(key, str)(value)
            parser.set_defaults(**typed)
            for sub_action in parser._subparsers._group_actions:
                for sub in sub_action.choices.values():
                    sub.set_defaults(**typed)
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParameterError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
