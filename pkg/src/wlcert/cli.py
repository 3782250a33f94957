"""Command-line interface: ``wlcert analyze | compare | verify-corpus``.

Exit codes: 0 success, 1 an implication check failed,
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import datetime
import json
import logging
import os
import sys
from typing import Optional

from wlcert import corpus
from wlcert.graph import (Graph, Graph6Error, GraphError, from_json_obj, from_spec,
                          parse_graph6)
from wlcert.report import analysis_report, consistent, pair_report

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _read_token(token: str) -> str:
    if token == "-":
        return sys.stdin.read()
    if os.path.isfile(token):
        with open(token, encoding="ascii") as fh:
            return fh.read()
    return token


def load_graphs(token: str, fmt: str = "auto") -> list[Graph]:
    """Graphs from a path, ``-`` (stdin), ``gen:<spec>`` or an inline graph6 / JSON string."""
    try:
        if token.startswith("gen:"):
            return [from_spec(token[4:])]
        text = _read_token(token)
        if fmt == "auto":
            fmt = "json" if text.lstrip().startswith(("{", "[")) else "graph6"
        if fmt == "json":
            obj = json.loads(text)
            items = obj if isinstance(obj, list) else [obj]
            return [from_json_obj(o) for o in items]
        graphs = [parse_graph6(line) for line in text.splitlines() if line.strip()]
    except (GraphError, Graph6Error, json.JSONDecodeError, UnicodeDecodeError, OSError) as exc:
        raise InputError(f"{token}: {exc}") from exc
    if not graphs:
        raise InputError(f"{token}: no graphs found")
    return graphs


def _single(token: str, fmt: str) -> Graph:
    graphs = load_graphs(token, fmt)
    if len(graphs) != 1:
        raise InputError(f"{token}: expected one graph, found {len(graphs)}")
    return graphs[0]


def _dump(obj, args) -> str:
    if getattr(args, "timestamps", False):
        stamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
        obj = {"generatedAt": stamp, "result": obj}
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, args):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _array_text(arr: dict) -> str:
    return "{" + ",".join(map(str, arr["b"])) + "; " + ",".join(map(str, arr["c"])) + "}"


def _human_analysis(rep: dict) -> str:
    rows = [
        ("graph6", rep["graph6"]),
        ("order / size", f"{rep['order']} / {rep['size']}"),
        ("connected", rep["connected"]),
        ("1-WL class sizes", rep["colorRefine"]["classSizes"]),
        ("1-WL rounds", rep["colorRefine"]["rounds"]),
        ("2-WL rank", rep["wl2"]["rank"]),
        ("char poly", rep["charPoly"]),
        ("controllable", rep["controllable"]),
        ("classification", rep["classification"]["kind"]),
    ]
    cls = rep["classification"]
    if "array" in cls:
        rows.append(("intersection array", _array_text(cls["array"])))
    if "arrays" in cls:
        rows.append(("iota'", _array_text(cls["arrays"]["iota1"])))
        rows.append(("iota''", _array_text(cls["arrays"]["iota2"])))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"


def _human_pair(rep: dict) -> str:
    lines = [f"{rep['a']}  vs  {rep['b']}"]
    for key in ("c2", "c3", "cospectral", "generalizedCospectral", "walkEquivalent",
                "fractionalWitnessFound", "isoVerdict"):
        lines.append(f"  {key.ljust(24)} {rep[key]}")
    lines.append("  theorem consistency:")
    for chk in rep["theoremConsistency"]:
        state = "n/a " if not chk["applicable"] else ("PASS" if chk["pass"] else "FAIL")
        lines.append(f"    [{state}] {chk['check']}")
    return "\n".join(lines) + "\n"


def _human_corpus(summary: dict) -> str:
    lines = [f"graphs: {summary['graphs']}  representatives: {summary['representatives']}  "
             f"pairs compared: {summary['pairsCompared']}"]
    for name, c in summary["checks"].items():
        lines.append(f"  {name.ljust(64)} checked {c['checked']:>7}  violations {c['violations']}")
    lines.append(f"violations: {summary['violationCount']}")
    for v in summary["violations"]:
        lines.append(f"  {v['check']}: {' '.join(v['graphs'])}")
    lines.append(f"interesting pairs: {summary['interestingPairCount']}")
    for p in summary["interestingPairs"]:
        flags = [k for k in ("c2", "c3", "cospectral", "walkEquivalent") if p[k]]
        lines.append(f"  {p['a']} {p['b']}  {','.join(flags)}")
    for n, c in summary["controllableCensus"].items():
        lines.append(f"  n={n}: {c['controllable']} of {c['graphs']} controllable")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    reports = []
    for token in args.inputs:
        for g in load_graphs(token, args.format):
            reports.append(analysis_report(g, with_config=args.with_config))
    if args.human:
        text = "\n".join(_human_analysis(r) for r in reports)
    else:
        text = _dump(reports[0] if len(reports) == 1 else reports, args)
    _emit(text, args)
    return EXIT_OK


def cmd_compare(args) -> int:
    g = _single(args.a, args.format)
    h = _single(args.b, args.format)
    rep = pair_report(g, h)
    _emit(_human_pair(rep) if args.human else _dump(rep, args), args)
    return EXIT_OK if consistent(rep) else EXIT_VIOLATION


def cmd_verify_corpus(args) -> int:
    if args.input:
        graphs = []
        for token in args.input:
            graphs.extend(load_graphs(token, args.format))
        source = {"files": args.input}
    else:
        if not 1 <= args.n_max <= 7:
            raise InputError("--n-max must lie in 1..7 for built-in enumeration")
        graphs = corpus.builtin_corpus(args.n_max)
        source = {"builtin": True, "nMax": args.n_max}
    summary = corpus.verify(graphs, suite=args.suite, jobs=args.jobs, reps_per_key=args.reps)
    summary["source"] = source
    _emit(_human_corpus(summary) if args.human else _dump(summary, args), args)
    return EXIT_VIOLATION if summary["violationCount"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("auto", "graph6", "json"), default="auto",
                        help="input format (default: detect)")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--human", action="store_true", help="plain-text tables instead of JSON")
    common.add_argument("--timestamps", action="store_true", help="wrap JSON output with a timestamp")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(
        prog="wlcert",
        description="Weisfeiler-Leman, spectral and walk-matrix equivalences of finite graphs.",
        epilog="Graph arguments: a file path, '-' for stdin, 'gen:<spec>' "
               "(e.g. gen:cycle:8, gen:subdivision(complete:4)) or an inline graph6 string.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="report on single graphs")
    a.add_argument("inputs", nargs="+")
    a.add_argument("--with-config", action="store_true", help="include the full 2-WL configuration")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("compare", parents=[common], help="compare two graphs")
    c.add_argument("a")
    c.add_argument("b")
    c.set_defaults(func=cmd_compare)

    v = sub.add_parser("verify-corpus", parents=[common], help="run the implication suite on many graphs")
    v.add_argument("--n-max", type=int, default=5, help="largest order for built-in enumeration")
    v.add_argument("--input", action="append", help="graph6 corpus file (repeatable); disables enumeration")
    v.add_argument("--suite", choices=corpus.SUITES, default="all")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--reps", type=int, default=2, help="labelled representatives kept per invariant key")
    v.set_defaults(func=cmd_verify_corpus)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"wlcert: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
