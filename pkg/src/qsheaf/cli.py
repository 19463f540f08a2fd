"""Command line front end: ``qsheaf <command> [expr | --file F]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional

from . import regression
from .calculus import ExprTable
from .core import NEG_INF, AmbiguityError, InconsistentTableError, QsheafError, rank
from .dsl import ParseError, parse
from .regularity import check_sandwich, cm_reg, qreg
from .splitting import eg_check, knorrer_check, line_split_check, rank2_check

EXIT_OK, EXIT_FAIL, EXIT_AMBIGUOUS, EXIT_PARSE, EXIT_INCONSISTENT = 0, 1, 2, 3, 4

COMMANDS = ("table", "qreg", "reg", "sandwich", "split-check", "line-split", "knorrer", "rank2", "verify-paper")


def window_arg(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like a:b, got {text!r}")
    if a > b:
        raise argparse.ArgumentTypeError(f"empty window {a}:{b}")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qsheaf", description="Cohomology and splitting on smooth quadrics.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("expr", nargs="?", help="expression such as 'Q4: O + S1(-1)'; read from --file or stdin if absent")
    p.add_argument("--file", "-f", help="a .qsheaf file")
    p.add_argument("--window", type=window_arg, help="twist range a:b (default: the safe window)")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    p.add_argument("--c1", type=int, help="first Chern class for rank2 (default: computed)")
    return p


def _source(args) -> str:
    if args.expr is not None:
        return args.expr
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            return fh.read()
    return sys.stdin.read()


def _cells_json(t: ExprTable, window) -> list[dict]:
    return [
        {"i": i, "t": tt, "lo": v.lo, "hi": v.hi, "exact": v.exact}
        for i, tt, v in t.cells(window)
    ]


def render_table(t: ExprTable, window, fmt: str, verdict=None) -> str:
    lo, hi = window
    if fmt == "json":
        doc = {"quadric": t.n, "cells": _cells_json(t, window), "window": [lo, hi], "verdict": verdict}
        return json.dumps(doc, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "t", "lo", "hi"])
        for i, tt, v in t.cells(window):
            w.writerow([i, tt, v.lo, v.hi])
        return buf.getvalue().rstrip("\n")
    ts = list(range(lo, hi + 1))
    rows = [["i\\t"] + [str(x) for x in ts]]
    for i in range(t.n, -1, -1):
        rows.append([str(i)] + [str(t.query(i, x)) for x in ts])
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    return "\n".join(" ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows)


def _value_text(v) -> str:
    return "-inf" if v == NEG_INF else str(v)


def _emit(args, t: Optional[ExprTable], verdict, lines: list[str], extra: Optional[dict] = None) -> None:
    if args.format == "text":
        print("\n".join(lines))
        return
    window = args.window or (t.window if t is not None else None)
    if args.format == "json":
        doc = {"quadric": t.n if t else None, "cells": _cells_json(t, window) if t else [],
               "window": list(window) if window else None, "verdict": verdict}
        doc.update(extra or {})
        print(json.dumps(doc, indent=2))
    else:
        print(render_table(t, window, "csv"))


def _report_value(args, t, report) -> int:
    if report.ambiguous:
        lines = [str(report)] + ["  " + w.describe() for w in report.witnesses]
        _emit(args, t, None, lines, {"bracket": list(report.bracket)})
        return EXIT_AMBIGUOUS
    value = _value_text(report.value)
    lines = [value] + ["  witness at m-1: " + w.describe() for w in report.witnesses]
    _emit(args, t, value, lines)
    return EXIT_OK


def _report_split(args, t, report) -> int:
    lines = [str(report)]
    if report.verdict == "ambiguous":
        lines += ["  " + w.describe() for w in report.cells[:20]]
    if report.reason:
        lines.append("  " + report.reason)
    if report.window:
        lines.append(f"  window {report.window[0]}:{report.window[1]}")
    extra = {"decomposition": [str(g) for g in report.decomposition]}
    if report.witness is not None:
        w = report.witness
        extra["witness"] = {"i": w.i, "t": w.t, "lo": w.value.lo, "hi": w.value.hi, "label": w.label}
    _emit(args, t, report.verdict, lines, extra)
    return EXIT_AMBIGUOUS if report.verdict == "ambiguous" else EXIT_OK


def _verify(args) -> int:
    results = regression.run(args.seed)
    if args.format == "json":
        print(json.dumps([{"item": n, "ok": ok, "detail": d} for n, ok, d in results], indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["item", "ok", "detail"])
        w.writerows(results)
        print(buf.getvalue().rstrip("\n"))
    else:
        for name, ok, detail in results:
            print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_FAIL


def run(args) -> int:
    if args.command == "verify-paper":
        return _verify(args)
    expr = parse(_source(args))
    t = ExprTable(expr, args.window)
    cmd = args.command
    if cmd == "table":
        print(render_table(t, t.window, args.format))
        return EXIT_OK
    if cmd == "qreg":
        return _report_value(args, t, qreg(t))
    if cmd == "reg":
        return _report_value(args, t, cm_reg(t))
    if cmd == "sandwich":
        s = check_sandwich(t)
        lines = [f"Qreg = {_value_text(s['qreg'])}, Reg = {_value_text(s['reg'])}, "
                 f"{'holds' if s['holds'] else 'VIOLATED'}, tight: {', '.join(s['tight']) or 'neither'}"]
        _emit(args, t, "holds" if s["holds"] else "violated", lines,
              {"qreg": _value_text(s["qreg"]), "reg": _value_text(s["reg"]), "tight": s["tight"]})
        return EXIT_OK if s["holds"] else EXIT_FAIL
    if cmd == "split-check":
        return _report_split(args, t, eg_check(t.expr))
    if cmd == "line-split":
        return _report_split(args, t, line_split_check(t.expr))
    if cmd == "knorrer":
        return _report_split(args, t, knorrer_check(t.expr))
    if cmd == "rank2":
        return _report_split(args, t, rank2_check(t.expr, args.c1))
    raise AssertionError(cmd)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AmbiguityError as exc:
        print(f"ambiguous: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    except InconsistentTableError as exc:
        print(f"inconsistent: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (QsheafError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
