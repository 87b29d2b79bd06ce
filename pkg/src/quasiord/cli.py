"""Command line front end: ``quasiord kappa|certify|roots|deformation|corpus``."""
from __future__ import annotations

import argparse
from fractions import Fraction
import json
import re
import sys
import time
from typing import List, Optional

from .report import COMMANDS, InputSpec, dumps, render_text, run_report


def _int_list(text: str) -> List[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _infer_vars(text: str, main: str) -> List[str]:
    names = []
    for name in re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text):
        if name != main and name not in names:
            names.append(name)
    return sorted(names)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quasiord", description="Polyhedral quasi-ordinarity test and derived invariants.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--poly", help="polynomial expression")
        src.add_argument("--file", help="file holding the polynomial expression")
        p.add_argument("--vars", help="comma-separated base variables in order (default: inferred, sorted)")
        p.add_argument("--main", default="z", help="main variable (default z)")
        p.add_argument("--base-budget", type=int, default=16)
        p.add_argument("--root-bound", type=Fraction, default=None, help="x-degree truncation bound (default 3 n |lambda_g|_1)")
        p.add_argument("--eta", type=_int_list, default=None, help="branch selectors, e.g. 0,1")
        p.add_argument("--json", action="store_true", help="print the JSON report")
        p.add_argument("--no-timings", action="store_true", help="omit timings (byte-stable output)")
    p = sub.add_parser("corpus")
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--base-budget", type=int, default=16)
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-timings", action="store_true")
    return ap


def _run_corpus(args) -> int:
    from .corpus import generate_corpus, run_corpus
    t0 = time.perf_counter()
    instances = generate_corpus(args.count, args.seed)
    rows = run_corpus(instances, args.base_budget)
    ok = all(r.agreement for r in rows)
    if args.json:
        out = {
            "seed": args.seed,
            "count": len(rows),
            "all_agree": ok,
            "rows": [{
                "name": r.name, "family": r.family, "degree": r.degree, "terminal": r.terminal,
                "oracle": r.oracle, "agreement": r.agreement, "expected": r.expected, "error": r.error,
                "poly": str(inst.poly),
                **({} if args.no_timings else {"seconds": round(r.seconds, 6)}),
            } for r, inst in zip(rows, instances)],
        }
        if not args.no_timings:
            out["total_seconds"] = round(time.perf_counter() - t0, 6)
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        print(f"{'name':<9} {'family':<13} {'n':>2}  {'kappa':<10} {'oracle':<6} agree")
        for r in rows:
            print(f"{r.name:<9} {r.family:<13} {r.degree:>2}  {r.terminal:<10} {str(r.oracle):<6} {r.agreement}"
                  + (f"  [{r.error}]" if r.error else ""))
        qo = sum(r.oracle for r in rows)
        print(f"{len(rows)} instances ({qo} quasi-ordinary, {len(rows) - qo} not); "
              f"agreement {sum(r.agreement for r in rows)}/{len(rows)}"
              + ("" if args.no_timings else f"; {time.perf_counter() - t0:.2f} s"))
    return 0 if ok else 1


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "corpus":
        return _run_corpus(args)
    if args.file:
        with open(args.file) as fh:
            text = fh.read()
    else:
        text = args.poly
    base = [v.strip() for v in args.vars.split(",") if v.strip()] if args.vars else _infer_vars(text, args.main)
    spec = InputSpec(base, args.main, text, args.command, args.base_budget, args.root_bound, args.eta,
                     timings=not args.no_timings)
    report = run_report(spec)
    print(dumps(report) if args.json else render_text(report))
    return 2 if report.get("error") else 0


if __name__ == "__main__":
    sys.exit(main())
