"""Command-line interface and certificate writer.

Subcommands map one-to-one onto the library surface: triple composition
and decomposition, catalog form verification, the scanners, and descent
replay. Output is JSONL (one certificate record per line) or a human
summary; exit code 0 means clean, 2 means a scan found a square outside
its exception set, 1 is a usage or input error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import certificates as cert
from .engine import CubeCandidate, descend_t1, descend_t2, descend_t8, reduce_cube_form
from .errors import DescentError
from .forms import expand_selector, manifest
from .scan import (
    DEFAULT_FAMILY_BOUND,
    ScanReport,
    scan_cube_plus_one,
    scan_pell_corollaries,
    scan_triangular,
    verify_form,
)
from .triples import compose_triple, decompose_sum, divisibility_report

WORKERS_ENV = "DESCENT_WORKERS"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1 on usage errors, not 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _common() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", metavar="PATH", help="write JSONL records to PATH")
    common.add_argument("--workers", type=int, default=None,
                        help=f"worker processes (default ${WORKERS_ENV} or 1)")
    common.add_argument("--format", choices=("jsonl", "summary"), default="jsonl",
                        dest="fmt", help="output format")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="descent", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    triple = sub.add_parser("triple", help="compose or decompose primitive triples")
    tsub = triple.add_subparsers(dest="subcommand", required=True)
    comp = tsub.add_parser("compose", parents=[common])
    comp.add_argument("p", type=int)
    comp.add_argument("q", type=int)
    dec = tsub.add_parser("decompose", parents=[common])
    dec.add_argument("a", type=int)
    dec.add_argument("b", type=int)

    ver = sub.add_parser("verify", parents=[common], help="scan a catalog form")
    ver.add_argument("--form", required=True, metavar="ID",
                     help="form id (F1, F10+, F14a, ...) or family id (F10, F14, ...)")
    ver.add_argument("--bound", required=True, type=int)
    ver.add_argument("--family-bound", type=int, default=DEFAULT_FAMILY_BOUND)
    ver.add_argument("--coprime-only", action="store_true")

    scan = sub.add_parser("scan", help="run a theorem scanner")
    ssub = scan.add_subparsers(dest="subcommand", required=True)
    tri = ssub.add_parser("triangular", parents=[common])
    tri.add_argument("--max-x", required=True, type=int)
    pell = ssub.add_parser("pell", parents=[common])
    pell.add_argument("--max", required=True, type=int)
    cube = ssub.add_parser("cube", parents=[common])
    cube.add_argument("--mode", choices=("integer", "rational"), required=True)
    cube.add_argument("--bound", required=True, type=int)
    cube.add_argument("--sixth-bound", type=int, default=None)

    desc = sub.add_parser("descend", parents=[common], help="replay one descent step")
    desc.add_argument("--theorem", required=True, type=int, choices=(1, 2, 8, 10))
    desc.add_argument("a", type=int,
                      help="first member of the candidate pair ((b, c) for theorem 10)")
    desc.add_argument("b", type=int, help="second member of the candidate pair")

    cat = sub.add_parser("catalog", help="catalog operations")
    csub = cat.add_subparsers(dest="subcommand", required=True)
    csub.add_parser("list", parents=[common])
    return parser


def _resolve_workers(args: argparse.Namespace) -> int:
    if args.workers is not None:
        return max(1, args.workers)
    env = os.environ.get(WORKERS_ENV)
    return max(1, int(env)) if env else 1


def _scan_summary_line(r: ScanReport) -> str:
    exceptions = sum(1 for s in r.squares_found if s["is_exception"])
    return (
        f"{r.target:14s} bounds={r.bounds} tested={r.candidates_tested} "
        f"squares={len(r.squares_found)} exceptions={exceptions} "
        f"violations={len(r.violations)} "
        f"oracle={r.oracle_checked}/{r.oracle_mismatches} "
        f"elapsed={r.elapsed:.2f}s"
    )


def _run_command(args: argparse.Namespace) -> tuple[list, list[str], int]:
    """Execute one subcommand.

    Returns (records, summary lines, exit code).
    """
    workers = _resolve_workers(args)
    if args.command == "triple" and args.subcommand == "compose":
        t = compose_triple(args.p, args.q)
        rep = divisibility_report(t)
        digest = cert.config_digest({"op": "triple.compose", "p": args.p, "q": args.q})
        rec = cert.triple_record(t, rep, digest)
        line = (
            f"(p, q) = ({t.gen.p}, {t.gen.q}) -> (a, b, c) = ({t.a}, {t.b}, {t.c}) "
            f"div3={rep.div3} div4={rep.div4} div5={rep.div5}"
        )
        return [rec], [line], 0
    if args.command == "triple" and args.subcommand == "decompose":
        gen = decompose_sum(args.a, args.b)
        digest = cert.config_digest({"op": "triple.decompose", "a": args.a, "b": args.b})
        rec = cert.decomposition_record(args.a, args.b, gen, digest)
        return [rec], [f"({args.a}, {args.b}) -> (p, q) = ({gen.p}, {gen.q})"], 0
    if args.command == "verify":
        forms = expand_selector(args.form)
        records, lines, code = [], [], 0
        for f in forms:
            report = verify_form(
                f, args.bound,
                coprime_only=args.coprime_only,
                family_bound=args.family_bound,
                workers=workers,
            )
            records.append(cert.scan_summary_record(report))
            lines.append(_scan_summary_line(report))
            if report.violations:
                code = 2
        return records, lines, code
    if args.command == "scan":
        if args.subcommand == "triangular":
            report = scan_triangular(args.max_x, workers=workers)
        elif args.subcommand == "pell":
            report = scan_pell_corollaries(args.max, workers=workers)
        else:
            report = scan_cube_plus_one(
                args.mode, args.bound, sixth_bound=args.sixth_bound, workers=workers
            )
        code = 2 if report.violations else 0
        return [cert.scan_summary_record(report)], [_scan_summary_line(report)], code
    if args.command == "descend":
        a, b = args.a, args.b
        digest = cert.config_digest(
            {"op": "descend", "theorem": args.theorem, "a": a, "b": b}
        )
        if args.theorem == 10:
            outcome = reduce_cube_form(CubeCandidate(a, b))
            inputs = {"b": a, "c": b}
        else:
            step = {1: descend_t1, 2: descend_t2, 8: descend_t8}[args.theorem]
            outcome = step(a, b)
            inputs = {"a": a, "b": b}
        rec = cert.descent_trace_record(args.theorem, inputs, outcome, digest)
        if outcome.exception_name:
            detail = outcome.exception_name
        elif outcome.violated:
            detail = f"violated: {outcome.violated}"
        else:
            detail = f"reduced to {outcome.reduced}"
        return [rec], [f"theorem {args.theorem} {tuple(inputs.values())}: {outcome.tag} ({detail})"], 0
    if args.command == "catalog" and args.subcommand == "list":
        records = [cert.catalog_form_record(e) for e in manifest()]
        lines = [
            f"{e['form']:6s} {e['expression']:42s} exceptions: {e['exceptions']}"
            for e in manifest()
        ]
        return records, lines, 0
    raise AssertionError("unhandled command")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        records, lines, code = _run_command(args)
    except (DescentError, KeyError, ValueError, OverflowError) as e:
        print(f"descent: error: {e}", file=sys.stderr)
        return 1
    if args.fmt == "summary":
        out_lines = lines
    else:
        out_lines = [cert.serialize_record(r) for r in records]
    text = "".join(line + "\n" for line in out_lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def entry_point() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry_point()
