"""Command line interface.

Subcommands:

  families  print every (s, branch) family for a cofactor q at k
  pell      solve X^2 - d Y^2 = m inside an |X| window
  search    pell-driven candidate search over a discriminant window
  scan      direct candidate search over an x interval
  verify    re-check candidate records read as JSON lines

Output is JSON lines by default (--text for a human-readable form) and
goes to stdout; warnings and errors go to stderr.  Exit codes: 0
success, 1 no results or a failed verification, 2 inadmissible
cofactor, 64 usage error, 65 malformed input data.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from typing import Iterable

from gmnt.families import QuadraticFamily, admissible_q, families_for
from gmnt.pell import degenerate_solutions, iterate_solutions
from gmnt.search import CurveCandidate, SearchConfig, iter_search, verify_record

__all__ = ["main"]

_log = logging.getLogger("gmnt.cli")

EXIT_OK = 0
EXIT_EMPTY = 1
EXIT_INADMISSIBLE = 2
EXIT_USAGE = 64
EXIT_DATA = 65


def integer(text: str) -> int:
    """Accept decimal and 0x-prefixed hex on every numeric flag."""
    return int(text, 0)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(line: str) -> None:
    print(line)


def _family_text(fam: QuadraticFamily) -> str:
    spec = fam.spec
    head = f"k={spec.k} q={spec.q} s={spec.s} branch={spec.branch}"
    pell = (
        f"X = {fam.pell_alpha} x + {fam.pell_beta}, "
        f"X^2 - 3|delta| Y^2 = {fam.pell_m}"
    )
    return (
        f"{head}\n  n = {fam.n}\n  p = {fam.p}\n  t = {fam.t}\n  pell: {pell}"
    )


def _candidate_text(c: CurveCandidate) -> str:
    return (
        f"k={c.k} q={c.q} s={c.s} branch={c.branch} x={c.x} "
        f"p={c.p} n={c.n} t={c.t} delta={c.delta} Y={c.y} p_bits={c.p_bits}"
    )


def cmd_families(args: argparse.Namespace) -> int:
    if not admissible_q(args.k, args.q):
        _log.error("q = %d is not admissible for k = %d", args.q, args.k)
        return EXIT_INADMISSIBLE
    fams = families_for(args.k, args.q)
    for fam in fams:
        for note in fam.warnings:
            _log.warning("k=%d q=%d s=%d %s: %s",
                         args.k, args.q, fam.spec.s, fam.spec.branch, note)
        if args.fmt == "json":
            _emit(json.dumps(fam.to_json_dict()))
        else:
            _emit(_family_text(fam))
    return EXIT_OK if fams else EXIT_EMPTY


def cmd_pell(args: argparse.Namespace) -> int:
    if args.d < 1:
        _log.error("d must be a positive integer, got %d", args.d)
        return EXIT_USAGE
    if args.m == 0:
        _log.error("m must be nonzero")
        return EXIT_USAGE
    if not 1 <= args.bits <= 512:
        _log.error("bits must lie in [1, 512], got %d", args.bits)
        return EXIT_USAGE
    if math.isqrt(args.d) ** 2 == args.d:
        solutions = degenerate_solutions(args.d, args.m)
    else:
        solutions = iterate_solutions(args.d, args.m, args.bits)
    for sol in solutions:
        if args.fmt == "json":
            _emit(json.dumps({"X": str(sol.x), "Y": str(sol.y)}))
        else:
            _emit(f"X={sol.x} Y={sol.y}")
    return EXIT_OK


def _run_configured_search(args: argparse.Namespace, mode: str) -> int:
    if not admissible_q(args.k, args.q):
        _log.error("q = %d is not admissible for k = %d", args.q, args.k)
        return EXIT_INADMISSIBLE
    branches = tuple(args.branch) if args.branch else ("A", "B")
    fields = dict(
        k=args.k,
        q=args.q,
        branches=branches,
        mode=mode,
        delta_min=args.dmin,
        delta_max=args.dmax,
        p_bits_min=args.pbits_min,
        p_bits_max=args.pbits_max,
        max_hits=args.max_hits,
        jobs=args.jobs,
    )
    if mode == "pell":
        fields["x_bits_max"] = args.xbits
    else:
        fields["x_min"] = args.xmin
        fields["x_max"] = args.xmax
        fields["trial_bound"] = args.trial_bound
    try:
        cfg = SearchConfig(**fields)
    except ValueError as exc:
        _log.error("%s", exc)
        return EXIT_USAGE
    hits = 0
    for cand in iter_search(cfg):
        hits += 1
        if args.fmt == "json":
            _emit(json.dumps(cand.to_json_dict()))
        else:
            _emit(_candidate_text(cand))
    return EXIT_OK if hits else EXIT_EMPTY


def cmd_search(args: argparse.Namespace) -> int:
    return _run_configured_search(args, "pell")


def cmd_scan(args: argparse.Namespace) -> int:
    return _run_configured_search(args, "scan")


def _read_records(path: str) -> Iterable[str]:
    if path == "-":
        yield from sys.stdin
    else:
        with open(path, encoding="utf-8") as handle:
            yield from handle


def cmd_verify(args: argparse.Namespace) -> int:
    all_ok = True
    index = 0
    for line in _read_records(args.path):
        line = line.strip()
        if not line:
            continue
        index += 1
        try:
            record = json.loads(line)
            report = verify_record(record)
        except (json.JSONDecodeError, ValueError) as exc:
            _log.error("record %d: %s", index, exc)
            return EXIT_DATA
        failed = [check.name for check in report.failures()]
        all_ok = all_ok and report.ok
        if args.fmt == "json":
            _emit(json.dumps({"record": index, "ok": report.ok,
                              "failures": failed}))
        else:
            state = "ok" if report.ok else "FAIL " + ", ".join(failed)
            _emit(f"record {index}: {state}")
    return EXIT_OK if all_ok else EXIT_EMPTY


def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json",
                     help="JSON lines output (default)")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text",
                     help="human-readable output")
    common.set_defaults(fmt="json")
    common.add_argument("--quiet", action="store_true",
                        help="suppress warnings on stderr")
    common.add_argument("--jobs", type=integer, default=os.cpu_count() or 1,
                        help="worker processes for search and scan")

    parser = _Parser(prog="gmnt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    fam = sub.add_parser("families", parents=[common],
                         help="print the families for one cofactor")
    fam.add_argument("--k", type=integer, required=True, choices=(3, 4, 6))
    fam.add_argument("--q", type=integer, required=True)
    fam.set_defaults(handler=cmd_families)

    pell = sub.add_parser("pell", parents=[common],
                          help="solve X^2 - d Y^2 = m")
    pell.add_argument("--d", type=integer, required=True)
    pell.add_argument("--m", type=integer, required=True)
    pell.add_argument("--bits", type=integer, default=64,
                      help="emit solutions with |X| below 2^bits")
    pell.set_defaults(handler=cmd_pell)

    def add_search_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--k", type=integer, required=True, choices=(3, 4, 6))
        p.add_argument("--q", type=integer, required=True)
        p.add_argument("--branch", action="append", choices=("A", "B"),
                       help="restrict to one branch (default: both)")
        p.add_argument("--dmin", type=integer, default=1)
        p.add_argument("--dmax", type=integer, default=100000)
        p.add_argument("--pbits-min", type=integer, default=None)
        p.add_argument("--pbits-max", type=integer, default=None)
        p.add_argument("--max-hits", type=integer, default=0,
                       help="stop after this many candidates (0: no limit)")

    search = sub.add_parser("search", parents=[common],
                            help="candidate search over a discriminant window")
    add_search_flags(search)
    search.add_argument("--xbits", type=integer, default=64,
                        help="keep candidates with |x| below 2^xbits")
    search.set_defaults(handler=cmd_search)

    scan = sub.add_parser("scan", parents=[common],
                          help="candidate search over an x interval")
    add_search_flags(scan)
    scan.add_argument("--xmin", type=integer, required=True)
    scan.add_argument("--xmax", type=integer, required=True)
    scan.add_argument("--trial-bound", type=integer, default=10**6,
                      help="trial division bound for the squarefree split")
    scan.set_defaults(handler=cmd_scan)

    verify = sub.add_parser("verify", parents=[common],
                            help="re-check candidate records")
    verify.add_argument("path", nargs="?", default="-",
                        help="JSON lines file ('-' or omitted: stdin)")
    verify.set_defaults(handler=cmd_verify)
    return parser


def _configure_logging(quiet: bool) -> None:
    # rebind on every invocation so repeated in-process calls (tests,
    # embedding) pick up the current sys.stderr and do not stack handlers
    logger = logging.getLogger("gmnt")
    logger.handlers.clear()
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.propagate = False
    logger.setLevel(logging.ERROR if quiet else logging.WARNING)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    _configure_logging(args.quiet)
    try:
        return args.handler(args)
    except BrokenPipeError:
        # consumer closed the pipe mid-stream; not an error
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
