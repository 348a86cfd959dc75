"""Command-line front end.

Exit codes: 0 on success, 1 when a verification suite fails, 2 for usage
errors (bad flags, malformed input, requests outside supported limits).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from . import algebra, clifford, forms, suites
from .errors import TwistedCliffordError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _seed(text: str) -> int:
    v = _nonneg(text)
    if v >= 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twisted-clifford",
                     description="Twisted group algebras, GF(2) quadratic forms and real Clifford algebras.")
    parser.add_argument("--seed", type=_seed, default=0, help="seed for randomized checks")
    parser.add_argument("--threads", type=_positive, default=1, help="worker budget")
    # the same flags after the subcommand; SUPPRESS keeps them from resetting earlier values
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=_seed, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=_positive, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="iso class of Cl_{p,q}(R)")
    p.add_argument("--p", type=_nonneg, required=True)
    p.add_argument("--q", type=_nonneg, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("arf", parents=[common], help="Arf invariant of mu_{p,q}")
    p.add_argument("--p", type=_nonneg, required=True)
    p.add_argument("--q", type=_nonneg, required=True)
    p.add_argument("--brute", action="store_true", help="cross-check by counting")

    p = sub.add_parser("form", parents=[common], help="analyse a quadratic form over GF(2)")
    p.add_argument("action", choices=["arf", "radical", "canonical"])
    p.add_argument("--poly", required=True)
    p.add_argument("--dim", type=_positive)

    p = sub.add_parser("clock", parents=[common], help="classification table")
    p.add_argument("--max", type=_nonneg, default=8)
    p.add_argument("--format", choices=["csv", "md", "json"], default="csv")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(suites.SUITES))
    p.add_argument("--max", type=_nonneg)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("demo", parents=[common], help="quaternion and octonion tables")
    p.add_argument("which", choices=["quaternions", "octonions"])

    p = sub.add_parser("export", parents=[common], help="write structure constants as JSON")
    p.add_argument("what", choices=["algebra"])
    p.add_argument("--p", type=_nonneg, required=True)
    p.add_argument("--q", type=_nonneg, required=True)
    p.add_argument("--out", required=True)
    return parser


def _cmd_classify(args, out: TextIO) -> int:
    iso = clifford.classify(args.p, args.q)
    if args.json:
        out.write(json.dumps({"p": args.p, "q": args.q, "N": args.p + args.q,
                              "arf": clifford.arf_closed(args.p, args.q),
                              "iso_class": str(iso),
                              "real_dimension": iso.real_dimension}) + "\n")
    else:
        out.write(f"{iso}\n")
    return EXIT_OK


def _cmd_arf(args, out: TextIO) -> int:
    value = clifford.arf_closed(args.p, args.q)
    count = clifford.arf_pq_brute(args.p, args.q, workers=args.threads) if args.brute else None
    out.write(f"{value}\n")
    if count is not None:
        agree = count.arf == value
        out.write(f"{'PASS' if agree else 'FAIL'} brute force: difference {count.difference}, "
                  f"Arf {count.arf}\n")
        return EXIT_OK if agree else EXIT_FAIL
    return EXIT_OK


def _cmd_form(args, out: TextIO) -> int:
    q = forms.parse_form(args.poly, args.dim)
    if args.action == "arf":
        out.write(f"{forms.arf_brute(q, workers=args.threads).arf}\n")
    elif args.action == "radical":
        rad = forms.radical(forms.bilinear_of(q))
        out.write(f"dim {len(rad)}\n")
        for v in rad:
            out.write(" ".join(map(str, v)) + "\n")
    else:
        kind, canon = forms.canonical_of(q)
        phi = forms.find_witness(q, canon)
        out.write(f"{kind}: {canon.polynomial()}\n")
        if phi is not None:
            out.write("witness (columns are images of e_i):\n")
            for row in phi:
                out.write(" ".join(map(str, row)) + "\n")
    return EXIT_OK


def _cmd_clock(args, out: TextIO) -> int:
    out.write(clifford.clock_table(args.max, args.format))
    return EXIT_OK


def _cmd_verify(args, out: TextIO) -> int:
    checks, elapsed = suites.run_suite(args.suite, args.max, seed=args.seed, workers=args.threads)
    ok = all(c.ok for c in checks)
    if args.json:
        out.write(json.dumps({"suite": args.suite, "passed": ok,
                              "checks": [c._asdict() for c in checks]}, indent=1) + "\n")
    else:
        for c in checks:
            out.write(c.line() + "\n")
        out.write(f"{sum(c.ok for c in checks)}/{len(checks)} checks passed\n")
    return EXIT_OK if ok else EXIT_FAIL


def _table_lines(A: algebra.TwistedAlgebra, names: list[str]) -> list[str]:
    n = A.dimension
    width = max(len(s) for s in names) + 1
    lines = [" " * width + "".join(f"{s:>{width + 1}}" for s in names)]
    for a in range(n):
        cells = []
        for b in range(n):
            k, c = A.basis_product(a, b)
            sign = "-" if c < 0 else ""
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            cells.append(f"{sign}{mag}{names[k]}")
        lines.append(f"{names[a]:>{width}}" + "".join(f"{s:>{width + 1}}" for s in cells))
    return lines


def _cmd_demo(args, out: TextIO) -> int:
    if args.which == "quaternions":
        A = algebra.quaternions()
        names = ["1", "e2", "e1", "e12"]
    else:
        A = algebra.octonions()
        names = ["1", "e3", "e2", "e23", "e1", "e13", "e12", "e123"]
    out.write(f"{args.which}: C_2^{A.group.rank}-graded, basis indexed by exponent vectors\n")
    for line in _table_lines(A, names):
        out.write(line + "\n")
    checks = suites.division_demos(seed=args.seed)
    if args.which == "quaternions":
        checks = [checks[0], checks[3]]
        assoc = algebra.associativity_report(A)
        checks.append(suites.Check("quaternions are associative", assoc.associative,
                                   f"{assoc.checked} triples"))
    else:
        checks = checks[1:]
    for c in checks:
        out.write(c.line() + "\n")
    return EXIT_OK if all(c.ok for c in checks) else EXIT_FAIL


def _cmd_export(args, out: TextIO) -> int:
    A = clifford.clifford_algebra((args.p, args.q))
    data = algebra.algebra_to_json(A)
    data["signature"] = {"p": args.p, "q": args.q}
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(data, fh)
        fh.write("\n")
    out.write(f"wrote {len(data['table'])} structure constants to {args.out}\n")
    return EXIT_OK


COMMANDS = {
    "classify": _cmd_classify,
    "arf": _cmd_arf,
    "form": _cmd_form,
    "clock": _cmd_clock,
    "verify": _cmd_verify,
    "demo": _cmd_demo,
    "export": _cmd_export,
}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None,
        err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except TwistedCliffordError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
