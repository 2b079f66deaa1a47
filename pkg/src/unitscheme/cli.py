"""``verify`` command line entry point.

Exit status: 0 when every check passes, 1 when any check fails, 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .coeffring import is_prime
from .suites import SUITES, run


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _lambda(text: str) -> str:
    if text in ("generic", "zero"):
        return text
    try:
        int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected generic, zero or an integer") from None
    return text


def _seed(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("seed must be nonnegative")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="verify", description=__doc__.splitlines()[0])
    parser.add_argument("--suite", required=True, choices=SUITES + ("all",))
    parser.add_argument("--prime", required=True, type=_prime)
    parser.add_argument("--lambda", dest="lam", default="generic", type=_lambda)
    parser.add_argument("--seed", default=0, type=_seed)
    parser.add_argument("--deep", action="store_true",
                        help="allow the heavy quotient suites at p >= 5")
    parser.add_argument("--out", type=Path, help="also write the report to this file")
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = run(args.suite, args.prime, args.lam, args.seed, args.deep)
    rendered = report.to_json() if args.format == "structured" else report.to_text()
    sys.stdout.write(rendered)
    if args.out is not None:
        args.out.write_text(rendered, encoding="utf-8")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
