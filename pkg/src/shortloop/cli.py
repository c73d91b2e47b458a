"""Command-line entry point: ``shortloop <subcommand> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
import time
from contextlib import contextmanager

from . import report as rep
from .basis import ENGINES, short_loop, sp_gen
from .build import build_augmented, format_points, parse_points
from .complex import ParseError, parse_complex, validate
from .oracle import EnumerationBoundError, brute_force_shortest_basis
from .persistence import persistent_h1_rank
from .samples import KINDS, sample

log = logging.getLogger("shortloop")

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_VALIDATION = 4
EXIT_BOUND = 5
EXIT_IO = 6


class CLIError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@contextmanager
def _stage(name: str):
    t0 = time.perf_counter()
    yield
    log.info("%s: %.3fs", name, time.perf_counter() - t0)


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc.strerror}", EXIT_IO) from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CLIError(f"cannot write {path}: {exc.strerror}", EXIT_IO) from None


def _points(path: str):
    try:
        return parse_points(_read(path))
    except ParseError as exc:
        raise CLIError(f"{path}: {exc}", EXIT_PARSE) from None


def _complex(path: str):
    try:
        k = parse_complex(_read(path))
    except ParseError as exc:
        raise CLIError(f"{path}: {exc}", EXIT_PARSE) from None
    problems = validate(k)
    if problems:
        raise CLIError("\n".join(f"{path}: {p}" for p in problems), EXIT_VALIDATION)
    return k


def _positive_r(args) -> float:
    if args.r is None or not args.r > 0:
        raise CLIError("--r must be given and positive", EXIT_USAGE)
    return args.r


def cmd_shortloop(args) -> int:
    r = _positive_r(args)
    X = _points(args.input)
    with _stage("shortloop"):
        result = short_loop(X, r, cache=not args.no_cache, n_jobs=args.parallel_roots, engine=args.engine)
    config = {"input": args.input, "r": r, "engine": args.engine, "cache": not args.no_cache}
    report = rep.build_report("shortloop", result.augmented.complex, result, config, result.augmented, X)
    _write(args.out, rep.dumps(report))
    if args.obj:
        _write(args.obj, rep.to_obj(report))
    return EXIT_OK


def cmd_rank(args) -> int:
    r = _positive_r(args)
    X = _points(args.input)
    with _stage("rank"):
        k = persistent_h1_rank(build_augmented(X, r))
    _write(args.out, f"{k}\n")
    return EXIT_OK


def cmd_basis(args) -> int:
    k = _complex(args.input)
    if k.n_vertices == 0:
        raise CLIError(f"{args.input}: complex has no vertices", EXIT_VALIDATION)
    with _stage("basis"):
        basis = sp_gen(k, cache=not args.no_cache, n_jobs=args.parallel_roots, engine=args.engine)
    config = {"input": args.input, "engine": args.engine, "cache": not args.no_cache}
    _write(args.out, rep.dumps(rep.build_report("basis", k, basis, config)))
    return EXIT_OK


def cmd_oracle(args) -> int:
    k = _complex(args.input)
    try:
        with _stage("oracle"):
            basis = brute_force_shortest_basis(k)
    except EnumerationBoundError as exc:
        raise CLIError(f"{args.input}: {exc}", EXIT_BOUND) from None
    _write(args.out, rep.dumps(rep.build_report("oracle", k, basis, {"input": args.input})))
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.n < 1:
        raise CLIError("--n must be at least 1", EXIT_USAGE)
    X = sample(args.kind, args.n, args.seed, args.noise)
    _write(args.out, format_points(X))
    return EXIT_OK


def cmd_export(args) -> int:
    if not args.obj:
        raise CLIError("export needs --obj", EXIT_USAGE)
    try:
        report = rep.loads(_read(args.input))
        text = rep.to_obj(report)
    except ValueError as exc:
        raise CLIError(f"{args.input}: {exc}", EXIT_PARSE) from None
    _write(args.obj, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shortloop", description="Shortest H1 bases of complexes and point samples.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="input file, or - for stdin")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--verbose", "-v", action="store_true", help="log stage timings to stderr")
        return p

    def algo(p):
        p.add_argument("--engine", choices=ENGINES, default="annotation", help="how independence is decided (default: annotation)")
        p.add_argument("--no-cache", action="store_true", help="persistence engine: recompute root reductions for every check")
        p.add_argument("--parallel-roots", type=int, default=None, metavar="N", help="worker processes for per-root work (-1: all cores)")
        return p

    p = algo(common(sub.add_parser("shortloop", help="shortest persistent H1 basis of a point sample")))
    p.add_argument("--r", type=float, help="scale parameter")
    p.add_argument("--obj", help="also write the loops as polylines to this file")
    p.set_defaults(func=cmd_shortloop)

    p = common(sub.add_parser("rank", help="persistent H1 rank between scales r and 2r"))
    p.add_argument("--r", type=float, help="scale parameter")
    p.set_defaults(func=cmd_rank)

    p = algo(common(sub.add_parser("basis", help="shortest H1 basis of a weighted complex file")))
    p.set_defaults(func=cmd_basis)

    p = common(sub.add_parser("oracle", help="brute-force shortest basis of a small complex file"))
    p.set_defaults(func=cmd_oracle)

    p = common(sub.add_parser("sample", help="write a seeded synthetic point sample"), needs_input=False)
    p.add_argument("--kind", choices=KINDS, default="circle")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise", type=float, default=0.0)
    p.set_defaults(func=cmd_sample)

    p = common(sub.add_parser("export", help="convert a point-mode report to polylines"))
    p.add_argument("--obj", help="output polyline file")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"shortloop: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
