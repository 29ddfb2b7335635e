"""Command line front end.

Thin client over :mod:`gaussbreak.handlers`: each subcommand reads object
documents from JSON files, runs one analysis in process, and writes a JSON
report to standard output with numbers at 17 significant digits.

Exit codes: 0 analysis completed (verdicts live in the report), 1 input or
parse error, 2 internal numerical failure.  Errors are emitted as JSON
error documents naming the offending file or field.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import handlers, jsonio, schemas
from .errors import InvalidInputError, NumericalError

__all__ = ["main", "entrypoint"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Parser that reports usage problems as exit code 1, not argparse's 2."""

    def error(self, message: str):
        raise _UsageError(message)


def load_object(path: str):
    """Read, parse and convert one object document file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidInputError(f"{path}: {exc.strerror or exc}") from exc
    try:
        doc = schemas.parse_document(jsonio.loads(text))
        return schemas.to_object(doc)
    except InvalidInputError as exc:
        raise InvalidInputError(f"{path}: {exc}") from exc


def _emit(model) -> None:
    sys.stdout.write(jsonio.dumps(model.model_dump()) + "\n")


def _emit_error(category: str, message: str, file: str | None = None) -> None:
    _emit(schemas.ErrorReport(
        error=schemas.ErrorBody(category=category, message=message, file=file)))


def _split(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise InvalidInputError(f"--split: expected NA,NB, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise InvalidInputError(f"--split: expected two integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gaussbreak",
                     description="Gaussian channel incompatibility analysis.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check every invariant of one object")
    p.add_argument("file")

    p = sub.add_parser("classify", help="full channel report (validity, GIB, EB, steering)")
    p.add_argument("file")

    p = sub.add_parser("act", help="apply a channel to a state or observable")
    p.add_argument("--channel", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--state")
    group.add_argument("--observable")

    p = sub.add_parser("witness", help="incompatible transformed quadrature pair for a non-GIB channel")
    p.add_argument("--channel", required=True)

    p = sub.add_parser("joint", help="pair compatibility of two observables")
    p.add_argument("--obs", action="append", required=True,
                   help="observable file (give exactly twice)")
    p.add_argument("--channel", help="apply this channel to both observables first")

    p = sub.add_parser("steer", help="Gaussian steerability of a bipartite state")
    p.add_argument("--state", required=True)
    p.add_argument("--split", required=True, help="NA,NB mode partition")
    p.add_argument("--channel", help="apply to one side first")
    p.add_argument("--side", choices=("A", "B"), default="A")

    p = sub.add_parser("epr-sweep", help="steerability of channelled two-mode squeezed states")
    p.add_argument("--channel", required=True)
    p.add_argument("--r-grid", nargs="+", type=float, default=None,
                   help="squeezing values to probe")

    p = sub.add_parser("sample", help="draw outcomes of an observable on a state")
    p.add_argument("--state", required=True)
    p.add_argument("--observable", required=True)
    p.add_argument("-n", type=int, required=True, help="number of draws")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _dispatch(args: argparse.Namespace):
    if args.command == "validate":
        return handlers.handle_validate(load_object(args.file))
    if args.command == "classify":
        return handlers.handle_classify(load_object(args.file))
    if args.command == "act":
        target = load_object(args.state if args.state else args.observable)
        return handlers.handle_act(load_object(args.channel), target)
    if args.command == "witness":
        return handlers.handle_witness(load_object(args.channel))
    if args.command == "joint":
        if len(args.obs) != 2:
            raise InvalidInputError(
                f"--obs: expected exactly two observables, got {len(args.obs)}")
        channel = load_object(args.channel) if args.channel else None
        return handlers.handle_joint(load_object(args.obs[0]),
                                     load_object(args.obs[1]), channel=channel)
    if args.command == "steer":
        channel = load_object(args.channel) if args.channel else None
        return handlers.handle_steer(load_object(args.state), _split(args.split),
                                     channel=channel, side=args.side)
    if args.command == "epr-sweep":
        return handlers.handle_epr_sweep(load_object(args.channel),
                                         grid=args.r_grid)
    if args.command == "sample":
        return handlers.handle_sample(load_object(args.state),
                                      load_object(args.observable),
                                      args.n, args.seed)
    raise InvalidInputError(f"unknown command {args.command!r}")  # pragma: no cover


def main(argv=None) -> int:
    """Run one subcommand; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        _emit_error("usage", str(exc))
        return 1

    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    try:
        report = _dispatch(args)
    except InvalidInputError as exc:
        _emit_error("input", str(exc))
        return 1
    except NumericalError as exc:
        _emit_error("numerical", str(exc))
        return 2
    _emit(report)
    return 0


def entrypoint() -> None:
    raise SystemExit(main())
