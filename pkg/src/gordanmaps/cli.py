"""Command-line interface: ``gordanmaps build|hexad|realize``.

Exit codes: 0 success, 1 usage error, 2 enumeration overflow or collapse,
3 validation failure, 4 no realization found.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .census import SCHEMA, Census, describe, gordan_census, parse_symbol
from .export import DEFAULT_DIGITS, dumps_json, emit_obj, emit_off
from .field import FieldScalar, parse_scalar
from .flags import hexad, type_label
from .presentation import DEFAULT_MAX_COSETS, EnumerationOverflow, PresentationCollapse, Presentation, build
from .realization import PolyhedronError, search
from .symmetry import CONFIGURATION_NAMES, standard_configuration

EXIT_OK, EXIT_USAGE, EXIT_ENUMERATION, EXIT_VALIDATION, EXIT_NONE_FOUND = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gordanmaps", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_ in (("build", "build {p,q}_r and print its invariants"),
                        ("hexad", "Petrie relatives of {p,q}_r")):
        sp = sub.add_parser(name, help=help_)
        for s in "pqr":
            sp.add_argument(s, type=int)
        sp.add_argument("--max-cosets", type=_positive_int, default=DEFAULT_MAX_COSETS)

    rp = sub.add_parser("realize", help="icosahedral skeletal realizations")
    rp.add_argument("config", help="'all' or one of: " + ", ".join(CONFIGURATION_NAMES))
    rp.add_argument("target", nargs="?", help="map symbol such as '{4,5}_6'")
    rp.add_argument("--lambda", dest="ratio", help="exact ratio, e.g. '(1+rt5)/2' (default 2)")
    rp.add_argument("--digits", type=_positive_int, default=DEFAULT_DIGITS)
    rp.add_argument("--max-cosets", type=_positive_int, default=DEFAULT_MAX_COSETS)
    rp.add_argument("--jobs", type=_positive_int, default=1)
    rp.add_argument("--out", type=Path, help="directory for report.json and meshes")
    return parser


def _write_meshes(out: Path, rows, digits: int, report: dict):
    out.mkdir(parents=True, exist_ok=True)
    for k, row in enumerate(rows):
        p, q, r = parse_symbol(row.symbol)
        stem = f"{k + 1:02d}_{p}-{q}-{r}_{row.kind}"
        (out / f"{stem}.off").write_text(emit_off(row.polyhedron, digits))
        (out / f"{stem}.obj").write_text(emit_obj(row.polyhedron, digits))
        report["rows"][k]["mesh"] = f"{stem}.off"
    (out / "report.json").write_text(dumps_json(report))


def _cmd_build(args) -> int:
    m = build(args.p, args.q, args.r, max_cosets=args.max_cosets)
    out = {
        "schema": "gordanmaps.map/1",
        "presentation": {"p": args.p, "q": args.q, "r": args.r},
        **m.invariants().to_dict(),
    }
    sys.stdout.write(dumps_json(out))
    return EXIT_OK


def _cmd_hexad(args) -> int:
    members = hexad(build(args.p, args.q, args.r, max_cosets=args.max_cosets))
    out = {
        "schema": "gordanmaps.hexad/1",
        "seed": type_label(args.p, args.q, args.r),
        "members": [
            {"symbol": m.symbol, "word": m.word, **m.invariants.to_dict()} for m in members
        ],
    }
    sys.stdout.write(dumps_json(out))
    return EXIT_OK


def _cmd_realize(args) -> int:
    if args.config == "all":
        if args.target:
            raise UsageError("'realize all' takes no target")
        ratio = parse_scalar(args.ratio) if args.ratio else FieldScalar(2)
        census: Census = gordan_census(ratio, jobs=args.jobs, max_cosets=args.max_cosets)
        rows = census.rows
        report = census.to_dict()
    else:
        if args.config not in CONFIGURATION_NAMES:
            raise UsageError(f"unknown configuration {args.config!r}")
        if not args.target:
            raise UsageError("a target map symbol is required")
        try:
            p, q, r = parse_symbol(args.target)
            Presentation(p, q, r)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if args.config == "two-icosahedra":
            ratio = parse_scalar(args.ratio) if args.ratio else FieldScalar(2)
            config = standard_configuration(args.config, ratio)
        else:
            if args.ratio:
                raise UsageError(f"{args.config} takes no --lambda")
            config = standard_configuration(args.config)
        target = build(p, q, r, max_cosets=args.max_cosets)
        symbol = type_label(p, q, r)
        rows = [describe(poly, config, symbol) for poly in search(config, target, jobs=args.jobs)]
        report = {
            "schema": SCHEMA,
            "configuration": config.name,
            "target": symbol,
            "rows": [row.to_dict() for row in rows],
        }
        if config.ratio is not None:
            report["ratio"] = str(config.ratio)
    if args.out:
        _write_meshes(args.out, rows, args.digits, report)
    sys.stdout.write(dumps_json(report))
    return EXIT_OK if rows else EXIT_NONE_FOUND


def main(argv: Optional[List[str]] = None) -> int:
    parser = make_parser()
    args, extra = parser.parse_known_args(argv)
    # argparse binds consecutive positionals greedily, so a target given after
    # an option ("realize two-icosahedra --lambda 2 {4,5}_6") arrives here
    if args.command == "realize" and args.target is None and len(extra) == 1 and not extra[0].startswith("-"):
        args.target, extra = extra[0], []
    if extra:
        parser.error("unrecognized arguments: " + " ".join(extra))
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    handler = {"build": _cmd_build, "hexad": _cmd_hexad, "realize": _cmd_realize}[args.command]
    try:
        return handler(args)
    except UsageError as exc:
        print(f"gordanmaps: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EnumerationOverflow, PresentationCollapse) as exc:
        print(f"gordanmaps: {exc}", file=sys.stderr)
        return EXIT_ENUMERATION
    except PolyhedronError as exc:
        print(f"gordanmaps: validation failed: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"gordanmaps: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
