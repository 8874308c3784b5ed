"""
tropmech: exact analysis of DSIC mechanisms through tropical geometry

This command-line tool reads mechanisms, affine maximizers, tropical
polynomials and subdivisions as JSON, analyzes them with exact rational
arithmetic and writes JSON reports or deterministic SVG figures.

Usage:
------
1. Analyze a one-player mechanism (subdivision, complex, sensitivity):
    tropmech analyze counter.json
    tropmech analyze counter.json --html counter.html --svg counter.svg
    tropmech analyze --random 3 --seed 7

2. Count triangulations of a configuration:
    tropmech enumerate cube:3 --orbits full
    tropmech enumerate simplexprod:3x2 --regular-only --orbits sym

3. Check a subdivision for regularity:
    tropmech check subdivision.json

4. Build a robust mechanism:
    tropmech construct --kind cardinality --items 3
    tropmech construct --kind multiplayer --players 3 --items 2

5. Analyze an affine maximizer:
    tropmech affine maximizer.json

6. Render a 2D figure:
    tropmech render quadrangle.json --target dual-subdivision --out quadrangle.svg

Commands:
---------
analyze       Report on a mechanism file (or a random mechanism)
enumerate     Count (regular) triangulations, optionally up to symmetry
check         Regularity test with a witness lifting
construct     Cardinality-, Hamming- or multiplayer-robust construction
affine        Report on an affine maximizer file
render        SVG of difference sets, dual subdivision or tight span

Notes:
------
- Rationals are JSON strings such as "2/3"; "-inf" marks an absent term.
- Output goes to --out or stdout; logs go to stderr.
- Exit codes: 0 ok, 2 malformed input, 3 invariant violation,
  4 size guard, 5 non-2D render.
"""

import argparse
import logging
import random
import sys
from pathlib import Path
from typing import List, Optional

from tropical_mechanisms.controller.analysis import CONSTRUCTIONS, ORBIT_MODES, MechanismAnalyzer, summary_markdown
from tropical_mechanisms.controller.config import EXIT_OK, LOG_FORMAT, LOG_LEVEL
from tropical_mechanisms.controller.renderer import TARGETS, FigureRenderer, RenderSpec
from tropical_mechanisms.controller.serialization import (
    affine_from_json,
    detect_kind,
    dump_json,
    load_json,
    mechanism_from_json,
    polynomial_from_json,
    subdivision_from_json,
)
from tropical_mechanisms.model.common.errors import MalformedInputError, TropicalMechanismError
from tropical_mechanisms.model.mechanism.mechanism import random_mechanism

logger = logging.getLogger("tropmech")


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding="utf-8")
    logger.info(f"Wrote {out}")


def _parse_viewport(text: Optional[str]):
    if text is None:
        return None
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 4:
        raise MalformedInputError(f"viewport must be 'x,y,width,height', got {text!r}")
    return parts


def _load_renderable(path: str):
    data = load_json(path)
    kind = detect_kind(data)
    if kind == "mechanism":
        return mechanism_from_json(data)
    if kind == "polynomial":
        return polynomial_from_json(data)
    if kind == "affine":
        return affine_from_json(data)
    raise MalformedInputError(f"{path}: cannot render a {kind} document")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropmech",
        description="Exact analysis of DSIC mechanisms through tropical geometry",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    # analyze
    analyze = commands.add_parser("analyze", help="Analyze a mechanism")
    analyze.add_argument("mechanism", nargs="?", help="Mechanism JSON file")
    analyze.add_argument("--random", type=int, metavar="M", help="Analyze a random mechanism on M items")
    analyze.add_argument("--seed", type=int, default=0, help="Seed for --random")
    analyze.add_argument("--out", help="Report path (default: stdout)")
    analyze.add_argument("--html", help="Also write an HTML report")
    analyze.add_argument("--svg", help="Also write the difference-set figure (m = 2)")

    # enumerate
    enumerate_ = commands.add_parser("enumerate", help="Count triangulations")
    enumerate_.add_argument("config", help="cube:M, simplexprod:NxM or box:B1x...xBk")
    enumerate_.add_argument("--regular-only", action="store_true", help="Count regular triangulations only")
    enumerate_.add_argument("--orbits", choices=ORBIT_MODES, default="none", help="Count up to symmetry")
    enumerate_.add_argument("--long-running", action="store_true", help="Lift the size guard")
    enumerate_.add_argument("--jobs", type=int, default=1, help="Worker processes")
    enumerate_.add_argument("--out", help="Report path (default: stdout)")

    # check
    check = commands.add_parser("check", help="Regularity of a subdivision")
    check.add_argument("subdivision", help="Subdivision JSON file")
    check.add_argument("--out", help="Report path (default: stdout)")

    # construct
    construct = commands.add_parser("construct", help="Robust constructions")
    construct.add_argument("--kind", choices=CONSTRUCTIONS, required=True)
    construct.add_argument("--items", type=int, required=True)
    construct.add_argument("--players", type=int, help="Players (multiplayer only)")
    construct.add_argument("--out", help="Output path (default: stdout)")

    # affine
    affine = commands.add_parser("affine", help="Analyze an affine maximizer")
    affine.add_argument("maximizer", help="Affine maximizer JSON file")
    affine.add_argument("--out", help="Report path (default: stdout)")

    # render
    render = commands.add_parser("render", help="Render a 2D figure as SVG")
    render.add_argument("input", help="Mechanism, polynomial or affine maximizer JSON file")
    render.add_argument("--target", choices=TARGETS, default="difference-sets")
    render.add_argument("--viewport", help="x,y,width,height as rationals")
    render.add_argument("--no-labels", action="store_true", help="Omit labels")
    render.add_argument("--out", help="SVG path (default: stdout)")

    return parser


def run(args: argparse.Namespace) -> None:
    analyzer = MechanismAnalyzer()
    renderer = FigureRenderer()

    if args.command == "analyze":
        if args.random is not None:
            mech = random_mechanism(args.random, random.Random(args.seed))
        elif args.mechanism:
            mech = mechanism_from_json(load_json(args.mechanism))
        else:
            raise MalformedInputError("analyze needs a mechanism file or --random M")
        report = analyzer.analyze(mech)
        _write(dump_json(report), args.out)
        if args.html:
            page = renderer.render_report_html("Mechanism analysis", summary_markdown(report), dump_json(report))
            _write(page, args.html)
        if args.svg:
            _write(renderer.render(mech, RenderSpec.of("difference-sets")), args.svg)

    elif args.command == "enumerate":
        report = analyzer.enumerate(
            args.config,
            regular_only=args.regular_only,
            orbits=args.orbits,
            long_running=args.long_running,
            jobs=args.jobs,
        )
        _write(dump_json(report), args.out)

    elif args.command == "check":
        report = analyzer.check(subdivision_from_json(load_json(args.subdivision)))
        _write(dump_json(report), args.out)

    elif args.command == "construct":
        _write(dump_json(analyzer.construct(args.kind, args.items, args.players)), args.out)

    elif args.command == "affine":
        report = analyzer.affine(affine_from_json(load_json(args.maximizer)))
        _write(dump_json(report), args.out)

    elif args.command == "render":
        spec = RenderSpec.of(args.target, _parse_viewport(args.viewport), labels=not args.no_labels)
        _write(renderer.render(_load_renderable(args.input), spec), args.out)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else LOG_LEVEL, format=LOG_FORMAT)
    try:
        run(args)
    except TropicalMechanismError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
