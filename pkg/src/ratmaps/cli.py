"""Command-line front end.

Usage::

    ratmaps run SCRIPT                      run the commands written in SCRIPT
    ratmaps COMMAND SCRIPT --map NAME ...   run one command on a declared map
    ratmaps bench-gabber N D                time the inverse of a Gabber map

Exit codes: 0 success, 1 parse or validation error, 2 negative answer
that needs handling (an inverse of a non-birational map), 3 step limit.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from .errors import (
    InvalidMapError,
    NotBirationalError,
    NotHomogeneousError,
    ParseError,
    RatMapsError,
    StepLimitExceeded,
)
from .fields import GF
from .inverse import InverseOptions, inverse_of_map, is_birational, is_embedding, prepare
from .maps import base_locus, ideal_of_image, is_dominant, is_same_map, rational_map
from .parser import SessionScript, parse_script
from .rees import STRATEGIES, ReesComputation, rees_full, rees_saturation
from .rings import PolyRing
from .variety import Variety, format_ideal

EXIT_OK, EXIT_INPUT, EXIT_NEGATIVE, EXIT_STEPS = 0, 1, 2, 3

MAP_COMMANDS = (
    "base-locus",
    "image",
    "is-dominant",
    "is-birational",
    "inverse",
    "is-embedding",
    "is-same",
    "rees",
    "jacobian-dual",
)

log = logging.getLogger("ratmaps")


class Session:
    """Varieties and validated maps built from a parsed script."""

    def __init__(self, script: SessionScript):
        self.script = script
        self.varieties = {}
        for name, decl in script.rings.items():
            try:
                self.varieties[name] = Variety(decl.ring, decl.ideal)
            except NotHomogeneousError as exc:
                raise ParseError(str(exc), decl.line, decl.col) from None
        self.maps = {}
        for name, decl in script.maps.items():
            src = self.varieties[decl.source]
            tgt = self.varieties[decl.target]
            try:
                self.maps[name] = rational_map(src, tgt, decl.forms)
            except InvalidMapError as exc:
                if exc.index is not None:
                    line, col = decl.form_positions[exc.index]
                else:
                    line, col = decl.line, decl.col
                raise ParseError(f"map {name}: {exc}", line, col) from None

    def get_map(self, name: str):
        if name not in self.maps:
            raise ParseError(f"no map named {name!r}")
        return self.maps[name]


def _on_off(text: str) -> bool:
    t = text.lower()
    if t in ("on", "true", "yes", "1"):
        return True
    if t in ("off", "false", "no", "0"):
        return False
    raise argparse.ArgumentTypeError(f"expected on or off, got {text!r}")


def _minors(text: str):
    if text == "auto":
        return None
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a count or 'auto', got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("minors count must be nonnegative")
    return n


def _add_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--strategy", choices=STRATEGIES, default="hybrid")
    p.add_argument("--hybrid-limit", type=int, default=15)
    p.add_argument("--minors-count", type=_minors, default=None, metavar="N|auto")
    p.add_argument("--quick-rank", type=_on_off, default=True, metavar="on|off")
    p.add_argument("--assume-dominant", action="store_true")
    p.add_argument("--check-birational", type=_on_off, default=True, metavar="on|off")
    p.add_argument("--saturate-output", type=_on_off, default=True, metavar="on|off")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--step-limit", type=int, default=30)
    p.add_argument("--verbose", "-v", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ratmaps", description="Birational maps, inverses and base loci.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("run", help="run the command statements of a script")
    p.add_argument("script")
    _add_options(p)
    p.set_defaults(maps=[], prime=101)
    for cmd in MAP_COMMANDS:
        p = sub.add_parser(cmd)
        p.add_argument("script")
        p.add_argument("--map", action="append", required=True, dest="maps", metavar="NAME")
        _add_options(p)
    p = sub.add_parser("bench-gabber", help="time the inverse of the Gabber map (n, d)")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("--prime", type=int, default=101)
    _add_options(p)
    p.set_defaults(maps=[])
    return parser


def _options(args, **over) -> InverseOptions:
    kw = dict(
        strategy=args.strategy,
        hybrid_limit=args.hybrid_limit,
        minors_count=args.minors_count,
        assume_dominant=args.assume_dominant,
        check_birational=args.check_birational,
        quick_rank=args.quick_rank,
        seed=args.seed,
        step_limit=args.step_limit,
    )
    kw.update(over)
    return InverseOptions(**kw)


def _bool(b: bool) -> str:
    return "true" if b else "false"


def run_command(session: Session, command: str, names: list, args, out=None) -> int:
    """Run one command on declared maps and print the report."""
    out = out or sys.stdout
    maps = [session.get_map(n) for n in names]
    if command == "is-same":
        if len(maps) != 2:
            raise ParseError("is-same needs two maps")
    elif len(maps) != 1:
        raise ParseError(f"{command} takes one map")
    F = maps[0]
    if command == "base-locus":
        print(format_ideal(base_locus(F, args.saturate_output)), file=out)
    elif command == "image":
        print(format_ideal(ideal_of_image(F)), file=out)
    elif command == "is-dominant":
        print(_bool(is_dominant(F)), file=out)
    elif command == "is-birational":
        print(_bool(is_birational(F, _options(args))), file=out)
    elif command == "inverse":
        try:
            G = inverse_of_map(F, _options(args))
        except NotBirationalError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NEGATIVE
        print(G, file=out)
    elif command == "is-embedding":
        mc = 0 if args.minors_count is None else args.minors_count
        print(_bool(is_embedding(F, _options(args, minors_count=mc))), file=out)
    elif command == "is-same":
        print(_bool(is_same_map(maps[0], maps[1])), file=out)
    elif command == "rees":
        if args.strategy == "saturation":
            J = rees_saturation(F)
        elif args.strategy == "rees":
            J = rees_full(F)
        else:
            J = ReesComputation(F).full(args.strategy)
        print(format_ideal(J.gens), file=out)
    elif command == "jacobian-dual":
        M = prepare(F, _options(args)).dual
        print(M.matrix, file=out)
    else:
        raise ParseError(f"unknown command {command!r}")
    return EXIT_OK


def gabber_map(n: int, d: int, prime: int = 101):
    """The map (x0^d : x1 x0^(d-1) : x_i x0^(d-1) + x_(i-1)^d) on P^n."""
    ring = PolyRing(GF(prime), [f"x{i}" for i in range(n + 1)])
    x = ring.gens
    forms = [x[0] ** d, x[1] * x[0] ** (d - 1)]
    forms += [x[i] * x[0] ** (d - 1) + x[i - 1] ** d for i in range(2, n + 1)]
    return rational_map(ring, ring, forms)


def bench_gabber(n: int, d: int, args, out=None) -> int:
    out = out or sys.stdout
    if n < 2 or d < 1:
        raise ParseError("bench-gabber needs n >= 2 and d >= 1")
    F = gabber_map(n, d, args.prime)
    t0 = time.perf_counter()
    G = inverse_of_map(F, _options(args))
    elapsed = time.perf_counter() - t0
    degs = {g.degree(0) for g in G.forms if g}
    expected = d ** (n - 1)
    if degs != {expected}:
        print(f"error: inverse degree {sorted(degs)} differs from {expected}", file=sys.stderr)
        return EXIT_NEGATIVE
    print(f"n={n} d={d} inverse_degree={expected} seconds={elapsed:.4f}", file=out)
    return EXIT_OK


def _setup_logging(verbose: bool) -> None:
    if not verbose:
        log.setLevel(logging.WARNING)
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("ratmaps: %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.INFO)
    log.propagate = False


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _setup_logging(args.verbose)
    try:
        if args.command == "bench-gabber":
            return bench_gabber(args.n, args.d, args)
        text = Path(args.script).read_text(encoding="utf-8")
        session = Session(parse_script(text))
        if args.command == "run":
            code = EXIT_OK
            for cmd in session.script.commands:
                try:
                    if cmd.name == "bench-gabber":
                        if len(cmd.args) != 2 or not all(isinstance(a, int) for a in cmd.args):
                            raise ParseError("bench-gabber takes two integers")
                        code = max(code, bench_gabber(cmd.args[0], cmd.args[1], args))
                    else:
                        code = max(code, run_command(session, cmd.name, cmd.args, args))
                except ParseError as exc:
                    raise ParseError(exc.message, cmd.line, cmd.col) from None
            return code
        return run_command(session, args.command, args.maps, args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except StepLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STEPS
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RatMapsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
