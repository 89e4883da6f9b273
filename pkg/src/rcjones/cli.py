"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 computation error, 3 failed check.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from .algebra import LaurentPoly, rat_str
from .braid import _GRAMMAR, BraidWord, close, parse_braid
from .burau import alexander_conway
from .errors import BraidSyntaxError, PositionOutOfRange, RcJonesError
from .rmatrix import colored_jones, jones_metadata, melvin_morton_coeffs, symmetry_principle_check
from .u1rc import u1rc_series
from .verify import resummation_check

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_VERIFY = 0, 1, 2, 3


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    braid: str
    L: int
    notes: str

    def check(self) -> None:
        if close(parse_braid(self.braid)).L != self.L:
            raise AssertionError(f"catalog entry {self.name} does not close to {self.L} components")


CATALOG = {
    e.name: e
    for e in [
        CatalogEntry("unknot", "1:", 1, "trivial knot"),
        CatalogEntry("hopf", "2: 1 1", 2, "Hopf link, linking number 1"),
        CatalogEntry("trefoil", "2: 1 1 1", 1, "trefoil = T(2,3)"),
        CatalogEntry("trefoil-alt", "3: 1 2 1 2", 1, "trefoil on three strands, (s1 s2)^2"),
        CatalogEntry("figure-eight", "3: 1 -2 1 -2", 1, "figure-eight knot 4_1"),
        CatalogEntry("t24", "2: 1 1 1 1", 2, "torus link T(2,4), linking number 2"),
        CatalogEntry("split-unknots", "2:", 2, "two split unknots, vanishing Alexander-Conway function"),
    ]
}
# accept the spelling used in the literature too
CATALOG_ALIASES = {"T(2,4)": "t24", "Hopf": "hopf"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _poly_out(p: LaurentPoly, fmt: str):
    return p.to_json() if fmt == "json" else p.format_text()


def _braid_from(args) -> BraidWord:
    if args.catalog:
        name = CATALOG_ALIASES.get(args.catalog, args.catalog)
        if name not in CATALOG:
            raise UsageError(f"unknown catalog entry {args.catalog!r}; try the catalog command")
        return parse_braid(CATALOG[name].braid)
    if not args.braid:
        raise UsageError("give --braid or --catalog")
    return parse_braid(args.braid)


def _colors(args, b: BraidWord, default: int | None = None) -> list[int]:
    L = close(b).L
    if not args.colors:
        if default is None:
            raise UsageError(f"--colors needs {L} value(s)")
        return [default] * L
    if len(args.colors) != L:
        raise UsageError(f"the closure has {L} component(s) but {len(args.colors)} color(s) were given")
    return list(args.colors)


def cmd_alexander(args, out) -> int:
    b = _braid_from(args)
    res = alexander_conway(b)
    if args.format == "json":
        data = {"braid": b.to_json(), **res.to_json()}
        return _emit(data, out)
    out.write(f"braid: {b}\nL: {res.L}\n")
    if res.L == 1:
        out.write(f"Delta: {res.delta.format_text()}\n")
        out.write("nabla: Delta / (t1^{1/2} - t1^{-1/2})\n")
    else:
        out.write(f"nabla: {res.nabla.format_text()}\n")
    out.write(f"vanishing: {res.vanishing}\n")
    return EXIT_OK


def cmd_jones(args, out) -> int:
    b = _braid_from(args)
    colors = _colors(args, b, default=2)
    j = colored_jones(b, colors)
    if args.format == "json":
        return _emit({"braid": b.to_json(), **jones_metadata(b, colors), "J": j.to_json()}, out)
    out.write(f"braid: {b}\ncolors: {colors}\nJ: {j.format_text()}\n")
    return EXIT_OK


def _mono_text(e: tuple) -> str:
    return " ".join(f"a{j + 1}^{k}" for j, k in enumerate(e) if k) or "1"


def cmd_mm(args, out) -> int:
    b = _braid_from(args)
    coeffs = melvin_morton_coeffs(b, args.order)
    data = {
        "braid": b.to_json(),
        "order": args.order,
        "P": {str(n): [{"e": list(e), "c": rat_str(c)} for e, c in sorted(poly.items())]
              for n, poly in coeffs.items()},
    }
    if args.format == "json":
        return _emit(data, out)
    out.write(f"braid: {b}\n")
    for n, poly in coeffs.items():
        terms = " + ".join(f"{rat_str(c)} * {_mono_text(e)}" for e, c in sorted(poly.items())) or "0"
        out.write(f"P_{n}: {terms}\n")
    return EXIT_OK


def cmd_u1rc(args, out) -> int:
    b = _braid_from(args)
    s = u1rc_series(b, args.order)
    if args.format == "json":
        return _emit(s.to_json(), out)
    out.write(f"braid: {b}\nL: {s.L}\nD: {s.D.format_text()}\n")
    for n in range(s.order + 1):
        out.write(f"h^{n}: ({s.lifted(n).format_text()}) / D^{2 * n + 1}\n")
    return EXIT_OK


def cmd_resum(args, out) -> int:
    b = _braid_from(args)
    colors = _colors(args, b)
    report = resummation_check(b, colors, args.order)
    if args.format == "json":
        _emit(report.to_json(), out)
    else:
        out.write(f"braid: {b}\ncolors: {colors}\norder: {args.order}\n")
        out.write(f"pass: {report.passed}\n")
        for k, v in sorted(report.residuals.items()):
            out.write(f"residual h^{k}: {v}\n")
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_symmetry(args, out) -> int:
    b = _braid_from(args)
    colors = _colors(args, b)
    if args.K is None:
        raise UsageError("--K is required")
    L = close(b).L
    if not 1 <= args.component <= L:
        raise UsageError(f"--component must be in 1..{L}")
    try:
        ok, residual = symmetry_principle_check(b, colors, args.component - 1, args.K, args.precision)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    data = {"check": "symmetry", "input": {"braid": str(b), "colors": colors,
                                           "component": args.component, "K": args.K},
            "precision": args.precision, "pass": ok, "residuals": {"abs": f"{residual:.3e}"}}
    if args.format == "json":
        _emit(data, out)
    else:
        out.write(f"braid: {b}\ncolors: {colors}\nK: {args.K}\npass: {ok}\nresidual: {residual:.3e}\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_catalog(args, out) -> int:
    for e in CATALOG.values():
        e.check()
    if args.format == "json":
        return _emit([{"name": e.name, "braid": e.braid, "L": e.L, "notes": e.notes}
                      for e in CATALOG.values()], out)
    for e in CATALOG.values():
        out.write(f"{e.name:14s} {e.braid:14s} L={e.L}  {e.notes}\n")
    return EXIT_OK


def _emit(data, out) -> int:
    out.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


COMMANDS = {
    "alexander": (cmd_alexander, "Alexander-Conway function via the Burau determinant"),
    "jones": (cmd_jones, "colored Jones polynomial via the R-matrix trace"),
    "mm": (cmd_mm, "Melvin-Morton coefficients P_n as polynomials in the colors"),
    "u1rc": (cmd_u1rc, "coefficients of the U(1) reducible connection series h*Jhr"),
    "resum-check": (cmd_resum, "compare the resummed series with the colored Jones expansion"),
    "symmetry-check": (cmd_symmetry, "Symmetry Principle at a root of unity"),
    "catalog": (cmd_catalog, "list the built-in links"),
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rcjones", description="Exact invariants of braid closures.",
                epilog=f"braid grammar: {_GRAMMAR}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_, epilog=f"braid grammar: {_GRAMMAR}")
        sp.add_argument("--braid", help='braid word, e.g. "2: 1 1 1"')
        sp.add_argument("--catalog", help="catalog entry to use instead of --braid")
        sp.add_argument("--colors", type=int, nargs="+")
        sp.add_argument("--order", type=int, default=4)
        sp.add_argument("--format", choices=("json", "text"), default="text")
        sp.add_argument("--precision", type=int, default=50)
        sp.add_argument("--component", type=int, default=1)
        sp.add_argument("--K", type=int)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required")
        if args.order < 0:
            raise UsageError("--order must be nonnegative")
        return COMMANDS[args.command][0](args, out)
    except (UsageError, BraidSyntaxError, PositionOutOfRange) as exc:
        err.write(f"error: {exc}\n{parser.format_usage()}braid grammar: {_GRAMMAR}\n")
        return EXIT_USAGE
    except RcJonesError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_COMPUTE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
