"""Command-line interface.

Subcommands: barcode, bottleneck, dist, table, totalize, verify.
Catalogue references use name:params syntax (cp:n:j, m:j, x_a:p/q, pt);
files are passed as @path.json.  All numbers print as exact rationals.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import checks as checks_mod
from . import jsonio
from .barcode import Barcode, bottleneck_distance
from .cdga import builtin, to_dgku
from .dgku import DgKuModule, d_cohI_k, split_barcode, totalize
from .exact import QQ, field_from_tag, format_ext, format_rational
from .persistence import decompose


class CliError(Exception):
    pass


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def resolve_model(ref: str, fld, trunc=None) -> DgKuModule:
    """Catalogue reference or @file.json (model or dg K[u]-module)."""
    if ref.startswith("@"):
        data = _load_json(ref[1:])
        if isinstance(data, dict) and "generators" in data:
            return to_dgku(jsonio.model_from_json(data), trunc, fld)
        if isinstance(data, dict) and "u" in data:
            return jsonio.dgku_from_json(data, fld)
        raise CliError(f"unrecognized module file {ref[1:]}")
    parts = ref.split(":")
    name = parts[0]
    try:
        if name == "pt":
            model = builtin("pt")
        elif name == "cp":
            if len(parts) != 3:
                raise CliError("cp reference must look like cp:n:j")
            model = builtin("cp", n=int(parts[1]), j=int(parts[2]))
        elif name == "m":
            if len(parts) != 2:
                raise CliError("m reference must look like m:j")
            model = builtin("m", j=int(parts[1]))
        elif name == "x_a":
            if len(parts) != 2:
                raise CliError("x_a reference must look like x_a:a")
            model = builtin("x_a", a=Fraction(parts[1]))
        else:
            raise CliError(f"unknown catalogue name {name!r}")
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    return to_dgku(model, trunc, fld)


def _print_barcode(bc: Barcode, fmt: str, out):
    if fmt == "json":
        json.dump(jsonio.barcode_to_json(bc), out)
        out.write("\n")
    else:
        if len(bc) == 0:
            out.write("(empty)\n")
        else:
            out.write(" ".join(repr(b) for b in bc) + "\n")


def cmd_barcode(args, out) -> int:
    fld = field_from_tag(args.field)
    mod = resolve_model(args.model, fld, args.trunc)
    bc = split_barcode(mod, args.k)
    _print_barcode(bc, args.format, out)
    return 0


def cmd_bottleneck(args, out) -> int:
    bcs = []
    for ref in (args.first, args.second):
        if not ref.startswith("@"):
            raise CliError("bottleneck expects @file.json barcode arguments")
        bcs.append(jsonio.barcode_from_json(_load_json(ref[1:])))
    d = bottleneck_distance(*bcs)
    if args.format == "json":
        json.dump({"d": format_ext(d)}, out)
        out.write("\n")
    else:
        out.write(f"{format_ext(d)}\n")
    return 0


def cmd_dist(args, out) -> int:
    fld = field_from_tag(args.field)
    m1 = resolve_model(args.first, fld, args.trunc)
    m2 = resolve_model(args.second, fld, args.trunc)
    d0 = d_cohI_k(m1, m2, 0)
    d1 = d_cohI_k(m1, m2, 1)
    d = max(d0, d1)
    if args.format == "json":
        json.dump({"d0": format_ext(d0), "d1": format_ext(d1), "d": format_ext(d)}, out)
        out.write("\n")
    else:
        out.write(f"d0={format_ext(d0)} d1={format_ext(d1)} d={format_ext(d)}\n")
    return 0


def cmd_table(args, out) -> int:
    fld = field_from_tag(args.field)
    if args.name == "tetra":
        refs = {"pt": "pt", "cp1": "cp:1:1", "m0": "m:0", "m1": "m:1"}
        mods = {k: resolve_model(v, fld) for k, v in refs.items()}
        pairs = [("pt", "cp1"), ("pt", "m0"), ("pt", "m1"),
                 ("cp1", "m0"), ("cp1", "m1"), ("m0", "m1")]
        rows = []
        for a, b in pairs:
            d = max(d_cohI_k(mods[a], mods[b], 0), d_cohI_k(mods[a], mods[b], 1))
            rows.append((f"d({a},{b})", format_ext(d)))
        if args.format == "json":
            json.dump(dict(rows), out)
            out.write("\n")
        else:
            for label, val in rows:
                out.write(f"{label} = {val}\n")
        return 0
    if args.name == "cp":
        if args.n is None:
            raise CliError("table cp needs --n")
        n = args.n
        m = args.m if args.m is not None else n
        if args.j in ("0", "1"):
            j = int(args.j)
            a = resolve_model(f"cp:{n}:{j}", fld)
            b = resolve_model(f"cp:{m}:{j}", fld)
        elif args.j == "mixed":
            a = resolve_model(f"cp:{n}:0", fld)
            b = resolve_model(f"cp:{m}:1", fld)
        else:
            raise CliError("table cp needs --j 0|1|mixed")
        d = d_cohI_k(a, b, 0)
        if args.format == "json":
            json.dump({"d0": format_ext(d)}, out)
            out.write("\n")
        else:
            out.write(f"{format_ext(d)}\n")
        return 0
    if args.name == "mcp":
        if args.n is None:
            raise CliError("table mcp needs --n")
        cp = resolve_model(f"cp:{args.n}:1", fld)
        rows = []
        for j in (0, 1):
            mj = resolve_model(f"m:{j}", fld)
            rows.append((f"M{j}", format_ext(d_cohI_k(mj, cp, 0)),
                         format_ext(d_cohI_k(mj, cp, 1))))
        if args.format == "json":
            json.dump({name: {"d0": d0, "d1": d1} for name, d0, d1 in rows}, out)
            out.write("\n")
        else:
            for name, d0, d1 in rows:
                out.write(f"{name}: d0={d0} d1={d1}\n")
        return 0
    raise CliError(f"unknown table {args.name!r}")


def cmd_totalize(args, out) -> int:
    fld = field_from_tag(args.field)
    if not args.input.startswith("@"):
        raise CliError("totalize expects an @file.json filtered module")
    filtered = jsonio.filtered_from_json(_load_json(args.input[1:]), fld)
    tot = totalize(filtered)
    _print_barcode(decompose(tot), args.format, out)
    return 0


def cmd_verify(args, out) -> int:
    results = checks_mod.run_suite(args.suite, args.seed)
    failed = 0
    for name, ok, msg in results:
        if ok:
            out.write(f"ok   {name}\n")
        else:
            failed += 1
            out.write(f"FAIL {name}: {msg}\n")
    out.write(f"{len(results) - failed}/{len(results)} checks passed "
              f"(suite={args.suite}, seed={args.seed})\n")
    return 1 if failed else 0


def _add_globals(parser: argparse.ArgumentParser, suppress: bool):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--field", default=default("q"),
                        help="coefficient field: q or fp:<p>")
    parser.add_argument("--trunc", type=int, default=default(None),
                        help="truncation degree override")
    parser.add_argument("--format", choices=("text", "json"), default=default("text"))
    parser.add_argument("--seed", type=int, default=default(0), help="seed for verify")


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted both before and after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common, suppress=True)
    parser = argparse.ArgumentParser(
        prog="cohint",
        description="Exact barcodes and cohomology interleaving distances "
                    "for modules over the classifying space of the circle.")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("barcode", parents=[common],
                       help="print a model's even or odd barcode")
    p.add_argument("--model", required=True)
    p.add_argument("--k", type=int, choices=(0, 1), required=True)
    p.set_defaults(func=cmd_barcode)

    p = sub.add_parser("bottleneck", parents=[common],
                       help="bottleneck distance of two barcode files")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_bottleneck)

    p = sub.add_parser("dist", parents=[common],
                       help="cohomology interleaving distance of two models")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("table", parents=[common],
                       help="reproduce a distance table: cp, mcp, tetra")
    p.add_argument("name", choices=("cp", "mcp", "tetra"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--j", default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("totalize", parents=[common],
                       help="barcode of the totalization of a filtered module")
    p.add_argument("input")
    p.set_defaults(func=cmd_totalize)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    p.add_argument("suite", choices=("fast", "full"))
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (CliError, ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
