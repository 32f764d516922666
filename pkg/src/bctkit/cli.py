"""Command-line front end.

Exit codes: 0 ok, 1 a verified claim failed, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__, boomtab, difftab, tableio, theorems
from .difftab import BudgetExceeded
from .gf2n import field_new, parse_modulus
from .vecfun import FuncSpec, read_lut

EXIT_OK, EXIT_CLAIM, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _add_func_args(p):
    p.add_argument("-n", type=int, required=True, help="field dimension")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("-d", type=int, help="power map exponent")
    g.add_argument("--lut", help="lookup table file, one value per line")
    p.add_argument("--modulus", help="irreducible modulus, hex bitmask or polynomial")
    p.add_argument("--threads", type=int, default=None)


def _func(args) -> FuncSpec:
    try:
        mod = parse_modulus(args.modulus) if args.modulus else None
        fld = field_new(args.n, mod)
        if args.lut:
            return read_lut(args.lut, fld)
        if args.d < 0:
            raise ValueError("exponent must be non-negative")
        f = FuncSpec(fld, d=args.d)
    except (ValueError, OSError) as e:
        raise UsageError(str(e)) from e
    if f.degenerate:
        print(f"warning: x^{args.d} over GF(2^{args.n}) is degenerate (constant on nonzero elements)", file=sys.stderr)
    return f


def _print_report(rep: theorems.AnalysisReport, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(rep.to_dict(), indent=1))
        return
    for k, v in rep.to_dict().items():
        print(f"{k:20} {v}")


def cmd_analyze(args) -> int:
    f = _func(args)
    rep = theorems.analyze(f, threads=args.threads)
    _print_report(rep, args.format)
    return EXIT_OK


def cmd_table(args) -> int:
    f = _func(args)
    if args.format == "csv" and f.field.n > difftab.FULL_TABLE_MAX_N:
        raise BudgetExceeded(f"CSV needs the full table; n={f.field.n} exceeds {difftab.FULL_TABLE_MAX_N}; "
                             "use --format json for row spectra", float(f.field.q) ** 2, float(1 << 20))
    full = args.format == "csv"
    if args.kind == "ddt":
        t = difftab.ddt(f, full=full, threads=args.threads)
    else:
        t = boomtab.bct(f, full=full, threads=args.threads)
    text = tableio.write(t, args.format, args.out)
    if args.out is None:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    outcomes = theorems.verify_all(args.max_m)
    man = theorems.manifest(outcomes)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(man, fh, indent=1)
    for o in outcomes:
        print(o.line(), file=sys.stderr if o.passed else sys.stdout)
    failed = [o for o in outcomes if not o.passed]
    print(f"{len(outcomes) - len(failed)}/{len(outcomes)} claims passed")
    return EXIT_OK if not failed else EXIT_CLAIM


def cmd_search(args) -> int:
    try:
        fld = field_new(args.n, parse_modulus(args.modulus) if args.modulus else None)
    except ValueError as e:
        raise UsageError(str(e)) from e
    reports = theorems.search_b_lt_delta(fld, threads=args.threads)
    if args.format == "json":
        doc = [r.to_dict() for r in reports]
        for r in doc:
            r.pop("runtime_ms")
        text = json.dumps(doc, indent=1) + "\n"
    else:
        text = "".join(f"d={r.d:<6} coset={r.coset} delta={r.delta} boomerang={r.boomerang} "
                       f"locally_apn={r.locally_apn}\n" for r in reports)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _max_m(text: str) -> int:
    v = int(text)
    if not 2 <= v <= 8:
        raise argparse.ArgumentTypeError("--max-m must be in [2, 8]")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bctkit", description="DDT/BCT analysis of functions over GF(2^n)")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True)

    a = sub.add_parser("analyze", help="differential/boomerang summary of one function")
    _add_func_args(a)
    a.add_argument("--format", choices=["json", "text"], default="json")
    a.set_defaults(run=cmd_analyze)

    t = sub.add_parser("table", help="dump a DDT or BCT")
    t.add_argument("kind", choices=["ddt", "bct"])
    _add_func_args(t)
    t.add_argument("--format", choices=["csv", "json"], default="json")
    t.add_argument("--out")
    t.set_defaults(run=cmd_table)

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("--max-m", type=_max_m, default=4)
    v.add_argument("--out", help="write the JSON manifest here")
    v.set_defaults(run=cmd_verify)

    s = sub.add_parser("search", help="power maps with boomerang < differential uniformity")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--modulus")
    s.add_argument("--format", choices=["json", "text"], default="json")
    s.add_argument("--out")
    s.add_argument("--threads", type=int, default=None)
    s.set_defaults(run=cmd_search)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.run(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
