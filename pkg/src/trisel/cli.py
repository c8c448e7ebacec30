"""Command-line front end.

Subcommands: analyze, table-check, family (large-rank | biquadratic),
classgroup, density.  Exit codes: 0 success, 1 reference-table mismatch,
2 degenerate curve, 3 out-of-range computation, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from importlib import resources

from .descent import DegenerateCurve, analyze
from .families import biquadratic_family, density_experiment, large_rank_family
from .formclass import OutOfRange, class_group
from .sclass import PreconditionViolated

EXIT_OK = 0
EXIT_TABLE_MISMATCH = 1
EXIT_DEGENERATE = 2
EXIT_OUT_OF_RANGE = 3
EXIT_USAGE = 64

# rows of the bundled table whose printed bounds are known not to agree with
# a recomputation (the recomputed class data is larger than the bounds allow)
KNOWN_DISCREPANCIES = {(43063, 7)}

_TABLE_FIELDS = ("S1", "S2", "S3", "h12", "h13", "slpsi", "supsi", "sl3", "su3")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_rank(text):
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(text), int(text))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected LO..HI or a single integer, got {text!r}") from None


def _build_parser():
    p = _Parser(prog="trisel", description="3-isogeny Selmer bounds for y^2 = x^3 + a(x-b)^2")
    sub = p.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="bound Selmer dimensions for one curve")
    pa.add_argument("a", type=int)
    pa.add_argument("b", type=int)
    pa.add_argument("--rank", type=_parse_rank, default=None, metavar="LO..HI",
                    help="known Mordell-Weil rank (interval or single value)")
    pa.add_argument("--json", action="store_true", help="emit the report as JSON")

    pt = sub.add_parser("table-check", help="recompute every row of a reference table")
    pt.add_argument("--csv", default=None, metavar="PATH",
                    help="table to check (default: bundled reference_curves.csv)")

    pf = sub.add_parser("family", help="enumerate curve families")
    fsub = pf.add_subparsers(dest="family_kind", required=True)
    fl = fsub.add_parser("large-rank", help="psi-Selmer dimension >= 2n by counting")
    fl.add_argument("--n", type=int, required=True)
    fl.add_argument("--count", type=int, default=1)
    fb = fsub.add_parser("biquadratic", help="S1 = S2 = empty twists of one a'")
    fb.add_argument("--a-prime", dest="a_prime", type=int, required=True)
    fb.add_argument("--count", type=int, default=4)

    pc = sub.add_parser("classgroup", help="form class group of a discriminant")
    pc.add_argument("disc", type=int)

    pd = sub.add_parser("density", help="census of twist parameters up to a bound")
    pd.add_argument("bound", type=int)
    return p


def _print_report(rep):
    p = rep.params
    print(f"curve a={p.a} b={p.b} (d = 4a + 27b = {p.d})")
    print(f"  a is a square in K: {'yes' if rep.a_square_in_K else 'no'}")
    for name in ("S1", "S2", "S3"):
        labels = rep.ssets[name]
        print(f"  {name} = {{{', '.join(labels)}}}")
    if rep.h12 is not None:
        print(f"  class data: h12={rep.h12} h13={rep.h13} sL12={rep.sL12} sL13={rep.sL13}")
    print(f"  dim Sel_psi    in [{rep.psi_lower}, {rep.psi_upper}]")
    print(f"  dim Sel_psihat in [{rep.psihat_lower}, {rep.psihat_upper}]")
    print(f"  dim Sel_3      in [{rep.sel3_lower}, {rep.sel3_upper}]"
          f" (coarse upper {rep.sel3_upper_coarse})")
    if rep.root_number is not None:
        print(f"  root number: {'+1' if rep.root_number == 1 else '-1'}")
    else:
        print("  root number: not applicable")
    print(f"  trace: {', '.join(rep.theorem_trace)}")


def _cmd_analyze(args):
    rep = analyze(args.a, args.b, rank=args.rank)
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2))
    else:
        _print_report(rep)
    return EXIT_OK


def _actual_table_row(rep):
    return {
        "S1": ";".join(rep.ssets["S1"]),
        "S2": ";".join(rep.ssets["S2"]),
        "S3": ";".join(rep.ssets["S3"]),
        "h12": str(rep.h12),
        "h13": str(rep.h13),
        "slpsi": str(rep.psi_lower),
        "supsi": str(rep.psi_upper),
        "sl3": str(rep.sel3_lower),
        "su3": str(rep.sel3_upper),
    }


def _cmd_table_check(args):
    if args.csv is not None:
        try:
            fh = open(args.csv, newline="")
        except OSError as exc:
            print(f"trisel: error: cannot read {args.csv}: {exc.strerror}", file=sys.stderr)
            return EXIT_USAGE
        with fh:
            rows = list(csv.DictReader(fh))
    else:
        ref = resources.files("trisel") / "data" / "reference_curves.csv"
        with ref.open(newline="") as fh:
            rows = list(csv.DictReader(fh))
    needed = {"a", "b", *_TABLE_FIELDS}
    if rows and not needed.issubset(rows[0]):
        missing = ", ".join(sorted(needed - set(rows[0])))
        print(f"trisel: error: table is missing columns: {missing}", file=sys.stderr)
        return EXIT_USAGE
    npass = nfail = nflag = 0
    for row in rows:
        try:
            a, b = int(row["a"]), int(row["b"])
        except (TypeError, ValueError):
            print(f"trisel: error: malformed table row: {row}", file=sys.stderr)
            return EXIT_USAGE
        rank = _parse_rank(row["r"]) if (row.get("r") or "").strip() else None
        rep = analyze(a, b, rank=rank)
        actual = _actual_table_row(rep)
        diffs = [
            f"{f}: table {row[f]!r}, recomputed {actual[f]!r}"
            for f in _TABLE_FIELDS
            if (row[f] or "").strip() != actual[f]
        ]
        tag = f"a={a} b={b}"
        if not diffs:
            npass += 1
            print(f"PASS    {tag}")
        elif (a, b) in KNOWN_DISCREPANCIES:
            nflag += 1
            print(f"FLAGGED {tag}  " + "; ".join(diffs))
        else:
            nfail += 1
            print(f"FAIL    {tag}  " + "; ".join(diffs))
    print(f"{npass} passed, {nfail} failed, {nflag} flagged ({len(rows)} rows)")
    return EXIT_TABLE_MISMATCH if nfail else EXIT_OK


def _cmd_family(args):
    if args.family_kind == "large-rank":
        for m in large_rank_family(args.n, count=args.count):
            prod = "*".join(str(p) for p in m.primes)
            print(f"a={m.a} b={m.b}  4a+27 = {prod}  dim Sel_psi >= {m.psi_lower_certified}")
    else:
        for m in biquadratic_family(args.a_prime, count=args.count):
            print(f"a={m.a} b={m.ell}  j = {m.j_invariant}")
    return EXIT_OK


def _cmd_classgroup(args):
    cg = class_group(args.disc)
    inv = ", ".join(str(e) for e in cg.elementary_divisors)
    print(f"discriminant {cg.disc}: order {cg.order}, invariants [{inv}]")
    return EXIT_OK


def _cmd_density(args):
    res = density_experiment(args.bound)
    print(f"bound: {res.bound}")
    print(f"eligible n: {res.eligible_count}")
    print(f"predicted (31 X / 2^8 zeta(2)): {res.predicted_eligible:.1f}")
    print(f"predicted, alternative 2^9 normalization: {res.predicted_eligible_alt:.1f}")
    print(f"trivial 3-part: {res.h3_zero_count} ({res.h3_zero_fraction:.4f})")
    return EXIT_OK


_HANDLERS = {
    "analyze": _cmd_analyze,
    "table-check": _cmd_table_check,
    "family": _cmd_family,
    "classgroup": _cmd_classgroup,
    "density": _cmd_density,
}


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except DegenerateCurve as exc:
        print(f"trisel: degenerate curve: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except OutOfRange as exc:
        print(f"trisel: out of range: {exc}", file=sys.stderr)
        return EXIT_OUT_OF_RANGE
    except (PreconditionViolated, ValueError, argparse.ArgumentTypeError) as exc:
        print(f"trisel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
