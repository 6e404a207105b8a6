"""Command-line front end: every table as CSV/TSV/Markdown (or DOT for trees).

Exit codes: 0 success, 2 usage error, 3 budget exhausted (partial output written).
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import families as fam_mod
from .maps import MapId
from .render import DEFAULT_DIGITS, over, percent, render
from .stopping import FLAVORS, build_triangle, distribution_G, empirical_F
from .trees import build_tree, chain_from, export_dot
from .verify import default_threads, slice_fractions

EXIT_OK, EXIT_USAGE, EXIT_BUDGET = 0, 2, 3

FAMILY_MAPS = ("fraku3", "u3g", "fraku5", "u5g")


@dataclass
class OutputSpec:
    format: str = "csv"
    precision: int = DEFAULT_DIGITS
    exact: bool = False

    def num(self, x: Fraction) -> str:
        return render(x, self.precision, self.exact)


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"2..6"``, ``"5"`` or comma lists of either, e.g. ``"0..10,20,30"``."""
    out: list[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                a, b = part.split("..")
                out.extend(range(int(a), int(b) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected forms like 2..6 or 0..10,20") from None
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def format_table(header: Sequence[str], rows: Sequence[Sequence[object]], fmt: str) -> str:
    if fmt in ("csv", "tsv"):
        buf = io.StringIO()
        w = csv.writer(buf, delimiter="," if fmt == "csv" else "\t", lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
        lines += ["| " + " | ".join(str(c) for c in r) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    raise UsageError(f"format {fmt!r} is not available for this command")


# -- commands ---------------------------------------------------------------------

def cmd_families(args, out: OutputSpec) -> tuple[str, int]:
    Ls = parse_range(args.L)
    if min(Ls) < 2:
        raise UsageError("lengths start at 2")
    if args.pp:
        return _pp_table(args.map, Ls, out), EXIT_OK
    if args.summary:
        return _summary_table(args.map, Ls, out), EXIT_OK
    pp_rows = {r.L: r for r in fam_mod.pp_distribution_table(args.map, Ls)}
    header = ["L", "sequence", "modulo", "direction", "x_class", "y_class", "word",
              "D_L", "S_L", "pp_cumulative"]
    rows = []
    for L in Ls:
        table = fam_mod.enumerate_families(args.map, L)
        dl, sl = fam_mod.distribution_DL(args.map, L), fam_mod.cumulative_SL(args.map, L)
        for f in table.families:
            rows.append([
                L, "→".join(map(str, f.sequence())), f.modulus, f.direction,
                str(f.x_class), str(f.y_class), str(f.word),
                out.num(dl), out.num(sl), out.num(pp_rows[L].cumulative),
            ])
    return format_table(header, rows, out.format), EXIT_OK


def _summary_table(map_id: str, Ls: list[int], out: OutputSpec) -> str:
    header = ["L", "words", "modulo", "count", "dist", "D_L", "S_L", "S_L_pct"]
    rows = []
    shift = 1 if MapId(map_id) in fam_mod.FRAK_OF else 0
    for L in Ls:
        spec = sorted(fam_mod.length_spectrum(map_id, L).items())
        words = sum(c for _, c in spec)
        dl, sl = fam_mod.distribution_DL(map_id, L), fam_mod.cumulative_SL(map_id, L)
        for j, (e, c) in enumerate(spec):
            m = 1 << (e + shift)
            first = j == 0
            rows.append([
                L if first else "", words if first else "", m, c, f"{c}/{m}",
                out.num(dl) if first else "", out.num(sl) if first else "",
                percent(sl) if first else "",
            ])
    return format_table(header, rows, out.format)


def _pp_table(map_id: str, Ls: list[int], out: OutputSpec) -> str:
    header = ["L", "modulo", "coefficient", "dist", "D_pp", "cumulative", "cumulative_pct", "S_L_pct"]
    rows = []
    for r in fam_mod.pp_distribution_table(map_id, Ls):
        den = r.denominator
        for j, (m, c) in enumerate(r.moduli):
            first = j == 0
            rows.append([
                r.L if first else "", m, c, f"{c}/{m}",
                _over(r.density, den, out) if first else "",
                _over(r.cumulative, den, out) if first else "",
                percent(r.cumulative) if first else "",
                percent(r.covered) if first else "",
            ])
    return format_table(header, rows, out.format)


def _over(x: Fraction, den: int, out: OutputSpec) -> str:
    return over(x, den) if out.exact else out.num(x)


def cmd_density(args, out: OutputSpec) -> tuple[str, int]:
    bounds = parse_range(args.lmax)
    lmax = bounds[0] if len(bounds) == 1 else bounds
    rep = fam_mod.rising_fraction(args.map, lmax, args.levels, max_work=args.max_work)
    header = ["map", "level", "lmax", "f", "covered_S_L"]
    rows = [
        [rep.map_id.value, j + 1, rep.lmax[j], out.num(f), out.num(rep.covered)]
        for j, f in enumerate(rep.rising)
    ]
    return format_table(header, rows, out.format), EXIT_OK if rep.complete else EXIT_BUDGET


def cmd_stopping(args, out: OutputSpec) -> tuple[str, int]:
    ks = parse_range(args.k)
    if min(ks) < 0:
        raise UsageError("k must be >= 0")
    flavors = FLAVORS if args.flavor == "both" else (args.flavor,)
    header = ["k"] + [f"F_{f}" for f in flavors] + ["G"]
    if args.empirical:
        header += [f"empirical_{f}" for f in flavors]
    rows = []
    tris = {f: build_triangle(args.map, max(ks), f) for f in flavors}
    for k in ks:
        row: list[object] = [k] + [out.num(tris[f].F(k)) for f in flavors]
        row.append(out.num(distribution_G(args.map, k)))
        if args.empirical:
            row += [out.num(empirical_F(args.map, k, args.empirical, f).fraction) for f in flavors]
        rows.append(row)
    return format_table(header, rows, out.format), EXIT_OK


def cmd_chain(args, out: OutputSpec) -> tuple[str, int]:
    chain = chain_from(args.map, args.start, args.levels, args.budget)
    header = ["level", "start", "end", "L", "status", "vs_origin", "vs_level", "sequence"]
    rows = [
        [lv.level, lv.branch.start, lv.branch.end, lv.branch.length, lv.branch.status,
         lv.vs_origin, lv.vs_level, "→".join(map(str, lv.branch.values))]
        for lv in chain
    ]
    return format_table(header, rows, out.format), EXIT_OK if chain.complete else EXIT_BUDGET


def cmd_tree(args, out: OutputSpec) -> tuple[str, int]:
    tree = build_tree(args.map, args.nodes)
    if out.format == "dot":
        return export_dot(tree), EXIT_OK
    header = ["start", "end", "L", "direction", "sequence"]
    rows = [[b.start, b.end, b.length, b.direction, "→".join(map(str, b.values))] for b in tree.branches]
    return format_table(header, rows, out.format), EXIT_OK


def cmd_slices(args, out: OutputSpec) -> tuple[str, int]:
    reps = slice_fractions(args.map, args.levels, args.until, budget=args.budget,
                           threads=args.threads or default_threads())
    header = ["map", "level", "N", "domain", "count", "total", "fraction", "analytic"]
    rows = [
        [r.map_id.value, r.level, r.N, r.domain, r.count, r.total, out.num(r.fraction),
         "" if r.analytic is None else out.num(r.analytic)]
        for r in reps
    ]
    status = EXIT_BUDGET if reps and reps[0].budget_hits else EXIT_OK
    return format_table(header, rows, out.format), status


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="collatz-spectra", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "tsv", "markdown", "dot"], default="csv")
    common.add_argument("--precision", type=int, default=DEFAULT_DIGITS,
                        help="significant digits for decimals (default 7)")
    common.add_argument("--exact", action="store_true", help="emit rationals as num/den")
    common.add_argument("--out", help="write to FILE instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("families", parents=[common], help="sequence families per length")
    s.add_argument("--map", choices=FAMILY_MAPS, required=True)
    s.add_argument("--L", required=True, help="lengths, e.g. 2..6")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--summary", action="store_true", help="counts per modulus with D_L, S_L")
    g.add_argument("--pp", action="store_true", help="densities of families with x < y")
    s.set_defaults(func=cmd_families)

    s = sub.add_parser("density", parents=[common], help="rising fraction by level")
    s.add_argument("--map", choices=FAMILY_MAPS, required=True)
    s.add_argument("--lmax", required=True, help="max length; comma list gives one per level")
    s.add_argument("--levels", type=int, default=1)
    s.add_argument("--max-work", type=int, default=None)
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("stopping", parents=[common], help="distribution function F(k)")
    s.add_argument("--map", choices=["t3", "t5"], required=True)
    s.add_argument("--k", required=True)
    s.add_argument("--flavor", choices=list(FLAVORS) + ["both"], default="strict")
    s.add_argument("--empirical", type=int, metavar="N", help="also tally n <= N directly")
    s.set_defaults(func=cmd_stopping)

    s = sub.add_parser("chain", parents=[common], help="successive branches from a start")
    s.add_argument("--map", choices=["fraku3", "fraku5"], required=True)
    s.add_argument("--start", type=int, required=True)
    s.add_argument("--levels", type=int, default=1)
    s.add_argument("--budget", type=int, default=1_000_000, help="steps per branch")
    s.set_defaults(func=cmd_chain)

    s = sub.add_parser("tree", parents=[common], help="inverse-image branch tree")
    s.add_argument("--map", choices=["fraku3", "fraku5"], required=True)
    s.add_argument("--nodes", type=int, default=100)
    s.set_defaults(func=cmd_tree)

    s = sub.add_parser("slices", parents=[common], help="measured fractions over 1..N")
    s.add_argument("--map", choices=FAMILY_MAPS, required=True)
    s.add_argument("--levels", type=int, default=3)
    s.add_argument("--until", type=int, required=True)
    s.add_argument("--budget", type=int, default=100_000, help="steps per branch")
    s.add_argument("--threads", type=int, default=None)
    s.set_defaults(func=cmd_slices)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = OutputSpec(args.format, args.precision, args.exact)
    if out.format == "dot" and args.command != "tree":
        parser.error("--format dot is only available for the tree command")
    try:
        text, code = args.func(args, out)
    except (UsageError, ValueError) as e:
        print(f"{parser.prog} {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
