"""Command-line surface: check, certify, rspace, sprspace, survey, positroids,
tables.

Exit codes: 0 success, 1 negative verdict or regression mismatch, 2 input
error, 3 timeout/undetermined. The default per-matroid budget comes from
SPG_BUDGET_SECONDS (360 if unset); --budget overrides the environment.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction

from . import refdata
from .catalog import (
    SurveyRecord,
    canonical_id,
    dimension_histogram,
    emit_revlex,
    enumerate_rank2,
    enumerate_simple_rank3,
    ingest_catalog,
    parse_revlex,
    run_survey,
    survey_one,
)
from .groebner import Budget
from .linalg import QMatrix, multi_veronese, pluecker, rank
from .matroid import Matroid, NotAMatroidError, from_mask
from .positroid import survey_positroids
from .realization import (
    compare_spaces,
    coordinatize,
    find_frame_relabeling,
    realization_space,
    sp_realization_space,
)
from .selfproj import certify_self_projecting, cocircuit_residual, stiefel_residual

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_TIMEOUT = 3


class InputError(Exception):
    pass


def _read_arg_text(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    path = arg[1:] if arg.startswith("@") else arg
    if arg.startswith("@") or os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    return arg


def parse_matrix(text: str) -> QMatrix:
    """Whitespace-separated rationals (num or num/den), one row per line."""
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([Fraction(tok) for tok in line.split()])
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError("bad matrix row %r: %s" % (line, exc))
    if not rows:
        raise InputError("empty matrix input")
    if len({len(r) for r in rows}) != 1:
        raise InputError("ragged matrix rows")
    return QMatrix(rows)


def parse_matroid_arg(args) -> Matroid:
    """Matroid from a revlex string ('k n pattern', @file, -) or --bases."""
    if args.bases is not None:
        if args.rank is None or args.n is None:
            raise InputError("--bases needs --rank and --n")
        bases = []
        for tok in args.bases.replace(";", " ").split():
            if "," in tok:
                elems = [int(p) for p in tok.split(",")]
            else:
                elems = [int(ch) for ch in tok]
            if any(not 1 <= e <= args.n for e in elems):
                raise InputError("basis %r out of range 1..%d" % (tok, args.n))
            bases.append(tuple(e - 1 for e in elems))
        try:
            return Matroid.from_bases(args.n, args.rank, bases)
        except NotAMatroidError as exc:
            raise InputError(str(exc))
    if not args.matroid:
        raise InputError("no matroid given: pass 'k n revlex-string' or --bases")
    text = _read_arg_text(args.matroid).strip()
    line = next((ln for ln in text.splitlines() if ln.strip()), "")
    try:
        return parse_revlex(line, args.rank, args.n)
    except (ValueError, NotAMatroidError) as exc:
        raise InputError(str(exc))


def _budget_seconds(args) -> float:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("SPG_BUDGET_SECONDS")
    return float(env) if env else 360.0


def _print_space(space, label: str, fmt: str, m: Matroid):
    if fmt == "records":
        rec = _record_for(m, space)
        print(rec.to_line())
        return
    print("kind: %s" % label)
    print("chart ring: %s" % (", ".join(space.ring.names) or "(no free variables)"))
    print("normalized to 1: %s" % (", ".join(space.normalized_ones) or "none"))
    print("forced zero: %s" % (", ".join(space.forced_zero) or "none"))
    if space.timeout:
        print("status: TIMEOUT (partial basis below)")
    else:
        print("dimension: %d" % space.dimension)
        print("empty: %s" % ("yes" if space.empty else "no"))
    print("generators: %s" % ("; ".join(str(g) for g in space.gens) or "0"))
    print("inverted: %s" % ("; ".join(str(g) for g in space.inverted) or "none"))


def _record_for(m: Matroid, space) -> SurveyRecord:
    rec = SurveyRecord(
        rank=m.k, n=m.n, id=canonical_id(m), selfproj=m.is_self_projecting(),
        r_dim=None, s_dim=None, verdict="", r_seconds=0.0, s_seconds=0.0,
        r_timeout=False, s_timeout=False,
        ring=",".join(space.ring.names),
        inverted=";".join(str(g) for g in space.inverted),
        normalized_ones=",".join(space.normalized_ones),
        forced_zero=",".join(space.forced_zero),
    )
    gens = ";".join(str(g) for g in space.gens)
    if space.kind == "R":
        rec.r_dim, rec.r_timeout = space.dimension, space.timeout
        rec.r_seconds, rec.r_gens = round(space.seconds, 3), gens
    else:
        rec.s_dim, rec.s_timeout = space.dimension, space.timeout
        rec.s_seconds, rec.s_gens = round(space.seconds, 3), gens
    return rec


def cmd_check(args) -> int:
    m = parse_matroid_arg(args)
    w = m.half_coloop()
    sp = w is None
    print("matroid: rank %d on %d elements, %d bases" % (m.k, m.n, len(m.bases)))
    print("self-projecting: %s" % ("yes" if sp else "no"))
    print("disjoint-basis property: %s" % ("yes" if m.has_disjoint_basis_property() else "no"))
    if w is None:
        print("half-coloop: none")
    else:
        print(
            "half-coloop: e=%d with flats {%s}, {%s}"
            % (
                w.e + 1,
                ",".join(str(x + 1) for x in from_mask(w.flat1)),
                ",".join(str(x + 1) for x in from_mask(w.flat2)),
            )
        )
    return EXIT_OK if sp else EXIT_NEGATIVE


def cmd_certify(args) -> int:
    x = parse_matrix(_read_arg_text(args.matrix))
    if rank(x) < x.rows:
        print("error: matrix is rank deficient", file=sys.stderr)
        return EXIT_INPUT
    res = certify_self_projecting(x)
    print("matrix: %d x %d, rank %d" % (x.rows, x.cols, x.rows))
    print("kernel of the Veronese matrix: dimension %d"
          % (x.cols - rank(multi_veronese(x))))
    if not res:
        print("refused: %s" % res.reason)
        return EXIT_NEGATIVE
    lam = res.witness.lam
    print("witness: %s" % " ".join(str(v) for v in lam))
    ok1 = stiefel_residual(x, lam).is_zero()
    ok2 = cocircuit_residual(pluecker(x), lam).is_zero()
    print("stiefel residual zero: %s" % ok1)
    print("cocircuit residual zero: %s" % ok2)
    return EXIT_OK if ok1 and ok2 else EXIT_NEGATIVE


def _coord_for(args, m: Matroid):
    if args.frame:
        coord = find_frame_relabeling(m)
        if coord is not None:
            return coord
        print("note: no frame exists; using plain coordinatization")
    return coordinatize(m)


def cmd_rspace(args) -> int:
    m = parse_matroid_arg(args)
    coord = _coord_for(args, m)
    space = realization_space(m, Budget(seconds=_budget_seconds(args)), coord)
    _print_space(space, "R", args.format, m)
    return EXIT_TIMEOUT if space.timeout else EXIT_OK


def cmd_sprspace(args) -> int:
    m = parse_matroid_arg(args)
    coord = _coord_for(args, m)
    budget = _budget_seconds(args)
    base = realization_space(m, Budget(seconds=budget), coord)
    space = sp_realization_space(m, Budget(seconds=budget), coord, base=base)
    _print_space(space, "S", args.format, m)
    return EXIT_TIMEOUT if space.timeout else EXIT_OK


def _parse_n_range(spec: str):
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(spec)]


def _catalog_for(args, k: int, n: int):
    if k == 2:
        return enumerate_rank2(n)
    if k == 3:
        return enumerate_simple_rank3(n)
    if args.source:
        errors: list = []
        mats = list(ingest_catalog(args.source, k, n, errors=errors,
                                   validate=not args.no_validate))
        for lineno, msg in errors:
            print("ingest: line %d: %s" % (lineno, msg), file=sys.stderr)
        return mats
    raise InputError(
        "rank-%d matroids are not enumerated in-process; pass --source FILE "
        "with one revlex basis string per line (see the catalog docs)" % k
    )


def _histogram_line(label: str, hist: dict, dims: range) -> str:
    return "%-8s" % label + "".join("%5d" % hist.get(d, 0) for d in dims)


def cmd_survey(args) -> int:
    ns = _parse_n_range(args.n_spec)
    failures = 0
    for n in ns:
        mats = _catalog_for(args, args.rank, n)
        sp = [m for m in mats if m.is_self_projecting()]
        expected = refdata.MATROID_COUNTS.get((args.rank, n))
        note = ""
        if args.check and expected is not None:
            ok = (expected[0] in (None, len(mats))) and expected[1] == len(sp)
            note = "  [OK]" if ok else "  [MISMATCH: expected %s]" % (expected,)
            failures += 0 if ok else 1
        print(
            "rank %d  n=%d: %d matroids, %d self-projecting%s"
            % (args.rank, n, len(mats), len(sp), note)
        )
        if len(ns) > 1 or args.counts_only:
            continue
        records = run_survey(
            sp, budget_seconds=_budget_seconds(args), jobs=args.jobs,
            frame=True if args.frame else None,
        )
        if args.format == "records":
            for rec in records:
                print(rec.to_line())
        hr = dimension_histogram(records, "R")
        hs = dimension_histogram(records, "S")
        t_r = sum(r.r_timeout for r in records)
        t_s = sum(r.s_timeout for r in records)
        dims = range(-1, max([d for d in list(hr) + list(hs)] + [0]) + 1)
        print("dim     " + "".join("%5d" % d for d in dims))
        print(_histogram_line("(%d,R)" % n, hr, dims))
        print(_histogram_line("(%d,S)" % n, hs, dims))
        if t_r or t_s:
            print("timeouts: R=%d S=%d" % (t_r, t_s))
        verdicts: dict = {}
        for rec in records:
            verdicts[rec.verdict] = verdicts.get(rec.verdict, 0) + 1
        print("verdicts: " + ", ".join("%s: %d" % kv for kv in sorted(verdicts.items())))
        if args.check:
            exp_r = refdata.RANK3_DIMENSION_HISTOGRAMS.get((n, "R"))
            exp_s = refdata.RANK3_DIMENSION_HISTOGRAMS.get((n, "S"))
            if exp_r is not None and hr != exp_r:
                print("  [MISMATCH R: expected %s]" % exp_r)
                failures += 1
            if exp_s is not None and hs != exp_s:
                print("  [MISMATCH S: expected %s]" % exp_s)
                failures += 1
    return EXIT_NEGATIVE if failures else EXIT_OK


def cmd_positroids(args) -> int:
    ns = _parse_n_range(args.n_spec)
    failures = 0
    for n in ns:
        s = survey_positroids(args.rank, n)
        if args.format == "records":
            print(
                "rank=%d\tn=%d\traw_simple=%d\tsimple=%d\tselfproj=%d\tortho=%d"
                % (args.rank, n, s.raw_simple, *s.row())
            )
        note = ""
        if args.check:
            expected = refdata.POSITROID_ROWS.get((args.rank, n))
            if expected is not None:
                ok = s.row() == expected
                note = "  [OK]" if ok else "  [MISMATCH: expected %s]" % (expected,)
                failures += 0 if ok else 1
        if args.format != "records":
            print(
                "rank %d  n=%d: %d simple positroid classes (%d labeled), "
                "%d self-projecting, %d orthopositroids%s"
                % (args.rank, n, s.simple_classes, s.raw_simple,
                   s.sp_classes, s.ortho_classes, note)
            )
    return EXIT_NEGATIVE if failures else EXIT_OK


def cmd_tables(args) -> int:
    which = set((args.which or "1,2,5").split(","))
    if "1" in which:
        print("matroid counts (matroids / self-projecting; rank 2 counts all, else simple):")
        ks = sorted({k for k, _ in refdata.MATROID_COUNTS})
        print("  n\\k " + "".join("%16d" % k for k in ks))
        for n in range(4, 11):
            row = ""
            for k in ks:
                v = refdata.MATROID_COUNTS.get((k, n))
                row += "%16s" % ("" if v is None else "%s / %s" % (v[0] or "?", v[1]))
            print("%5d" % n + row)
        print()
    if "2" in which:
        print("rank-3 realization-space dimension histograms:")
        dims = range(-1, 9)
        print("        " + "".join("%5d" % d for d in dims))
        for (n, kind), hist in sorted(refdata.RANK3_DIMENSION_HISTOGRAMS.items()):
            print(_histogram_line("(%d,%s)" % (n, kind), hist, dims))
        print()
    if "5" in which:
        print("positroid survey rows (simple / self-projecting / orthopositroids):")
        for (k, n), row in sorted(refdata.POSITROID_ROWS.items()):
            print("  (%d,%2d): %6d %6d %6d" % (k, n, *row))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="spg",
        description="Exact tools for self-projecting point configurations, "
        "matroids, positroids and realization spaces.",
    )
    p.add_argument("--budget", type=float, default=None,
                   help="seconds per heavy computation (env SPG_BUDGET_SECONDS)")
    p.add_argument("--jobs", type=int, default=1, help="parallel survey workers")
    p.add_argument("--format", choices=("text", "records"), default="text")
    p.add_argument("--seed", type=int, default=None,
                   help="seed for randomized helpers")
    sub = p.add_subparsers(dest="command", required=True)

    def add_matroid_args(sp):
        sp.add_argument("matroid", nargs="?", help="'k n revlex-string', @file or -")
        sp.add_argument("--rank", type=int, help="rank for bare strings / --bases")
        sp.add_argument("--n", type=int, help="ground-set size for bare strings / --bases")
        sp.add_argument("--bases", help="1-based bases, e.g. '1,2 1,3 2,3' or '12 13 23'")

    sp = sub.add_parser("check", help="self-projectivity verdicts for a matroid")
    add_matroid_args(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("certify", help="isotropy witness for a rational matrix")
    sp.add_argument("matrix", help="matrix file, @file or - for stdin")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("rspace", help="realization space of a matroid")
    add_matroid_args(sp)
    sp.add_argument("--frame", action="store_true", help="use a frame relabeling")
    sp.set_defaults(func=cmd_rspace)

    sp = sub.add_parser("sprspace", help="self-projecting realization space")
    add_matroid_args(sp)
    sp.add_argument("--frame", action="store_true", help="use a frame relabeling")
    sp.set_defaults(func=cmd_sprspace)

    sp = sub.add_parser("survey", help="catalog counts and realization surveys")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--n", dest="n_spec", required=True, help="e.g. 7 or 4..10")
    sp.add_argument("--source", help="revlex catalog file (required for rank >= 4)")
    sp.add_argument("--no-validate", action="store_true",
                    help="skip the exchange-axiom check on ingested lines")
    sp.add_argument("--counts-only", action="store_true")
    sp.add_argument("--frame", action="store_true")
    sp.add_argument("--check", action="store_true",
                    help="exit nonzero unless rows match the pinned targets")
    sp.set_defaults(func=cmd_survey)

    sp = sub.add_parser("positroids", help="positroid / orthopositroid survey")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--n", dest="n_spec", required=True)
    sp.add_argument("--check", action="store_true")
    sp.set_defaults(func=cmd_positroids)

    sp = sub.add_parser("tables", help="print the pinned reference tables")
    sp.add_argument("--which", help="comma list from 1,2,5 (default all)")
    sp.set_defaults(func=cmd_tables)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is not None:
        random.seed(args.seed)
    try:
        return args.func(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
