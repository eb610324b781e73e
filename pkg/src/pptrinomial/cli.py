"""Command line interface.

Subcommands
-----------
  classify      sweep the whole (A, B) rectangle (exhaustive m <= 4,
                seeded-sampled above); JSONL or CSV stream
  check         classify a single pair, JSON
  identities    run the sampled identity suite; JSON array of rows
  derive-g      eliminate and decompose G for one pair, JSON
  count-points  curve point count off the trivial lines for one pair
  bound         threshold and applicability verdicts with certified
                enclosures
  unit-circle   the q+1 solutions of y^(q+1) + y^q + 1 = 0

Reports are byte-deterministic for a fixed (command line, seed): headers
embed the field spec, mode, seed and tool version, never timestamps.
Exit status: 0 all checks pass, 1 a verified claim failed, 2 usage or
budget refusal.  PPTRINOMIAL_OUT_DIR, when set, anchors relative --out
paths.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .bounds import BoundQuery, bound_enclosure, lang_weil_applicable, main_bound_holds, minimal_m
from .gf import FieldTower, get_tower, load_field_spec
from .pp import (BudgetError, ClassifyRecord, TrinomialParams, classify_chunk,
                 classify_field, classify_header, cond1, cond2,
                 is_permutation, nontrivial_root, prop3_i, prop3_ii,
                 unit_equation_solutions)
from .surface import curve_point_count, derive_G
from .suite import identity_report


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _out_stream(args):
    path = getattr(args, "out", None)
    if not path:
        return sys.stdout, False
    base = os.environ.get("PPTRINOMIAL_OUT_DIR")
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    return open(path, "w", encoding="utf-8"), True


def _tower(args) -> FieldTower:
    if getattr(args, "field_spec", None):
        return load_field_spec(args.field_spec)
    if args.m is None:
        raise SystemExit(2)
    return get_tower(args.m)


def _params(tw: FieldTower, args) -> TrinomialParams:
    if args.A is None or args.B is None:
        print("error: this command needs both --A and --B", file=sys.stderr)
        raise SystemExit(2)
    try:
        return TrinomialParams(tw.elem(args.A), tw.elem(args.B))
    except ValueError as e:
        print("error: %s" % e, file=sys.stderr)
        raise SystemExit(2)


def _header(tw: FieldTower, mode: str, seed=None, samples=None) -> dict:
    h = classify_header(tw, mode, seed, samples)
    h["version"] = __version__
    return h


def _record_obj(tw: FieldTower, p: TrinomialParams) -> dict:
    root = nontrivial_root(p)
    rec = ClassifyRecord(
        A=p.A.encode(), B=p.B.encode(),
        is_pp=is_permutation(p),
        cond1=cond1(p), cond2=cond2(p),
        prop3_i=prop3_i(p), prop3_ii=prop3_ii(p),
        root_witness=root.encode() if root is not None else None)
    return rec.json_obj()


# -- subcommand handlers -------------------------------------------------

def _cmd_check(args) -> int:
    tw = _tower(args)
    p = _params(tw, args)
    obj = {"header": _header(tw, "single", None), "record": _record_obj(tw, p)}
    fh, close = _out_stream(args)
    print(_dumps(obj), file=fh)
    if close:
        fh.close()
    return 0


def _chunk_rows(job):
    m, base_poly, ext_poly, lo, hi, fmt = job
    tw = FieldTower(m, base_poly=base_poly, ext_poly=ext_poly)
    recs = classify_chunk(tw, lo, hi)
    if fmt == "csv":
        return [r.csv_row() for r in recs]
    return [_dumps(r.json_obj()) for r in recs]


def _cmd_classify(args) -> int:
    tw = _tower(args)
    mode = args.mode or ("exhaustive" if tw.m <= 4 else "sampled")
    fmt = args.format
    fh, close = _out_stream(args)
    try:
        if mode == "exhaustive":
            if tw.m > 4 and not args.force_budget:
                raise BudgetError(
                    "exhaustive classify for m=%d predicts %d pair checks; "
                    "use --force-budget to override" % (tw.m, (tw.n - 1) ** 2))
            header = _header(tw, "exhaustive", None)
            emit_header(fh, fmt, header)
            jobs = max(1, args.jobs)
            if jobs == 1:
                lines = _chunk_rows((tw.m, tw.base_poly, tw.ext_poly, 1, tw.n, fmt))
                for line in lines:
                    print(line, file=fh)
            else:
                bounds = _split_range(1, tw.n, jobs)
                work = [(tw.m, tw.base_poly, tw.ext_poly, lo, hi, fmt)
                        for lo, hi in bounds]
                with ProcessPoolExecutor(max_workers=jobs) as pool:
                    for lines in pool.map(_chunk_rows, work):
                        for line in lines:
                            print(line, file=fh)
        else:
            header, recs = classify_field(tw, mode="sampled", samples=args.samples,
                                          seed=args.seed, force_budget=args.force_budget)
            header["version"] = __version__
            emit_header(fh, fmt, header)
            for r in recs:
                print(r.csv_row() if fmt == "csv" else _dumps(r.json_obj()), file=fh)
    except BudgetError as e:
        print("budget refusal: %s" % e, file=sys.stderr)
        if close:
            fh.close()
        return 2
    if close:
        fh.close()
    return 0


def emit_header(fh, fmt: str, header: dict) -> None:
    if fmt == "csv":
        print("# %s" % _dumps(header), file=fh)
        print(ClassifyRecord.CSV_HEADER, file=fh)
    else:
        print(_dumps(header), file=fh)


def _split_range(lo: int, hi: int, parts: int):
    n = hi - lo
    step = (n + parts - 1) // parts
    out = []
    a = lo
    while a < hi:
        out.append((a, min(a + step, hi)))
        a += step
    return out


def _cmd_identities(args) -> int:
    tw = _tower(args)
    rows = identity_report(tw, samples=args.samples, seed=args.seed,
                           jobs=max(1, args.jobs))
    obj = {"header": _header(tw, "identities", args.seed, args.samples),
           "rows": rows,
           "pass": all(r["pass"] for r in rows)}
    fh, close = _out_stream(args)
    print(_dumps(obj), file=fh)
    if close:
        fh.close()
    return 0 if obj["pass"] else 1


def _cmd_derive_g(args) -> int:
    tw = _tower(args)
    p = _params(tw, args)
    gd = derive_G(p, route=args.route)
    obj = {
        "header": _header(tw, "derive-g", None),
        "params": {"A": p.A.encode(), "B": p.B.encode()},
        "G_terms": gd.G.terms_json(),
        "alpha": gd.alpha.terms_json(),
        "beta": gd.beta.terms_json(),
        "gamma": gd.gamma.terms_json(),
        "delta": gd.delta.terms_json(),
        "m_star": gd.m_star.terms_json(),
        "n_star": gd.n_star.terms_json(),
        "stripped_factors": [{"label": lbl, "poly": f.terms_json()}
                             for lbl, f in gd.stripped],
        "checks": gd.checks,
    }
    fh, close = _out_stream(args)
    print(_dumps(obj), file=fh)
    if close:
        fh.close()
    return 0 if all(gd.checks.values()) else 1


def _cmd_count_points(args) -> int:
    tw = _tower(args)
    p = _params(tw, args)
    try:
        count, examples = curve_point_count(p, max_examples=args.examples,
                                            force=args.force_budget)
    except BudgetError as e:
        print("budget refusal: %s" % e, file=sys.stderr)
        return 2
    obj = {"header": _header(tw, "count-points", None),
           "params": {"A": p.A.encode(), "B": p.B.encode()},
           "off_line_points": count,
           "examples": [{"x": x, "y": y} for x, y in examples],
           "is_pp": is_permutation(p)}
    fh, close = _out_stream(args)
    print(_dumps(obj), file=fh)
    if close:
        fh.close()
    return 0


def _frac(fr: Fraction) -> str:
    return "%d/%d" % (fr.numerator, fr.denominator)


def _cmd_bound(args) -> int:
    bq = BoundQuery(r=args.r, delta=args.delta,
                    intersection_budget=args.threshold,
                    m=args.m if args.m else 1)
    obj = {
        "r": args.r, "delta": args.delta, "threshold": args.threshold,
        "coefficient": (args.delta - 1) * (args.delta - 2),
        "minimal_m": minimal_m(r=args.r, delta=args.delta, threshold=args.threshold),
        "version": __version__,
    }
    if args.m:
        lo, hi = bound_enclosure(bq, 64)
        obj["m"] = args.m
        obj["holds"] = main_bound_holds(args.m, r=args.r, delta=args.delta,
                                        threshold=args.threshold)
        obj["applicable"] = lang_weil_applicable(bq)
        obj["enclosure"] = {"lower": _frac(lo), "upper": _frac(hi)}
    fh, close = _out_stream(args)
    if args.format == "json":
        print(_dumps(obj), file=fh)
    else:
        print("threshold inequality: q^%d - %d q^(%d/2) - 5 %d^(13/3) q^%d > %d"
              % (args.r, obj["coefficient"], 2 * args.r - 1, args.delta,
                 args.r - 1, args.threshold), file=fh)
        print("minimal m: %d" % obj["minimal_m"], file=fh)
        if args.m:
            print("m=%d: holds=%s applicable=%s" % (args.m, obj["holds"],
                                                    obj["applicable"]), file=fh)
            print("certified enclosure of the left side: [%s, %s]"
                  % (obj["enclosure"]["lower"], obj["enclosure"]["upper"]), file=fh)
    if close:
        fh.close()
    return 0


def _cmd_unit_circle(args) -> int:
    tw = _tower(args)
    sols = unit_equation_solutions(tw)
    norms_ok = all(s.norm().v == 1 for s in sols)
    obj = {"header": _header(tw, "unit-circle", None),
           "count": len(sols),
           "expected": tw.q + 1,
           "norms_all_one": norms_ok,
           "solutions": [s.encode() for s in sols]}
    fh, close = _out_stream(args)
    print(_dumps(obj), file=fh)
    if close:
        fh.close()
    return 0 if len(sols) == tw.q + 1 and norms_ok else 1


def _add_field_args(sp, need_ab=False):
    sp.add_argument("--m", type=int, help="field exponent (q = 2^m)")
    sp.add_argument("--field-spec", help="JSON field specification file")
    if need_ab:
        sp.add_argument("--A", help="coefficient A as 'a0,a1,a2' (hex coords)")
        sp.add_argument("--B", help="coefficient B as 'a0,a1,a2' (hex coords)")
    sp.add_argument("--out", help="output path (stdout when omitted)")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="pptrinomial",
        description="Permutation classifier and identity checker for "
                    "X^(q^2-q+1) + A X^(q^2) + B X over GF(q^3), q = 2^m")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify", help="sweep all (A, B) pairs")
    _add_field_args(sp)
    sp.add_argument("--mode", choices=["exhaustive", "sampled"])
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--force-budget", action="store_true")
    sp.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    sp.set_defaults(fn=_cmd_classify)

    sp = sub.add_parser("check", help="classify a single pair")
    _add_field_args(sp, need_ab=True)
    sp.set_defaults(fn=_cmd_check)

    sp = sub.add_parser("identities", help="run the sampled identity suite")
    _add_field_args(sp)
    sp.add_argument("--samples", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(fn=_cmd_identities)

    sp = sub.add_parser("derive-g", help="eliminate and decompose G for one pair")
    _add_field_args(sp, need_ab=True)
    sp.add_argument("--route", choices=["x2-first", "x1-first"], default="x2-first")
    sp.set_defaults(fn=_cmd_derive_g)

    sp = sub.add_parser("count-points", help="curve points off the trivial lines")
    _add_field_args(sp, need_ab=True)
    sp.add_argument("--examples", type=int, default=5)
    sp.add_argument("--force-budget", action="store_true")
    sp.set_defaults(fn=_cmd_count_points)

    sp = sub.add_parser("bound", help="threshold verdicts with certified enclosures")
    sp.add_argument("--r", type=int, default=2)
    sp.add_argument("--delta", type=int, default=12)
    sp.add_argument("--threshold", type=int, default=36)
    sp.add_argument("--m", type=int)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--out")
    sp.set_defaults(fn=_cmd_bound)

    sp = sub.add_parser("unit-circle", help="solutions of y^(q+1) + y^q + 1 = 0")
    _add_field_args(sp)
    sp.set_defaults(fn=_cmd_unit_circle)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetError as e:
        print("budget refusal: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
