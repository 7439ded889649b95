"""Command-line surface: polytope info, Minkowski length, classification
census, code parameters, bounds, construction emitters, greedy search.

Exit codes: 0 success, 1 usage, 2 input error, 3 budget exceeded.
Machine output (--format tsv) is stable and golden-tested; the human
format may evolve.  --plot renders a matplotlib figure next to the
delimited output.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from toricode import bounds as bounds_mod
from toricode import constructions
from toricode.codes import (
    BudgetExceededError,
    build_code,
    min_distance_exhaustive,
    min_distance_isd,
)
from toricode.gf import make_field
from toricode.lattice import (
    LatticeConfiguration,
    PointFormatError,
    convex_hull,
    format_points,
    parse_points,
)
from toricode.mlength import (
    classify_polygons_by_length,
    has_exceptional_in_some_maximal,
    is_strongly_indecomposable,
    minkowski_length,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(rows, header, fmt):
    """rows: list of dicts with the header's keys."""
    if fmt == "tsv":
        print("\t".join(header))
        for row in rows:
            print("\t".join(str(row[h]) for h in header))
    elif fmt == "kv":
        for row in rows:
            for h in header:
                print(f"{h}: {row[h]}")
            print()
    else:
        for row in rows:
            print("  ".join(f"{h}={row[h]}" for h in header))


def _fmt_points(points):
    return ";".join(",".join(str(c) for c in p) for p in points)


def _load_config(path) -> LatticeConfiguration:
    return constructions.load_configuration(path)


def _cmd_poly(args) -> int:
    P = convex_hull(_load_config(args.points))
    ml = minkowski_length(P)
    row = {
        "ambient_dim": P.ambient_dim,
        "dim": P.dim,
        "vertices": _fmt_points(P.vertices),
        "points": P.num_lattice_points(),
        "mlength": ml.length,
        "strongly_indecomposable": "yes" if (P.dim >= 1 and ml.length == 1) else "no",
        "exceptional_in_maximal": (
            "yes" if (P.ambient_dim == 2 and
                      has_exceptional_in_some_maximal(P, ml.length)) else "no")
        if P.ambient_dim == 2 else "n/a",
    }
    _emit([row], list(row.keys()), args.format)
    if args.plot:
        from toricode.viz import save_polytope_figure
        save_polytope_figure(args.plot, P, title=f"L={ml.length}")
        print(f"figure written to {args.plot}", file=sys.stderr)
    return EXIT_OK


def _cmd_mlength(args) -> int:
    P = convex_hull(_load_config(args.points))
    ml = minkowski_length(P)
    witness = "+".join(_fmt_points(s.vertices) for s in ml.witness.summands) or "-"
    row = {
        "mlength": ml.length,
        "witness_segments": witness,
        "witness_translation": ",".join(str(c) for c in ml.witness.translation),
    }
    _emit([row], list(row.keys()), args.format)
    return EXIT_OK


def _cmd_classify(args) -> int:
    max_points = args.max_points if args.max_points else (args.length + 1) ** 2
    classes = classify_polygons_by_length(args.length, max_points)
    rows = []
    for i, poly in enumerate(classes):
        L = args.length
        rows.append({
            "index": i,
            "dim": poly.dim,
            "points": poly.num_lattice_points(),
            "mlength": L,
            "strongly_indecomposable": "yes" if L == 1 else "no",
            "exceptional_in_maximal": "yes" if has_exceptional_in_some_maximal(poly) else "no",
            "vertices": _fmt_points(poly.vertices),
        })
    header = ["index", "dim", "points", "mlength", "strongly_indecomposable",
              "exceptional_in_maximal", "vertices"]
    _emit(rows, header, args.format)
    dims2 = sum(1 for r in rows if r["dim"] == 2)
    print(f"# classes: {len(rows)} total, {dims2} two-dimensional, "
          f"max points {max((r['points'] for r in rows), default=0)}",
          file=sys.stderr)
    if args.plot:
        from toricode.viz import save_census_figure
        save_census_figure(args.plot, [
            (poly, f"#{i}: {poly.num_lattice_points()} pts")
            for i, poly in enumerate(classes)])
        print(f"figure written to {args.plot}", file=sys.stderr)
    return EXIT_OK


def _cmd_code(args) -> int:
    field = make_field(args.q)
    S = _load_config(args.points)
    m = args.dim if args.dim else S.dim
    code = build_code(list(S), field, m)
    method = args.method
    if method == "auto":
        reps = (args.q ** code.k - 1) // (args.q - 1)
        method = "exhaustive" if reps <= args.budget_messages else "isd"
    if method == "exhaustive":
        params = min_distance_exhaustive(code, with_enumerator=args.enumerator,
                                         budget=args.budget_messages)
    else:
        mode = "exact" if args.exact else ("upper-only" if args.upper_only else "exact")
        params = min_distance_isd(code, mode=mode,
                                  max_weight=args.max_weight,
                                  budget_messages=args.budget_messages,
                                  budget_seconds=args.budget_seconds)
    witness = params.witness_codeword
    row = {
        "n": params.n,
        "k": params.k,
        "d": params.d,
        "method": params.d_method,
        "certified": "yes" if params.certified else "no",
        "lower_bound": params.lower_bound if params.lower_bound is not None else "-",
        "upper_bound": params.upper_bound if params.upper_bound is not None else "-",
        "witness_weight": int((witness != 0).sum()) if witness is not None else "-",
    }
    _emit([row], list(row.keys()), args.format)
    if args.enumerator and params.weight_enumerator is not None:
        print("# weight\tcount", file=sys.stderr)
        for w, c in enumerate(params.weight_enumerator):
            if c:
                print(f"{w}\t{int(c)}", file=sys.stderr)
    if args.plot:
        if params.weight_enumerator is None:
            print("no weight enumerator computed; --plot needs --enumerator "
                  "with the exhaustive method", file=sys.stderr)
        else:
            from toricode.viz import save_weight_distribution
            save_weight_distribution(args.plot, params.weight_enumerator,
                                     params.n, params.d,
                                     title=f"[{params.n},{params.k},{params.d}] over GF({args.q})")
            print(f"figure written to {args.plot}", file=sys.stderr)
    return EXIT_OK


def _cmd_bound(args) -> int:
    q = args.q
    formula = args.formula
    if formula == "simplex":
        report = bounds_mod.simplex_distance(args.ell, args.dim or 2, q)
    elif formula == "box":
        lengths = [int(x) for x in args.lengths.split(",")]
        report = bounds_mod.box_distance(lengths, q)
    elif formula == "product":
        report = bounds_mod.product_distance(args.d1, args.d2)
    elif formula == "pyramid":
        report = bounds_mod.pyramid_distance(args.d1, q)
    elif formula == "mlength":
        P = convex_hull(_load_config(args.points))
        report = bounds_mod.mlength_lower_bound(P, q)
    elif formula == "inductive":
        S = _load_config(args.points)
        axes = tuple(int(a) for a in args.axes.split(","))
        report = bounds_mod.inductive_bound(S, axes, q)
    elif formula == "corollary-last":
        report = bounds_mod.corollary_last_bound(_load_config(args.points), q)
    elif formula == "nested-fiber":
        report = bounds_mod.nested_fiber_distance(_load_config(args.points), q)
    else:
        raise ValueError(f"unknown formula {formula}")
    row = {
        "formula": formula,
        "value": report.value,
        "kind": report.kind,
        "caveat": report.validity_caveat or "-",
        "witness": report.witness if report.witness is not None else "-",
    }
    _emit([row], list(row.keys()), args.format)
    return EXIT_OK


def _cmd_construct(args) -> int:
    if args.product:
        a, b = (_load_config(p) for p in args.product)
        out = constructions.product_config(a, b)
        pts = list(out)
    elif args.pyramid:
        P = convex_hull(_load_config(args.pyramid))
        poly = constructions.pyramid(P)
        if args.dilate_factor != 1:
            poly = constructions.dilate(poly, args.dilate_factor)
        pts = list(poly.lattice_points())
    elif args.sind_tower is not None:
        poly = constructions.sind_tower(args.sind_tower)
        pts = list(poly.lattice_points())
    elif args.nested_fiber:
        base = _load_config(args.nested_fiber)
        a_str, b_str = args.segment.split(";")
        a = tuple(int(c) for c in a_str.split(","))
        b = tuple(int(c) for c in b_str.split(","))
        out = constructions.nested_fiber_family(args.levels, base, (a, b))
        pts = list(out)
    else:
        raise ValueError("choose one of --product/--pyramid/--sind-tower/--nested-fiber")
    sys.stdout.write(format_points(pts))
    return EXIT_OK


def _best_known_table(path=None):
    """{(q, n, k): d} from the static snapshot file."""
    if path is None:
        source = resources.files("toricode").joinpath("data/best_known_q8.tsv")
        text = source.read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    table = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        q, n, k, d = (int(tok) for tok in line.split("\t")[:4])
        table[(q, n, k)] = d
    return table


def _cmd_search(args) -> int:
    import itertools

    field = make_field(args.q)
    seed_pts = parse_points(Path(args.seed).read_text(encoding="utf-8"))
    if not seed_pts and args.dim is None:
        raise ValueError("an empty seed needs --dim")
    m = args.dim if args.dim else len(seed_pts[0])
    S = list(seed_pts)
    table = _best_known_table(args.table)
    qm1 = args.q - 1
    candidates = [tuple(t) for t in itertools.product(range(qm1), repeat=m)]
    existing = {tuple(c % qm1 for c in p) for p in S}
    header = ["candidate", "n", "k", "d_estimate", "method", "certified",
              "best_known", "verdict"]
    rows = []
    for z in candidates:
        if z in existing:
            continue
        pts = S + [z]
        code = build_code(pts, field, m)
        reps = (args.q ** code.k - 1) // (args.q - 1)
        if reps <= min(args.budget_messages, 10**6):
            params = min_distance_exhaustive(code)
        else:
            params = min_distance_isd(code, mode="upper-only",
                                      max_weight=args.max_weight or 3,
                                      budget_messages=args.budget_messages,
                                      budget_seconds=args.budget_seconds)
        best = table.get((args.q, code.n, code.k))
        if best is None:
            verdict = "no-entry"
        elif params.certified and params.d > best:
            verdict = "improves"
        elif params.certified and params.d == best:
            verdict = "matches"
        elif not params.certified and params.d >= best:
            verdict = "candidate"
        else:
            verdict = "worse"
        rows.append({
            "candidate": ",".join(str(c) for c in z),
            "n": code.n, "k": code.k, "d_estimate": params.d,
            "method": params.d_method,
            "certified": "yes" if params.certified else "no",
            "best_known": best if best is not None else "-",
            "verdict": verdict,
        })
    rows.sort(key=lambda r: (-(r["d_estimate"]), r["candidate"]))
    _emit(rows, header, args.format)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="toricode",
                     description="toric and generalized toric codes from "
                                 "lattice point configurations")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=5, help="field size (prime power)")
    common.add_argument("--dim", type=int, default=None, help="ambient dimension")
    common.add_argument("--format", choices=["human", "tsv", "kv"], default="human")
    common.add_argument("--budget-messages", type=int, default=10**7,
                        dest="budget_messages")
    common.add_argument("--budget-seconds", type=float, default=None,
                        dest="budget_seconds")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[common], help="polytope report")
    p.add_argument("points", help="point file (hull is taken)")
    p.add_argument("--plot", help="write a figure of the polygon")
    p.set_defaults(func=_cmd_poly)

    p = sub.add_parser("mlength", parents=[common], help="Minkowski length with witness")
    p.add_argument("points")
    p.set_defaults(func=_cmd_mlength)

    p = sub.add_parser("classify", parents=[common],
                       help="census of polygon classes by Minkowski length")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--max-points", type=int, default=None, dest="max_points")
    p.add_argument("--plot", help="write a gallery figure of the classes")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("code", parents=[common], help="code parameters [n,k,d]")
    p.add_argument("--points", required=True)
    p.add_argument("--method", choices=["exhaustive", "isd", "auto"], default="auto")
    p.add_argument("--exact", action="store_true", help="isd: run to certification")
    p.add_argument("--upper-only", action="store_true", dest="upper_only")
    p.add_argument("--max-weight", type=int, default=None, dest="max_weight")
    p.add_argument("--enumerator", action="store_true",
                   help="exhaustive only: report the weight enumerator")
    p.add_argument("--plot", help="write the weight distribution figure")
    p.set_defaults(func=_cmd_code)

    p = sub.add_parser("bound", parents=[common], help="evaluate a distance formula")
    p.add_argument("--formula", required=True,
                   choices=["simplex", "box", "product", "pyramid", "mlength",
                            "inductive", "corollary-last", "nested-fiber"])
    p.add_argument("--points", help="configuration/polytope file")
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--lengths", default="1")
    p.add_argument("--d1", type=int, default=1)
    p.add_argument("--d2", type=int, default=1)
    p.add_argument("--axes", default="0")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("construct", parents=[common],
                       help="emit structured configurations in the point format")
    p.add_argument("--product", nargs=2, metavar=("A", "B"))
    p.add_argument("--pyramid", metavar="P")
    p.add_argument("--dilate", type=int, default=1, dest="dilate_factor")
    p.add_argument("--sind-tower", type=int, default=None, dest="sind_tower")
    p.add_argument("--nested-fiber", dest="nested_fiber", metavar="BASE")
    p.add_argument("--segment", default="0;1", help="a;b endpoints, comma coords")
    p.add_argument("--levels", type=int, default=1)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("search", parents=[common],
                       help="greedy one-point extensions against the snapshot table")
    p.add_argument("--seed", required=True, help="seed configuration file")
    p.add_argument("--table", default=None, help="best-known snapshot (tsv)")
    p.add_argument("--max-weight", type=int, default=None, dest="max_weight")
    p.set_defaults(func=_cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (PointFormatError, FileNotFoundError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
