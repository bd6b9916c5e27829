"""Command line front end: ``rider-types {bounds,census,audit,problem-demo,render}``.

Exit codes: 0 ok, 2 usage, 3 budget exhausted, 4 not found, 5 invariant violated.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import arrangement, bounds, oracle
from .geometry import (
    MoveSet,
    Placement,
    RiderError,
    Signature,
    canonicalize_signature,
    default_moveset,
    parse_moveset,
    signature_of,
)
from .search import BudgetExceededError
from .svg import RenderSpec, render

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_NOT_FOUND, EXIT_VIOLATION = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


def _emit(data, out: str | None) -> None:
    text = data if isinstance(data, str) else json.dumps(data, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _moveset(args, r: int | None) -> MoveSet:
    if getattr(args, "moveset", None):
        moves = parse_moveset(args.moveset)
        if r is not None and moves.r != r:
            raise UsageError(f"--moveset has {moves.r} directions but --r is {r}")
        return moves
    if r is None:
        raise UsageError("give --r or --moveset")
    return default_moveset(r)


def _positive(name: str, value) -> None:
    if value is None or value < 1:
        raise UsageError(f"--{name} must be a positive integer")


# -- bounds ---------------------------------------------------------------------


def cmd_bounds(args) -> int:
    invocation = {"command": "bounds"}
    if args.table:
        try:
            q_max, r_max = (int(v) for v in args.table.lower().split("x"))
        except ValueError:
            raise UsageError("--table expects QxR, e.g. 6x6") from None
        _positive("table rows", q_max)
        _positive("table columns", r_max)
        invocation["table"] = f"{q_max}x{r_max}"
        table = bounds.generate_table(q_max, r_max)
        if args.format == "csv":
            buf = io.StringIO()
            writer = csv.DictWriter(buf, fieldnames=bounds.CSV_FIELDS, lineterminator="\n")
            writer.writeheader()
            writer.writerows(bounds.table_csv_rows(table))
            _emit(buf.getvalue(), args.out)
        else:
            _emit({"invocation": invocation, "note": bounds.UPPER_BOUND_NOTE,
                   "rows": bounds.table_rows(table)}, args.out)
        return EXIT_OK
    _positive("q", args.q)
    _positive("r", args.r)
    invocation.update(q=args.q, r=args.r)
    data = {"invocation": invocation, **bounds.bounds_report(args.q, args.r).to_json()}
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=bounds.CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(bounds.table_csv_rows([[bounds.bounds_report(args.q, args.r)]]))
        _emit(buf.getvalue(), args.out)
    else:
        _emit(data, args.out)
    return EXIT_OK


# -- census ---------------------------------------------------------------------


def cmd_census(args) -> int:
    _positive("q", args.q)
    moves = _moveset(args, args.r)
    invocation = {"command": "census", "q": args.q, "r": moves.r, "moveset": moves.to_text(),
                  "budget": args.budget}
    try:
        result = oracle.census(args.q, moves, budget=args.budget, workers=args.workers,
                               keep_signatures=bool(args.emit_signatures), stretch=args.stretch)
    except BudgetExceededError as exc:
        _emit({"invocation": invocation, "valid": False, "error": str(exc),
               "partial_chamber_count": exc.partial_count}, args.out)
        return EXIT_BUDGET
    data = {"invocation": invocation, **result.to_json()}
    if not args.timing:
        data.pop("runtime")
    _emit(data, args.out)
    if args.emit_signatures:
        Path(args.emit_signatures).write_text("".join(f"{s}\n" for s in result.signatures))
    if not (data["sandwich_ok"] and result.divisible and not result.freeness_violations):
        print("invariant violated: sandwich, divisibility or freeness", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


# -- audit ----------------------------------------------------------------------


def cmd_audit(args) -> int:
    _positive("q", args.q)
    moves = _moveset(args, args.r)
    _positive("trials", args.trials)
    invocation = {"command": "audit", "lemma": args.lemma, "q": args.q, "r": moves.r,
                  "moveset": moves.to_text(), "trials": args.trials, "seed": args.seed}
    if args.lemma == 2:
        report = arrangement.lemma2_audit(args.q, moves.r, moves, args.trials, args.seed)
        _emit({"invocation": invocation, **report.to_json()}, args.out)
        ok = report.generic_ok and report.forced_ok
    else:
        report = arrangement.lemma1_audit(args.q, moves, args.trials, args.seed)
        _emit({"invocation": invocation, **report}, args.out)
        ok = report["collisions"] == 0
    return EXIT_OK if ok else EXIT_VIOLATION


# -- problem demo ---------------------------------------------------------------


def _shade_points(placement: Placement, moves: MoveSet, wanted) -> list:
    lines = arrangement.build_lines(placement, moves)
    return [
        c.point for c in arrangement.enumerate_cells(lines)
        if arrangement.extension_of_signs(lines, c.cell_signs) in wanted
    ]


def _ext_text(sig: Signature, ext) -> str:
    return "(" + ",".join(map(str, sig.entries + tuple(ext))) + ")"


def cmd_problem_demo(args) -> int:
    moves = _moveset(args, args.r)
    if moves.r < 3:
        raise UsageError("problem spaces need r >= 3 (three-line concurrences)")
    try:
        sig = Signature.parse(args.type, moves.r)
    except (RiderError, ValueError) as exc:
        raise UsageError(f"bad --type: {exc}") from None
    _positive("samples", args.samples)
    invocation = {"command": "problem-demo", "type": str(sig), "r": moves.r,
                  "moveset": moves.to_text(), "samples": args.samples, "seed": args.seed}
    try:
        pair = arrangement.find_problem_pair(sig, moves, args.samples, args.seed)
    except oracle.InfeasibleError as exc:
        raise UsageError(str(exc)) from None
    if pair is None:
        _emit({"invocation": invocation, "found": False}, args.out)
        return EXIT_NOT_FOUND
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    svgs = []
    for tag, placement, only in (("a", pair.first, pair.only_first), ("b", pair.second, pair.only_second)):
        path = outdir / f"{args.prefix}_{tag}.svg"
        spec = RenderSpec(placement, moves, label_pieces=(), region_labels=False,
                          shade_points=_shade_points(placement, moves, set(only)),
                          title=f"recording {sig}")
        path.write_text(render(spec))
        svgs.append(str(path))
    data = {
        "invocation": invocation,
        "found": True,
        "canonical_type": str(canonicalize_signature(sig)),
        "placements": [pair.first.to_json(), pair.second.to_json()],
        "signatures": [str(signature_of(pair.first, moves)), str(signature_of(pair.second, moves))],
        "profiles": [
            [_ext_text(sig, e) for e in pair.first_profile.sorted_extensions()],
            [_ext_text(sig, e) for e in pair.second_profile.sorted_extensions()],
        ],
        "only_first": [_ext_text(sig, e) for e in pair.only_first],
        "only_second": [_ext_text(sig, e) for e in pair.only_second],
        "svgs": svgs,
    }
    _emit(data, args.out)
    return EXIT_OK


# -- render ---------------------------------------------------------------------


def _parse_point(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"cannot parse point {text!r}; expected x,y")
    return (Fraction(parts[0]), Fraction(parts[1]))


def cmd_render(args) -> int:
    moves = _moveset(args, None)
    try:
        data = json.loads(Path(args.placement).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read placement file: {exc}") from None
    if not data:
        raise UsageError("placement file holds no riders")
    placement = Placement.from_json(data)
    placement.check(moves)
    labels = tuple(int(v) for v in args.label_pieces.split(",") if v) if args.label_pieces else (1,)
    spec = RenderSpec(
        placement, moves, size=args.size, margin=args.margin,
        region_labels=not args.no_region_labels, label_pieces=labels,
        roman_labels=args.roman, piece_labels=not args.no_piece_labels,
        shade_points=[_parse_point(s) for s in args.shade or ()],
    )
    Path(args.out).write_text(render(spec))
    return EXIT_OK


# -- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rider-types", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="closed-form bounds for one (q, r) or a whole table")
    p.add_argument("--q", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--table", help="QxR grid, e.g. 6x6")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("census", help="exact chamber and type counts")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--moveset", help='e.g. "0,1;1,1;1,0;1,-1", or queen / rook')
    p.add_argument("--budget", type=int, help="maximum search nodes")
    p.add_argument("--emit-signatures", metavar="PATH")
    p.add_argument("--workers", type=int, default=oracle.default_workers())
    p.add_argument("--stretch", action="store_true", help="allow q = 5")
    p.add_argument("--timing", action="store_true", help="include the runtime field")
    p.add_argument("--out")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("audit", help="1: distinct recordings per type; 2: generic space counts")
    p.add_argument("--lemma", type=int, choices=(1, 2), required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--moveset")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("problem-demo", help="two placements of one type with different extensions")
    p.add_argument("--type", required=True, help='recording such as "(1,6,5)"')
    p.add_argument("--r", type=int)
    p.add_argument("--moveset")
    p.add_argument("--samples", type=int, default=8, help="samples per refined cell")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--prefix", default="problem")
    p.add_argument("--out")
    p.set_defaults(func=cmd_problem_demo)

    p = sub.add_parser("render", help="draw a placement as SVG")
    p.add_argument("--placement", required=True, help='JSON list such as [["0","0"],["3/2","7"]]')
    p.add_argument("--moveset", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--size", type=int, default=600)
    p.add_argument("--margin", type=float, default=0.25)
    p.add_argument("--label-pieces", default="1", help="comma list of riders whose regions are labelled")
    p.add_argument("--no-region-labels", action="store_true")
    p.add_argument("--no-piece-labels", action="store_true")
    p.add_argument("--roman", action="store_true")
    p.add_argument("--shade", action="append", help="x,y point inside a cell to shade (repeatable)")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RiderError as exc:
        # bad movesets, attacking placements, q over the tractable limit
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
