"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or operational error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .continuity import check_continuity, enforce_continuity
from .demo import run_demo
from .errors import ContinuityError, FormatError, PointOutsideMesh, TrisplineError
from .fitting import assemble_design, fit, predict_many
from .geometry import point


class Failure(Exception):
    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"{stage}: {message}")


def _transversal(text: str):
    try:
        edge, _, xy = text.partition("=")
        x, y = xy.split(",")
        return int(edge), point(x, y)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected EDGE=X,Y, got {text!r}") from None


def _emit(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _read_basis(path: str):
    try:
        return io.load_basis(Path(path))
    except (OSError, FormatError) as exc:
        raise Failure("basis parse", str(exc)) from None
    except TrisplineError as exc:
        raise Failure("degeneracy", str(exc)) from None


def cmd_basis(args) -> int:
    if not 0 <= args.smoothness <= args.degree:
        raise Failure("usage", f"need 0 <= smoothness <= degree, got r={args.smoothness}, d={args.degree}")
    try:
        mesh = io.load_mesh(Path(args.mesh))
    except (OSError, FormatError) as exc:
        raise Failure("mesh parse", str(exc)) from None
    except TrisplineError as exc:
        raise Failure("degeneracy", str(exc)) from None
    overrides = dict(args.transversal or [])
    try:
        basis = enforce_continuity(mesh, args.degree, args.smoothness, overrides)
    except ContinuityError as exc:
        raise Failure("continuity post-check", str(exc)) from None
    except (TrisplineError, IndexError) as exc:
        raise Failure("transversal", str(exc)) from None
    _emit(io.dump_basis(basis), args.out)
    log = sys.stderr if args.out in (None, "-") else sys.stdout
    print(f"columns: {' -> '.join(str(c) for c in basis.column_counts())}", file=log)
    print(f"continuity order: {basis.continuity_order}", file=log)
    if not mesh.shared_edges:
        print("no shared edges", file=log)
    for s in basis.steps:
        e = mesh.shared_edges[s.edge]
        print(f"order {s.order} edge {s.edge} (T{e.tri_a}-T{e.tri_b}): "
              f"{s.active} active, rank {s.constraints}, columns {s.columns_before} -> {s.columns_after}",
              file=log)
    return 0


def cmd_check(args) -> int:
    basis = _read_basis(args.basis)
    r = basis.continuity_order if args.smoothness is None else args.smoothness
    if r < 0:
        raise Failure("usage", "basis carries no continuity order; pass --smoothness")
    if args.samples < 2:
        raise Failure("usage", "--samples must be at least 2")
    report = check_continuity(basis, r, samples=args.samples, exact=args.exact, tol=args.tol)
    mode = "exact" if args.exact else f"float, tol {args.tol:g}"
    print(f"continuity C{r} ({mode}), {args.samples} samples per edge")
    print("edge  triangles  max_discrepancy  verdict")
    for c in report.edges:
        e = basis.mesh.shared_edges[c.edge]
        disc = str(c.max_discrepancy) if args.exact else f"{float(c.max_discrepancy):.3g}"
        print(f"{c.edge:<5d} T{e.tri_a}-T{e.tri_b}{'':<5} {disc:<16} {'PASS' if c.passed else 'FAIL'}")
    print("PASS" if report.passed else "FAIL")
    return 0 if report.passed else 1


def _load_points(path, require_z):
    try:
        return io.read_points(Path(path), require_z=require_z)
    except (OSError, FormatError) as exc:
        raise Failure("data parse", str(exc)) from None


def cmd_fit(args) -> int:
    basis = _read_basis(args.basis)
    rows = _load_points(args.data, True)
    try:
        design = assemble_design(basis, [(x, y) for x, y, _ in rows])
    except PointOutsideMesh as exc:
        raise Failure("point location", f"{exc}; data line {exc.record + 2}") from None
    model = fit(design, [z for _, _, z in rows], ridge=args.ridge)
    _emit(io.dump_model(model), args.out)
    log = sys.stderr if args.out in (None, "-") else sys.stdout
    print(f"rows: {design.shape[0]}, columns: {design.shape[1]}, rank: {model.rank}", file=log)
    print(f"residual: {model.residual_norm:.6g}", file=log)
    return 0


def cmd_predict(args) -> int:
    basis = _read_basis(args.basis)
    try:
        model = io.load_model(Path(args.model), basis)
    except (OSError, FormatError) as exc:
        raise Failure("model parse", str(exc)) from None
    rows = _load_points(args.data, False)
    try:
        zhat = predict_many(model, [(x, y) for x, y, _ in rows])
    except PointOutsideMesh as exc:
        raise Failure("point location", f"{exc}; data line {exc.record + 2}") from None
    _emit(io.write_predictions(rows, zhat), args.out)
    return 0


def cmd_demo(args) -> int:
    return 0 if run_demo() else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trispline", description="Explicit C^r spline bases on triangulations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="construct a C^r basis from a mesh file")
    p.add_argument("--mesh", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--smoothness", type=int, required=True)
    p.add_argument("--transversal", type=_transversal, action="append", metavar="EDGE=X,Y",
                   help="transversal point for shared edge EDGE (repeatable)")
    p.add_argument("--out", help="basis file to write (default: stdout)")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("check", help="verify continuity of a basis file")
    p.add_argument("--basis", required=True)
    p.add_argument("--smoothness", type=int, help="order to check (default: the basis's own)")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--tol", type=float, default=1e-9, help="tolerance in float mode")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="exact", action="store_true", default=True)
    mode.add_argument("--float", dest="exact", action="store_false")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fit", help="least-squares fit of x,y,z data")
    p.add_argument("--basis", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--ridge", type=float, default=0.0, metavar="LAMBDA")
    p.add_argument("--out", help="model file to write (default: stdout)")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("predict", help="evaluate a fitted model at x,y points")
    p.add_argument("--basis", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out", help="x,y,zhat output (default: stdout)")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("demo", help="rebuild the unit-square worked example")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
