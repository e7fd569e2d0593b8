"""Worked example: a quadratic C^1 spline on the unit square split along y = x.

Everything here is embedded, including the expected barycentric table,
design matrix and basis, so ``trispline demo`` needs no input files.
"""
from __future__ import annotations

from decimal import Decimal
from fractions import Fraction as F

from .continuity import check_continuity, enforce_continuity
from .fitting import Dataset, assemble_design, fit, predict
from .geometry import Triangulation
from .polynomial import BaryPoly

SQUARE_VERTICES = [("0", "0"), ("1", "0"), ("1", "1"), ("0", "1")]
SQUARE_TRIANGLES = [(0, 1, 2), (0, 2, 3)]

SAMPLE_DATA = [
    ("0.2", "0.1", 1.0),
    ("0.2", "0.7", 3.0),
    ("0.1", "0.3", 2.0),
    ("0.5", "0.1", 1.0),
    ("0.7", "0.8", 4.0),
]

EXPECTED_LOCATIONS = [
    (0, ("0.8", "0.1", "0.1")),
    (1, ("0.3", "0.2", "0.5")),
    (1, ("0.7", "0.1", "0.2")),
    (0, ("0.5", "0.4", "0.1")),
    (1, ("0.2", "0.7", "0.1")),
]

EXPECTED_DESIGN = [
    ["0.08", "0.01", "0.01", "0.08", "0.64", "0.01", "0"],
    ["-0.15", "-0.10", "0.24", "0.31", "0.39", "0", "0.25"],
    ["-0.14", "-0.02", "0.05", "0.23", "0.77", "0", "0.04"],
    ["0.20", "0.04", "0.01", "0.05", "0.25", "0.16", "0"],
    ["-0.02", "-0.07", "0.63", "0.23", "0.08", "0", "0.01"],
]

# (first triangle, second triangle) per column
EXPECTED_C1_BASIS = [
    ("1 b1 b2", "-1 b1 b3"),
    ("1 b2 b3", "-1 b2 b3"),
    ("1 b3^2", "1 b2^2 + 2 b2 b3"),
    ("1 b1 b3", "1 b1 b2 + 1 b1 b3 + 1 b2 b3"),
    ("1 b1^2", "1 b1^2 + 2 b1 b3"),
    ("1 b2^2", "0"),
    ("0", "1 b3^2"),
]

EXPECTED_C0_BASIS = [
    ("1 b3^2", "1 b2^2"),
    ("1 b1 b3", "1 b1 b2"),
    ("1 b1^2", "1 b1^2"),
    ("1 b2 b3", "0"),
    ("1 b1 b2", "0"),
    ("1 b2^2", "0"),
    ("0", "1 b3^2"),
    ("0", "1 b1 b3"),
    ("0", "1 b2 b3"),
]


def square_mesh() -> Triangulation:
    return Triangulation(SQUARE_VERTICES, SQUARE_TRIANGLES)


def sample_dataset() -> Dataset:
    return Dataset(SAMPLE_DATA)


def expected_basis(rows, degree: int = 2):
    return [tuple(BaryPoly.parse(s, degree) for s in col) for col in rows]


def _dec(value: F, places: int | None = None) -> str:
    if value == 0:
        return "0"
    d = Decimal(value.numerator) / Decimal(value.denominator)
    if places is not None:
        return f"{d:.{places}f}"
    return format(d.normalize(), "f")


def run_demo(echo=print) -> bool:
    """Rebuild the example, print each stage, return True iff every check holds."""
    failures = []

    def check(ok: bool, what: str):
        if not ok:
            failures.append(what)

    mesh = square_mesh()
    data = sample_dataset()
    for k, t in enumerate(mesh.triangles):
        pts = " ".join(f"({_dec(mesh.vertices[i].x)}, {_dec(mesh.vertices[i].y)})" for i in t)
        echo(f"T{k + 1}: {pts}")

    basis = enforce_continuity(mesh, 2, 1)
    counts = " -> ".join(str(c) for c in basis.column_counts())
    echo(f"basis: degree 2, C1, columns: {counts}")
    got = [tuple(col.polys) for col in basis.columns]
    check(got == expected_basis(EXPECTED_C1_BASIS), "C1 basis differs from the reference basis")
    for k, col in enumerate(basis.columns, start=1):
        echo(f"  column {k}: " + " | ".join(str(p) for p in col.polys))

    echo("barycentric coordinates:")
    for rec, (tri_want, b_want) in zip(data, EXPECTED_LOCATIONS):
        tri, b = mesh.locate((rec.x, rec.y))
        echo(f"  ({_dec(rec.x)}, {_dec(rec.y)}) in T{tri + 1} -> ({', '.join(_dec(v) for v in b)})")
        check(tri == tri_want and b == tuple(F(v) for v in b_want),
              f"barycentric coordinates of ({rec.x}, {rec.y})")

    design = assemble_design(basis, data.points)
    echo("design matrix:")
    for row, want in zip(design.matrix.rows, EXPECTED_DESIGN):
        echo("  " + " ".join(_dec(v, 2) for v in row))
        check(list(row) == [F(w) for w in want], f"design row {want}")

    model = fit(design, data.z)
    echo("gamma: " + " ".join(f"{g:.10g}" for g in model.gamma))
    echo(f"residual: {model.residual_norm:.3g}, rank {model.rank}")
    check(model.residual_norm <= 1e-8, "fit residual")
    check(model.rank == 5, "design rank")
    for rec in data:
        zhat = predict(model, (rec.x, rec.y))
        check(abs(zhat - rec.z) <= 1e-6, f"prediction at ({rec.x}, {rec.y})")

    report = check_continuity(basis, 1, samples=10, exact=True)
    echo(f"continuity C1: {'PASS' if report.passed else 'FAIL'} (exact)")
    check(report.passed, "C1 continuity")

    if failures:
        for f in failures:
            echo(f"MISMATCH: {f}")
        return False
    echo("all embedded checks passed")
    return True
