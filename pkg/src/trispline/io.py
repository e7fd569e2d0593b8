"""Mesh, basis, model and data files.

Mesh, basis and model files are JSON documents with a mandatory
``format_version``.  Rationals are written as strings (``"1/3"``, ``"0.1"``
and plain numbers are all accepted on input and parsed exactly).  Data files
are CSV with a header ``x,y,z`` (``z`` may be absent for prediction input).
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .continuity import BasisColumn, SplineBasis
from .errors import FormatError
from .fitting import FitModel
from .geometry import Triangulation, as_rational
from .polynomial import BaryPoly

FORMAT_VERSION = 1


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _digest(doc) -> str:
    return hashlib.sha256(json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def _load(path_or_text, kind: str) -> dict:
    text = Path(path_or_text).read_text() if isinstance(path_or_text, Path) else path_or_text
    try:
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{kind} file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError(f"{kind} file must hold a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise FormatError(f"{kind} file: unsupported format_version {doc.get('format_version')!r}")
    return doc


def mesh_to_dict(mesh: Triangulation) -> dict:
    return {
        "vertices": [[str(v.x), str(v.y)] for v in mesh.vertices],
        "triangles": [list(t) for t in mesh.triangles],
    }


def mesh_hash(mesh: Triangulation) -> str:
    return _digest(mesh_to_dict(mesh))


def dump_mesh(mesh: Triangulation) -> str:
    return _dumps({"format_version": FORMAT_VERSION, **mesh_to_dict(mesh)})


def _mesh_from_doc(doc: dict) -> Triangulation:
    try:
        verts = doc["vertices"]
        tris = doc["triangles"]
        verts = [(as_rational(x), as_rational(y)) for x, y in verts]
        tris = [tuple(int(i) for i in t) for t in tris]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad mesh document: {exc!r}") from None
    return Triangulation(verts, tris)


def load_mesh(path_or_text) -> Triangulation:
    """Parse a mesh file.  Geometry errors (degeneracy, overlap) propagate."""
    return _mesh_from_doc(_load(path_or_text, "mesh"))


def basis_to_dict(basis: SplineBasis) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "mesh_hash": mesh_hash(basis.mesh),
        "mesh": mesh_to_dict(basis.mesh),
        "degree": basis.degree,
        "continuity_order": basis.continuity_order,
        "column_counts": basis.column_counts(),
        "columns": [[str(p) for p in col.polys] for col in basis.columns],
    }


def dump_basis(basis: SplineBasis) -> str:
    return _dumps(basis_to_dict(basis))


def basis_hash(basis: SplineBasis) -> str:
    return _digest(basis_to_dict(basis))


def load_basis(path_or_text) -> SplineBasis:
    doc = _load(path_or_text, "basis")
    try:
        mesh = _mesh_from_doc(doc["mesh"])
        degree = int(doc["degree"])
        order = int(doc["continuity_order"])
        raw = doc["columns"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad basis document: {exc!r}") from None
    if mesh_hash(mesh) != doc.get("mesh_hash"):
        raise FormatError("basis file: mesh_hash does not match the embedded mesh")
    columns = []
    for k, col in enumerate(raw):
        if len(col) != len(mesh):
            raise FormatError(f"basis column {k} has {len(col)} entries for {len(mesh)} triangles")
        columns.append(BasisColumn(tuple(BaryPoly.parse(s, degree) for s in col)))
    return SplineBasis(mesh, degree, tuple(columns), order)


def dump_model(model: FitModel) -> str:
    doc = {
        "format_version": FORMAT_VERSION,
        "basis_hash": basis_hash(model.basis),
        "gamma": [format(float(g), ".17g") for g in model.gamma],
        "rank": model.rank,
        "residual_norm": format(model.residual_norm, ".17g"),
        "ridge": format(model.ridge, ".17g"),
    }
    return _dumps(doc)


def load_model(path_or_text, basis: SplineBasis) -> FitModel:
    doc = _load(path_or_text, "model")
    if doc.get("basis_hash") != basis_hash(basis):
        raise FormatError("model was fitted with a different basis")
    try:
        gamma = np.array([float(g) for g in doc["gamma"]])
        model = FitModel(basis, gamma, float(doc["residual_norm"]), int(doc["rank"]), float(doc["ridge"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad model document: {exc!r}") from None
    if gamma.shape != (len(basis),):
        raise FormatError(f"model has {gamma.size} coefficients for {len(basis)} basis columns")
    return model


def read_points(path_or_text, require_z: bool = True) -> list[tuple[str, str, float | None]]:
    """Rows of a data CSV as ``(x_text, y_text, z)``; coordinates kept verbatim."""
    text = Path(path_or_text).read_text() if isinstance(path_or_text, Path) else path_or_text
    reader = csv.DictReader(io.StringIO(text))
    fields = [f.strip() for f in (reader.fieldnames or [])]
    if fields[:2] != ["x", "y"] or (require_z and fields[2:3] != ["z"]):
        raise FormatError(f"data header must be 'x,y{',z' if require_z else ''}', got {','.join(fields)!r}")
    rows = []
    for n, rec in enumerate(reader, start=1):
        rec = {k.strip(): (v or "").strip() for k, v in rec.items() if k is not None}
        try:
            as_rational(rec["x"]), as_rational(rec["y"])
            z = float(rec["z"]) if rec.get("z") else None
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"data line {n + 1}: cannot parse {rec}") from None
        if require_z and z is None:
            raise FormatError(f"data line {n + 1}: missing z")
        rows.append((rec["x"], rec["y"], z))
    return rows


def write_predictions(rows, zhat) -> str:
    out = ["x,y,zhat"]
    out += [f"{x},{y},{format(float(v), '.17g')}" for (x, y, _), v in zip(rows, zhat)]
    return "\n".join(out) + "\n"
