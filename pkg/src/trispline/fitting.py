"""Least-squares fitting of scattered data with a spline basis."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .continuity import SplineBasis
from .errors import DimensionMismatch, PointOutsideMesh
from .geometry import Point2, point
from .linalg import RationalMatrix, rank


@dataclass(frozen=True)
class Record:
    x: Fraction
    y: Fraction
    z: float


class Dataset(tuple):
    """Sequence of ``Record``; coordinates exact, observations float."""

    def __new__(cls, records=()):
        out = []
        for r in records:
            if not isinstance(r, Record):
                x, y, z = r
                p = point(x, y)
                r = Record(p.x, p.y, float(z))
            out.append(r)
        return super().__new__(cls, out)

    @property
    def points(self) -> list[Point2]:
        return [Point2(r.x, r.y) for r in self]

    @property
    def z(self) -> np.ndarray:
        return np.array([r.z for r in self], dtype=float)


@dataclass(frozen=True)
class DesignMatrix:
    basis: SplineBasis
    matrix: RationalMatrix
    triangles: tuple[int, ...]
    barycentric: tuple[tuple[Fraction, Fraction, Fraction], ...]

    @property
    def shape(self):
        return self.matrix.shape

    def to_numpy(self) -> np.ndarray:
        return self.matrix.to_float()


@dataclass(frozen=True)
class FitModel:
    basis: SplineBasis
    gamma: np.ndarray
    residual_norm: float
    rank: int
    ridge: float = 0.0


def assemble_design(basis: SplineBasis, points: Sequence) -> DesignMatrix:
    """One row per point: every basis column evaluated where the point lies."""
    rows, tris, bs = [], [], []
    for i, p in enumerate(points):
        try:
            tri, b = basis.mesh.locate(p[:2])
        except PointOutsideMesh as exc:
            raise PointOutsideMesh(exc.point, record=i) from None
        rows.append(basis.row(tri, b))
        tris.append(tri)
        bs.append(b)
    return DesignMatrix(basis, RationalMatrix(rows, len(basis)), tuple(tris), tuple(bs))


def fit(design: DesignMatrix, z: Sequence[float], ridge: float = 0.0) -> FitModel:
    """Minimum-norm least-squares coefficients.

    With ``ridge == 0`` the solve uses an SVD truncated at the exact rank of
    the rational design matrix, so rank-deficient systems get the
    pseudo-inverse solution and full-rank ones the usual normal-equations
    answer.  ``ridge > 0`` solves ``(B'B + ridge I) g = B'z`` instead.
    """
    z = np.asarray(z, dtype=float)
    nrows, ncols = design.shape
    if z.shape != (nrows,):
        raise DimensionMismatch(f"{nrows} design rows but {z.size} observations")
    if ridge < 0:
        raise ValueError("ridge must be non-negative")
    b = design.to_numpy()
    k = rank(design.matrix) if nrows else 0
    if ridge > 0:
        gamma = np.linalg.solve(b.T @ b + ridge * np.eye(ncols), b.T @ z)
    elif k == 0:
        gamma = np.zeros(ncols)
    else:
        u, s, vt = np.linalg.svd(b, full_matrices=False)
        gamma = vt[:k].T @ ((u[:, :k].T @ z) / s[:k])
    resid = float(np.linalg.norm(b @ gamma - z)) if nrows else 0.0
    return FitModel(design.basis, gamma, resid, k, float(ridge))


def predict(model: FitModel, p) -> float:
    tri, b = model.basis.mesh.locate(p)
    row = np.array([float(v) for v in model.basis.row(tri, b)])
    return float(row @ model.gamma)


def predict_many(model: FitModel, points: Sequence) -> np.ndarray:
    out = []
    for i, p in enumerate(points):
        try:
            out.append(predict(model, p[:2]))
        except PointOutsideMesh as exc:
            raise PointOutsideMesh(exc.point, record=i) from None
    return np.array(out)
