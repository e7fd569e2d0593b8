"""Construction of C^r spline bases over a triangulation.

The construction starts from the block basis (every degree-``d`` monomial
on every triangle, zero elsewhere) and, for each derivative order
``r = 0 .. r_target`` and each shared edge in turn:

1. restricts the order-``r`` transversal derivative of every basis column to
   the edge, on both sides (the constraint matrix);
2. sets aside columns whose restrictions vanish on both sides;
3. expands the remaining entries into monomial coefficients, appends an
   identity and row reduces; the right block is the transpose of a change of
   basis ``P`` that brings the constraint matrix to a one-monomial-per-column
   form;
4. applies ``P`` to the active columns and merges columns whose restricted
   derivatives share a monomial on opposite sides, dropping columns whose
   monomial appears on one side only.

The transversal direction is a point ``u`` off the edge, handed to each side
in that side's affine coordinates.  With that convention the order-``r``
operator on a homogeneous polynomial mixes in lower-order terms, but those
already agree across the edge once orders below ``r`` are enforced.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import geometry
from .errors import ContinuityError
from .geometry import SharedEdge, Triangulation
from .linalg import RationalMatrix, nullspace, rref
from .polynomial import BaryPoly, EdgePoly, bary_monomials, directional_derivative, restrict_to_edge

log = logging.getLogger(__name__)

SIDES = ("a", "b")


@dataclass(frozen=True)
class BasisColumn:
    """One basis function: a polynomial per triangle (zero where unsupported)."""

    polys: tuple[BaryPoly, ...]

    def __getitem__(self, tri: int) -> BaryPoly:
        return self.polys[tri]

    def __len__(self):
        return len(self.polys)

    @staticmethod
    def combine(columns: Sequence["BasisColumn"], weights: Sequence, degree: int) -> "BasisColumn":
        ntri = len(columns[0])
        out = []
        for t in range(ntri):
            acc: dict = {}
            for col, w in zip(columns, weights):
                if not w:
                    continue
                for e, c in col.polys[t].coeffs.items():
                    acc[e] = acc.get(e, 0) + w * c
            out.append(BaryPoly(degree, acc))
        return BasisColumn(tuple(out))

    def coefficient_vector(self, degree: int) -> list[Fraction]:
        mons = bary_monomials(degree)
        return [p.coeff(m) for p in self.polys for m in mons]


@dataclass(frozen=True)
class EdgeStep:
    """Bookkeeping for one (order, edge) enforcement step."""

    order: int
    edge: int
    active: int
    constraints: int
    columns_before: int
    columns_after: int


@dataclass(frozen=True)
class SplineBasis:
    mesh: Triangulation
    degree: int
    columns: tuple[BasisColumn, ...]
    continuity_order: int = -1
    steps: tuple[EdgeStep, ...] = field(default=(), compare=False)

    def __len__(self):
        return len(self.columns)

    def column_counts(self) -> list[int]:
        """Column count before any merging and after each enforced order."""
        if not self.steps:
            return [len(self.columns)] * (self.continuity_order + 2)
        counts = [self.steps[0].columns_before]
        for r in range(self.continuity_order + 1):
            counts.append([s for s in self.steps if s.order == r][-1].columns_after)
        return counts

    def row(self, tri: int, b) -> list[Fraction]:
        """Every basis function evaluated at barycentric ``b`` of triangle ``tri``."""
        b = tuple(b)
        return [col.polys[tri](b) for col in self.columns]

    def coefficient_matrix(self) -> RationalMatrix:
        """One row per column: its coefficients over all (triangle, monomial) slots."""
        width = len(self.mesh) * len(bary_monomials(self.degree))
        return RationalMatrix([c.coefficient_vector(self.degree) for c in self.columns], width)


@dataclass(frozen=True)
class ConstraintMatrix:
    """Edge-restricted order-``r`` derivatives of each column, side a and side b."""

    edge: SharedEdge
    order: int
    degree: int
    rows: tuple[tuple[EdgePoly, ...], tuple[EdgePoly, ...]]

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def entry(self, side: int, j: int) -> EdgePoly:
        return self.rows[side][j]

    def select(self, indices: Sequence[int]) -> "ConstraintMatrix":
        return ConstraintMatrix(
            self.edge, self.order, self.degree,
            (tuple(self.rows[0][j] for j in indices), tuple(self.rows[1][j] for j in indices)),
        )

    def expand(self) -> RationalMatrix:
        """Transposed coefficient form: one row per column, side-a block then side-b block."""
        mons = EdgePoly.monomials(self.degree)
        rows = []
        for j in range(self.ncols):
            rows.append(
                [self.rows[0][j].coeff(m) for m in mons] + [self.rows[1][j].coeff(m) for m in mons]
            )
        return RationalMatrix(rows, 2 * len(mons))

    def times(self, p: RationalMatrix) -> "ConstraintMatrix":
        out = []
        for side in (0, 1):
            row = []
            for k in range(p.shape[1]):
                acc: dict = {}
                for i in range(p.shape[0]):
                    w = p[i, k]
                    if w:
                        for e, c in self.rows[side][i].coeffs.items():
                            acc[e] = acc.get(e, 0) + w * c
                row.append(EdgePoly(self.degree, acc))
            out.append(tuple(row))
        return ConstraintMatrix(self.edge, self.order, self.degree, (out[0], out[1]))

    def __str__(self):
        return "\n".join(" | ".join(str(p) for p in row) for row in self.rows)


def initial_basis(mesh: Triangulation, degree: int) -> SplineBasis:
    if degree < 1:
        raise ValueError("degree must be at least 1")
    ntri = len(mesh)
    zero = BaryPoly.zero(degree)
    cols = []
    for t in range(ntri):
        for m in bary_monomials(degree):
            polys = [zero] * ntri
            polys[t] = BaryPoly.monomial(m)
            cols.append(BasisColumn(tuple(polys)))
    return SplineBasis(mesh, degree, tuple(cols), -1)


def constraint_matrix(basis: SplineBasis, edge: SharedEdge, r: int, u=None) -> ConstraintMatrix:
    """Edge restrictions of the order-``r`` derivative toward ``u`` of every column.

    ``u`` defaults to ``tri_a``'s off-edge vertex and is irrelevant for
    ``r == 0``.
    """
    mesh = basis.mesh
    u = geometry.default_transversal_point(mesh, edge, u)
    edge_degree = max(basis.degree - r, 0)
    rows = []
    for role in SIDES:
        tri = edge.side(role)[0]
        a = geometry.point_to_affine_coords(mesh.triangle_vertices(tri), u)
        row = []
        for col in basis.columns:
            if r > basis.degree:
                row.append(EdgePoly.zero(0))
                continue
            row.append(restrict_to_edge(directional_derivative(col[tri], a, r), edge, role))
        rows.append(tuple(row))
    return ConstraintMatrix(edge, r, edge_degree, (rows[0], rows[1]))


def split_columns(q: ConstraintMatrix) -> tuple[list[int], list[int]]:
    """Indices of columns taking part in the constraint, and of those that do not."""
    active, inactive = [], []
    for j in range(q.ncols):
        if q.rows[0][j].is_zero() and q.rows[1][j].is_zero():
            inactive.append(j)
        else:
            active.append(j)
    return active, inactive


def _unit_slot(q: ConstraintMatrix, j: int):
    """``(side, monomial)`` if column ``j`` is one unit monomial on one side, else None."""
    nonzero = [s for s in (0, 1) if not q.rows[s][j].is_zero()]
    if len(nonzero) != 1:
        return None
    (mon, c), *rest = q.rows[nonzero[0]][j].coeffs.items()
    if rest or c != 1:
        return None
    return nonzero[0], mon


def is_canonical(q: ConstraintMatrix) -> bool:
    """True if every nonzero column is a single unit monomial in a single row,
    no two nonzero columns share a slot, and zero columns come last."""
    seen = set()
    zeros_started = False
    for j in range(q.ncols):
        if q.rows[0][j].is_zero() and q.rows[1][j].is_zero():
            zeros_started = True
            continue
        if zeros_started:
            return False
        slot = _unit_slot(q, j)
        if slot is None or slot in seen:
            return False
        seen.add(slot)
    return True


def build_change_of_basis(q_active: ConstraintMatrix) -> RationalMatrix:
    """Invertible ``P`` such that ``q_active . P`` is (as far as possible) canonical.

    ``P`` is a general change of basis, not only a permutation.
    Already-canonical input (always the case at order 0 on a block basis)
    gets the identity.
    """
    m = q_active.ncols
    if m == 0:
        raise ValueError("no active columns")
    if is_canonical(q_active):
        return RationalMatrix.identity(m)
    expanded = q_active.expand()
    width = expanded.shape[1]
    reduced, _ = rref(expanded.hstack(RationalMatrix.identity(m)))
    p_transposed = reduced.submatrix(cols=range(width, width + m))
    return p_transposed.T


def apply_change_of_basis(columns: Sequence[BasisColumn], p: RationalMatrix, degree: int) -> list[BasisColumn]:
    return [BasisColumn.combine(columns, p.column(k), degree) for k in range(p.shape[1])]


def merge_columns(columns: Sequence[BasisColumn], qp: ConstraintMatrix, degree: int) -> list[BasisColumn]:
    """Columns spanning the subspace on which both sides' restrictions agree.

    For canonical ``qp`` this pairs each side-a column with the side-b column
    carrying the same monomial and replaces them by their sum, deletes
    columns whose monomial has no partner, and passes zero columns through.
    It is computed as the kernel of the coefficient-wise difference of the two
    rows, which also covers non-canonical forms (e.g. a fan closing around an
    interior vertex, where part of the constraint already holds).  Output
    columns are ordered by their earliest contributing input column.
    """
    mons = EdgePoly.monomials(qp.degree)
    diffs = [
        [qp.rows[0][k].coeff(mu) - qp.rows[1][k].coeff(mu) for mu in mons]
        for k in range(qp.ncols)
    ]
    d = RationalMatrix.from_columns(diffs, len(mons))
    kernel = nullspace(d)
    kernel.sort(key=lambda v: next(i for i, x in enumerate(v) if x))
    return [BasisColumn.combine(columns, v, degree) for v in kernel]


def enforce_edge(basis: SplineBasis, edge_index: int, r: int, u=None) -> tuple[SplineBasis, EdgeStep]:
    """One constraint / change-of-basis / merge step on a single edge."""
    edge = basis.mesh.shared_edges[edge_index]
    q = constraint_matrix(basis, edge, r, u)
    active, inactive = split_columns(q)
    before = len(basis.columns)
    if not active:
        step = EdgeStep(r, edge_index, 0, 0, before, before)
        return basis, step
    q_active = q.select(active)
    p = build_change_of_basis(q_active)
    moved = apply_change_of_basis([basis.columns[j] for j in active], p, basis.degree)
    merged = merge_columns(moved, q_active.times(p), basis.degree)
    columns = tuple(merged) + tuple(basis.columns[j] for j in inactive)
    step = EdgeStep(r, edge_index, len(active), len(active) - len(merged), before, len(columns))
    log.debug("order %d edge %d: %d active, %d constraints, %d -> %d columns",
              r, edge_index, step.active, step.constraints, before, len(columns))
    out = SplineBasis(basis.mesh, basis.degree, columns, basis.continuity_order, basis.steps + (step,))
    return out, step


def enforce_continuity(
    mesh: Triangulation,
    degree: int,
    r_target: int,
    transversals: Mapping[int, object] | None = None,
    verify: bool = True,
) -> SplineBasis:
    """C^``r_target`` basis of degree ``degree`` on ``mesh``.

    ``transversals`` maps edge indices (in ``mesh.shared_edges`` order) to
    override points for the transversal direction.  The result is checked
    exactly along every shared edge; a failure raises ``ContinuityError``.
    """
    if not 0 <= r_target <= degree:
        raise ValueError(f"need 0 <= r <= d, got r={r_target}, d={degree}")
    transversals = dict(transversals or {})
    for k in transversals:
        if not 0 <= k < len(mesh.shared_edges):
            raise IndexError(f"no shared edge {k}")
    basis = initial_basis(mesh, degree)
    for r in range(r_target + 1):
        for k in range(len(mesh.shared_edges)):
            basis, _ = enforce_edge(basis, k, r, transversals.get(k))
        basis = SplineBasis(mesh, degree, basis.columns, r, basis.steps)
    if verify:
        # Agreement at degree + 1 distinct edge points is an exact proof.
        report = check_continuity(basis, r_target, samples=max(degree + 1, 2))
        if not report.passed:
            raise ContinuityError(f"post-construction check failed: {report}")
    return basis


@dataclass(frozen=True)
class EdgeCheck:
    edge: int
    max_discrepancy: object
    passed: bool


@dataclass(frozen=True)
class ContinuityReport:
    order: int
    exact: bool
    edges: tuple[EdgeCheck, ...]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.edges)

    @property
    def max_discrepancy(self):
        return max((e.max_discrepancy for e in self.edges), default=0)


def _cartesian_derivatives(p: BaryPoly, gx, gy, r: int) -> dict[tuple[int, int], BaryPoly]:
    out = {(0, 0): p}
    for total in range(1, r + 1):
        for rx in range(total + 1):
            ry = total - rx
            if rx:
                out[(rx, ry)] = directional_derivative(out[(rx - 1, ry)], gx, 1)
            else:
                out[(rx, ry)] = directional_derivative(out[(rx, ry - 1)], gy, 1)
    return out


def check_continuity(
    basis: SplineBasis, r: int, samples: int = 10, exact: bool = True, tol: float = 1e-9
) -> ContinuityReport:
    """Compare all Cartesian partials of order <= ``r`` across every shared edge.

    Partials of each column are taken on both sides by the exact chain rule
    and compared at ``samples`` interior edge points with parameters
    ``k / (samples + 1)``.
    """
    if samples < 2:
        raise ValueError("samples must be at least 2")
    mesh = basis.mesh
    checks = []
    for k, edge in enumerate(mesh.shared_edges):
        p0, p1 = mesh.edge_points(edge)
        pts = []
        for s in range(1, samples + 1):
            t = Fraction(s, samples + 1)
            pts.append(geometry.Point2((1 - t) * p0.x + t * p1.x, (1 - t) * p0.y + t * p1.y))
        frames = []
        for role in SIDES:
            tri = edge.side(role)[0]
            verts = mesh.triangle_vertices(tri)
            gx, gy = geometry.barycentric_gradients(verts)
            bs = [geometry.cartesian_to_barycentric(verts, p) for p in pts]
            if not exact:
                bs = [tuple(float(x) for x in b) for b in bs]
            frames.append((tri, gx, gy, bs))
        worst = Fraction(0) if exact else 0.0
        for col in basis.columns:
            derivs = [_cartesian_derivatives(col[tri], gx, gy, r) for tri, gx, gy, _ in frames]
            for order in derivs[0]:
                pa, pb = derivs[0][order], derivs[1][order]
                for ba, bb in zip(frames[0][3], frames[1][3]):
                    gap = abs(pa(ba) - pb(bb))
                    if gap > worst:
                        worst = gap
        passed = worst == 0 if exact else float(worst) <= tol
        checks.append(EdgeCheck(k, worst, passed))
    return ContinuityReport(r, exact, tuple(checks))
