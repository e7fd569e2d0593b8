"""Independent brute-force constructions used to check the merged bases.

Nothing here goes through ``trispline.continuity``; the constraint systems
are built directly over the coefficients of the block basis.
"""
from __future__ import annotations

from fractions import Fraction

from trispline import geometry
from trispline.linalg import RationalMatrix
from trispline.polynomial import (
    BaryPoly,
    bary_monomials,
    directional_derivative,
    evaluate_cartesian_derivative,
    restrict_to_edge,
)


def _slots(mesh, degree):
    mons = bary_monomials(degree)
    return [(t, m) for t in range(len(mesh)) for m in mons]


def coefficientwise_system(mesh, degree, r, transversals=None):
    """Rows: for each edge, order s <= r and edge monomial, side a minus side b."""
    transversals = transversals or {}
    slots = _slots(mesh, degree)
    rows = []
    for k, e in enumerate(mesh.shared_edges):
        u = geometry.default_transversal_point(mesh, e, transversals.get(k))
        for s in range(r + 1):
            images = {}
            for role, sign in (("a", 1), ("b", -1)):
                tri = e.side(role)[0]
                a = geometry.point_to_affine_coords(mesh.triangle_vertices(tri), u)
                for n, (t, m) in enumerate(slots):
                    if t != tri:
                        continue
                    ep = restrict_to_edge(directional_derivative(BaryPoly.monomial(m), a, s), e, role)
                    for mon, c in ep.coeffs.items():
                        images.setdefault(mon, [Fraction(0)] * len(slots))[n] += sign * c
            rows.extend(images[mon] for mon in sorted(images))
    return RationalMatrix(rows, len(slots))


def cartesian_system(mesh, degree, r):
    """Rows: every Cartesian partial of order <= r, equated at degree+1 edge points."""
    slots = _slots(mesh, degree)
    rows = []
    for e in mesh.shared_edges:
        p0, p1 = mesh.edge_points(e)
        pts = [
            geometry.Point2(p0.x + Fraction(i, degree + 2) * (p1.x - p0.x),
                            p0.y + Fraction(i, degree + 2) * (p1.y - p0.y))
            for i in range(1, degree + 2)
        ]
        for s in range(r + 1):
            for rx in range(s + 1):
                for pt in pts:
                    row = [Fraction(0)] * len(slots)
                    for role, sign in (("a", 1), ("b", -1)):
                        tri = e.side(role)[0]
                        verts = mesh.triangle_vertices(tri)
                        for n, (t, m) in enumerate(slots):
                            if t == tri:
                                row[n] += sign * evaluate_cartesian_derivative(
                                    BaryPoly.monomial(m), verts, pt, (rx, s - rx))
                    rows.append(row)
    return RationalMatrix(rows, len(slots))
