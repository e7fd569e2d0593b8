"""Planar triangulations in exact rational coordinates.

Barycentric coordinates of a point ``p`` with respect to a triangle
``(v1, v2, v3)`` are the triple ``(b1, b2, b3)`` with ``b1 + b2 + b3 = 1``
and ``p = b1*v1 + b2*v2 + b3*v3``.  The local vertex order of a triangle
fixes which coordinate is which.

Local indices are zero-based throughout (``0, 1, 2`` for ``b1, b2, b3``).
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Sequence

from .errors import (
    DegenerateTriangle,
    DuplicateTriangle,
    OverlappingTriangles,
    PointOutsideMesh,
    TransversalOnEdge,
)


def as_rational(value) -> Fraction:
    """Convert ``value`` to an exact rational.

    Strings are parsed exactly (``"0.1"`` -> 1/10, ``"1/3"`` -> 1/3).  Floats
    go through their shortest repr, so ``0.1`` also becomes 1/10.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"non-finite coordinate {value!r}")
        return Fraction(repr(value))
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


class Point2(NamedTuple):
    x: Fraction
    y: Fraction


def point(x, y) -> Point2:
    return Point2(as_rational(x), as_rational(y))


def _cross(o: Point2, a: Point2, b: Point2) -> Fraction:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def _as_points(verts) -> tuple[Point2, ...]:
    return tuple(v if isinstance(v, Point2) else point(*v) for v in verts)


def signed_area2(verts: Sequence[Point2]) -> Fraction:
    """Twice the signed area of a triangle (positive if counter-clockwise)."""
    return _cross(verts[0], verts[1], verts[2])


def cartesian_to_barycentric(verts: Sequence[Point2], p) -> tuple[Fraction, Fraction, Fraction]:
    """Barycentric coordinates of ``p`` in the triangle ``verts``.

    Solves the 2x2 system with columns ``v1 - v3`` and ``v2 - v3`` for
    ``(b1, b2)`` and sets ``b3 = 1 - b1 - b2``.
    """
    v1, v2, v3 = verts = _as_points(verts)
    px, py = as_rational(p[0]), as_rational(p[1])
    a11, a12 = v1.x - v3.x, v2.x - v3.x
    a21, a22 = v1.y - v3.y, v2.y - v3.y
    det = a11 * a22 - a12 * a21
    if det == 0:
        raise DegenerateTriangle(f"triangle {tuple(verts)} has zero area")
    rx, ry = px - v3.x, py - v3.y
    b1 = (a22 * rx - a12 * ry) / det
    b2 = (-a21 * rx + a11 * ry) / det
    return (b1, b2, 1 - b1 - b2)


def barycentric_to_cartesian(verts: Sequence[Point2], b) -> Point2:
    verts = _as_points(verts)
    x = sum((bi * v.x for bi, v in zip(b, verts)), Fraction(0))
    y = sum((bi * v.y for bi, v in zip(b, verts)), Fraction(0))
    return Point2(x, y)


def point_to_affine_coords(verts: Sequence[Point2], u) -> tuple[Fraction, Fraction, Fraction]:
    """Affine coordinates of the point ``u`` (summing to one).

    A transversal direction is handed to the derivative operator as a point,
    expressed in the triangle's own barycentric frame.
    """
    return cartesian_to_barycentric(verts, u)


def barycentric_gradients(verts: Sequence[Point2]):
    """Constant partials ``(db/dx, db/dy)`` of the barycentric coordinates.

    Each returned triple sums to zero.
    """
    v1, v2, v3 = verts = _as_points(verts)
    a11, a12 = v1.x - v3.x, v2.x - v3.x
    a21, a22 = v1.y - v3.y, v2.y - v3.y
    det = a11 * a22 - a12 * a21
    if det == 0:
        raise DegenerateTriangle(f"triangle {tuple(verts)} has zero area")
    db1 = (a22 / det, -a12 / det)
    db2 = (-a21 / det, a11 / det)
    gx = (db1[0], db2[0], -db1[0] - db2[0])
    gy = (db1[1], db2[1], -db1[1] - db2[1])
    return gx, gy


@dataclass(frozen=True)
class SharedEdge:
    """Two triangles sharing a side.

    ``vertex_ids`` are the global ids of the shared vertices, ascending; the
    first is the ``q1`` parameter, the second ``q2``.  ``q_map_a[k]`` is the
    local index in ``tri_a`` of the vertex carrying ``q(k+1)``.
    """

    tri_a: int
    tri_b: int
    vertex_ids: tuple[int, int]
    off_edge_local_a: int
    off_edge_local_b: int
    q_map_a: tuple[int, int]
    q_map_b: tuple[int, int]

    def side(self, role: str) -> tuple[int, int, tuple[int, int]]:
        """``(triangle, off-edge local index, q-map)`` for side ``"a"`` or ``"b"``."""
        if role == "a":
            return self.tri_a, self.off_edge_local_a, self.q_map_a
        if role == "b":
            return self.tri_b, self.off_edge_local_b, self.q_map_b
        raise ValueError(f"side must be 'a' or 'b', not {role!r}")


def find_shared_edges(triangles: Sequence[Sequence[int]]) -> list[SharedEdge]:
    edges = []
    for ia, ib in combinations(range(len(triangles)), 2):
        ta, tb = tuple(triangles[ia]), tuple(triangles[ib])
        common = sorted(set(ta) & set(tb))
        if len(common) == 3:
            raise DuplicateTriangle(f"triangles {ia} and {ib} have the same vertices {ta}")
        if len(common) != 2:
            continue
        off_a = next(i for i, v in enumerate(ta) if v not in common)
        off_b = next(i for i, v in enumerate(tb) if v not in common)
        edges.append(
            SharedEdge(
                tri_a=ia,
                tri_b=ib,
                vertex_ids=(common[0], common[1]),
                off_edge_local_a=off_a,
                off_edge_local_b=off_b,
                q_map_a=(ta.index(common[0]), ta.index(common[1])),
                q_map_b=(tb.index(common[0]), tb.index(common[1])),
            )
        )
    return edges


def _interiors_overlap(p: Sequence[Point2], q: Sequence[Point2]) -> bool:
    # Separating axis test restricted to the six edge lines; touching is fine.
    for tri, other in ((p, q), (q, p)):
        orient = signed_area2(tri)
        for i in range(3):
            a, b = tri[i], tri[(i + 1) % 3]
            if all(_cross(a, b, w) * orient <= 0 for w in other):
                return False
    return True


class Triangulation:
    """Vertices, triangles as vertex-id triples, and derived shared edges."""

    def __init__(self, vertices, triangles):
        self.vertices: tuple[Point2, ...] = tuple(point(*v) for v in vertices)
        tris = []
        for t in triangles:
            t = tuple(int(i) for i in t)
            if len(t) != 3:
                raise ValueError(f"triangle {t} must have three vertex ids")
            if len(set(t)) != 3:
                raise DegenerateTriangle(f"triangle {t} repeats a vertex id")
            for i in t:
                if not 0 <= i < len(self.vertices):
                    raise IndexError(f"vertex id {i} out of range in triangle {t}")
            tris.append(t)
        self.triangles: tuple[tuple[int, int, int], ...] = tuple(tris)
        for k in range(len(self.triangles)):
            if signed_area2(self.triangle_vertices(k)) == 0:
                raise DegenerateTriangle(f"triangle {k} {self.triangles[k]} has zero area")
        self.shared_edges: tuple[SharedEdge, ...] = tuple(find_shared_edges(self.triangles))
        for i, j in combinations(range(len(self.triangles)), 2):
            if _interiors_overlap(self.triangle_vertices(i), self.triangle_vertices(j)):
                raise OverlappingTriangles(f"triangles {i} and {j} overlap")

    def __len__(self) -> int:
        return len(self.triangles)

    def __eq__(self, other):
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.vertices == other.vertices and self.triangles == other.triangles

    def __hash__(self):
        return hash((self.vertices, self.triangles))

    def __repr__(self):
        return f"Triangulation({len(self.vertices)} vertices, {len(self.triangles)} triangles)"

    def triangle_vertices(self, k: int) -> tuple[Point2, Point2, Point2]:
        i, j, l = self.triangles[k]
        return (self.vertices[i], self.vertices[j], self.vertices[l])

    def to_barycentric(self, k: int, p):
        return cartesian_to_barycentric(self.triangle_vertices(k), p)

    def to_cartesian(self, k: int, b) -> Point2:
        return barycentric_to_cartesian(self.triangle_vertices(k), b)

    def locate(self, p) -> tuple[int, tuple[Fraction, Fraction, Fraction]]:
        """Lowest-index triangle whose closed region contains ``p``."""
        p = point(*p)
        for k in range(len(self.triangles)):
            b = self.to_barycentric(k, p)
            if min(b) >= 0:
                return k, b
        raise PointOutsideMesh(p)

    def edge_points(self, e: SharedEdge) -> tuple[Point2, Point2]:
        """Cartesian endpoints of ``e`` in q-parameter order."""
        return self.vertices[e.vertex_ids[0]], self.vertices[e.vertex_ids[1]]


def locate_point(mesh: Triangulation, p):
    return mesh.locate(p)


def default_transversal_point(mesh: Triangulation, e: SharedEdge, override=None) -> Point2:
    """Point fixing the transversal direction used on ``e``.

    Defaults to ``tri_a``'s off-edge vertex.  An override lying on the line
    through the shared edge is rejected.
    """
    if override is None:
        return mesh.vertices[mesh.triangles[e.tri_a][e.off_edge_local_a]]
    u = point(*override)
    p, q = mesh.edge_points(e)
    if _cross(p, q, u) == 0:
        raise TransversalOnEdge(f"transversal point ({u.x}, {u.y}) lies on the edge line")
    return u
