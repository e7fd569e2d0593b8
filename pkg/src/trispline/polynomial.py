"""Homogeneous polynomials with exact rational coefficients.

``BaryPoly`` lives in the three barycentric variables of one triangle,
``EdgePoly`` in the two edge parameters ``(q1, q2)`` shared by a pair of
triangles, and ``CartesianPoly`` is an ordinary (inhomogeneous) polynomial in
``x, y``.

Monomial order for ``BaryPoly``: with ``b1^i b2^j b3^k`` the terms are graded
by ``i + j``, then by ``max(i, j)``, then by descending ``i``.  For degree two
this gives ``b3^2, b1 b3, b2 b3, b1 b2, b1^2, b2^2``, the order of the
coefficients ``g00, g10, g01, g11, g20, g02``.  ``EdgePoly`` terms run from
``q1^m`` down to ``q2^m``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import geometry
from .errors import DegenerateTriangle, FormatError


def _key_bary(e):
    i, j, _ = e
    return (i + j, max(i, j), -i)


@lru_cache(maxsize=None)
def bary_monomials(degree: int) -> tuple[tuple[int, int, int], ...]:
    if degree < 0:
        return ()
    exps = [(i, j, degree - i - j) for i in range(degree + 1) for j in range(degree + 1 - i)]
    return tuple(sorted(exps, key=_key_bary))


@lru_cache(maxsize=None)
def edge_monomials(degree: int) -> tuple[tuple[int, int], ...]:
    if degree < 0:
        return ()
    return tuple((degree - k, k) for k in range(degree + 1))


class _HomPoly:
    nvars = 0
    names: tuple[str, ...] = ()

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Mapping | None = None):
        self.degree = int(degree)
        clean = {}
        for exps, c in (coeffs or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars or min(exps) < 0:
                raise ValueError(f"bad exponent tuple {exps}")
            if sum(exps) != self.degree:
                raise ValueError(f"monomial {exps} is not of degree {self.degree}")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.coeffs = {e: c for e, c in clean.items() if c}

    @staticmethod
    def monomials(degree):
        raise NotImplementedError

    @classmethod
    def zero(cls, degree: int):
        return cls(degree)

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls(sum(exps), {tuple(exps): coeff})

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, exps) -> Fraction:
        return self.coeffs.get(tuple(exps), Fraction(0))

    def terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        order = {m: n for n, m in enumerate(self.monomials(self.degree))}
        return sorted(self.coeffs.items(), key=lambda t: order[t[0]])

    def coefficient_vector(self) -> list[Fraction]:
        return [self.coeff(m) for m in self.monomials(self.degree)]

    def _check_compatible(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if other.degree != self.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        return None

    def __add__(self, other):
        if self._check_compatible(other) is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return type(self)(self.degree, out)

    def __neg__(self):
        return type(self)(self.degree, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if self._check_compatible(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "_HomPoly":
        s = Fraction(s)
        return type(self)(self.degree, {e: s * c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if type(other) is not type(self):
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return type(self)(self.degree + other.degree, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = type(self)(0, {(0,) * self.nvars: 1})
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((type(self).__name__, self.degree, frozenset(self.coeffs.items())))

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        total = 0
        for exps, c in self.coeffs.items():
            term = c
            for x, k in zip(point, exps):
                if k:
                    term = term * x**k
            total = total + term
        return total

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for n, (exps, c) in enumerate(self.terms()):
            factors = [
                name if k == 1 else f"{name}^{k}"
                for name, k in zip(self.names, exps)
                if k
            ]
            mag = abs(c)
            body = " ".join([str(mag)] + factors)
            if n == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({self.degree}, '{self}')"

    @classmethod
    def parse(cls, text: str, degree: int):
        """Inverse of ``str``; ``degree`` is needed for the zero polynomial.

        A missing coefficient means 1, so ``"b1 b2 - b3^2"`` is accepted too.
        """
        text = text.strip()
        if text == "0":
            return cls.zero(degree)
        tokens = text.replace("-", " - ").replace("+", " + ").split()
        names = {n: i for i, n in enumerate(cls.names)}
        coeffs: dict = {}
        number = re.compile(r"^\d+(/\d+)?$")
        pos = 0
        while pos < len(tokens):
            sign = 1
            if tokens[pos] in ("+", "-"):
                if tokens[pos] == "+" and pos == 0:
                    raise FormatError(f"leading '+' in {text!r}")
                sign = -1 if tokens[pos] == "-" else 1
                pos += 1
            elif pos > 0:
                raise FormatError(f"missing operator before {tokens[pos]!r} in {text!r}")
            if pos == len(tokens):
                raise FormatError(f"dangling operator in {text!r}")
            c = Fraction(sign)
            if number.match(tokens[pos]):
                c *= Fraction(tokens[pos])
                pos += 1
            exps = [0] * cls.nvars
            while pos < len(tokens) and tokens[pos] not in ("+", "-"):
                name, _, power = tokens[pos].partition("^")
                if name not in names or (power and not power.isdigit()):
                    raise FormatError(f"bad factor {tokens[pos]!r} in {text!r}")
                exps[names[name]] += int(power) if power else 1
                pos += 1
            e = tuple(exps)
            coeffs[e] = coeffs.get(e, 0) + c
        try:
            return cls(degree, coeffs)
        except ValueError as exc:
            raise FormatError(str(exc)) from None


class BaryPoly(_HomPoly):
    """Homogeneous polynomial in barycentric coordinates ``b1, b2, b3``."""

    nvars = 3
    names = ("b1", "b2", "b3")
    __slots__ = ()

    @staticmethod
    def monomials(degree):
        return bary_monomials(degree)

    def partial(self, var: int) -> "BaryPoly":
        if self.degree == 0:
            return BaryPoly(0)
        out = {}
        for exps, c in self.coeffs.items():
            k = exps[var]
            if k:
                e = list(exps)
                e[var] -= 1
                out[tuple(e)] = c * k
        return BaryPoly(self.degree - 1, out)


class EdgePoly(_HomPoly):
    """Homogeneous polynomial in the edge parameters ``q1, q2``."""

    nvars = 2
    names = ("q1", "q2")
    __slots__ = ()

    @staticmethod
    def monomials(degree):
        return edge_monomials(degree)


class CartesianPoly:
    """``sum c_ij x^i y^j`` with ``i + j <= degree``."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Mapping[tuple[int, int], object]):
        self.degree = int(degree)
        self.coeffs = {}
        for (i, j), c in coeffs.items():
            if i < 0 or j < 0 or i + j > degree:
                raise ValueError(f"monomial x^{i} y^{j} exceeds degree {degree}")
            c = Fraction(c)
            if c:
                self.coeffs[(i, j)] = c

    def __call__(self, x, y):
        return sum((c * x**i * y**j for (i, j), c in self.coeffs.items()), Fraction(0))

    def derivative(self, rx: int, ry: int) -> "CartesianPoly":
        out = {}
        for (i, j), c in self.coeffs.items():
            if i < rx or j < ry:
                continue
            f = c
            for t in range(rx):
                f *= i - t
            for t in range(ry):
                f *= j - t
            out[(i - rx, j - ry)] = f
        return CartesianPoly(max(self.degree - rx - ry, 0), out)


def from_cartesian(p: CartesianPoly, verts: Sequence[geometry.Point2], degree: int | None = None) -> BaryPoly:
    """Rewrite ``p`` in the barycentric coordinates of ``verts``.

    ``x`` and ``y`` become linear forms in ``b``; a term of total degree
    ``t`` is lifted to ``degree`` by the factor ``(b1 + b2 + b3)^(degree - t)``.
    """
    d = p.degree if degree is None else degree
    if geometry.signed_area2(verts) == 0:
        raise DegenerateTriangle(f"triangle {tuple(verts)} has zero area")
    xs = BaryPoly(1, {(1, 0, 0): verts[0].x, (0, 1, 0): verts[1].x, (0, 0, 1): verts[2].x})
    ys = BaryPoly(1, {(1, 0, 0): verts[0].y, (0, 1, 0): verts[1].y, (0, 0, 1): verts[2].y})
    one = BaryPoly(1, {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1})
    result = BaryPoly.zero(d)
    for (i, j), c in p.coeffs.items():
        if i + j > d:
            raise ValueError(f"target degree {d} is below the term x^{i} y^{j}")
        result = result + (xs**i * ys**j * one ** (d - i - j)).scale(c)
    return result


def directional_derivative(p: BaryPoly, a: Sequence, r: int = 1) -> BaryPoly:
    """Apply ``a . grad_b`` to ``p`` ``r`` times.

    ``r == 0`` returns ``p``.  Orders beyond the degree give the zero
    polynomial of degree 0.
    """
    if r < 0:
        raise ValueError("derivative order must be non-negative")
    if r > p.degree:
        return BaryPoly.zero(0)
    a = tuple(Fraction(x) for x in a)
    for _ in range(r):
        acc = BaryPoly.zero(p.degree - 1)
        for var, ai in enumerate(a):
            if ai:
                acc = acc + p.partial(var).scale(ai)
        p = acc
    return p


def restrict_to_edge(p: BaryPoly, edge: geometry.SharedEdge, role: str) -> EdgePoly:
    """Substitute the edge parameters into ``p`` on side ``role`` of ``edge``.

    The off-edge coordinate becomes 0 and the two edge coordinates become
    ``q1`` and ``q2`` per the edge's q-map.
    """
    _, off, (l1, l2) = edge.side(role)
    out = {}
    for exps, c in p.coeffs.items():
        if exps[off]:
            continue
        key = (exps[l1], exps[l2])
        out[key] = out.get(key, 0) + c
    return EdgePoly(p.degree, out)


def evaluate(p: BaryPoly, b) -> Fraction:
    return p(tuple(b))


def evaluate_cartesian_derivative(p: BaryPoly, verts, p0, order: tuple[int, int]):
    """``d^(rx+ry) p / dx^rx dy^ry`` at the Cartesian point ``p0``.

    Each Cartesian partial is the barycentric directional derivative along
    the constant gradient of the coordinates, so the chain rule stays exact.
    """
    rx, ry = order
    if rx + ry > p.degree:
        return Fraction(0)
    gx, gy = geometry.barycentric_gradients(verts)
    q = directional_derivative(p, gx, rx)
    q = directional_derivative(q, gy, ry)
    return q(geometry.cartesian_to_barycentric(verts, p0))


def linear_combination(polys: Iterable[BaryPoly], weights: Iterable, degree: int) -> BaryPoly:
    out: dict = {}
    for poly, w in zip(polys, weights):
        if not w:
            continue
        for e, c in poly.coeffs.items():
            out[e] = out.get(e, 0) + w * c
    return BaryPoly(degree, out)
