"""Exact convex-polygon geometry over the rationals.

Polygons are given as conjunctions of half-planes ``a*x + b*y <= c``.  On
construction the vertices are computed and the half-planes are rebuilt from
the edges, so two polygons covering the same set compare equal no matter how
they were written down.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd

from ..errors import IllFormedConstant

Point = tuple[Fraction, Fraction]
HalfPlane = tuple[Fraction, Fraction, Fraction]


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull(points: set[Point]) -> list[Point]:
    """Counter-clockwise convex hull without collinear points (monotone chain)."""
    pts = sorted(points)
    if len(pts) < 3:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _normalize(a: Fraction, b: Fraction, c: Fraction) -> HalfPlane:
    """Scale a half-plane to coprime integer coefficients."""
    dens = [v.denominator for v in (a, b, c)]
    lcm = reduce(lambda x, y: x * y // gcd(x, y), dens, 1)
    nums = [int(v * lcm) for v in (a, b, c)]
    g = reduce(gcd, (abs(n) for n in nums if n), 0) or 1
    return tuple(Fraction(n, g) for n in nums)  # type: ignore[return-value]


def _bounded(planes: list[HalfPlane]) -> bool:
    # A nonzero recession direction d (a*dx + b*dy <= 0 for all planes) exists
    # iff one exists along some boundary line.
    if not planes:
        return False
    for a, b, _ in planes:
        for d in ((-b, a), (b, -a)):
            if all(pa * d[0] + pb * d[1] <= 0 for pa, pb, _ in planes):
                return False
    return True


class Polygon:
    """A bounded, full-dimensional convex polygon with rational vertices."""

    __slots__ = ("vertices", "halfplanes", "_hash")

    def __init__(self, planes):
        planes = [tuple(Fraction(v) for v in hp) for hp in planes]
        for a, b, _ in planes:
            if a == 0 and b == 0:
                raise IllFormedConstant("half-plane with zero normal")
        if not _bounded(planes):
            raise IllFormedConstant("polygon is unbounded")
        points: set[Point] = set()
        for i, (a1, b1, c1) in enumerate(planes):
            for a2, b2, c2 in planes[i + 1:]:
                det = a1 * b2 - a2 * b1
                if det == 0:
                    continue
                p = ((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det)
                if all(a * p[0] + b * p[1] <= c for a, b, c in planes):
                    points.add(p)
        hull = _hull(points)
        if len(hull) < 3:
            raise IllFormedConstant("polygon is empty or not full-dimensional")
        start = hull.index(min(hull))
        self._set_vertices(tuple(hull[start:] + hull[:start]))

    def _set_vertices(self, vertices: tuple) -> None:
        self.vertices: tuple[Point, ...] = vertices
        n = len(vertices)
        edges = []
        for i in range(n):
            p, q = vertices[i], vertices[(i + 1) % n]
            dx, dy = q[0] - p[0], q[1] - p[1]
            edges.append(_normalize(dy, -dx, dy * p[0] - dx * p[1]))
        self.halfplanes: tuple[HalfPlane, ...] = tuple(edges)
        self._hash = hash(vertices)

    @classmethod
    def rectangle(cls, x1, y1, x2, y2) -> "Polygon":
        x1, y1, x2, y2 = (Fraction(v) for v in (x1, y1, x2, y2))
        if not (x1 < x2 and y1 < y2):
            raise IllFormedConstant("rectangle is empty or not full-dimensional")
        poly = cls.__new__(cls)
        poly._set_vertices(((x1, y1), (x2, y1), (x2, y2), (x1, y2)))
        return poly

    def __eq__(self, other) -> bool:
        return isinstance(other, Polygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Polygon({self.to_text()!r})"

    @property
    def is_rectangle(self) -> bool:
        return len(self.vertices) == 4 and all(a == 0 or b == 0 for a, b, _ in self.halfplanes)

    @property
    def bounds(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        if self.is_rectangle:
            return self.vertices[0] + self.vertices[2]
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def to_text(self) -> str:
        if self.is_rectangle:
            x1, y1, x2, y2 = (_num(v) for v in self.bounds)
            return f"x >= {x1} && x <= {x2} && y >= {y1} && y <= {y2}"
        return " && ".join(_plane_text(hp) for hp in self.halfplanes)

    def contains_point(self, p: Point, strict: bool = False) -> bool:
        if strict:
            return all(a * p[0] + b * p[1] < c for a, b, c in self.halfplanes)
        return all(a * p[0] + b * p[1] <= c for a, b, c in self.halfplanes)


def _num(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _plane_text(hp: HalfPlane) -> str:
    a, b, c = hp
    parts = []
    for coef, var in ((a, "x"), (b, "y")):
        if coef == 0:
            continue
        mag = "" if abs(coef) == 1 else f"{_num(abs(coef))}*"
        if not parts:
            parts.append(("-" if coef < 0 else "") + mag + var)
        else:
            parts.append(("- " if coef < 0 else "+ ") + mag + var)
    return f"{' '.join(parts)} <= {_num(c)}"


def _project(poly: Polygon, axis: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    vals = [axis[0] * x + axis[1] * y for x, y in poly.vertices]
    return min(vals), max(vals)


def _inside(p: Polygon, q: Polygon, strict: bool) -> bool:
    return all(q.contains_point(v, strict) for v in p.vertices)


def rect_relation(a: tuple, b: tuple) -> str:
    """RCC-8 relation between boxes given as ``(x1, y1, x2, y2)`` bounds."""
    px1, py1, px2, py2 = a
    qx1, qy1, qx2, qy2 = b
    if a == b:
        return "EQ"
    if px2 < qx1 or qx2 < px1 or py2 < qy1 or qy2 < py1:
        return "DC"
    if px2 <= qx1 or qx2 <= px1 or py2 <= qy1 or qy2 <= py1:
        return "EC"
    if qx1 <= px1 and px2 <= qx2 and qy1 <= py1 and py2 <= qy2:
        strict = qx1 < px1 and px2 < qx2 and qy1 < py1 and py2 < qy2
        return "NTPP" if strict else "TPP"
    if px1 <= qx1 and qx2 <= px2 and py1 <= qy1 and qy2 <= py2:
        strict = px1 < qx1 and qx2 < px2 and py1 < qy1 and qy2 < py2
        return "NTPPI" if strict else "TPPI"
    return "PO"


def rcc8_relation(p: Polygon, q: Polygon) -> str:
    """The unique RCC-8 base relation holding between two polygons."""
    if p == q:
        return "EQ"
    if p.is_rectangle and q.is_rectangle:
        return rect_relation(p.bounds, q.bounds)
    touching = False
    for a, b, _ in p.halfplanes + q.halfplanes:
        pmin, pmax = _project(p, (a, b))
        qmin, qmax = _project(q, (a, b))
        if pmax < qmin or qmax < pmin:
            return "DC"
        if pmax <= qmin or qmax <= pmin:
            touching = True
    if touching:
        return "EC"
    if _inside(p, q, False):
        return "NTPP" if _inside(p, q, True) else "TPP"
    if _inside(q, p, False):
        return "NTPPI" if _inside(q, p, True) else "TPPI"
    return "PO"
