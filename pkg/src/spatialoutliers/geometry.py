"""Planar geometry primitives: centroids, areas, distances, buffers, adjacency.

Coordinates are projected map units; all math is 2-D Euclidean. Everything
here is a pure function over immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

from .errors import (
    DegenerateGeometryError,
    InvalidGeometryError,
    InvalidRadiusError,
    NotPolygonalError,
)

# Digitized vector maps repeat identical coordinates along shared borders, so
# exact comparison plus a small slack on cross products is sufficient.
AREA_TOLERANCE = 1e-12
COLLINEARITY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidGeometryError(f"non-finite coordinates ({self.x}, {self.y})")


Ring = tuple[Point, ...]


@dataclass(frozen=True)
class Polygon:
    """Outer ring plus optional holes; every ring explicitly closed."""

    rings: tuple[Ring, ...]

    def __post_init__(self) -> None:
        if not self.rings:
            raise InvalidGeometryError("polygon needs an outer ring")
        for ring in self.rings:
            _check_ring(ring)

    @classmethod
    def from_coords(
        cls,
        outer: Sequence[tuple[float, float]],
        holes: Iterable[Sequence[tuple[float, float]]] = (),
    ) -> "Polygon":
        """Build a polygon from coordinate pairs, closing rings as needed."""
        return cls((_close(outer),) + tuple(_close(h) for h in holes))

    @property
    def outer(self) -> Ring:
        return self.rings[0]

    @property
    def holes(self) -> tuple[Ring, ...]:
        return self.rings[1:]

    @cached_property
    def bounds(self) -> tuple[float, float, float, float]:
        xs = [p.x for p in self.outer]
        ys = [p.y for p in self.outer]
        return min(xs), min(ys), max(xs), max(ys)

    @cached_property
    def segments(self) -> tuple[tuple[Point, Point], ...]:
        segs: list[tuple[Point, Point]] = []
        for ring in self.rings:
            segs.extend(zip(ring[:-1], ring[1:]))
        return tuple(segs)


Geometry = Union[Point, Polygon]


def _close(coords: Sequence[tuple[float, float]]) -> Ring:
    pts = [Point(float(x), float(y)) for x, y in coords]
    if pts and pts[0] != pts[-1]:
        pts.append(pts[0])
    return tuple(pts)


def _check_ring(ring: Ring) -> None:
    if len(ring) < 4:
        raise InvalidGeometryError("ring needs at least 3 distinct vertices")
    if ring[0] != ring[-1]:
        raise InvalidGeometryError("ring is not closed")
    for a, b in zip(ring[:-1], ring[1:]):
        if a == b:
            raise InvalidGeometryError("ring has a zero-length segment")
    if len({(p.x, p.y) for p in ring[:-1]}) != len(ring) - 1:
        raise InvalidGeometryError("ring revisits a vertex")


def _signed_area(ring: Ring) -> float:
    acc = 0.0
    for a, b in zip(ring[:-1], ring[1:]):
        acc += a.x * b.y - b.x * a.y
    return acc / 2.0


def _ring_centroid(ring: Ring) -> tuple[float, float, float]:
    """Centroid of one ring with its unsigned area; orientation cancels."""
    area = _signed_area(ring)
    sx = sy = 0.0
    for a, b in zip(ring[:-1], ring[1:]):
        f = a.x * b.y - b.x * a.y
        sx += (a.x + b.x) * f
        sy += (a.y + b.y) * f
    if abs(area) <= AREA_TOLERANCE:
        raise DegenerateGeometryError("ring area is zero within tolerance")
    return sx / (6.0 * area), sy / (6.0 * area), abs(area)


def polygon_area(poly: Polygon) -> float:
    """Absolute planar area: outer ring minus holes."""
    area = abs(_signed_area(poly.outer))
    for hole in poly.holes:
        area -= abs(_signed_area(hole))
    if area <= AREA_TOLERANCE:
        raise DegenerateGeometryError("polygon area is zero within tolerance")
    return area


def centroid(poly: Polygon) -> Point:
    """Area-weighted centroid of the outer ring minus holes."""
    cx, cy, area = _ring_centroid(poly.outer)
    if poly.holes:
        wx, wy, total = cx * area, cy * area, area
        for hole in poly.holes:
            hx, hy, harea = _ring_centroid(hole)
            wx -= hx * harea
            wy -= hy * harea
            total -= harea
        if total <= AREA_TOLERANCE:
            raise DegenerateGeometryError("holes consume the whole polygon")
        cx, cy = wx / total, wy / total
    return Point(cx, cy)


def euclidean_distance(a: Point, b: Point) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def within_buffer(candidate: Point, center: Point, radius: float) -> bool:
    """True when the candidate lies inside or on the buffer circle."""
    if radius <= 0:
        raise InvalidRadiusError(f"buffer radius must be > 0, got {radius}")
    return euclidean_distance(candidate, center) <= radius


def _overlap_length(p1: Point, p2: Point, q1: Point, q2: Point) -> float:
    """Length of the collinear overlap between two segments, else 0."""
    dx, dy = p2.x - p1.x, p2.y - p1.y
    length_sq = dx * dx + dy * dy
    if length_sq == 0.0:
        return 0.0
    c1 = dx * (q1.y - p1.y) - dy * (q1.x - p1.x)
    c2 = dx * (q2.y - p1.y) - dy * (q2.x - p1.x)
    if abs(c1) > COLLINEARITY_TOLERANCE or abs(c2) > COLLINEARITY_TOLERANCE:
        return 0.0
    length = math.sqrt(length_sq)
    t1 = ((q1.x - p1.x) * dx + (q1.y - p1.y) * dy) / length
    t2 = ((q2.x - p1.x) * dx + (q2.y - p1.y) * dy) / length
    lo, hi = min(t1, t2), max(t1, t2)
    return min(length, hi) - max(0.0, lo)


def shares_boundary(a: Polygon, b: Polygon) -> bool:
    """True when the boundaries share a segment of positive length.

    Touching at a single point does not count as adjacency.
    """
    ax0, ay0, ax1, ay1 = a.bounds
    bx0, by0, bx1, by1 = b.bounds
    tol = COLLINEARITY_TOLERANCE
    if ax1 < bx0 - tol or bx1 < ax0 - tol or ay1 < by0 - tol or by1 < ay0 - tol:
        return False
    for p1, p2 in a.segments:
        for q1, q2 in b.segments:
            if _overlap_length(p1, p2, q1, q2) > tol:
                return True
    return False


def center_of(geom: Geometry) -> Point:
    """Point geometries are their own center; polygons reduce to centroids."""
    return geom if isinstance(geom, Point) else centroid(geom)


def area_of(geom: Geometry) -> float:
    if isinstance(geom, Point):
        raise NotPolygonalError("points have no area")
    return polygon_area(geom)


def _cross3(o: Point, a: Point, b: Point) -> float:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def _within_box(p: Point, a: Point, b: Point) -> bool:
    return (
        min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def _segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    d1 = _cross3(q1, q2, p1)
    d2 = _cross3(q1, q2, p2)
    d3 = _cross3(p1, p2, q1)
    d4 = _cross3(p1, p2, q2)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and 0 not in (d1, d2, d3, d4):
        return True
    if d1 == 0 and _within_box(p1, q1, q2):
        return True
    if d2 == 0 and _within_box(p2, q1, q2):
        return True
    if d3 == 0 and _within_box(q1, p1, p2):
        return True
    if d4 == 0 and _within_box(q2, p1, p2):
        return True
    return False


def validate_polygon(poly: Polygon) -> None:
    """Full validation for loaded data: simple rings, positive area.

    The constructor only enforces the cheap invariants; loaders call this
    to catch self-intersecting or degenerate rings.
    """
    for ring in poly.rings:
        n = len(ring) - 1
        segs = list(zip(ring[:-1], ring[1:]))
        for i in range(n):
            for j in range(i + 1, n):
                adjacent = j == i + 1 or (i == 0 and j == n - 1)
                if adjacent:
                    if _overlap_length(*segs[i], *segs[j]) > COLLINEARITY_TOLERANCE:
                        raise InvalidGeometryError("ring folds back on itself")
                    continue
                if _segments_intersect(*segs[i], *segs[j]):
                    raise InvalidGeometryError("ring is self-intersecting")
    polygon_area(poly)
