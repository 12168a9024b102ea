"""Exact planar geometry on integer and rational inputs.

Sites live on an integer lattice. Every derived point (Voronoi vertex, clip
intersection, hull vertex) is kept in homogeneous integer form ``(X, Y, W)``
with ``W > 0`` and denotes the rational point ``(X/W, Y/W)``. Lines are
triples ``(A, B, C)`` standing for the closed half-plane ``A*x + B*y <= C``;
the boundary is the line itself. Nothing here rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import cmp_to_key
from math import gcd
from typing import NamedTuple, Sequence, Union

Coordinate = Union[int, Fraction]
HPoint = tuple  # (X, Y, W) integers, W > 0
Line = tuple  # (A, B, C) integers: A*x + B*y <= C


class GeometryError(ValueError):
    """Raised when a geometric precondition (non-collinearity, containment) fails."""


class Orientation(IntEnum):
    RIGHT = -1
    COLLINEAR = 0
    LEFT = 1


class Circle(IntEnum):
    OUTSIDE = -1
    COCIRCULAR = 0
    INSIDE = 1


class Location(IntEnum):
    OUTSIDE = -1
    BOUNDARY = 0
    INSIDE = 1


class ExactPoint(NamedTuple):
    """A point with exact rational coordinates; tuple order is lexicographic."""

    x: Coordinate
    y: Coordinate

    @classmethod
    def parse(cls, sx: str, sy: str) -> "ExactPoint":
        return cls(_coord(Fraction(sx)), _coord(Fraction(sy)))

    @property
    def h(self) -> HPoint:
        return hom(self)

    def __str__(self) -> str:
        return f"{fmt_coord(self.x)} {fmt_coord(self.y)}"


def _coord(v: Fraction) -> Coordinate:
    return v.numerator if v.denominator == 1 else v


def fmt_coord(v: Coordinate) -> str:
    """Render a coordinate as exact decimal text when it has a finite expansion."""
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    den = v.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{v.numerator}/{v.denominator}"
    digits = max(twos, fives)
    scaled = v * 10**digits
    sign = "-" if scaled < 0 else ""
    s = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def hom(p) -> HPoint:
    """Homogeneous integer triple for an ExactPoint or an (x, y) pair."""
    x, y = p[0], p[1]
    if isinstance(x, int) and isinstance(y, int):
        return (x, y, 1)
    x, y = Fraction(x), Fraction(y)
    w = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    return (x.numerator * (w // x.denominator), y.numerator * (w // y.denominator), w)


def dehom(h: HPoint) -> ExactPoint:
    X, Y, W = h
    if W == 1:
        return ExactPoint(X, Y)
    return ExactPoint(_coord(Fraction(X, W)), _coord(Fraction(Y, W)))


def normalize(h: HPoint) -> HPoint:
    X, Y, W = h
    g = gcd(gcd(X, Y), W)
    if g > 1:
        return (X // g, Y // g, W // g)
    return h


def same_point(a: HPoint, b: HPoint) -> bool:
    return a[0] * b[2] == b[0] * a[2] and a[1] * b[2] == b[1] * a[2]


def lex_cmp(a: HPoint, b: HPoint) -> int:
    d = a[0] * b[2] - b[0] * a[2]
    if d == 0:
        d = a[1] * b[2] - b[1] * a[2]
    return (d > 0) - (d < 0)


lex_key = cmp_to_key(lex_cmp)


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


# --- predicates ----------------------------------------------------------


def orient_h(a: HPoint, b: HPoint, c: HPoint) -> int:
    """Sign of the signed area of triangle abc (+1 counterclockwise)."""
    ax, ay, aw = a
    bx, by, bw = b
    cx, cy, cw = c
    if aw == 1 and bw == 1 and cw == 1:
        d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    else:
        d = ax * (by * cw - cy * bw) - ay * (bx * cw - cx * bw) + aw * (bx * cy - cx * by)
    return (d > 0) - (d < 0)


def orient(a, b, c) -> Orientation:
    return Orientation(orient_h(hom(a), hom(b), hom(c)))


def incircle_det(a, b, c, d) -> int:
    """Raw incircle determinant for lattice points; positive when d is inside ccw abc."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    return (alift * (bdx * cdy - bdy * cdx)
            - blift * (adx * cdy - ady * cdx)
            + clift * (adx * bdy - ady * bdx))


def incircle(a, b, c, d) -> Circle:
    """Exact incircle test; a, b, c counterclockwise (clockwise input is reoriented)."""
    ah, bh, ch, dh = hom(a), hom(b), hom(c), hom(d)
    o = orient_h(ah, bh, ch)
    if o == 0:
        raise GeometryError("incircle of collinear points")
    if o < 0:
        ah, bh = bh, ah
    pts = [ah, bh, ch, dh]
    if all(p[2] == 1 for p in pts):
        det = incircle_det(ah, bh, ch, dh)
    else:
        fa, fb, fc, fd = (dehom(p) for p in pts)
        det = incircle_det(fa, fb, fc, fd)
    return Circle(_sign(det))


def circumcenter(a, b, c) -> ExactPoint:
    return dehom(circumcenter_h(hom(a), hom(b), hom(c)))


def circumcenter_h(a: HPoint, b: HPoint, c: HPoint) -> HPoint:
    if orient_h(a, b, c) == 0:
        raise GeometryError("circumcenter of collinear points")
    if a[2] == 1 and b[2] == 1 and c[2] == 1:
        return meet(bisector(a, b), bisector(a, c))
    fa, fb, fc = (dehom(p) for p in (a, b, c))
    bx, by = fb.x - fa.x, fb.y - fa.y
    cx, cy = fc.x - fa.x, fc.y - fa.y
    d = 2 * (bx * cy - by * cx)
    ux = (cy * (bx * bx + by * by) - by * (cx * cx + cy * cy)) / d
    uy = (bx * (cx * cx + cy * cy) - cx * (bx * bx + by * by)) / d
    return hom((fa.x + ux, fa.y + uy))


def dist2_cmp(q: HPoint, a, b) -> int:
    """Sign of |q-a|^2 - |q-b|^2 for lattice sites a, b and homogeneous q."""
    X, Y, W = q
    v = W * (a[0] * a[0] + a[1] * a[1] - b[0] * b[0] - b[1] * b[1]) - 2 * (
        X * (a[0] - b[0]) + Y * (a[1] - b[1]))
    return (v > 0) - (v < 0)


# --- lines -----------------------------------------------------------------


def bisector(p, t) -> Line:
    """Closed half-plane of points at least as close to lattice site p as to t."""
    return (2 * (t[0] - p[0]), 2 * (t[1] - p[1]),
            t[0] * t[0] + t[1] * t[1] - p[0] * p[0] - p[1] * p[1])


def box_line(side: int, L: int) -> Line:
    """Side codes -1..-4: right, top, left, bottom of the square [-L, L]^2."""
    return ((1, 0, L), (0, 1, L), (-1, 0, L), (0, -1, L))[-side - 1]


def meet(l1: Line, l2: Line) -> HPoint:
    A1, B1, C1 = l1
    A2, B2, C2 = l2
    W = A1 * B2 - A2 * B1
    if W == 0:
        raise GeometryError("parallel lines do not meet")
    X = C1 * B2 - C2 * B1
    Y = A1 * C2 - A2 * C1
    if W < 0:
        return (-X, -Y, -W)
    return (X, Y, W)


def side(line: Line, q: HPoint) -> int:
    """+1 strictly outside the half-plane, 0 on its line, -1 strictly inside."""
    v = line[0] * q[0] + line[1] * q[1] - line[2] * q[2]
    return (v > 0) - (v < 0)


def line_through(a: HPoint, b: HPoint) -> Line:
    """Line through a and b whose inside is the left side of a->b."""
    ax, ay, aw = a
    bx, by, bw = b
    # orient(a, b, q) * aw*bw*qw == A'x + B'y + C'w with the cross product below
    A = ay * bw - aw * by
    B = aw * bx - ax * bw
    C = ax * by - ay * bx
    return (-A, -B, C)


# --- polygons --------------------------------------------------------------


@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex polygon, counterclockwise, in homogeneous coordinates.

    One- and two-vertex polygons are allowed (a point, a segment).
    """

    hv: tuple

    @classmethod
    def from_points(cls, pts: Sequence) -> "ConvexPolygon":
        return cls(tuple(hom(p) for p in pts))

    @property
    def vertices(self) -> list:
        return [dehom(h) for h in self.hv]

    def __len__(self) -> int:
        return len(self.hv)

    def edges(self):
        n = len(self.hv)
        return [(self.hv[k], self.hv[(k + 1) % n]) for k in range(n)]

    def is_valid(self) -> bool:
        n = len(self.hv)
        if n <= 2:
            return n >= 1 and (n == 1 or not same_point(self.hv[0], self.hv[1]))
        return all(orient_h(self.hv[k], self.hv[(k + 1) % n], self.hv[(k + 2) % n]) > 0
                   for k in range(n))


@dataclass(frozen=True)
class Ray:
    origin: ExactPoint
    through: ExactPoint

    def __post_init__(self):
        if same_point(hom(self.origin), hom(self.through)):
            raise GeometryError("ray needs two distinct points")


def _on_segment(a: HPoint, b: HPoint, q: HPoint) -> bool:
    """q collinear with a, b assumed; is q within the closed segment?"""
    if orient_h(a, b, q) != 0:
        return False
    for i in (0, 1):
        lo, hi = a[i] * b[2], b[i] * a[2]
        qa = q[i] * a[2] * b[2]
        if lo > hi:
            lo, hi = hi, lo
        if not (lo * q[2] <= qa <= hi * q[2]):
            return False
    return True


def point_in_convex_h(hv: Sequence, q: HPoint, counter=None) -> Location:
    """Two-chain binary search over the fan from hv[0]; O(log n) orientations."""
    n = len(hv)
    if n == 1:
        return Location.BOUNDARY if same_point(hv[0], q) else Location.OUTSIDE
    if n == 2:
        return Location.BOUNDARY if _on_segment(hv[0], hv[1], q) else Location.OUTSIDE
    v0 = hv[0]
    tests = 2
    o1 = orient_h(v0, hv[1], q)
    if o1 < 0:
        _tally(counter, 1)
        return Location.OUTSIDE
    o2 = orient_h(v0, hv[n - 1], q)
    if o2 > 0:
        _tally(counter, tests)
        return Location.OUTSIDE
    if o1 == 0:
        _tally(counter, tests)
        return Location.BOUNDARY if _on_segment(v0, hv[1], q) else Location.OUTSIDE
    if o2 == 0:
        _tally(counter, tests)
        return Location.BOUNDARY if _on_segment(v0, hv[n - 1], q) else Location.OUTSIDE
    lo, hi = 1, n - 1  # orient(v0, hv[lo], q) > 0 >= orient(v0, hv[hi], q)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        tests += 1
        if orient_h(v0, hv[mid], q) > 0:
            lo = mid
        else:
            hi = mid
    s = orient_h(hv[lo], hv[hi], q)
    _tally(counter, tests + 1)
    if s > 0:
        return Location.INSIDE
    return Location.BOUNDARY if s == 0 else Location.OUTSIDE


def point_in_convex(poly: ConvexPolygon, q) -> Location:
    return point_in_convex_h(poly.hv, hom(q))


def _tally(counter, k):
    if counter is not None:
        counter.predicates += k


def direction(o: HPoint, v: HPoint) -> tuple:
    """Integer vector with the direction of v - o."""
    if o[2] == 1:
        return (v[0] - o[0] * v[2], v[1] - o[1] * v[2])
    return (v[0] * o[2] - o[0] * v[2], v[1] * o[2] - o[1] * v[2])


def _half(ref, u) -> int:
    """0 if u lies in [ref, ref+pi) measured ccw, else 1."""
    c = ref[0] * u[1] - ref[1] * u[0]
    if c > 0:
        return 0
    if c < 0:
        return 1
    return 0 if ref[0] * u[0] + ref[1] * u[1] > 0 else 1


def angle_le(ref, u, v) -> bool:
    """ccw angle of u from ref <= that of v (angles in [0, 2pi))."""
    hu, hv_ = _half(ref, u), _half(ref, v)
    if hu != hv_:
        return hu < hv_
    return u[0] * v[1] - u[1] * v[0] >= 0


def ray_exit_edge_h(hv: Sequence, origin: HPoint, through: HPoint, counter=None) -> int:
    """Index k of edge (hv[k], hv[k+1]) crossed by the ray origin->through.

    A ray through a vertex reports the edge counterclockwise of that vertex.
    Binary search on vertex angles around the origin.
    """
    n = len(hv)
    if n < 3:
        raise GeometryError("ray exit needs a polygon with interior")
    ref = direction(origin, hv[0])
    u = direction(origin, through)
    if u == (0, 0):
        raise GeometryError("ray needs two distinct points")
    # largest k with angle(hv[k]) <= angle(u), angles measured from hv[0]
    lo, hi = 0, n
    tests = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        tests += 1
        if angle_le(ref, direction(origin, hv[mid]), u):
            lo = mid
        else:
            hi = mid
    _tally(counter, tests)
    return lo


def ray_exit_edge(poly: ConvexPolygon, r: Ray) -> int:
    o = hom(r.origin)
    if point_in_convex_h(poly.hv, o) != Location.INSIDE:
        raise GeometryError("ray origin must lie strictly inside the polygon")
    return ray_exit_edge_h(poly.hv, o, hom(r.through))


def convex_hull_h(pts: Sequence) -> list:
    """Andrew's monotone chain; ccw, duplicates and collinear points dropped."""
    if all(p[2] == 1 for p in pts):
        uniq = sorted(set(pts))
    else:
        uniq = []
        for p in sorted(pts, key=lex_key):
            if not uniq or not same_point(uniq[-1], p):
                uniq.append(p)
    if len(uniq) <= 2:
        return uniq
    lower: list = []
    for p in uniq:
        while len(lower) >= 2 and orient_h(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(uniq):
        while len(upper) >= 2 and orient_h(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and same_point(hull[0], hull[1]):
        return hull[:1]
    return hull


def convex_hull(points: Sequence) -> ConvexPolygon:
    if not points:
        raise GeometryError("convex hull of an empty set")
    return ConvexPolygon(tuple(convex_hull_h([hom(p) for p in points])))


def segment_intersection(a, b, c, d):
    """Intersection point of closed segments ab and cd if it is a single point."""
    ah, bh, ch, dh = hom(a), hom(b), hom(c), hom(d)
    o1, o2 = orient_h(ah, bh, ch), orient_h(ah, bh, dh)
    o3, o4 = orient_h(ch, dh, ah), orient_h(ch, dh, bh)
    if o1 == o2 == 0:
        return None  # collinear: empty or not a single point in general
    if o1 * o2 > 0 or o3 * o4 > 0:
        return None
    return dehom(meet(line_through(ah, bh), line_through(ch, dh)))
