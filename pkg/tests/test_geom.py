import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nncascade.geom import (Circle, ConvexPolygon, ExactPoint, GeometryError, Location, Orientation, Ray,
                            circumcenter, convex_hull, convex_hull_h, dehom, fmt_coord, hom, incircle,
                            line_through, meet, orient, orient_h, point_in_convex, ray_exit_edge,
                            ray_exit_edge_h, side)

SQUARE = ConvexPolygon.from_points([(0, 0), (1, 0), (1, 1), (0, 1)])
coord = st.integers(-50, 50)
pt = st.tuples(coord, coord)


def d2(a, b):
    return (Fraction(a[0]) - Fraction(b[0])) ** 2 + (Fraction(a[1]) - Fraction(b[1])) ** 2


def test_orient_examples():
    assert orient((0, 0), (1, 0), (0, 1)) == Orientation.LEFT
    assert orient((0, 0), (1, 0), (2, 0)) == Orientation.COLLINEAR
    assert orient((0, 0), (0, 1), (1, 0)) == Orientation.RIGHT


def test_incircle_examples():
    assert incircle((0, 0), (1, 0), (1, 1), (0, 1)) == Circle.COCIRCULAR
    assert incircle((0, 0), (2, 0), (0, 2), (1, 1)) == Circle.INSIDE
    assert incircle((0, 0), (2, 0), (0, 2), (5, 5)) == Circle.OUTSIDE
    with pytest.raises(GeometryError):
        incircle((0, 0), (1, 1), (2, 2), (0, 1))


def test_circumcenter_examples():
    assert circumcenter((0, 0), (2, 0), (0, 2)) == ExactPoint(1, 1)
    assert circumcenter((-1, 0), (1, 0), (0, 1)) == ExactPoint(0, 0)
    c = circumcenter((0, 0), (2, 0), (1, 10))
    assert d2(c, (0, 0)) == d2(c, (2, 0)) == d2(c, (1, 10))
    with pytest.raises(GeometryError):
        circumcenter((0, 0), (1, 1), (3, 3))


def test_point_in_convex_examples():
    assert point_in_convex(SQUARE, (Fraction(1, 2), Fraction(1, 2))) == Location.INSIDE
    assert point_in_convex(SQUARE, (1, Fraction(1, 2))) == Location.BOUNDARY
    assert point_in_convex(SQUARE, (2, 0)) == Location.OUTSIDE
    assert point_in_convex(SQUARE, (0, 0)) == Location.BOUNDARY


def test_ray_exit_examples():
    c = (Fraction(1, 2), Fraction(1, 2))
    assert ray_exit_edge(SQUARE, Ray(c, (2, Fraction(1, 2)))) == 1
    # through the corner (1, 1): the edge counterclockwise of it, (1,1)->(0,1)
    assert ray_exit_edge(SQUARE, Ray(c, (1, 1))) == 2
    with pytest.raises(GeometryError):
        ray_exit_edge(SQUARE, Ray((0, 0), (1, 1)))


def _exit_by_scan(hv, o, q):
    """Edge k whose closed-open angular cone [v_k, v_k+1) from o holds the direction o->q."""
    ux, uy = q[0] - o[0], q[1] - o[1]
    hits = []
    n = len(hv)
    for k in range(n):
        a, b = dehom(hv[k]), dehom(hv[(k + 1) % n])
        ax, ay = a.x - o[0], a.y - o[1]
        bx, by = b.x - o[0], b.y - o[1]
        if ax * uy - ay * ux >= 0 and ux * by - uy * bx > 0:
            hits.append(k)
    assert len(hits) == 1
    return hits[0]


def test_ray_exit_matches_edge_scan_on_random_20gons():
    rng = random.Random(7)
    R = 10 ** 6
    done = 0
    while done < 5:
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(20))
        hv = convex_hull_h([(round(R * math.cos(a)), round(R * math.sin(a)), 1) for a in angles])
        if len(hv) != 20:
            continue
        done += 1
        for _ in range(100):
            ws = [rng.randint(1, 5) for _ in hv]
            o = (Fraction(sum(w * v[0] for w, v in zip(ws, hv)), sum(ws)),
                 Fraction(sum(w * v[1] for w, v in zip(ws, hv)), sum(ws)))
            q = (rng.randint(-3 * R, 3 * R), rng.randint(-3 * R, 3 * R))
            if (Fraction(q[0]), Fraction(q[1])) == o:
                continue
            assert ray_exit_edge_h(hv, hom(o), hom(q)) == _exit_by_scan(hv, o, q)


def test_convex_hull_examples():
    assert convex_hull([(0, 0)]).vertices == [ExactPoint(0, 0)]
    sq = convex_hull([(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)])
    assert sorted(sq.vertices) == [(0, 0), (0, 2), (2, 0), (2, 2)]
    rng = random.Random(3)
    pts = [(rng.randint(-100, 100), rng.randint(-100, 100)) for _ in range(200)]
    hull = convex_hull(pts)
    assert hull.is_valid()
    assert all(point_in_convex(hull, p) != Location.OUTSIDE for p in pts)


def test_line_through_and_meet():
    a, b = (0, 0, 1), (4, 0, 1)
    l = line_through(a, b)
    assert side(l, (1, 1, 1)) == -1  # left of a->b is inside
    assert side(l, (1, -1, 1)) == 1
    assert side(l, (7, 0, 3)) == 0
    m = meet(line_through((0, 0, 1), (2, 2, 1)), line_through((0, 2, 1), (2, 0, 1)))
    assert dehom(m) == ExactPoint(1, 1)


def test_exact_point_text():
    p = ExactPoint.parse("0.25", "-3")
    assert p == (Fraction(1, 4), -3)
    assert str(p) == "0.25 -3"
    assert fmt_coord(Fraction(1, 3)) == "1/3"


@given(pt, pt, pt)
def test_orient_antisymmetric(a, b, c):
    assert orient(a, b, c) == orient(b, c, a) == -orient(b, a, c)


@given(pt, pt, pt, pt)
def test_incircle_agrees_with_circumradius(a, b, c, d):
    if orient(a, b, c) == 0:
        return
    cc = circumcenter(a, b, c)
    r2 = d2(cc, a)
    want = Circle.INSIDE if d2(cc, d) < r2 else Circle.OUTSIDE if d2(cc, d) > r2 else Circle.COCIRCULAR
    assert incircle(a, b, c, d) == want


@settings(max_examples=60)
@given(st.lists(pt, min_size=1, max_size=25), st.lists(pt, min_size=1, max_size=20))
def test_hull_membership_matches_orientation_scan(pts, probes):
    hull = convex_hull(pts)
    hv = hull.hv
    for p in pts:
        assert point_in_convex(hull, p) != Location.OUTSIDE
    if len(hv) < 3:
        return
    for q in probes:
        signs = [orient_h(hv[k], hv[(k + 1) % len(hv)], hom(q)) for k in range(len(hv))]
        want = (Location.OUTSIDE if min(signs) < 0 else
                Location.INSIDE if min(signs) > 0 else Location.BOUNDARY)
        assert point_in_convex(hull, q) == want
