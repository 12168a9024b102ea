import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nncascade import kernels
from nncascade.division import r_divide
from nncascade.geom import convex_hull_h, dehom, hom
from nncascade.hulls import (AngularOverlay, build_hull, hull_contains_strictly, overlay_query,
                             range_levels, span_exponents)
from nncascade.levels import Config, Level, Structure
from nncascade.voronoi import ClipBox, ClippedVoronoi, site_key

B = 8192


@pytest.fixture(scope="module")
def structure():
    rng = random.Random(3)
    S = Structure(Config(domain=B, piece_scale=2))
    while len(S) < 1024:
        p = (rng.randint(-B, B), rng.randint(-B, B))
        if p not in S.points:
            S.insert(p)
    return S


def hand_levels(lower_pts, upper_pts, box, sample_all):
    lo = Level(1, list(lower_pts), sorted(lower_pts), ClippedVoronoi(lower_pts, box))
    uv = ClippedVoronoi(upper_pts, box)
    div = r_divide(uv.adj, 1, uv.xs, uv.ys)
    div.sample = list(range(len(upper_pts))) if sample_all else []
    up = Level(2, list(upper_pts), sorted(upper_pts), uv, divisions={1: div})
    return lo, up


def points_of(hv):
    return sorted(dehom(h) for h in hv)


def test_no_sample_gives_point_hull():
    box = ClipBox(100)
    lo, up = hand_levels([(0, 0), (10, 0), (0, 10)], [(50, 50), (60, 40)], box, False)
    h = build_hull(lo, 2, up, (0, 0))
    assert h.degenerate
    assert h.polygon.hv == ((0, 0, 1),)


def test_fully_covered_cell_gives_the_cell():
    box = ClipBox(100)
    lower = [(0, 0), (10, 0), (0, 10), (7, 7), (-20, 3)]
    # every upper cell sampled, so their union covers the plane
    lo, up = hand_levels(lower, [(10, 0), (-20, 3)], box, True)
    for t, p in enumerate(lo.vor.sites):
        h = build_hull(lo, 2, up, p)
        assert points_of(h.polygon.hv) == points_of(convex_hull_h(lo.vor.cell_vertices(t)))


def _probe(rng, hv):
    ws = [rng.randint(1, 9) for _ in hv]
    pts = [dehom(v) for v in hv]
    tot = sum(ws)
    return hom((sum(w * Fraction(p.x) for w, p in zip(ws, pts)) / tot,
                sum(w * Fraction(p.y) for w, p in zip(ws, pts)) / tot))


def test_points_in_hulls_are_nearest_to_their_site(structure):
    rng = random.Random(8)
    lv = structure.levels
    cases = [(i, j, t) for i in range(1, structure.f + 1) for j in lv[i].hulls for t in lv[i].hulls[j]]
    assert cases
    for _ in range(1000):
        i, j, t = rng.choice(cases)
        q = _probe(rng, lv[i].hulls[j][t])
        p = lv[i].vor.sites[t]
        both = set(lv[i].T) | set(lv[j].T)
        assert min(both, key=lambda s: site_key(q, s)) == p


def test_hulls_match_build_hull(structure):
    lv = structure.levels
    for i in (2, 4):
        for j, hs in lv[i].hulls.items():
            for t in list(hs)[:20]:
                h = build_hull(lv[i], j, lv[j], lv[i].vor.sites[t])
                assert h.polygon.hv == hs[t]


def linear_scan(hulls, levels, tail, q):
    for hv, j in zip(hulls, levels):
        if not hull_contains_strictly(hv, q):
            return j
    return tail


def random_hulls(rng, p, count):
    out = []
    for _ in range(count):
        pts = [(p[0], p[1], 1)]
        for _ in range(rng.randint(2, 9)):
            pts.append((p[0] + rng.randint(-40, 40), p[1] + rng.randint(-40, 40), 1))
        hv = convex_hull_h(pts)
        if len(hv) >= 3:
            out.append(tuple(hv))
    return out


def test_overlay_matches_linear_scan_on_random_hulls():
    rng = random.Random(2)
    p = (5, -3)
    for trial in range(200):
        hulls = random_hulls(rng, p, rng.randint(1, 5))
        if not hulls:
            continue
        levels = list(range(3, 3 + len(hulls)))
        tail = rng.choice([None, 3 + len(hulls)])
        ov = AngularOverlay(p, hulls, levels, tail)
        probes = [(p[0] + rng.randint(-50, 50), p[1] + rng.randint(-50, 50), 1) for _ in range(40)]
        # points on the breakpoint rays and on hull edges
        for hv in hulls:
            for X, Y, W in hv:
                probes.append((X, Y, W))
                probes.append((X + p[0] * W, Y + p[1] * W, 2 * W))
        for q in probes:
            if q[0] == p[0] * q[2] and q[1] == p[1] * q[2]:
                continue
            assert ov.query(q) == linear_scan(hulls, levels, tail, q)


def test_single_hull_covering_everything_reports_none():
    big = ((-100, -100, 1), (100, -100, 1), (100, 100, 1), (-100, 100, 1))
    ov = AngularOverlay((0, 0), [big], [2], None)
    rng = random.Random(0)
    for _ in range(100):
        assert ov.query((rng.randint(-99, 99), rng.randint(-99, 99), 1)) is None
    assert ov.query((100, 5, 1)) == 2


def test_missing_overlay_reports_first_level():
    lv = Level(3, [(0, 0)], [(0, 0)])
    assert overlay_query(lv, 1, 10, 0, (4, 4, 1)) == 5
    assert overlay_query(lv, 0, 3, 0, (4, 4, 1)) is None


def test_stored_overlays_match_linear_scan(structure):
    rng = random.Random(4)
    lv = structure.levels
    f = structure.f
    checked = 0
    for i in range(1, f + 1):
        vor = lv[i].vor
        for t_exp, per in lv[i].overlays.items():
            span = range_levels(i, t_exp, f)
            for p in list(per)[:40]:
                for _ in range(5):
                    x, y = vor.sites[p]
                    q = (x + rng.randint(-300, 300), y + rng.randint(-300, 300), 1)
                    if q[:2] == (x, y):
                        continue
                    want = None
                    for j in span:
                        hv = lv[i].hulls.get(j, {}).get(p)
                        if hv is None or not hull_contains_strictly(hv, q):
                            want = j
                            break
                    assert overlay_query(lv[i], t_exp, f, p, q) == want
                    checked += 1
    assert checked > 1000


def test_span_helpers():
    assert range_levels(3, 0, 10) == [4]
    assert range_levels(3, 2, 10) == [6, 7]
    assert range_levels(3, 2, 6) == [6]
    assert span_exponents(1, 1) == []
    assert span_exponents(2, 4) == [0, 1, 2]


@pytest.mark.skipif(kernels.compiled is None, reason="compiled kernels not built")
def test_hulls_identical_across_backends(structure):
    from nncascade import _kernels_py
    from nncascade.hulls import level_hulls
    lv = structure.levels
    for i in range(1, structure.f):
        for j in lv[i].hulls:
            a = level_hulls(lv[i], j, lv[j], _kernels_py)
            b = level_hulls(lv[i], j, lv[j], kernels.compiled)
            assert a == b


coord = st.integers(-30, 30)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(st.tuples(coord, coord), min_size=2, max_size=8), min_size=1, max_size=4),
       st.lists(st.tuples(coord, coord), min_size=1, max_size=20))
def test_overlay_property(clouds, queries):
    p = (0, 0)
    hulls = []
    for c in clouds:
        hv = convex_hull_h([(0, 0, 1)] + [(x, y, 1) for x, y in c])
        if len(hv) >= 3:
            hulls.append(tuple(hv))
    if not hulls:
        return
    levels = list(range(2, 2 + len(hulls)))
    ov = AngularOverlay(p, hulls, levels, None)
    for x, y in queries:
        if (x, y) != p:
            assert ov.query((x, y, 1)) == linear_scan(hulls, levels, None, (x, y, 1))
