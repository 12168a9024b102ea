"""Hull certificates and the angular overlay used to find the first escaped level.

A hull certificate for site p of a lower level and an upper level j is the
convex hull of p together with the part of p's lower cell covered by the
upper cells of the sites sampled from j. A query point strictly inside it
is strictly closer to p than to every site of the upper level.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import atan2, gcd, tau as TAU
from typing import List, Optional

from .geom import (ConvexPolygon, GeometryError, convex_hull_h, line_through, orient_h,
                   _half)


@dataclass(frozen=True)
class HullCertificate:
    i: int
    j: int
    site: tuple
    polygon: ConvexPolygon

    @property
    def degenerate(self) -> bool:
        return len(self.polygon) < 3


def level_hulls(lower, upper_index: int, upper, kern) -> tuple:
    """All nondegenerate hulls of one lower level against one upper level.

    Returns ({lower site index: hull vertices}, predicate count).
    """
    k = upper_index - lower.index
    div = upper.divisions.get(k)
    if div is None or not div.sample:
        return {}, 0
    sampled = div.sample
    start = [lower.vor.index[upper.vor.sites[s]] for s in sampled]
    touched, preds = kern.cell_overlaps(upper.vor.table, sampled, start,
                                        lower.vor.table, lower.vor.adj)
    out = {}
    xs, ys = lower.vor.xs, lower.vor.ys
    for t in sorted(touched):
        hv = convex_hull_h([(xs[t], ys[t], 1)] + touched[t])
        if len(hv) >= 3:
            out[t] = tuple(hv)
    return out, preds


def build_hull(lower, upper_index: int, upper, site, kern=None) -> HullCertificate:
    """Hull certificate of one lower-level site against an upper level."""
    from . import kernels
    kern = kern or kernels.for_domain(lower.vor.box.domain)
    hulls, _ = level_hulls(lower, upper_index, upper, kern)
    t = lower.vor.index[(site[0], site[1])]
    hv = hulls.get(t, ((site[0], site[1], 1),))
    return HullCertificate(lower.index, upper_index, (site[0], site[1]), ConvexPolygon(tuple(hv)))


def _dir(px, py, v):
    return (v[0] - px * v[2], v[1] - py * v[2])


_REF = (1, 0)


def _angle_cmp(u, v):
    hu, hv = _half(_REF, u), _half(_REF, v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = u[0] * v[1] - u[1] * v[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _ray(px, py, v):
    """Direction from site (px, py) to v, reduced so that equal rays compare equal."""
    dx, dy = v[0] - px * v[2], v[1] - py * v[2]
    g = gcd(dx, dy)
    return (dx // g, dy // g)


def _sort_by_angle(rays) -> list:
    # float pre-sort, then an exact insertion pass repairs any misordering
    out = sorted(rays, key=lambda u: atan2(u[1], u[0]) % TAU)
    for k in range(1, len(out)):
        u = out[k]
        m = k
        while m > 0 and _angle_cmp(out[m - 1], u) > 0:
            out[m] = out[m - 1]
            m -= 1
        out[m] = u
    return out


class AngularOverlay:
    """Overlay of several hulls around their common site, as angular slabs.

    The breakpoints are the directions of the far-edge endpoints of every
    hull. Inside one slab each hull is either bounded by a single far edge or
    does not reach there at all, so a query costs one binary search plus one
    side test per hull.
    """

    def __init__(self, site, hulls: List[tuple], levels: List[int], tail: Optional[int]):
        px, py = site
        self.site = site
        self.levels = levels
        self.tail = tail
        p = (px, py, 1)
        far = []
        rays = set()
        for hv in hulls:
            n = len(hv)
            edges = []
            for k in range(n):
                a, b = hv[k], hv[(k + 1) % n]
                if orient_h(p, a, b) > 0:
                    ra, rb = _ray(px, py, a), _ray(px, py, b)
                    edges.append((ra, rb, line_through(a, b)))
                    rays.add(ra)
                    rays.add(rb)
            far.append(edges)
        self.breaks = brk = _sort_by_angle(rays)
        nb = len(brk)
        if nb < 2:
            raise GeometryError("a nondegenerate hull spans at least two directions")
        pos = {u: k for k, u in enumerate(brk)}
        table = [[None] * len(hulls) for _ in range(nb)]
        for h, edges in enumerate(far):
            for ra, rb, line in edges:
                k, kb = pos[ra], pos[rb]
                while k != kb:
                    table[k][h] = line
                    k = (k + 1) % nb
        self.table = table
        self.build_cost = sum(len(hv) for hv in hulls) + nb * len(hulls)

    @property
    def complexity(self) -> int:
        return len(self.breaks) * max(1, len(self.levels))

    def query(self, q, tally=None) -> Optional[int]:
        """Smallest level whose hull does not strictly contain q, else the tail answer."""
        px, py = self.site
        u = _dir(px, py, q)
        brk = self.breaks
        tests = 1
        # largest k with angle(breaks[k]) <= angle(u); wraps to the last slab
        if _angle_cmp(brk[0], u) > 0:
            k = len(brk) - 1
            on_ray = False
        else:
            lo, hi = 0, len(brk)
            while hi - lo > 1:
                mid = (lo + hi) // 2
                tests += 1
                if _angle_cmp(brk[mid], u) <= 0:
                    lo = mid
                else:
                    hi = mid
            k = lo
            tests += 1
            on_ray = _angle_cmp(brk[k], u) == 0
        row = self.table[k]
        prev = self.table[k - 1] if on_ray else None
        X, Y, W = q
        answer = self.tail
        for h, level in enumerate(self.levels):
            line = row[h]
            tests += 1
            inside = line is not None and line[0] * X + line[1] * Y - line[2] * W < 0
            if inside and on_ray:
                other = prev[h]
                tests += 1
                inside = other is not None and other[0] * X + other[1] * Y - other[2] * W < 0
            if not inside:
                answer = level
                break
        if tally is not None:
            tally.predicates += tests
        return answer


def range_levels(i: int, t_exp: int, f: int) -> List[int]:
    """Upper levels j' examined by a jump from i with span 2**t_exp, clipped at f."""
    j = i + (1 << t_exp)
    first = i + 1 if t_exp == 0 else i + (1 << (t_exp - 1)) + 1
    return list(range(first, min(j, f) + 1))


def span_exponents(i: int, f: int) -> List[int]:
    """Exponents t with (i + (i + 2**t)) / 2 <= f."""
    out = []
    t = 0
    while 2 * i + (1 << t) <= 2 * f:
        out.append(t)
        t += 1
    return out


def build_overlays(level, f: int) -> tuple:
    """Per span exponent, the overlays of every site whose first hull is nondegenerate.

    Returns ({t: {site index: overlay}}, construction work).
    """
    out = {}
    work = 0
    xs, ys = level.vor.xs, level.vor.ys
    for t_exp in span_exponents(level.index, f):
        lv = range_levels(level.index, t_exp, f)
        per = {}
        if lv and lv[0] in level.hulls:
            first = level.hulls[lv[0]]
            for p in first:
                hs, used = [], []
                tail = None
                for jp in lv:
                    hv = level.hulls.get(jp, {}).get(p)
                    if hv is None:
                        tail = jp
                        break
                    hs.append(hv)
                    used.append(jp)
                ov = AngularOverlay((xs[p], ys[p]), hs, used, tail)
                work += ov.build_cost
                per[p] = ov
        out[t_exp] = per
    return out, work


def overlay_query(level, t_exp: int, f: int, p: int, q, tally=None) -> Optional[int]:
    """First level j' in the span whose hull around site p misses q, or None."""
    lv = range_levels(level.index, t_exp, f)
    if not lv:
        return None
    ov = level.overlays.get(t_exp, {}).get(p)
    if ov is None:
        if tally is not None:
            tally.predicates += 1
        return lv[0]
    return ov.query(q, tally)


def hull_contains_strictly(hv, q) -> bool:
    """Linear-scan oracle: q strictly inside a hull with at least three vertices."""
    n = len(hv)
    if n < 3:
        return False
    return all(orient_h(hv[k], hv[(k + 1) % n], q) > 0 for k in range(n))
