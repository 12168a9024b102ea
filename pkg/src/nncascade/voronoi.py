"""Clipped Voronoi diagrams, their Delaunay duals and point location."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .geom import ConvexPolygon, ExactPoint, GeometryError, HPoint, hom, normalize

MASK64 = (1 << 64) - 1
HIERARCHY_RATIO_BITS = 3  # one site in 8 survives to the next coarser level
TOP_SIZE = 12


class DomainError(ValueError):
    """A site or query outside the configured coordinate domain."""


@dataclass(frozen=True)
class ClipBox:
    """The clipping square [-half_width, half_width]^2, three times the domain."""

    domain: int

    @property
    def half_width(self) -> int:
        return 3 * self.domain

    def contains(self, q: HPoint) -> bool:
        L = self.half_width
        return abs(q[0]) <= L * q[2] and abs(q[1]) <= L * q[2]


def mix64(x: int, y: int, seed: int) -> int:
    """splitmix64 finalizer over a coordinate pair; identical in both backends."""
    z = (x * 0x9E3779B97F4A7C15 + y * 0xC2B2AE3D27D4EB4F + seed * 0x165667B19E3779F9
         + 0x27D4EB2F165667C5) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def hierarchy_height(x: int, y: int, seed: int) -> int:
    h = mix64(x, y, seed)
    k = 0
    mask = (1 << HIERARCHY_RATIO_BITS) - 1
    while k < 20 and (h & mask) == 0:
        h >>= HIERARCHY_RATIO_BITS
        k += 1
    return k


def closer(q: HPoint, ax: int, ay: int, bx: int, by: int) -> bool:
    """True when lattice site a precedes b in (distance to q, x, y) order."""
    X, Y, W = q
    v = W * (ax * ax + ay * ay - bx * bx - by * by) - 2 * (X * (ax - bx) + Y * (ay - by))
    if v:
        return v < 0
    return (ax, ay) < (bx, by)


class Locator:
    """Delaunay hierarchy over lex-sorted lattice sites.

    Each coarser level keeps the sites whose coordinate hash clears another
    3-bit filter. A query scans the top level, then walks greedily downhill in
    (distance, x, y) order at each finer level; the walk ends at the nearest
    site because Delaunay graphs have no other local minima.
    """

    def __init__(self, xs, ys, adj, seed: int, kern):
        self.levels = [(xs, ys, adj)]
        self.down = []
        self.build_predicates = 0
        heights = [hierarchy_height(x, y, seed) for x, y in zip(xs, ys)]
        members = list(range(len(xs)))
        h = 1
        while len(members) > TOP_SIZE:
            upper = [m for m in members if heights[m] >= h]
            if len(upper) < 2 or len(upper) == len(members):
                break
            pos = {m: k for k, m in enumerate(members)}
            self.down.append([pos[m] for m in upper])
            uxs = [xs[m] for m in upper]
            uys = [ys[m] for m in upper]
            uadj, c = kern.delaunay(uxs, uys)
            self.build_predicates += c
            self.levels.append((uxs, uys, uadj))
            members = upper
            h += 1

    def locate(self, q: HPoint, tally=None) -> int:
        levels = self.levels
        xs, ys, adj = levels[-1]
        X, Y, W = q
        best = 0
        comps = 0
        for k in range(1, len(xs)):
            comps += 1
            if closer(q, xs[k], ys[k], xs[best], ys[best]):
                best = k
        v = best
        for lvl in range(len(levels) - 1, -1, -1):
            if lvl < len(levels) - 1:
                v = self.down[lvl][v]
            xs, ys, adj = levels[lvl]
            while True:
                cur = v
                cx, cy = xs[v], ys[v]
                for u in adj[cur]:
                    comps += 1
                    ux, uy = xs[u], ys[u]
                    d = W * (ux * ux + uy * uy - cx * cx - cy * cy) - 2 * (X * (ux - cx) + Y * (uy - cy))
                    if d < 0 or (d == 0 and u < v):
                        v, cx, cy = u, ux, uy
                if v == cur:
                    break
        if tally is not None:
            tally.predicates += comps
        return v

    def walk(self, q: HPoint, start: int, tally=None) -> int:
        """Greedy descent on the finest level only, from a given site."""
        xs, ys, adj = self.levels[0]
        X, Y, W = q
        v = start
        comps = 0
        while True:
            cur = v
            cx, cy = xs[v], ys[v]
            for u in adj[cur]:
                comps += 1
                ux, uy = xs[u], ys[u]
                d = W * (ux * ux + uy * uy - cx * cx - cy * cy) - 2 * (X * (ux - cx) + Y * (uy - cy))
                if d < 0 or (d == 0 and u < v):
                    v, cx, cy = u, ux, uy
            if v == cur:
                break
        if tally is not None:
            tally.predicates += comps
        return v


def _as_lattice(p) -> tuple:
    x, y = p[0], p[1]
    if not (isinstance(x, int) and isinstance(y, int)):
        try:
            if x.denominator == 1 and y.denominator == 1:
                return (int(x), int(y))
        except AttributeError:
            pass
        raise DomainError(f"site {p!r} is not on the integer lattice")
    return (x, y)


class _CellView:
    __slots__ = ("vor",)

    def __init__(self, vor):
        self.vor = vor

    def __len__(self):
        return len(self.vor.sites)

    def __getitem__(self, k):
        return self.vor.cell(k)

    def __iter__(self):
        for k in range(len(self.vor.sites)):
            yield self.vor.cell(k)


class ClippedVoronoi:
    """Voronoi diagram of lattice sites clipped to a ClipBox, with its Delaunay dual.

    Sites are kept sorted lexicographically; a site's index is its rank.
    Cells are computed on first use.
    """

    def __init__(self, sites: Iterable, box: ClipBox, seed: int = 0, with_cells: bool = True):
        pts = sorted(_as_lattice(p) for p in sites)
        if not pts:
            raise GeometryError("a diagram needs at least one site")
        B = box.domain
        for k, (x, y) in enumerate(pts):
            if abs(x) > B or abs(y) > B:
                raise DomainError(f"site ({x}, {y}) outside [-{B}, {B}]^2")
            if k and pts[k - 1] == (x, y):
                raise GeometryError(f"duplicate site ({x}, {y})")
        self.box = box
        self.sites = pts
        self.index = {p: k for k, p in enumerate(pts)}
        self.xs = [p[0] for p in pts]
        self.ys = [p[1] for p in pts]
        self.kern = kernels.for_domain(B)
        self.adj, c = self.kern.delaunay(self.xs, self.ys)
        self.build_predicates = c
        self.locator = Locator(self.xs, self.ys, self.adj, seed, self.kern)
        self.build_predicates += self.locator.build_predicates
        self._table = None
        if with_cells:
            self.table

    def __len__(self) -> int:
        return len(self.sites)

    @property
    def table(self) -> tuple:
        """Flat cell table (off, tag, A, B, C, X, Y, W); see voronoi_cells."""
        if self._table is None:
            self._table, c = self.kern.voronoi_cells(self.xs, self.ys, self.adj, self.box.half_width)
            self.build_predicates += c
        return self._table

    @property
    def cells(self) -> "_CellView":
        return _CellView(self)

    def cell(self, k: int) -> tuple:
        """(tags, A, B, C, X, Y, W) of cell k."""
        off, tag, A, B, C, X, Y, W = self.table
        a, b = off[k], off[k + 1]
        return (tag[a:b], A[a:b], B[a:b], C[a:b], X[a:b], Y[a:b], W[a:b])

    def cell_size(self, k: int) -> int:
        off = self.table[0]
        return off[k + 1] - off[k]

    def cell_vertices(self, k: int) -> list:
        off, _, _, _, _, X, Y, W = self.table
        a, b = off[k], off[k + 1]
        return list(zip(X[a:b], Y[a:b], W[a:b]))

    def cell_polygon(self, k: int) -> ConvexPolygon:
        return ConvexPolygon(tuple(self.cell_vertices(k)))

    def cell_edges(self, k: int) -> list:
        """(A, B, C, tag) per edge of cell k; tag is a neighbor index or a negative box side."""
        tags, A, B, C, _, _, _ = self.cell(k)
        return list(zip(A, B, C, tags))

    @property
    def dual_adjacency(self) -> list:
        return self.adj

    @property
    def vertex_list(self) -> list:
        _, _, _, _, _, X, Y, W = self.table
        return sorted({normalize(v) for v in zip(X, Y, W)})

    def locate_index(self, q: HPoint, tally=None) -> int:
        if not self.box.contains(q):
            raise DomainError("query outside the clipping square")
        return self.locator.locate(q, tally)

    def site_of(self, p) -> int:
        try:
            return self.index[(p[0], p[1])]
        except KeyError:
            raise KeyError(f"{p!r} is not a site of this diagram") from None


def build_diagram(P: Sequence, box: ClipBox, seed: int = 0) -> ClippedVoronoi:
    return ClippedVoronoi(P, box, seed)


def locate(v: ClippedVoronoi, q) -> ExactPoint:
    k = v.locate_index(hom(q))
    return ExactPoint(*v.sites[k])


def cell_of(v: ClippedVoronoi, p) -> ConvexPolygon:
    return v.cell_polygon(v.site_of(_as_lattice(p)))


def site_key(q: HPoint, s) -> tuple:
    """Sort key (scaled squared distance, x, y); valid for comparisons at a fixed q."""
    X, Y, W = q
    dx = s[0] * W - X
    dy = s[1] * W - Y
    return (dx * dx + dy * dy, s[0], s[1])


def merge_union_nn(A: ClippedVoronoi, B: ClippedVoronoi, q) -> ExactPoint:
    qh = hom(q)
    a = A.sites[A.locate_index(qh)]
    b = B.sites[B.locate_index(qh)]
    return ExactPoint(*min(a, b, key=lambda s: site_key(qh, s)))
