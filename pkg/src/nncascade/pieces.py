"""Piece lookup tables and per-piece nearest-neighbor search."""

from __future__ import annotations

from typing import Dict, List, Sequence

from .counters import Tally
from .voronoi import ClippedVoronoi, site_key


class PieceInterior:
    """Stand-alone diagram over exactly the sites of one piece."""

    __slots__ = ("sites", "vor")

    def __init__(self, sites: Sequence[tuple], box, seed: int):
        self.sites = list(sites)
        self.vor = ClippedVoronoi(self.sites, box, seed, with_cells=False)

    def nearest(self, q, tally=None) -> tuple:
        return self.vor.sites[self.vor.locator.locate(q, tally)]


def build_interiors(vor: ClippedVoronoi, div, seed: int) -> tuple:
    """One PieceInterior per piece; returns (interiors, build predicates)."""
    out = []
    work = 0
    for P in div.pieces:
        pi = PieceInterior([vor.sites[v] for v in P], vor.box, seed)
        work += pi.vor.build_predicates
        out.append(pi)
    return out, work


def precompute_lookup(lower, upper, k: int) -> tuple:
    """Piece of NN(upper, v) for every cell vertex v of the lower diagram.

    Returns ({lower site: [piece index per vertex slot]}, predicates). Walks
    go around each cell, each starting where the previous one ended.
    """
    div = upper.divisions[k]
    uv = upper.vor
    loc = uv.locator
    table: Dict[int, List[int]] = {}
    tl = Tally()
    lv = lower.vor
    for t, (x, y) in enumerate(lv.sites):
        start = uv.index.get((x, y))
        if start is None:
            start = loc.locate((x, y, 1), tl)
        row = []
        for X, Y, W in lv.cell_vertices(t):
            nn = start = loc.walk((X, Y, W), start, tl)
            row.append(div.piece_of[nn])
        table[t] = row
    return table, tl.predicates


def piece_nn(pieces: Sequence[PieceInterior], q, tally=None) -> tuple:
    """Nearest site over the union of one or two piece interiors, lexicographic ties."""
    if not pieces:
        raise ValueError("piece search over an empty union")
    best = None
    seen = set()
    for pc in pieces:
        if id(pc) in seen:
            continue
        seen.add(id(pc))
        s = pc.nearest(q, tally)
        if best is None or site_key(q, s) < site_key(q, best):
            best = s
        if tally is not None and len(seen) > 1:
            tally.predicates += 1
    return best


def is_nearest_in(vor: ClippedVoronoi, k: int, q, tally=None) -> bool:
    """Exact check that site k of vor is the (distance, x, y)-least site for q."""
    X, Y, W = q
    xs, ys = vor.xs, vor.ys
    cx, cy = xs[k], ys[k]
    tests = 0
    ok = True
    for u in vor.adj[k]:
        tests += 1
        ux, uy = xs[u], ys[u]
        d = W * (ux * ux + uy * uy - cx * cx - cy * cy) - 2 * (X * (ux - cx) + Y * (uy - cy))
        if d < 0 or (d == 0 and u < k):
            ok = False
            break
    if tally is not None:
        tally.predicates += tests
    return ok
