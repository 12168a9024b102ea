"""Jumps between levels and the nearest-neighbor query loop."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .counters import QueryCounters, Tally
from .geom import ExactPoint, ray_exit_edge_h
from .hulls import overlay_query
from .pieces import is_nearest_in, piece_nn
from .voronoi import site_key


@dataclass(frozen=True)
class Failure:
    """No level in the examined span has a site closer to q than the current one."""


@dataclass(frozen=True)
class Triple:
    level: int
    site_index: int
    edge: Optional[int]  # None when q coincides with the site

    def site(self, structure) -> tuple:
        return structure.levels[self.level].vor.sites[self.site_index]


JumpOutcome = Union[Failure, Triple]
FAILURE = Failure()


def _exit_edge(vor, k, q, tally) -> int:
    hv = vor.cell_vertices(k)
    x, y = vor.sites[k]
    return ray_exit_edge_h(hv, (x, y, 1), q, tally)


def _same(q, s) -> bool:
    return q[0] == s[0] * q[2] and q[1] == s[1] * q[2]


def jump_indexed(structure, i: int, j: int, q, p_idx: int, e_idx: int,
                 counters: QueryCounters) -> JumpOutcome:
    span = j - i
    if span <= 0 or span & (span - 1):
        raise ValueError(f"jump span {span} is not a power of two")
    levels = structure.levels
    f = structure.f
    lower = levels[i]
    counters.jumps += 1
    t_exp = span.bit_length() - 1
    tl = Tally()
    jp = overlay_query(lower, t_exp, f, p_idx, q, tl)
    counters.overlay += tl.predicates
    counters.predicates += tl.predicates
    if jp is None:
        counters.failures += 1
        return FAILURE
    upper = levels[jp]
    k = jp - i
    tl = Tally()
    table = lower.lookup.get(jp)
    if table is not None:
        row = table[p_idx]
        l1 = row[e_idx]
        l2 = row[(e_idx + 1) % len(row)]
        pcs = upper.interiors[k]
        union = [pcs[l1]] if l1 == l2 else [pcs[l1], pcs[l2]]
        site = piece_nn(union, q, tl)
        idx = upper.vor.index[site]
        if not is_nearest_in(upper.vor, idx, q, tl):
            counters.fallbacks += 1
            idx = upper.vor.locator.locate(q, tl)
    else:
        counters.bypasses += 1
        idx = upper.vor.locator.locate(q, tl)
    counters.piece += tl.predicates
    counters.predicates += tl.predicates
    site = upper.vor.sites[idx]
    if _same(q, site):
        return Triple(jp, idx, None)
    tl = Tally()
    e = _exit_edge(upper.vor, idx, q, tl)
    counters.ray += tl.predicates
    counters.predicates += tl.predicates
    return Triple(jp, idx, e)


def jump(structure, i: int, j: int, q, p_i, e_i: int,
         counters: Optional[QueryCounters] = None) -> JumpOutcome:
    """Jump from level i over the span (i, j] for query q (input coordinates)."""
    qh = structure.query_h(q)
    p_idx = structure.levels[i].vor.site_of(structure.to_lattice(p_i))
    return jump_indexed(structure, i, j, qh, p_idx, e_i, counters or QueryCounters())


def nearest_lattice(structure, q, counters: Optional[QueryCounters] = None) -> tuple:
    """Nearest site (lattice units) for a homogeneous lattice-unit query."""
    if structure.f == 0:
        raise ValueError("query on an empty structure")
    if counters is None:
        counters = QueryCounters()
    levels = structure.levels
    f = structure.f
    debug = structure.config.debug
    first = levels[1].vor
    tl = Tally()
    k = first.locator.locate(q, tl)
    counters.locate += tl.predicates
    counters.predicates += tl.predicates
    best = first.sites[k]
    if _same(q, best):
        return best
    tl = Tally()
    e = _exit_edge(first, k, q, tl)
    counters.ray += tl.predicates
    counters.predicates += tl.predicates
    i, j, p_idx = 1, 2, k
    while i + j <= 2 * f:
        if debug:
            from .oracle import range_nn_lattice
            top = min(f, (i + j) // 2)
            want = range_nn_lattice(structure, 1, top, q)
            if want != best:
                raise AssertionError(f"loop invariant broken at i={i} j={j}")
        out = jump_indexed(structure, i, j, q, p_idx, e, counters)
        if isinstance(out, Failure):
            if debug:
                _check_failure(structure, i, j, q, levels[i].vor.sites[p_idx])
            j = 2 * j - i
            continue
        site = out.site(structure)
        if debug:
            from .oracle import range_nn_lattice
            if range_nn_lattice(structure, out.level, out.level, q) != site:
                raise AssertionError("jump returned a site that is not nearest on its level")
        counters.predicates += 1
        if site_key(q, site) < site_key(q, best):
            best = site
        if out.edge is None:
            return site
        i, j, p_idx, e = out.level, out.level + 1, out.site_index, out.edge
    return best


def _check_failure(structure, i, j, q, p):
    f = structure.f
    lo = (i + j) // 2 + 1
    for jp in range(lo, min(j, f) + 1):
        for s in structure.levels[jp].T:
            if site_key(q, s) < site_key(q, p):
                raise AssertionError(f"failure certificate broken at level {jp}")


def nn_query(structure, q, counters: Optional[QueryCounters] = None) -> ExactPoint:
    """Nearest stored point to q, ties to the lexicographically smallest."""
    return structure.from_lattice(nearest_lattice(structure, structure.query_h(q), counters))
