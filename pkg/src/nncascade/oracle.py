"""Brute-force ground truth, the plain logarithmic-method baseline, and validators."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Optional

import numpy as np

from .counters import Tally
from .division import validate_division
from .geom import ExactPoint, hom
from .voronoi import ClipBox, ClippedVoronoi, site_key


def _nearest(points, q):
    if not points:
        raise ValueError("nearest neighbor of an empty set")
    return min(points, key=lambda s: site_key(q, s))


class OracleSet:
    """Flat array of all inserted lattice points, searched by an exact linear scan."""

    def __init__(self):
        self.points: List[tuple] = []
        self._xy = np.zeros((16, 2), dtype=np.int64)

    def __len__(self) -> int:
        return len(self.points)

    def insert(self, p) -> None:
        k = len(self.points)
        if k == len(self._xy):
            self._xy = np.concatenate([self._xy, np.zeros_like(self._xy)])
        self._xy[k] = (p[0], p[1])
        self.points.append((p[0], p[1]))

    def brute_nn(self, q) -> tuple:
        """Nearest point to a homogeneous query, lexicographic ties."""
        if not self.points:
            raise ValueError("nearest neighbor of an empty set")
        X, Y, W = q
        # int64 holds the squared distances while every lattice coordinate and
        # the scaled query stay below 2**14 * W with W < 2**16
        if W >= 1 << 16 or max(abs(X), abs(Y)) >= (1 << 14) * W:
            return _nearest(self.points, q)
        xy = self._xy[:len(self.points)]
        dx = xy[:, 0] * W - X
        dy = xy[:, 1] * W - Y
        d = dx * dx + dy * dy
        ties = np.flatnonzero(d == d.min())
        return min(self.points[k] for k in ties)


def brute_nn(points, q) -> ExactPoint:
    """Exact argmin of squared distance with lexicographic ties (input coordinates)."""
    qh = hom(q)
    X, Y, W = qh
    qx, qy = Fraction(X, W), Fraction(Y, W)
    best = min(points, key=lambda s: ((Fraction(s[0]) - qx) ** 2 + (Fraction(s[1]) - qy) ** 2,
                                      Fraction(s[0]), Fraction(s[1])))
    return ExactPoint(best[0], best[1])


def range_nn_lattice(structure, lo: int, hi: int, q) -> tuple:
    pts = set()
    for i in range(lo, hi + 1):
        pts.update(structure.levels[i].T)
    return _nearest(list(pts), q)


def range_nn(structure, lo: int, hi: int, q) -> ExactPoint:
    """Nearest point over the union of T_lo..T_hi."""
    if not 1 <= lo <= hi <= structure.f:
        raise ValueError(f"empty level range [{lo}, {hi}]")
    return structure.from_lattice(range_nn_lattice(structure, lo, hi, structure.query_h(q)))


class BaselineStructure:
    """The same level partition, queried by locating in every level's own diagram."""

    def __init__(self, config):
        self.config = config
        self.S: List[List[tuple]] = []
        self.vors: List[Optional[ClippedVoronoi]] = []
        self.rebuild_work = 0

    def insert(self, site) -> None:
        cfg = self.config
        if not self.S:
            self.S.append([])
            self.vors.append(None)
        self.S[0] = sorted(self.S[0] + [site])
        i = 0
        top = 0
        while len(self.S[i]) > cfg.capacity(i + 1):
            move = -(-len(self.S[i]) // 2)
            moved, self.S[i] = self.S[i][:move], self.S[i][move:]
            if i + 1 == len(self.S):
                self.S.append([])
                self.vors.append(None)
            self.S[i + 1] = sorted(self.S[i + 1] + moved)
            i += 1
            top = i
        box = ClipBox(cfg.domain)
        for k in range(top, -1, -1):
            v = ClippedVoronoi(self.S[k], box, cfg.seed, with_cells=False) if self.S[k] else None
            self.vors[k] = v
            if v is not None:
                self.rebuild_work += v.build_predicates

    def query(self, q) -> tuple:
        """(nearest site, predicate count) for a homogeneous lattice-unit query."""
        tl = Tally()
        best = None
        for v in self.vors:
            if v is None:
                continue
            s = v.sites[v.locator.locate(q, tl)]
            if best is not None:
                tl.predicates += 1
            if best is None or site_key(q, s) < site_key(q, best):
                best = s
        if best is None:
            raise ValueError("query on an empty baseline")
        return best, tl.predicates


def baseline_query(baseline: BaselineStructure, q) -> tuple:
    return baseline.query(q)


@dataclass
class Report:
    violations: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> List[str]:
        out = [f"FAIL {v}" for v in self.violations]
        out += [f"WARN {w}" for w in self.warnings]
        out += [f"STAT {k}={v}" for k, v in sorted(self.stats.items())]
        return out


def _random_query(rng, B):
    return (rng.randint(-B, B), rng.randint(-B, B), 1)


def validate_level_sets(structure, probes: int = 1000, seed: int = 1) -> Report:
    """Checks of the six facts about the T_i sets."""
    from .levels import assemble_T
    rep = Report()
    f = structure.f
    if f == 0:
        return rep
    lv = structure.levels
    cfg = structure.config
    if lv[f].T != lv[f].S:
        rep.violations.append("T_f differs from S_f")
    for i in range(1, f + 1):
        if assemble_T(i, lv[i].S, lv) != lv[i].T:
            rep.violations.append(f"T_{i} is not S_{i} plus the higher samples")
    union_T = set()
    union_S = set()
    for i in range(1, f + 1):
        union_T.update(lv[i].T)
        if union_S & set(lv[i].S):
            rep.violations.append(f"S_{i} overlaps a lower S")
        union_S.update(lv[i].S)
    if union_T != structure.points or union_S != structure.points:
        rep.violations.append("levels do not cover exactly the stored points")
    rng = random.Random(seed)
    pts = sorted(structure.points)
    for _ in range(probes):
        q = _random_query(rng, cfg.domain)
        want = _nearest(pts, q)
        if not any(lv[i].vor.sites[lv[i].vor.locator.locate(q)] == want for i in range(1, f + 1)):
            rep.violations.append(f"NN(S, {q}) missing from the per-level answers")
            break
    worst = 0.0
    for i in range(1, f + 1):
        ratio = len(lv[i].T) / cfg.d ** i
        worst = max(worst, ratio)
        if ratio > cfg.c_T:
            rep.warnings.append(f"|T_{i}|={len(lv[i].T)} exceeds c_T*d^i")
        samples = sum(len(lv[j].sample(j - i)) for j in range(i + 1, f + 1))
        if samples > cfg.c_s * max(1, len(lv[i].T)):
            rep.warnings.append(f"samples into level {i} exceed c_s*|T_{i}|")
    rep.stats["max_T_over_d_i"] = round(worst, 3)
    return rep


def validate_divisions(structure) -> Report:
    rep = Report()
    cfg = structure.config
    for lv in structure.levels[1:]:
        for k, div in lv.divisions.items():
            for v in validate_division(div, lv.vor.adj, cfg.c_f, cfg.c_p, cfg.c_t):
                rep.violations.append(f"level {lv.index} k={k}: {v}")
    return rep


def validate_cell_complexity(structure) -> Report:
    """Cell sizes of sites that did not reach a lower level, and interior cell unions."""
    rep = Report()
    cfg = structure.config
    lv = structure.levels
    f = structure.f
    worst = 0.0
    for j in range(2, f + 1):
        vj = lv[j].vor
        deg = [len(a) for a in vj.adj]
        for i in range(1, j):
            bound = cfg.c_cell * cfg.d ** (4 * (j - i))
            Ti = set(lv[i].T)
            for k, s in enumerate(vj.sites):
                if s in Ti:
                    continue
                size = vj.cell_size(k)
                worst = max(worst, size / cfg.d ** (4 * (j - i)))
                if size > bound:
                    rep.warnings.append(f"cell of {s} in T_{j} has {size} edges")
            div = lv[j].divisions.get(j - i)
            if div is None:
                continue
            for l, P in enumerate(div.pieces):
                fs = set(div.fringes[l])
                interior = [v for v in P if v not in fs]
                inset = set(interior)
                edges = sum(1 for v in interior for u in vj.adj[v] if u not in inset)
                boundary = edges + sum(1 for v in interior if vj.cell_size(v) > deg[v])
                if boundary > bound:
                    rep.warnings.append(f"interior union of piece {l} at level {j} has {boundary} edges")
                # logic: an interior vertex never borders a different piece
                for v in interior:
                    for u in vj.adj[v]:
                        if div.piece_of[u] != l:
                            rep.violations.append(f"interior site {v} of piece {l} touches piece {div.piece_of[u]}")
    rep.stats["max_cell_over_d4k"] = round(worst, 3)
    return rep


# hull certificates ---------------------------------------------------------

def _frac(v) -> tuple:
    return (Fraction(v[0], v[2]), Fraction(v[1], v[2]))


def _to_h(x: Fraction, y: Fraction) -> tuple:
    w = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    return (x.numerator * (w // x.denominator), y.numerator * (w // y.denominator), w)


def _orient_f(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _in_closed_hull(hf, q) -> bool:
    n = len(hf)
    return all(_orient_f(hf[k], hf[(k + 1) % n], q) >= 0 for k in range(n))


def all_hulls(structure) -> list:
    """(lower level, upper level, lower site index, hull vertices) for every stored hull."""
    out = []
    for lv in structure.levels[1:]:
        for j in sorted(lv.hulls):
            for t in sorted(lv.hulls[j]):
                out.append((lv.index, j, t, lv.hulls[j][t]))
    return out


def _interior_probe(rng, hf):
    # positive weights on every vertex keep the point strictly inside
    ws = [rng.randint(1, 8) for _ in hf]
    tot = sum(ws)
    x = sum(w * v[0] for w, v in zip(ws, hf)) / tot
    y = sum(w * v[1] for w, v in zip(ws, hf)) / tot
    return x, y


def _boundary_probe(rng, hf):
    k = rng.randrange(len(hf))
    a, b = hf[k], hf[(k + 1) % len(hf)]
    s = Fraction(rng.randint(0, 16), 16)
    return a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])


def validate_hull_soundness(structure, probes: int = 10000, seed: int = 1,
                            brute_every: int = 10) -> Report:
    """Points of a hull certificate are nearest to its site among both levels.

    Interior probes must have the site as exact (distance, x, y) winner over
    T_i and T_j; boundary probes must have no strictly closer site. Answers
    come from each level's locator, and every brute_every-th probe is also
    checked by a linear scan of the two sets.
    """
    rep = Report()
    hulls = all_hulls(structure)
    rep.stats["hulls"] = len(hulls)
    if not hulls:
        return rep
    rng = random.Random(seed)
    lv = structure.levels
    checked = 0
    for n in range(probes):
        i, j, t, hv = hulls[rng.randrange(len(hulls))]
        hf = [_frac(v) for v in hv]
        p = lv[i].vor.sites[t]
        interior = n % 4 != 3
        x, y = _interior_probe(rng, hf) if interior else _boundary_probe(rng, hf)
        q = _to_h(x, y)
        cand = [lv[i].vor.sites[lv[i].vor.locator.locate(q)],
                lv[j].vor.sites[lv[j].vor.locator.locate(q)]]
        if n % brute_every == 0:
            cand.append(_nearest(list(set(lv[i].T) | set(lv[j].T)), q))
            checked += 1
        best = min(cand, key=lambda s: site_key(q, s))
        if interior:
            bad = best != p
        else:
            bad = site_key(q, best)[0] < site_key(q, p)[0]
        if bad:
            rep.violations.append(f"hull of {p} (levels {i}->{j}) holds {(x, y)} nearer to {best}")
            if len(rep.violations) > 20:
                break
    rep.stats["hull_probes"] = probes
    rep.stats["hull_probes_brute"] = checked
    return rep


def _components_outside(hf, a, b) -> list:
    """Maximal parameter runs of segment a->b (s in [0, 1]) lying outside the closed hull.

    Each run is reported as (starts at s=0, ends at s=1). The segment is cut
    at every crossing with a hull edge line and each breakpoint and open
    piece is classified separately.
    """
    cuts = {Fraction(0), Fraction(1)}
    n = len(hf)
    for k in range(n):
        u, v = hf[k], hf[(k + 1) % n]
        o0, o1 = _orient_f(u, v, a), _orient_f(u, v, b)
        if o0 != o1:
            s = o0 / (o0 - o1)
            if 0 <= s <= 1:
                cuts.add(s)
    cuts = sorted(cuts)

    def at(s):
        return (a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]))

    pieces = []  # (outside, touches 0, touches 1)
    for m, s in enumerate(cuts):
        pieces.append((not _in_closed_hull(hf, at(s)), s == 0, s == 1))
        if m + 1 < len(cuts):
            mid = (s + cuts[m + 1]) / 2
            pieces.append((not _in_closed_hull(hf, at(mid)), False, False))
    runs = []
    cur = None
    for out, z, o in pieces:
        if out:
            cur = [cur[0] or z, cur[1] or o] if cur else [z, o]
        elif cur:
            runs.append(tuple(cur))
            cur = None
    if cur:
        runs.append(tuple(cur))
    return runs


def validate_hull_complement(structure, probes: int = 1000, seed: int = 2) -> Report:
    """Shape of the cell part outside each hull.

    Checks that the hull lies in its cell, that every cell edge meets the
    complement in at most two runs each holding an edge endpoint, and that
    the segment from the site to a boundary point meets it in at most one
    run, which holds that boundary point.
    """
    rep = Report()
    hulls = all_hulls(structure)
    if not hulls:
        return rep
    rng = random.Random(seed)
    lv = structure.levels
    for n in range(probes):
        i, j, t, hv = hulls[rng.randrange(len(hulls))]
        p = lv[i].vor.sites[t]
        hf = [_frac(v) for v in hv]
        cell = [_frac(v) for v in lv[i].vor.cell_vertices(t)]
        tag = f"hull of {p} (levels {i}->{j})"
        if not all(_in_closed_hull(cell, v) for v in hf):
            rep.violations.append(f"{tag} leaves its cell")
            continue
        m = len(cell)
        k = rng.randrange(m)
        a, b = cell[k], cell[(k + 1) % m]
        if a != b:
            runs = _components_outside(hf, a, b)
            if len(runs) > 2 or any(not (z or o) for z, o in runs):
                rep.violations.append(f"{tag}: edge {k} meets the complement in runs {runs}")
        s = Fraction(rng.randint(0, 16), 16)
        q = (a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]))
        pf = (Fraction(p[0]), Fraction(p[1]))
        if q != pf:
            runs = _components_outside(hf, pf, q)
            if len(runs) > 1 or any(not o for _, o in runs):
                rep.violations.append(f"{tag}: segment to {q} meets the complement in runs {runs}")
        if len(rep.violations) > 20:
            break
    rep.stats["complement_probes"] = probes
    return rep
