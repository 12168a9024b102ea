"""Leveled point sets, their per-level search structures, and insertion."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from . import kernels
from .division import RDivision, division_for_level
from .geom import ExactPoint, GeometryError
from .hulls import build_overlays, level_hulls
from .pieces import PieceInterior, build_interiors, precompute_lookup
from .voronoi import ClipBox, ClippedVoronoi, DomainError


@dataclass
class Config:
    d: int = 2
    c_lo: float = 1.0
    c_hi: float = 4.0
    domain: int = 1 << 13
    scale: int = 1  # lattice units per input unit
    piece_scale: int = 32  # pieces target piece_scale * d^(4k) sites
    c_f: float = 8.0
    c_p: float = 4.0
    c_t: float = 4.0
    c_s: float = 4.0
    c_cell: float = 8.0
    c_T: float = 8.0
    seed: int = 0
    debug: bool = False

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("d must be at least 2")
        if not self.c_lo < self.c_hi:
            raise ValueError("need c_lo < c_hi")
        if self.domain < 1 or self.scale < 1:
            raise ValueError("domain and scale must be positive")

    def capacity(self, i: int) -> float:
        return self.c_hi * self.d ** i

    def piece_target(self, k: int) -> int:
        return self.piece_scale * self.d ** (4 * k)


@dataclass
class Level:
    index: int
    S: List[tuple]
    T: List[tuple] = field(default_factory=list)
    vor: Optional[ClippedVoronoi] = None
    divisions: Dict[int, RDivision] = field(default_factory=dict)
    interiors: Dict[int, List[PieceInterior]] = field(default_factory=dict)
    hulls: Dict[int, Dict[int, tuple]] = field(default_factory=dict)
    overlays: Dict[int, dict] = field(default_factory=dict)
    lookup: Dict[int, Dict[int, List[int]]] = field(default_factory=dict)
    build_work: int = 0

    def sample(self, k: int) -> List[tuple]:
        div = self.divisions.get(k)
        if div is None:
            return []
        return [self.vor.sites[v] for v in div.sample]


def assemble_T(i: int, S_i, levels) -> List[tuple]:
    """S_i together with Sample_j(j - i) of every higher level j."""
    pts = set(S_i)
    for j in range(i + 1, len(levels)):
        pts.update(levels[j].sample(j - i))
    return sorted(pts)


def build_level(i: int, S_i: List[tuple], levels: list, config: Config) -> Level:
    """Build level i from its own points and the (already valid) levels above it."""
    f = len(levels) - 1
    box = ClipBox(config.domain)
    kern = kernels.for_domain(config.domain)
    lv = Level(i, sorted(S_i))
    lv.T = assemble_T(i, S_i, levels)
    lv.vor = ClippedVoronoi(lv.T, box, config.seed)
    work = lv.vor.build_predicates
    n = len(lv.T)
    for k in range(1, i):
        if config.piece_target(k) * 2 > n:
            break  # a single piece; nothing sampled, nothing to index
        div = division_for_level(lv.vor.adj, lv.vor.xs, lv.vor.ys, k, config.d,
                                 config.piece_scale, config.c_f)
        work += div.work
        if div.trivial:
            continue
        lv.divisions[k] = div
        lv.interiors[k], w = build_interiors(lv.vor, div, config.seed)
        work += w
    for j in range(i + 1, f + 1):
        hulls, w = level_hulls(lv, j, levels[j], kern)
        work += w
        if hulls:
            lv.hulls[j] = hulls
    lv.overlays, w = build_overlays(lv, f)
    work += w
    for j in range(i + 1, min(2 * i, f) + 1):
        if (j - i) in levels[j].divisions:
            lv.lookup[j], w = precompute_lookup(lv, levels[j], j - i)
            work += w
    lv.build_work = work
    return lv


class Structure:
    """Insertion-only nearest-neighbor structure over lattice points.

    ``levels[1..f]``; index 0 is unused so that level numbers match.
    """

    def __init__(self, config: Optional[Config] = None):
        self.config = config or Config()
        self.levels: List[Optional[Level]] = [None]
        self.points = set()
        self.rebuild_work = 0
        self.inserts = 0

    @property
    def f(self) -> int:
        return len(self.levels) - 1

    def __len__(self) -> int:
        return len(self.points)

    # coordinates -------------------------------------------------------
    def to_lattice(self, p) -> tuple:
        """Map an input point to lattice units; non-lattice sites are a domain error."""
        s = self.config.scale
        out = []
        for c in (p[0], p[1]):
            v = Fraction(c) * s
            if v.denominator != 1:
                raise DomainError(f"coordinate {c} is not a multiple of 1/{s}")
            out.append(v.numerator)
        x, y = out
        B = self.config.domain
        if abs(x) > B or abs(y) > B:
            raise DomainError(f"point {p} outside the domain")
        return (x, y)

    def query_h(self, q) -> tuple:
        """Homogeneous lattice-unit form of an input query point."""
        s = self.config.scale
        x, y = Fraction(q[0]) * s, Fraction(q[1]) * s
        B = self.config.domain
        if abs(x) > B or abs(y) > B:
            raise DomainError(f"query {q} outside the domain")
        w = x.denominator * y.denominator
        from math import gcd
        w //= gcd(x.denominator, y.denominator)
        return (x.numerator * (w // x.denominator), y.numerator * (w // y.denominator), w)

    def from_lattice(self, p) -> ExactPoint:
        s = self.config.scale
        if s == 1:
            return ExactPoint(p[0], p[1])
        fx, fy = Fraction(p[0], s), Fraction(p[1], s)
        return ExactPoint(fx.numerator if fx.denominator == 1 else fx,
                          fy.numerator if fy.denominator == 1 else fy)

    # insertion ---------------------------------------------------------
    def insert(self, p) -> int:
        """Insert an input point; returns the rebuild work this insertion caused."""
        site = self.to_lattice(p)
        if site in self.points:
            raise GeometryError(f"duplicate point {p}")
        self.points.add(site)
        self.inserts += 1
        cfg = self.config
        if self.f == 0:
            self.levels.append(Level(1, []))
        S = [None] + [lv.S for lv in self.levels[1:]]
        S[1] = sorted(S[1] + [site])
        top = 1
        i = 1
        while len(S[i]) > cfg.capacity(i):
            move = -(-len(S[i]) // 2)
            moved, S[i] = S[i][:move], S[i][move:]
            if i + 1 > len(S) - 1:
                S.append([])
                self.levels.append(Level(i + 1, []))
            S[i + 1] = sorted(S[i + 1] + moved)
            i += 1
            top = i
        work = 0
        for k in range(top, 0, -1):
            lv = build_level(k, S[k], self.levels, cfg)
            self.levels[k] = lv
            work += lv.build_work
        self.rebuild_work += work
        if cfg.debug:
            from .oracle import validate_level_sets
            rep = validate_level_sets(self, probes=20)
            if rep.violations:
                raise AssertionError("; ".join(rep.violations))
        return work

    def S_sets(self) -> List[List[tuple]]:
        return [lv.S for lv in self.levels[1:]]

    def T_sets(self) -> List[List[tuple]]:
        return [lv.T for lv in self.levels[1:]]

    def nearest(self, q):
        from .query import nn_query
        return nn_query(self, q)


def insert(structure: Structure, p) -> Structure:
    structure.insert(p)
    return structure
