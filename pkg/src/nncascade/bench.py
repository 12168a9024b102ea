"""Workload generators and the structure-versus-baseline benchmark."""

from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence

from .counters import QueryCounters
from .geom import ExactPoint
from .io import Op
from .levels import Config, Structure
from .oracle import BaselineStructure
from .query import nearest_lattice

DISTRIBUTIONS = ("uniform", "clustered", "grid")


def _clamp(v: int, B: int) -> int:
    return max(-B, min(B, v))


def point_stream(distribution: str, domain: int, rng: random.Random) -> Iterator[tuple]:
    """Endless stream of lattice points in [-domain, domain]^2 (may repeat)."""
    B = domain
    if distribution == "uniform":
        while True:
            yield (rng.randint(-B, B), rng.randint(-B, B))
    elif distribution == "clustered":
        centers = [(rng.randint(-B, B), rng.randint(-B, B)) for _ in range(8)]
        sigma = max(1.0, B / 40)
        while True:
            cx, cy = centers[rng.randrange(len(centers))]
            yield (_clamp(round(rng.gauss(cx, sigma)), B), _clamp(round(rng.gauss(cy, sigma)), B))
    elif distribution == "grid":
        # a coarse lattice, deliberately full of cocircular quadruples
        step = max(1, B // 64)
        side = 2 * (B // step) + 1
        while True:
            yield (-B + step * rng.randrange(side), -B + step * rng.randrange(side))
    else:
        raise ValueError(f"unknown distribution {distribution!r}")


def distinct_points(n: int, distribution: str, domain: int, rng: random.Random) -> List[tuple]:
    seen = set()
    out = []
    for p in point_stream(distribution, domain, rng):
        if p not in seen:
            seen.add(p)
            out.append(p)
            if len(out) == n:
                return out
        if len(seen) > 64 * n + 10000:
            raise ValueError("distribution cannot supply that many distinct points")
    return out


def generate_workload(n_ops: int, distribution: str, seed: int, domain: int,
                      query_fraction: float = 0.5) -> List[Op]:
    """Interleaved inserts and queries; the first op is always an insert.

    About one query in sixteen asks for an already stored point.
    """
    rng = random.Random(seed)
    stream = point_stream(distribution, domain, rng)
    qstream = point_stream(distribution, domain, random.Random(seed ^ 0x5EED))
    stored: List[tuple] = []
    seen = set()
    ops: List[Op] = []
    while len(ops) < n_ops:
        if stored and rng.random() < query_fraction:
            if rng.random() < 1 / 16:
                q = stored[rng.randrange(len(stored))]
            else:
                q = next(qstream)
            ops.append(Op("Q", ExactPoint(*q)))
            continue
        for _ in range(1000):
            p = next(stream)
            if p not in seen:
                break
        else:
            continue
        seen.add(p)
        stored.append(p)
        ops.append(Op("I", ExactPoint(*p)))
    return ops


@dataclass
class SizeRow:
    n: int
    distribution: str
    seed: int
    levels: int
    queries: int
    query_mean: float
    query_p95: int
    query_mean_per_log: float
    baseline_mean: float
    baseline_p95: int
    baseline_mean_per_log: float
    insert_work_per_n: float
    insert_work_per_log3: float
    fallbacks: int
    bypasses: int
    mismatches: int


BENCH_COLUMNS = list(SizeRow.__dataclass_fields__)


def _p95(vals: Sequence[int]) -> int:
    s = sorted(vals)
    return s[min(len(s) - 1, math.ceil(0.95 * len(s)) - 1)]


def measure(structure: Structure, baseline: Optional[BaselineStructure], queries: Sequence[tuple],
            distribution: str, seed: int) -> SizeRow:
    """Query both structures at their current size and summarize the counters."""
    n = len(structure)
    lg = math.log2(max(n, 2))
    ours, base = [], []
    fallbacks = bypasses = mismatches = 0
    for q in queries:
        qc = QueryCounters()
        a = nearest_lattice(structure, q, qc)
        ours.append(qc.predicates)
        fallbacks += qc.fallbacks
        bypasses += qc.bypasses
        if baseline is not None:
            b, cost = baseline.query(q)
            base.append(cost)
            if a != b:
                mismatches += 1
    bm = sum(base) / len(base) if base else 0.0
    work = structure.rebuild_work / n
    return SizeRow(
        n=n, distribution=distribution, seed=seed, levels=structure.f, queries=len(queries),
        query_mean=round(sum(ours) / len(ours), 3), query_p95=_p95(ours),
        query_mean_per_log=round(sum(ours) / len(ours) / lg, 3),
        baseline_mean=round(bm, 3), baseline_p95=_p95(base) if base else 0,
        baseline_mean_per_log=round(bm / lg, 3),
        insert_work_per_n=round(work, 3), insert_work_per_log3=round(work / lg ** 3, 5),
        fallbacks=fallbacks, bypasses=bypasses, mismatches=mismatches,
    )


def run_sweep(sizes: Sequence[int], distribution: str, seed: int, config: Config,
              queries: int = 500, baseline: bool = True, on_size=None) -> List[SizeRow]:
    """Insert one point stream, measuring at each requested size on the way up.

    ``on_size(structure)`` runs after each measurement, e.g. for validators.
    """
    sizes = sorted(set(sizes))
    if not sizes or sizes[0] < 1:
        raise ValueError("sizes must be positive")
    rng = random.Random(seed)
    pts = distinct_points(sizes[-1], distribution, config.domain, rng)
    qrng = random.Random(seed + 1)
    B = config.domain
    S = Structure(config)
    base = BaselineStructure(config) if baseline else None
    rows = []
    done = 0
    for n in sizes:
        for p in pts[done:n]:
            S.insert(p)
            if base is not None:
                base.insert(p)
        done = n
        qs = [(qrng.randint(-B, B), qrng.randint(-B, B), 1) for _ in range(queries)]
        rows.append(measure(S, base, qs, distribution, seed))
        if on_size is not None:
            on_size(S)
    return rows


def rows_csv(rows: Sequence[SizeRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BENCH_COLUMNS)
    for r in rows:
        w.writerow([getattr(r, c) for c in BENCH_COLUMNS])
    return buf.getvalue()
