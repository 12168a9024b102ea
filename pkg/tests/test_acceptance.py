"""End-to-end acceptance checks. Each test prints one PASS/FAIL line.

The scaling sweep goes up to 2**16 points and takes several minutes.
"""

import math
import random

import pytest

from nncascade.bench import generate_workload, rows_csv, run_sweep
from nncascade.cli import main, run_workload
from nncascade.counters import QueryCounters
from nncascade.io import format_workload
from nncascade.levels import Config, Structure
from nncascade.oracle import (OracleSet, validate_cell_complexity, validate_divisions, validate_hull_complement,
                              validate_hull_soundness, validate_level_sets)
from nncascade.query import nearest_lattice
from nncascade.voronoi import site_key

B = 1 << 13
SIZES = [1 << 10, 1 << 12, 1 << 14, 1 << 16]
VALIDATE_AT = {1 << 10, 1 << 12, 1 << 14}


def line(report, k, ok, detail):
    report(f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")


def run_validators(S):
    reps = {
        "sets": validate_level_sets(S, probes=1000),
        "divisions": validate_divisions(S),
        "cells": validate_cell_complexity(S),
        "hulls": validate_hull_soundness(S, probes=10 ** 4),
        "complement": validate_hull_complement(S, probes=10 ** 3),
    }
    return reps


@pytest.fixture(scope="module")
def sweep():
    validated = {}

    def on_size(S):
        if len(S) in VALIDATE_AT:
            validated[len(S)] = run_validators(S)

    rows = run_sweep(SIZES, "uniform", 1, Config(domain=B), queries=1000, on_size=on_size)
    return rows, validated


def test_criterion1_oracle_equivalence(report):
    runs = mismatches = queries = fallbacks = 0
    for dist in ("uniform", "clustered"):
        for seed in range(5):
            ops = generate_workload(20000, dist, seed, B)
            S = Structure(Config(domain=B))
            ref = OracleSet()
            for op in ops:
                if op.kind == "I":
                    S.insert(op.point)
                    ref.insert(S.to_lattice(op.point))
                    continue
                q = S.query_h(op.point)
                qc = QueryCounters()
                if nearest_lattice(S, q, qc) != ref.brute_nn(q):
                    mismatches += 1
                queries += 1
                fallbacks += qc.fallbacks
            runs += 1
    ok = mismatches == 0
    line(report, 1, ok, f"{runs} runs x 20000 ops, {queries} queries, {mismatches} mismatches, "
                        f"{fallbacks} fallbacks")
    assert ok


def test_criterion2_validators(report, sweep):
    _, validated = sweep
    # default pieces only appear at 2**12; a finer piece scale also exercises hulls at 2**10
    rng = random.Random(10)
    small = Structure(Config(domain=B, piece_scale=2))
    while len(small) < 1 << 10:
        p = (rng.randint(-B, B), rng.randint(-B, B))
        if p not in small.points:
            small.insert(p)
    cases = {f"n={n}": validated[n] for n in sorted(validated)}
    cases["n=1024,piece_scale=2"] = run_validators(small)
    ok = set(cases) >= {f"n={n}" for n in VALIDATE_AT}
    parts = []
    for name, reps in cases.items():
        bad = [k for k, r in reps.items() if not r.ok]
        ok &= not bad
        hulls = reps["hulls"].stats.get("hulls", 0)
        warns = sum(len(r.warnings) for r in reps.values())
        parts.append(f"{name}: {'ok' if not bad else 'failed ' + ','.join(bad)} "
                     f"({hulls} hulls, {warns} warnings)")
        for k, r in reps.items():
            for v in r.violations[:5]:
                print(f"  {name} {k}: {v}")
    line(report, 2, ok, "; ".join(parts))
    assert ok


def test_criterion3_query_scaling(report, sweep):
    rows, _ = sweep
    print(rows_csv(rows))
    ratios = [r.query_mean / math.log2(r.n) for r in rows]
    base = [r.baseline_mean / math.log2(r.n) for r in rows]
    band = max(ratios) / min(ratios)
    steps = [b / a for a, b in zip(base, base[1:])]
    band_ok = band <= 2.0
    growth_ok = all(s >= 1.5 for s in steps)
    mism = sum(r.mismatches for r in rows)
    ok = band_ok and growth_ok and mism == 0
    line(report, 3, ok,
         f"pred/log n = {', '.join(f'{x:.2f}' for x in ratios)} (spread {band:.2f}x, "
         f"{'within' if band_ok else 'outside'} 2x); baseline pred/log n = "
         f"{', '.join(f'{x:.2f}' for x in base)} (steps {', '.join(f'{s:.2f}' for s in steps)}x, "
         f"need >= 1.5x each)")
    assert ok


def test_criterion4_amortized_insertion(report, sweep):
    rows, _ = sweep
    fit = {r.n: r.insert_work_per_n / math.log2(r.n) ** 3 for r in rows}
    C = fit[SIZES[0]]
    ratio = fit[SIZES[-1]] / C
    ok = ratio <= 2.0
    line(report, 4, ok, "work/(n log^3 n) = " + ", ".join(f"2^{int(math.log2(n))}: {v:.3f}" for n, v in fit.items())
         + f"; C fitted at 2^10 = {C:.3f}, 2^16 needs {ratio:.2f}x C (limit 2x)")
    assert ok


GRID = [(x, y) for x in range(5) for y in range(5)]


def canonical(pts):
    forms = []
    for t in range(8):
        out = []
        for x, y in pts:
            if t & 1:
                x = 4 - x
            if t & 2:
                y = 4 - y
            if t & 4:
                x, y = y, x
            out.append((x, y))
        forms.append(tuple(sorted(out)))
    return min(forms)


def test_criterion5_small_instances(report):
    rng = random.Random(5)
    sets = set()
    while len(sets) < 10 ** 4:
        sets.add(canonical(rng.sample(GRID, rng.randint(1, 9))))
    # grid points plus the half-integer points between them, where ties happen
    probes = [(x, y, 2) for x in range(9) for y in range(9)]
    mismatches = queries = fallbacks = bypasses = 0
    for s in sorted(sets):
        S = Structure(Config(domain=4))
        order = list(s)
        rng.shuffle(order)
        for p in order:
            S.insert(p)
        for q in probes:
            qc = QueryCounters()
            if nearest_lattice(S, q, qc) != min(s, key=lambda p: site_key(q, p)):
                mismatches += 1
            fallbacks += qc.fallbacks
            bypasses += qc.bypasses
            queries += 1
    ok = mismatches == 0 and fallbacks == 0
    line(report, 5, ok, f"{len(sets)} sets up to symmetry, {queries} queries, {mismatches} mismatches, "
                        f"{fallbacks} fallbacks ({bypasses} jumps bypassed, no level has lookup tables)")
    assert ok


def test_criterion6_determinism(report, tmp_path):
    ops = generate_workload(5000, "clustered", 6, B)
    w = tmp_path / "w.txt"
    w.write_text(format_workload(ops))
    outs = []
    for k in range(2):
        a, c, b = tmp_path / f"a{k}", tmp_path / f"c{k}", tmp_path / f"b{k}"
        assert main(["run", str(w), "-o", str(a), "--csv", str(c)]) == 0
        assert main(["bench", "--n", "1024", "--seed", "6", "--csv", str(b)]) == 0
        outs.append([p.read_bytes() for p in (a, c, b)])
    _, answers, _ = run_workload(ops, Config(domain=B))
    same = [x == y for x, y in zip(*outs)]
    ok = all(same) and outs[0][0].decode() == "".join(f"{p}\n" for p in answers)
    line(report, 6, ok, f"answers {'identical' if same[0] else 'differ'}, counters CSV "
                        f"{'identical' if same[1] else 'differ'}, bench CSV {'identical' if same[2] else 'differ'}")
    assert ok
