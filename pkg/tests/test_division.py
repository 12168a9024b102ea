import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nncascade.division import division_for_level, r_divide, samples_for, validate_division
from nncascade.voronoi import ClipBox, build_diagram

C_F, C_P, C_T = 8.0, 4.0, 4.0


def grid_diagram(side):
    pts = [(x, y) for x in range(side) for y in range(side)]
    return build_diagram(pts, ClipBox(side))


def test_large_r_gives_one_piece():
    v = grid_diagram(4)
    div = r_divide(v.adj, 16, v.xs, v.ys)
    assert div.pieces == [list(range(16))]
    assert div.fringes == [[]]
    assert div.trivial


def test_unit_r_gives_singletons():
    v = build_diagram([(0, 0), (5, 1), (2, 7), (9, 9)], ClipBox(10))
    div = r_divide(v.adj, 1, v.xs, v.ys)
    assert sorted(map(tuple, div.pieces)) == [(k,) for k in range(4)]
    for P, fr in zip(div.pieces, div.fringes):
        assert fr == (P if v.adj[P[0]] else [])
    assert validate_division(div, v.adj, C_F, C_P, C_T) == []


def test_grid_256_r16_passes_validator():
    v = grid_diagram(16)
    div = r_divide(v.adj, 16, v.xs, v.ys, C_F)
    assert validate_division(div, v.adj, C_F, C_P, C_T) == []
    assert len(div.pieces) > 1


def test_samples_empty_for_small_level():
    v = grid_diagram(4)
    assert samples_for(v, 1, 2) == []


def test_unit_pieces_sample_every_connected_vertex():
    v = grid_diagram(5)
    div = r_divide(v.adj, 1, v.xs, v.ys)
    assert sorted(x for fr in div.fringes for x in fr) == list(range(25))


@pytest.mark.parametrize("piece_scale", [1, 32])
def test_sample_size_bound_on_4096_sites(piece_scale):
    rng = random.Random(4)
    pts = set()
    while len(pts) < 4096:
        pts.add((rng.randint(-8192, 8192), rng.randint(-8192, 8192)))
    v = build_diagram(pts, ClipBox(8192))
    div = division_for_level(v.adj, v.xs, v.ys, 1, 2, piece_scale, C_F)
    assert validate_division(div, v.adj, C_F, C_P, C_T) == []
    assert len(div.sample) <= 4.0 * 4096 / 4


def test_non_planar_graph_rejected():
    k6 = [[u for u in range(6) if u != v] for v in range(6)]
    with pytest.raises(ValueError):
        r_divide(k6, 2, list(range(6)), [0] * 6)


@settings(max_examples=40, deadline=None)
@given(st.sets(st.tuples(st.integers(0, 40), st.integers(0, 40)), min_size=2, max_size=120),
       st.integers(1, 40))
def test_random_divisions_satisfy_invariants(pts, r):
    v = build_diagram(sorted(pts), ClipBox(40))
    div = r_divide(v.adj, r, v.xs, v.ys, C_F)
    assert validate_division(div, v.adj, C_F, C_P, C_T) == []
    assert sorted(x for P in div.pieces for x in P) == list(range(len(pts)))
    for l, P in enumerate(div.pieces):
        assert all(div.piece_of[x] == l for x in P)
