import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from nncascade.bench import generate_workload
from nncascade.cli import main, run_workload
from nncascade.geom import ExactPoint
from nncascade.io import (COUNTER_COLUMNS, Op, ParseError, counters_csv, format_workload, parse_points,
                          parse_workload)
from nncascade.levels import Config, Structure
from nncascade.svg import render_level

NS = {"s": "http://www.w3.org/2000/svg"}


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def run_cli(tmp_path, text, *flags):
    w = write(tmp_path, "w.txt", text)
    out = tmp_path / "answers.txt"
    code = main(["run", w, "-o", str(out), *flags])
    return code, (out.read_text() if out.exists() else None)


def test_parse_formats():
    ops = parse_workload(["I 0 0", "  # comment", "q 1/2 -0.25  # trailing"])
    assert ops == [Op("I", ExactPoint(0, 0)), Op("Q", ExactPoint.parse("1/2", "-0.25"))]
    assert parse_points(["3 4", "", "-1 2"]) == [(3, 4), (-1, 2)]
    with pytest.raises(ParseError) as e:
        parse_workload(["I 0 0", "X 1 1"])
    assert e.value.lineno == 2
    with pytest.raises(ParseError):
        parse_points(["1 two"])
    assert parse_workload(format_workload(ops).splitlines()) == ops


def test_single_query(tmp_path):
    assert run_cli(tmp_path, "I 0 0\nQ 1 1\n") == (0, "0 0\n")


def test_midpoint_split(tmp_path):
    code, out = run_cli(tmp_path, "I 0 0\nI 10 0\nQ 4 0\nQ 6 0\nQ 5 0\n", "--verify")
    assert code == 0
    assert out == "0 0\n10 0\n0 0\n"


def test_fractional_answers_with_scale(tmp_path):
    code, out = run_cli(tmp_path, "I 0.5 0.25\nI -1 0\nQ 0.4 0.3\n", "--scale", "4", "--domain", "16")
    assert code == 0 and out == "0.5 0.25\n"


@pytest.mark.parametrize("text", ["I 0 0\nI 0 0\n", "I 0 0\nQ zz 1\n", "I 100000 0\n", "Q 0 0\n"])
def test_input_errors_exit_2(tmp_path, text):
    assert run_cli(tmp_path, text)[0] == 2


def test_missing_file_exits_2(tmp_path):
    assert main(["run", str(tmp_path / "nope.txt")]) == 2


def test_verify_generated_workload(capsys):
    assert main(["verify", "--ops", "3000", "--seed", "4", "--dist", "clustered"]) == 0
    assert "all answers match" in capsys.readouterr().out


def test_verify_reports_mismatch(monkeypatch, tmp_path):
    import nncascade.cli as cli
    monkeypatch.setattr(cli, "nearest_lattice", lambda S, q, c=None: (10, 0))
    w = write(tmp_path, "w.txt", "I 0 0\nI 10 0\nQ 1 0\n")
    assert main(["run", w, "--verify"]) == 1


def test_counters_csv(tmp_path):
    ops = generate_workload(400, "uniform", 3, 8192)
    _, answers, records = run_workload(ops, Config(domain=8192))
    text = counters_csv(records)
    lines = text.splitlines()
    assert lines[0].split(",") == COUNTER_COLUMNS
    assert len(lines) == len(ops) + 2
    assert lines[-1].split(",")[1] == "summary"
    rows = [l.split(",") for l in lines[1:-1]]
    assert all(int(v) >= 0 for r in rows for v in r[4:])
    # n never decreases along the operations
    ns = [int(r[4]) for r in rows]
    assert ns == sorted(ns)
    assert sum(r[1] == "Q" for r in rows) == len(answers)


def test_run_is_byte_deterministic(tmp_path):
    ops = generate_workload(2000, "clustered", 11, 8192)
    w = write(tmp_path, "w.txt", format_workload(ops))
    outs = []
    for k in range(2):
        a, c = tmp_path / f"a{k}.txt", tmp_path / f"c{k}.csv"
        assert main(["run", w, "-o", str(a), "--csv", str(c)]) == 0
        outs.append((a.read_bytes(), c.read_bytes()))
    assert outs[0] == outs[1]


def test_bench_csv_is_byte_identical(tmp_path):
    paths = [tmp_path / "b1.csv", tmp_path / "b2.csv"]
    for p in paths:
        assert main(["bench", "--n", "1024", "--seed", "42", "--queries", "200", "--csv", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    header, row = paths[0].read_text().splitlines()
    assert dict(zip(header.split(","), row.split(",")))["mismatches"] == "0"


def test_module_entry_point(tmp_path):
    w = write(tmp_path, "w.txt", "I 0 0\nI 10 0\nQ 6 0\n")
    r = subprocess.run([sys.executable, "-m", "nncascade", "run", w], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "10 0\n"


def test_svg_single_site_is_one_rectangle(tmp_path):
    pts = write(tmp_path, "p.txt", "3 4\n")
    out = tmp_path / "o.svg"
    assert main(["svg", pts, "--domain", "10", "--layers", "cells,sites", "-o", str(out)]) == 0
    root = ET.parse(out).getroot()
    cells = root.findall(".//s:g[@id='cells']/s:polygon", NS)
    assert len(cells) == 1
    corners = sorted(tuple(map(float, c.split(","))) for c in cells[0].get("points").split())
    assert corners == [(-30, -30), (-30, 30), (30, -30), (30, 30)]


def test_svg_bad_layer_and_level(tmp_path):
    pts = write(tmp_path, "p.txt", "3 4\n")
    assert main(["svg", pts, "--layers", "cells,bogus", "-o", str(tmp_path / "o.svg")]) == 2
    assert main(["svg", pts, "--level", "3", "-o", str(tmp_path / "o.svg")]) == 2


@pytest.fixture(scope="module")
def grid_structure():
    S = Structure(Config(domain=64, piece_scale=1))
    for x in range(-15, 17, 2):
        for y in range(-15, 17, 2):
            S.insert((x, y))
    return S


def test_svg_pieces_and_fringe_flags(grid_structure):
    S = grid_structure
    i = next(i for i in range(1, S.f + 1) if S.levels[i].divisions)
    vor = S.levels[i].vor
    root = ET.fromstring(ET.tostring(render_level(S, i, ["pieces", "fringe", "sites"])))
    cells = root.findall(".//s:g[@id='cells']/s:polygon", NS)
    piece = {}
    fill = {}
    flagged = set()
    for c in cells:
        s = tuple(map(int, c.get("data-site").split()))
        piece[s] = c.get("data-piece")
        fill.setdefault(c.get("data-piece"), set()).add(c.get("fill"))
        if c.get("data-fringe"):
            flagged.add(s)
    assert len(fill) > 1
    assert all(len(v) == 1 for v in fill.values())
    assert len({next(iter(v)) for v in fill.values()}) == len(fill)
    # a cell is flagged exactly when a Delaunay neighbor sits in another piece
    want = {vor.sites[t] for t in range(len(vor.sites))
            if any(piece[vor.sites[u]] != piece[vor.sites[t]] for u in vor.adj[t])}
    assert flagged == want


def test_svg_hull_layers(grid_structure, tmp_path):
    S = grid_structure
    lv = S.levels
    i, j, t = next((i, j, t) for i in range(1, S.f + 1) for j in lv[i].hulls for t in lv[i].hulls[j])
    site = lv[i].vor.sites[t]
    out = tmp_path / "h.svg"
    render_level(S, i, ["cells", "hull", "hullbar"], site=site, upper=j)
    from nncascade.svg import emit_svg
    emit_svg(S, i, ["cells", "hull", "hullbar"], str(out), site=site, upper=j)
    root = ET.parse(out).getroot()
    assert root.find(".//s:polygon[@id='hull']", NS) is not None
    assert root.find(".//s:path[@id='hullbar']", NS) is not None
    with pytest.raises(ValueError):
        render_level(S, i, ["hull"])
