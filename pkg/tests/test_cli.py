import json
import subprocess
import sys

import pytest

from gordanmaps.cli import main
from gordanmaps.export import emit_obj, emit_off
from gordanmaps.realization import search
from test_realization import _icosahedron

SIX = ["{5,4}_6", "{4,5}_6", "{6,4}_5", "{4,6}_5", "{6,5}_4", "{5,6}_4"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_off_icosahedron():
    text = emit_off(_icosahedron())
    lines = text.splitlines()
    assert lines[0] == "OFF"
    assert lines[1] == "12 30 20"
    assert len(lines) == 2 + 12 + 20
    assert all(line.startswith("3 ") for line in lines[14:])


def test_off_56_4(relatives, dodecahedron):
    (poly,) = search(dodecahedron, relatives["{5,6}_4"].map)
    a, b = emit_off(poly), emit_off(poly)
    assert a.splitlines()[1] == "20 60 24"
    assert a == b
    assert emit_obj(poly) == emit_obj(poly)


def test_off_digits():
    line = emit_off(_icosahedron(), digits=5).splitlines()[2]
    assert all(len(x.lstrip("-").replace(".", "")) <= 5 for x in line.split())
    assert "1.618" in emit_off(_icosahedron(), digits=5)


def test_build_gordan(capsys):
    code, out, _ = run(capsys, "build", "5", "4", "6")
    assert code == 0
    d = json.loads(out)
    assert d["schema"] == "gordanmaps.map/1"
    assert (d["aut_order"], d["genus"], d["orientable"]) == (240, 4, True)
    assert d["f_vector"] == [30, 60, 24]


def test_build_465(capsys):
    code, out, _ = run(capsys, "build", "4", "6", "5")
    d = json.loads(out)
    assert code == 0 and d["orientable"] is False and d["genus"] == 12


def test_build_222(capsys):
    code, out, _ = run(capsys, "build", "2", "2", "2")
    d = json.loads(out)
    assert code == 0 and d["type"] == [2, 2] and d["flags"] == 8


def test_build_errors(capsys):
    assert run(capsys, "build", "3", "3", "3")[0] == 2
    assert run(capsys, "build", "5", "4", "6", "--max-cosets", "20")[0] == 2
    assert run(capsys, "build", "1", "4", "6")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["build", "5", "4"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_hexad(capsys):
    _, out, _ = run(capsys, "hexad", "5", "4", "6")
    a = json.loads(out)
    _, out, _ = run(capsys, "hexad", "4", "5", "6")
    b = json.loads(out)
    assert sorted(m["symbol"] for m in a["members"]) == sorted(SIX)
    assert sorted(m["symbol"] for m in b["members"]) == sorted(SIX)
    assert all(m["aut_order"] == 240 for m in a["members"])


def test_hexad_small(capsys):
    code, out, _ = run(capsys, "hexad", "3", "3", "4")
    members = json.loads(out)["members"]
    assert code == 0
    assert 1 <= len(members) < 6
    assert len({m["symbol"] for m in members}) == len(members)


def test_realize_planar_member(capsys):
    code, out, _ = run(capsys, "realize", "two-icosahedra", "--lambda", "(1+rt5)/2", "{4,5}_6")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert len(rows) == 2
    assert [r["planar_at_ratio"] for r in rows].count(True) == 1
    assert all(r["ratio"] == "1/2 + 1/2*rt5" for r in rows)


def test_realize_none_found(capsys):
    code, out, _ = run(capsys, "realize", "dodecahedron", "{5,4}_6")
    assert code == 4
    assert json.loads(out)["rows"] == []


def test_realize_usage_errors(capsys):
    assert run(capsys, "realize", "cube", "{5,4}_6")[0] == 1
    assert run(capsys, "realize", "dodecahedron")[0] == 1
    assert run(capsys, "realize", "dodecahedron", "{5,4}")[0] == 1
    assert run(capsys, "realize", "dodecahedron", "--lambda", "2", "{5,6}_4")[0] == 1
    assert run(capsys, "realize", "two-icosahedra", "--lambda", "1", "{4,5}_6")[0] == 1
    assert run(capsys, "realize", "two-icosahedra", "--lambda", "1.5", "{4,5}_6")[0] == 1


@pytest.mark.slow
def test_realize_all_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    code, out_a, _ = run(capsys, "realize", "all", "--out", str(a))
    assert code == 0
    _, out_b, _ = run(capsys, "realize", "all", "--out", str(b))
    assert out_a == out_b
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(p.name for p in b.iterdir())
    for name in names:
        assert (a / name).read_bytes() == (b / name).read_bytes()
    report = json.loads((a / "report.json").read_text())
    assert len(report["rows"]) == 8
    for row in report["rows"]:
        counts = (a / row["mesh"]).read_text().splitlines()[1]
        assert counts == " ".join(map(str, row["f_vector"]))


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gordanmaps", "build", "3", "3", "4"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["f_vector"] == [4, 6, 4]
