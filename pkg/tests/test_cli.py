import random

import pytest

from conftest import corpus
from mdsclass.cli import main
from mdsclass.equiv import EquivMap, apply
from mdsclass.io import parse_map, read_code, write_code
from mdsclass.linear import linear_mds


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_bounds(capsys):
    code, out = run(capsys, "bounds", "9", "3", "8")
    assert code == 0 and out.strip() == "hamming=2097152 singleton=2097152"


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["bounds", "2", "3", "8"]) == 2
    assert main(["classify", "--q", "7", "--to", "4"]) == 2  # needs --stretch
    assert main(["aut", "/nonexistent/file.txt"]) == 2


def test_parse_error_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("3 2 2\n0 0\n")
    assert main(["aut", str(p)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_aut_and_canon(tmp_path, capsys):
    p = tmp_path / "c.txt"
    write_code(p, linear_mds(4, 5))
    code, out = run(capsys, "aut", str(p))
    assert code == 0 and out.strip() == "aut_order=23040"
    code, out = run(capsys, "canon", str(p), "--out", str(tmp_path / "k.txt"))
    assert code == 0
    g = parse_map((tmp_path / "k.txt.map").read_text())
    assert apply(g, linear_mds(4, 5)) == read_code(tmp_path / "k.txt")


def test_equiv(tmp_path, capsys):
    C = corpus()["t49"]
    D = apply(EquivMap.random(4, 3, random.Random(2)), C)
    write_code(tmp_path / "a.txt", C)
    write_code(tmp_path / "b.txt", D)
    code, out = run(capsys, "equiv", str(tmp_path / "a.txt"), str(tmp_path / "b.txt"), "--out", str(tmp_path / "g.txt"))
    assert code == 0 and out.strip() == "equivalent=yes"
    assert apply(parse_map((tmp_path / "g.txt").read_text()), C) == D
    write_code(tmp_path / "c.txt", corpus()["lin44"])
    assert main(["equiv", str(tmp_path / "a.txt"), str(tmp_path / "c.txt")]) == 2


def test_linearity(tmp_path, capsys):
    write_code(tmp_path / "a.txt", apply(EquivMap.random(5, 4, random.Random(1)), linear_mds(4, 5)))
    code, out = run(capsys, "linearity", str(tmp_path / "a.txt"), "--out", str(tmp_path / "w.txt"))
    assert code == 0 and out.strip() == "linear=yes"
    assert (tmp_path / "w.txt").read_text().startswith("4 3 2")


def test_classify_small(tmp_path, capsys):
    code, out = run(capsys, "classify", "--q", "4", "--to", "5", "--registry-dir", str(tmp_path / "reg"),
                    "--out", str(tmp_path / "out"))
    assert code == 0
    counts = [ln.split()[1] for ln in out.splitlines() if ln.startswith("n=")]
    assert counts == ["classes=1"] * 3
    assert (tmp_path / "reg" / "n5" / "manifest.txt").exists()
    # resume from the saved n=4 registry
    code, out2 = run(capsys, "classify", "--q", "4", "--to", "5", "--from", "4",
                     "--registry-dir", str(tmp_path / "reg"))
    assert code == 0 and out2.splitlines()[-2].startswith("n=5 classes=1")


def test_classify_q6(capsys):
    code, out = run(capsys, "classify", "--q", "6", "--to", "4")
    assert code == 0
    assert [ln.split()[1] for ln in out.splitlines() if ln.startswith("n=")] == ["classes=1", "classes=0"]


def test_deterministic_output(capsys):
    _, a = run(capsys, "classify", "--q", "3", "--to", "4")
    _, b = run(capsys, "classify", "--q", "3", "--to", "4", "--workers", "2")
    strip = lambda s: [ln.rsplit(" seconds=", 1)[0] for ln in s.splitlines()]
    assert strip(a) == strip(b)
