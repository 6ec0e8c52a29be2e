import subprocess
import sys

import numpy as np
import pytest

from mdmvfif.cli import run
from mdmvfif.dataio import read_cube, read_export, write_cube


def test_generate_and_decompose(tmp_path):
    cube = tmp_path / "ex1.mdmv"
    assert run(["generate", "--preset", "example1", "--dims", "64,64,128", "--seed", "3", "--out", str(cube)]) == 0
    out = tmp_path / "dec"
    assert run(["decompose", "--in", str(cube), "--out", str(out), "--max-imfs", "2"]) == 0
    assert (out / "manifest.txt").exists()
    names = {p.name for p in out.glob("*.mdmv")}
    assert {"imf_s_01.mdmv", "imf_t_01.mdmv", "residual.mdmv"} <= names
    x = read_cube(cube)
    assert np.abs(sum(read_export(out).values()) - x).max() <= 1e-9 * np.abs(x).max()


def test_grid_too_small_exit_code(tmp_path, capsys):
    rc = run(["generate", "--preset", "example1", "--dims", "2,2,2", "--out", str(tmp_path / "x")])
    assert rc == 2
    assert "GridTooSmall" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [["decompose", "--bogus"], ["frobnicate"], [], ["generate", "--preset", "nope", "--dims", "64,64,128", "--out", "x"],
     ["generate", "--preset", "example1", "--dims", "64,64", "--out", "x"]],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == 1
    assert "usage" in capsys.readouterr().err


def test_bad_file_exit_code(tmp_path):
    p = tmp_path / "junk.mdmv"
    p.write_bytes(b"garbage")
    assert run(["info", "--in", str(p)]) == 2
    assert run(["decompose", "--in", str(tmp_path / "missing"), "--out", str(tmp_path / "o")]) == 2


def test_threads_bit_identical(tmp_path):
    cube = tmp_path / "c.mdmv"
    run(["generate", "--preset", "example2", "--dims", "64,64,128", "--out", str(cube)])
    for n in (1, 3):
        assert run(["decompose", "--in", str(cube), "--out", str(tmp_path / f"o{n}"), "--max-imfs", "2",
                    "--threads", str(n)]) == 0
    for p in sorted((tmp_path / "o1").iterdir()):
        assert p.read_bytes() == (tmp_path / "o3" / p.name).read_bytes()


def test_stfif(tmp_path):
    cube = tmp_path / "s.mdmv"
    run(["generate", "--preset", "separable", "--dims", "64,64,128", "--out", str(cube)])
    assert run(["stfif", "--in", str(cube), "--out", str(tmp_path / "st"), "--max-imfs", "2"]) == 0
    assert (tmp_path / "st" / "imf_01.mdmv").exists() and (tmp_path / "st" / "residual.mdmv").exists()


def test_import_and_info(tmp_path, capsys):
    for t in range(4):
        (tmp_path / f"{t}.csv").write_text("1,2,3\n4,5,6\n7,8," + str(t) + "\n")
    (tmp_path / "m.txt").write_text("\n".join(f"{t}.csv" for t in range(4)))
    assert run(["import", "--manifest", str(tmp_path / "m.txt"), "--out", str(tmp_path / "c.mdmv")]) == 0
    assert read_cube(tmp_path / "c.mdmv").shape == (3, 3, 4)
    assert run(["info", "--in", str(tmp_path / "c.mdmv")]) == 0
    out = capsys.readouterr().out
    assert "dims: 3x3x4" in out and "rotation angles" in out


def test_export_plot(tmp_path):
    c = np.arange(24.0).reshape(2, 3, 4)
    write_cube(c, tmp_path / "c.mdmv")
    assert run(["export-plot", "--in", str(tmp_path / "c.mdmv"), "--series", "1,2", "--out", str(tmp_path / "p.csv")]) == 0
    rows = (tmp_path / "p.csv").read_text().splitlines()
    assert [float(r.split(",")[1]) for r in rows] == list(c[1, 2])
    assert run(["export-plot", "--in", str(tmp_path / "c.mdmv"), "--slice", "9", "--out", str(tmp_path / "q.csv")]) == 2
    assert run(["export-plot", "--in", str(tmp_path / "c.mdmv"), "--slice", "1", "--series", "0,0",
                "--out", str(tmp_path / "q.csv")]) == 1


def test_bench(tmp_path):
    assert run(["bench", "--sizes", "8,16", "--out", str(tmp_path / "b.tsv")]) == 0
    lines = (tmp_path / "b.tsv").read_text().splitlines()
    assert lines[0].split("\t") == ["size", "samples", "seconds"] and len(lines) == 3


def test_module_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "mdmvfif", "info"], capture_output=True, text=True)
    assert r.returncode == 1 and "usage" in r.stderr and r.stdout == ""
