import csv
import json
import subprocess
import sys

import pytest

from lgkernel.cli import bench_jobs, main, parse_suite
from lgkernel.generators import GenSpec, planted_instance
from lgkernel.graph import Graph, line_graph_of, read_edge_list, write_edge_list
from lgkernel.recognition import CliquePartitionWitness, validate_witness
from instances import CLAW, TWO_CLAWS, path_graph


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, json.loads(out.strip().splitlines()[-1]), err


@pytest.fixture
def files(tmp_path):
    def put(name, g):
        path = tmp_path / name
        write_edge_list(g, path)
        return path
    return put


class TestRecognize:
    def test_claw(self, files, capsys):
        code, rep, err = run(["recognize", "--input", files("claw.txt", CLAW)], capsys)
        assert code == 0 and rep["result"]["verdict"] == "not-line"
        assert rep["result"]["forbidden"] == [0, 1, 2, 3] and "pattern 1" in err

    def test_line_graph_emits_witness_and_root(self, files, tmp_path, capsys):
        p4 = path_graph(4)
        lp4, _ = line_graph_of(p4)
        wpath, rpath = tmp_path / "w.json", tmp_path / "root.txt"
        code, rep, _ = run(["recognize", "--input", files("lp4.txt", lp4),
                            "--emit-witness", wpath, "--emit-root", rpath], capsys)
        assert code == 0 and rep["result"]["verdict"] == "line"
        w = CliquePartitionWitness.from_json(wpath.read_text())
        assert validate_witness(lp4, w)
        root = read_edge_list(rpath)
        assert root.n == 4 and root.m == 3

    def test_malformed_header(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("three 2\n0 1\n1 2\n")
        code, rep, err = run(["recognize", "--input", bad], capsys)
        assert code == 2 and "error" in rep and err.startswith("error")

    def test_missing_file(self, tmp_path, capsys):
        code, _, _ = run(["recognize", "--input", tmp_path / "nope.txt"], capsys)
        assert code == 2


class TestKernelize:
    def test_line_graph_yes(self, files, capsys):
        g, _ = line_graph_of(Graph.complete(5))
        code, rep, _ = run(["kernelize", "--input", files("l.txt", g), "--k", 1], capsys)
        assert code == 0 and rep["result"]["verdict"] == "yes"

    def test_two_claws_no(self, files, capsys):
        code, rep, _ = run(["kernelize", "--input", files("c.txt", TWO_CLAWS), "--k", 1], capsys)
        assert code == 0 and rep["result"]["verdict"] == "no"

    def test_planted_written_and_bounded(self, files, tmp_path, capsys):
        g, r = planted_instance(GenSpec(60, 0.08, 2, 3))
        out = tmp_path / "kernel.txt"
        code, rep, _ = run(["kernelize", "--input", files("p.txt", g), "--k", r, "--out", out], capsys)
        stats = rep["result"]
        assert code == 0 and stats["verdict"] == "reduced"
        assert stats["kernel_n"] <= stats["bound"]
        assert read_edge_list(out).n == stats["kernel_n"]
        assert json.loads(out.with_suffix(".json").read_text())["kernel_n"] == stats["kernel_n"]

    def test_negative_k(self, files, capsys):
        code, _, _ = run(["kernelize", "--input", files("c.txt", CLAW), "--k", -1], capsys)
        assert code == 2

    @pytest.mark.parametrize("seed", range(8))
    def test_kernel_agrees_with_input(self, files, tmp_path, capsys, seed):
        g, r = planted_instance(GenSpec(6, 0.5, 2, seed))
        src = files(f"g{seed}.txt", g)
        kpath = tmp_path / f"k{seed}.txt"
        run(["kernelize", "--input", src, "--k", r, "--out", kpath], capsys)
        kk = int(kpath.read_text().splitlines()[0].rsplit("k=", 1)[1])
        a, _, _ = run(["solve", "--input", src, "--k", r], capsys)
        b, _, _ = run(["solve", "--input", kpath, "--k", kk], capsys)
        assert a == b


class TestSolve:
    def test_claw_yes(self, files, capsys):
        code, rep, _ = run(["solve", "--input", files("c.txt", CLAW), "--k", 1], capsys)
        assert code == 0 and len(rep["result"]["deleted"]) == 1

    def test_claw_no(self, files, capsys):
        code, rep, _ = run(["solve", "--input", files("c.txt", CLAW), "--k", 0, "--oracle", "brute"], capsys)
        assert code == 1 and rep["result"]["verdict"] == "no"

    def test_planted(self, files, capsys):
        g, r = planted_instance(GenSpec(7, 0.4, 2, 1))
        code, _, _ = run(["solve", "--input", files("p.txt", g), "--k", r, "--oracle", "brute"], capsys)
        assert code == 0

    def test_guard(self, files, capsys):
        code, rep, _ = run(["solve", "--input", files("k.txt", Graph.complete(10)), "--k", 1,
                            "--oracle", "brute"], capsys)
        assert code == 2 and "brute force" in rep["error"]


class TestGen:
    def test_files(self, tmp_path, capsys):
        out = tmp_path / "g.txt"
        code, rep, _ = run(["gen", "--n", 10, "--p", 0.3, "--r", 2, "--seed", 5, "--out", out], capsys)
        assert code == 0
        assert read_edge_list(out) == planted_instance(GenSpec(10, 0.3, 2, 5))[0]
        assert json.loads(out.with_suffix(".json").read_text()) == {"n": 10, "p": 0.3, "r": 2, "seed": 5}

    def test_too_much_noise(self, tmp_path, capsys):
        code, _, _ = run(["gen", "--n", 3, "--p", 1.0, "--r", 5, "--out", tmp_path / "g.txt"], capsys)
        assert code == 2


class TestBench:
    def read(self, path):
        with open(path, newline="") as fh:
            return list(csv.DictReader(fh))

    def test_sweep_and_bound_column(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("LGK_THREADS", "1")
        path = tmp_path / "b.csv"
        code, rep, _ = run(["bench", "--suite", "n=15;p=0.25;r=1..2;k=1..5", "--seed", 3, "--csv", path], capsys)
        rows = self.read(path)
        assert code == 0 and len(rows) == 10 == rep["result"]["rows"]
        for row in rows:
            if row["verdict"] == "reduced":
                assert int(row["kernel_n"]) <= int(row["bound"])

    def test_rerun_identical(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("LGK_THREADS", "2")
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for path in (a, b):
            run(["bench", "--suite", "n=12;p=0.3;r=0..2", "--seed", 9, "--csv", path], capsys)

        def stable(rows):
            return [{k: v for k, v in r.items() if not k.startswith("ms_")} for r in rows]

        assert stable(self.read(a)) == stable(self.read(b))

    def test_empty_sweep_header_only(self, tmp_path, capsys):
        path = tmp_path / "e.csv"
        code, _, _ = run(["bench", "--suite", "k=", "--seed", 1, "--csv", path], capsys)
        assert code == 0
        lines = path.read_text().splitlines()
        assert len(lines) == 1 and lines[0].startswith("instance,")

    def test_json_suite(self, tmp_path):
        spec = tmp_path / "suite.json"
        spec.write_text(json.dumps({"n": [10, 20], "p": 0.1, "r": [1], "k": [2]}))
        suite = parse_suite(str(spec))
        assert len(bench_jobs(suite, 0)) == 2

    def test_bad_suite(self, tmp_path, capsys):
        code, _, _ = run(["bench", "--suite", "q=3", "--seed", 1, "--csv", tmp_path / "x.csv"], capsys)
        assert code == 2

    def test_bad_threads(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("LGK_THREADS", "many")
        code, _, _ = run(["bench", "--suite", "n=10", "--seed", 1, "--csv", tmp_path / "x.csv"], capsys)
        assert code == 2


def test_module_entry_point(tmp_path):
    path = tmp_path / "claw.txt"
    write_edge_list(CLAW, path)
    proc = subprocess.run([sys.executable, "-m", "lgkernel", "solve", "--input", str(path), "--k", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and json.loads(proc.stdout)["result"]["verdict"] == "no"
