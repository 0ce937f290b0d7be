import subprocess
import sys

import pytest

from conftest import build
from twotree_hp.cli import main
from twotree_hp.edgelist import format_edge_list, parse_edge_list
from twotree_hp.hamiltonian_engine import hamiltonian_path, validate_path
from twotree_hp.pyramids import CaseLabel, classify, pyramid_report


@pytest.fixture
def graph_file(tmp_path):
    def write(name_or_text):
        path = tmp_path / "in.txt"
        text = name_or_text if "\n" in name_or_text else format_edge_list(build(name_or_text))
        path.write_text(text)
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_four_pyramid(capsys, graph_file):
    code, out, _ = run(capsys, "check", graph_file("P4"))
    assert code == 1
    assert "witness: FourPyramid(0-1)" in out


def test_check_twin(capsys, graph_file):
    code, out, _ = run(capsys, "check", graph_file("TWIN"))
    assert code == 0
    assert "hamiltonian path: yes" in out


def test_check_malformed_header(capsys, graph_file):
    code, _, err = run(capsys, "check", graph_file("three 3\n0 1\n"))
    assert code == 2 and "line 1" in err


def test_check_not_a_two_tree(capsys, graph_file):
    code, _, err = run(capsys, "check", graph_file("4 4\n0 1\n1 2\n2 3\n0 3\n"))
    assert code == 2 and "not a 2-tree" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "check", str(tmp_path / "nope.txt"))
    assert code == 2 and "cannot read" in err


@pytest.mark.parametrize("name, line", [("TWIN", "4 1 3 0 5 2 6"), ("K2", "0 1")])
def test_path(capsys, graph_file, name, line):
    code, out, _ = run(capsys, "path", graph_file(name))
    assert code == 0 and out == line + "\n"


def test_path_none(capsys, graph_file):
    code, out, err = run(capsys, "path", graph_file("NOHP"))
    assert code == 1 and out == ""
    assert "no path" in err


def test_path_explain(capsys, graph_file):
    code, out, err = run(capsys, "path", graph_file("TWIN"), "--explain")
    assert code == 0 and out == "4 1 3 0 5 2 6\n"
    assert "G0 vertices=5 pruned=3 5" in err
    assert "  pruned 1 2 E5-i" in err
    assert err.rstrip().endswith("path 4 1 3 0 5 2 6")


def test_path_dot(capsys, graph_file, tmp_path):
    dot = tmp_path / "out.dot"
    code, _, _ = run(capsys, "path", graph_file("TWIN"), "--dot", str(dot))
    text = dot.read_text()
    assert code == 0 and text.startswith("graph twotree {")
    # 0-1 is blue in G0 but the expanded path detours through its label 3
    assert '0 -- 1 [color=blue, label="3", style=dashed];' in text
    assert "1 -- 3 [penwidth=3];" in text
    assert "1 -- 2 [style=dashed];" in text


def test_verify_trivial(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", "2", "--count", "1")
    assert code == 0 and out.startswith("1/1 agree")


def test_verify_corpus(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", "10", "--count", "300")
    assert code == 0 and out == "300/300 agree\n"


def test_verify_bound(capsys):
    code, _, err = run(capsys, "verify", "--n-max", "99")
    assert code == 2 and "oracle bound" in err


def test_gen_pyramid(capsys):
    code, out, err = run(capsys, "gen", "--n", "5", "--profile", "force3:1", "--seed", "7")
    assert code == 0 and err == "seed 7\n"
    g = parse_edge_list(out)
    assert classify(pyramid_report(g)) is CaseLabel.EXACTLY_ONE_THREE_PYRAMID


def test_gen_edge(capsys):
    code, out, _ = run(capsys, "gen", "--n", "2")
    assert code == 0 and out == "2 1\n0 1\n"


def test_gen_file_large(capsys, tmp_path):
    path = tmp_path / "big.txt"
    code, out, _ = run(capsys, "gen", "--n", "100000", "--profile", "3pf", "--out", str(path))
    assert code == 0 and out == "seed 0\n"
    g = parse_edge_list(path.read_text())
    res = hamiltonian_path(g)
    assert res.has_path and validate_path(g, res.path)


def test_gen_infeasible(capsys):
    code, _, err = run(capsys, "gen", "--n", "5", "--profile", "force4")
    assert code == 2 and "force4" in err


def test_gen_bad_profile(capsys):
    code, _, _ = run(capsys, "gen", "--n", "5", "--profile", "pyramid")
    assert code == 2


def test_bench_rows(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "500", "--repeat", "1")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,edges,seconds,has_path"
    n, m, secs, ok = lines[1].split(",")
    assert (n, m, ok) == ("500", "997", "1") and float(secs) >= 0


def test_bench_empty(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "")
    assert code == 0 and out == "n,edges,seconds,has_path\n"


def test_console_entry_point(tmp_path):
    path = tmp_path / "k2.txt"
    path.write_text("2 1\n0 1\n")
    proc = subprocess.run(
        [sys.executable, "-m", "twotree_hp.cli", "path", str(path)],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "0 1\n"
