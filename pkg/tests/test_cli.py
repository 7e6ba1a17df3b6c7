import csv
import io
import subprocess
import sys

import pytest

from kronpath.cli import main
from kronpath.queries import TEMPLATES

TWO_CYCLE = "0 a 1\n1 a 0\n1 b 1\n"


@pytest.fixture
def files(tmp_path):
    graph = tmp_path / "two_cycle.txt"
    graph.write_text(TWO_CYCLE)
    grammar = tmp_path / "g1.txt"
    grammar.write_text("S -> a S b | a b\n")
    return tmp_path, graph, grammar


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


def test_index_reach_paths(files):
    tmp, graph, grammar = files
    idx = tmp / "idx.txt"
    code, out = run("index", graph, grammar, "-o", idx)
    assert code == 0
    assert out == "n: 2\nk: 4\niterations: 3\nS: 2 pairs\n"
    assert run("reach", idx, "S") == (0, "0 1\n1 1\n")
    code, out = run("paths", idx, "1", "1", "S", "--max-word-len", "4")
    assert (code, out) == (0, "1 -a-> 0 -a-> 1 -b-> 1 -b-> 1\n")
    assert run("paths", idx, "0", "0", "S") == (0, "")


def test_index_builtin_and_empty_graph(files):
    tmp, _, _ = files
    empty = tmp / "empty.txt"
    empty.write_text("")
    code, out = run("index", empty, "--grammar", "anbn")
    assert code == 0 and "S: 0 pairs" in out


def test_index_regex(files):
    tmp, graph, _ = files
    q = tmp / "q.txt"
    q.write_text("a b*\n")
    code, out = run("index", graph, q, "--regex")
    assert code == 0 and "iterations: 1" in out and "S: 2 pairs" in out


def test_deterministic_output(files):
    tmp, graph, grammar = files
    a, b = tmp / "a.idx", tmp / "b.idx"
    run("index", graph, grammar, "-o", a)
    run("index", graph, grammar, "-o", b)
    assert a.read_bytes() == b.read_bytes()


def test_stats(files):
    _, graph, _ = files
    assert run("stats", graph) == (0, "# vertices 2\na\t2\nb\t1\n")
    code, out = run("stats", graph, "--add-inverse")
    assert "a_r\t2" in out


def test_bench(files, capsys):
    tmp, graph, _ = files
    csv_path = tmp / "bench.csv"
    code, _ = run("bench-rpq", graph, "--templates", "Q2,Q4^2,Q16", "--per-template", "3",
                  "--runs", "1", "-o", csv_path)
    assert code == 0
    rows = list(csv.reader(csv_path.open()))
    assert rows[0] == ["graph", "query", "run_mean_s", "pairs"]
    assert len(rows) == 1 + 2 * 3
    assert rows[1][:2] == ["two_cycle", "Q2#0"] and rows[1][3] == "2"
    assert all(float(r[2]) >= 0 for r in rows[1:])
    assert "skipping Q16" in capsys.readouterr().err


def test_bench_all_templates_row_count(files):
    tmp, _, _ = files
    g = tmp / "six.txt"
    g.write_text("".join(f"{i} {l} {i + 1}\n" for i, l in enumerate("abcdefab")))
    code, out = run("bench-rpq", g, "--per-template", "2", "--runs", "1")
    assert code == 0
    assert len(out.splitlines()) == 1 + len(TEMPLATES) * 2


def test_bench_jobs(files):
    _, graph, _ = files
    code, out = run("bench-rpq", graph, "--templates", "Q1", "--per-template", "2",
                    "--runs", "1", "--jobs", "2")
    assert code == 0 and len(out.splitlines()) == 3


@pytest.mark.parametrize(
    "argv",
    [[], ["frobnicate"], ["reach"], ["paths", "x", "1"], ["index", "g", "--grammar", "nope"]],
)
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as e:
        main(argv, io.StringIO())
    assert e.value.code == 1


def test_usage_error_from_values(files):
    tmp, graph, _ = files
    assert run("bench-rpq", graph, "--templates", "Q99")[0] == 1
    assert run("bench-rpq", graph, "--runs", "0")[0] == 1
    assert run("index", graph)[0] == 1


def test_input_errors(files, capsys):
    tmp, graph, grammar = files
    bad = tmp / "bad.txt"
    bad.write_text("0 a\n")
    assert run("index", bad, grammar)[0] == 2
    assert "bad.txt:1" in capsys.readouterr().err
    assert run("index", tmp / "missing.txt", grammar)[0] == 2
    badg = tmp / "badg.txt"
    badg.write_text("S -> (a\n")
    assert run("index", graph, badg)[0] == 2
    idx = tmp / "idx.txt"
    run("index", graph, grammar, "-o", idx)
    assert run("reach", idx, "T")[0] == 2
    assert run("paths", idx, "0", "7", "S")[0] == 2
    junk = tmp / "junk.idx"
    junk.write_text("garbage\n")
    assert run("reach", junk, "S")[0] == 2
    assert run("paths", idx, "0", "1", "S", "--max-paths", "-1")[0] == 2


def test_collision_is_input_error(files):
    tmp, _, grammar = files
    g = tmp / "coll.txt"
    g.write_text("0 S 1\n")
    assert run("index", g, grammar)[0] == 2


def test_internal_error_exit_code(files, monkeypatch):
    _, graph, grammar = files
    import kronpath.cli as cli

    def boom(*a, **k):
        raise AssertionError("invariant")

    monkeypatch.setattr(cli, "build_index", boom)
    assert run("index", graph, grammar)[0] == 3


def test_module_entry_point(files):
    _, graph, _ = files
    r = subprocess.run([sys.executable, "-m", "kronpath", "stats", str(graph)],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("# vertices 2")
