import json

import pytest

from treepart.cli import main
from treepart.fileio import read_graph, read_tp, write_graph
from treepart.graph import Graph
from treepart.partition import verify_tree_partition


@pytest.fixture
def clique6(tmp_path):
    path = tmp_path / "k6.txt"
    assert main(["gen", "clique", "--n", "6", "-o", str(path)]) == 0
    return path


def test_gen_and_exact(clique6, tmp_path, capsys):
    out = tmp_path / "tp.txt"
    assert main(["exact", str(clique6), "-o", str(out)]) == 0
    g, _ = read_graph(clique6.read_text())
    tp = read_tp(out.read_text())
    assert tp.width == 3 and verify_tree_partition(g, tp)


def test_gen_dot(capsys):
    assert main(["gen", "grid_h", "--n", "3", "--k", "2", "--format", "dot"]) == 0
    assert '"(1, 1)" -- "(1, 2)"' in capsys.readouterr().out


def test_tdecomp_construct_verify(tmp_path, capsys):
    gpath, tdpath, tppath = tmp_path / "g", tmp_path / "td", tmp_path / "tp"
    assert main(["gen", "random_ktree", "--n", "40", "--k", "2", "--seed", "3",
                 "-o", str(gpath)]) == 0
    assert main(["tdecomp", str(gpath), "-o", str(tdpath)]) == 0
    assert main(["tdecomp", str(gpath), "--exact", "-o", str(tdpath)]) == 0
    assert main(["construct", str(gpath), "--td", str(tdpath), "-o", str(tppath)]) == 0
    capsys.readouterr()
    assert main(["verify", str(gpath), "--td", str(tdpath), "--tp", str(tppath)]) == 0
    out = capsys.readouterr().out
    assert "td: ok, width 2" in out and "tp: ok" in out


def test_construct_trace(tmp_path):
    gpath, trace = tmp_path / "g", tmp_path / "trace.jsonl"
    main(["gen", "random_tree", "--n", "200", "--seed", "1", "-o", str(gpath)])
    assert main(["construct", str(gpath), "--delta", "4", "--trace", str(trace),
                 "-o", str(tmp_path / "tp")]) in (0, 2)
    main(["gen", "path", "--n", "60", "-o", str(gpath)])
    assert main(["construct", str(gpath), "--trace", str(trace), "-o", str(tmp_path / "tp")]) == 0
    records = [json.loads(line) for line in trace.read_text().splitlines()]
    assert records and {"depth", "case", "max_bag"} <= set(records[0])
    assert {r["case"] for r in records} <= {1, 2, 3, 4}


def test_verify_detects_bad_tp(tmp_path, capsys):
    gpath, tppath = tmp_path / "g", tmp_path / "tp"
    gpath.write_text(write_graph(Graph(3, [(0, 1), (1, 2), (0, 2)])))
    tppath.write_text("s tp 3 1 3\nb 1 1\nb 2 2\nb 3 3\n")
    assert main(["verify", str(gpath), "--tp", str(tppath)]) == 1
    assert "forest" in capsys.readouterr().out


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad"
    bad.write_text("p tpw 2 5\n")
    assert main(["exact", str(bad)]) == 2
    assert main(["exact", str(tmp_path / "missing")]) == 2
    assert main(["verify", str(bad)]) == 2
    assert main(["gen", "lower_tw2", "--delta", "12"]) == 2
    gpath = tmp_path / "disc"
    gpath.write_text(write_graph(Graph(4, [(0, 1), (2, 3)])))
    assert main(["exact", str(gpath)]) == 2


def test_exact_budget_exit(tmp_path, capsys):
    gpath = tmp_path / "g"
    main(["gen", "lower_tw2", "--delta", "11", "-o", str(gpath)])
    assert main(["exact", str(gpath)]) == 3
    out = tmp_path / "tp"
    assert main(["exact", str(gpath), "--budget-nodes", "2000", "-o", str(out)]) == 3
    assert out.read_text().startswith("c incomplete lower_bound=")
    g, _ = read_graph(gpath.read_text())
    assert verify_tree_partition(g, read_tp(out.read_text()))


def test_audit(clique6, capsys):
    assert main(["audit", str(clique6)]) == 0
    header, row = capsys.readouterr().out.strip().splitlines()
    fields = dict(zip(header.split(","), row.split(",")))
    assert fields["exact_tpw"] == "3" and fields["sandwich_ok"] == "1"
    assert main(["audit", str(clique6), "--format", "text"]) == 0
    assert "sandwich: satisfied" in capsys.readouterr().out


def test_experiment_empty_plan(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({"instances": []}))
    assert main(["experiment", str(plan)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 1 and out[0].startswith("family,")


def test_experiment_five(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps([
        {"family": "clique", "params": {"n": 6}},
        {"family": "path", "params": {"n": 7}},
        {"family": "cycle", "params": {"n": 8}},
        {"family": "random_ktree", "params": {"n": 10, "k": 2}, "seed": 4},
        {"family": "lower_general", "params": {"k": 2, "delta": 7, "n": 3}},
    ]))
    out = tmp_path / "a.csv"
    assert main(["experiment", str(plan), "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 6
    first = dict(zip(lines[0].split(","), lines[1].split(",")))
    assert first["family"] == "clique" and first["exact_tpw"] == "3"
    out2 = tmp_path / "b.csv"
    assert main(["experiment", str(plan), "--workers", "2", "-o", str(out2)]) == 0
    assert out.read_bytes() == out2.read_bytes()


def test_experiment_preflight(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps([{"family": "path", "params": {"n": 4}},
                                {"family": "nope"}, {"family": "lower_tw2",
                                                     "params": {"delta": 4}}]))
    assert main(["experiment", str(plan)]) == 2
    err = capsys.readouterr().err
    assert "instance 1" in err and "instance 2" in err
