import csv
import io
import math

import pytest

from ftdfs.cli import main
from ftdfs.fileio import (
    format_tree,
    load_snapshot,
    parse_tree,
    read_edge_list,
    read_updates,
    save_snapshot,
    write_edge_list,
)
from ftdfs.errors import EmptyGraph, InvalidInput
from ftdfs.graph_core import NO_FAULTS, ROOT, build_graph
from ftdfs.preprocess import preprocess
from ftdfs.verify_oracle import check_dfs_tree

from conftest import GOLDEN_EDGES, ID

GOLDEN_TEXT = "# twelve-vertex tree\n12 11\n" + "".join(f"{ID[u]} {ID[v]}\n" for u, v in GOLDEN_EDGES)


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    graph = tmp_path / "g.txt"
    graph.write_text(GOLDEN_TEXT)
    snap = tmp_path / "g.snap"
    code, _ = run(["build", "--graph", str(graph), "--out", str(snap)])
    assert code == 0
    return tmp_path, graph, snap


def kv(line):
    return dict(tok.split("=") for tok in line.split())


def test_build_reports_structure(files):
    _, graph, _ = files
    code, out = run(["build", "--graph", str(graph)])
    info = kv(out)
    assert code == 0 and info["d"] == "2" and info["paths"] == "6" and info["n"] == "12"


def test_build_single_vertex(tmp_path):
    p = tmp_path / "one.txt"
    p.write_text("1 0\n")
    code, out = run(["build", "--graph", str(p)])
    assert code == 0 and kv(out)["d"] == "0" and kv(out)["paths"] == "1"


def test_build_empty_graph(tmp_path):
    p = tmp_path / "zero.txt"
    p.write_text("0 0\n")
    assert run(["build", "--graph", str(p)])[0] == 2
    with pytest.raises(EmptyGraph):
        read_edge_list(io.StringIO("0 0\n"))


def test_parse_error_reports_line(tmp_path):
    with pytest.raises(InvalidInput, match="line 3"):
        read_edge_list(io.StringIO("3 2\n1 2\n2 z\n"))


def test_query_with_vertex_fault(files):
    tmp, graph, snap = files
    code, out = run(["query", "--snapshot", str(snap), "--faults", f"v:{ID['c']}"])
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 11
    assert all(not l.startswith(f"{ID['c']} ") for l in lines)


def test_query_reroot_and_verify(files):
    tmp, graph, snap = files
    code, out = run(["query", "--snapshot", str(snap), "--reroot", str(ID["l"])])
    assert code == 0 and f"{ID['l']} -" in out
    tree_file = tmp / "t.txt"
    tree_file.write_text(out)
    code, vout = run(["verify", "--graph", str(graph), "--tree", str(tree_file), "--root", str(ID["l"])])
    assert code == 0 and vout.strip().endswith("ok")


def test_verify_flags_bad_tree(files):
    tmp, graph, _ = files
    bad = tmp / "bad.txt"
    bad.write_text("".join(f"{v} 0\n" for v in range(1, 13)))
    code, out = run(["verify", "--graph", str(graph), "--tree", str(bad)])
    assert code == 1 and "cross_edge" in out


def test_query_empty_faults_and_counters(files):
    _, _, snap = files
    code, out = run(["query", "--snapshot", str(snap), "--faults", "", "--emit", "counters"])
    assert code == 0
    info = kv(out)
    assert float(info["q_calls"]) <= float(info["q_bound"])


def test_query_unknown_fault_target(files):
    _, _, snap = files
    assert run(["query", "--snapshot", str(snap), "--faults", "v:99"])[0] == 2
    assert run(["query", "--snapshot", str(snap), "--faults", "e:1-5"])[0] == 2


def test_dynamic_cycle_stream(tmp_path):
    graph = tmp_path / "c.txt"
    graph.write_text("6 6\n1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n")
    snap = tmp_path / "c.snap"
    run(["build", "--graph", str(graph), "--out", str(snap)])
    stream = tmp_path / "s.txt"
    stream.write_text("de 1 2\nde 3 4\nde 5 6\n")
    code, out = run(["dynamic", "--snapshot", str(snap), "--stream", str(stream), "--emit-every", "1"])
    assert code == 0
    assert out.count("# after update") == 3
    assert "# summary updates=3" in out


def test_dynamic_empty_stream(files):
    tmp, _, snap = files
    stream = tmp / "empty.txt"
    stream.write_text("")
    code, out = run(["dynamic", "--snapshot", str(snap), "--stream", str(stream)])
    assert code == 0 and out.startswith("# summary updates=0")


def test_dynamic_bad_line(files):
    tmp, _, snap = files
    stream = tmp / "bad.txt"
    stream.write_text("ie 1 5\nxx 1\n")
    assert run(["dynamic", "--snapshot", str(snap), "--stream", str(stream)])[0] == 2
    stream.write_text("ie 1 5\nde 1 7\n")
    assert run(["dynamic", "--snapshot", str(snap), "--stream", str(stream)])[0] == 2


def test_bench_csv(tmp_path):
    out_csv = tmp_path / "b.csv"
    code, _ = run(["bench", "--n", "256", "--m", "600", "--k", "0", "--trials", "3", "--csv", str(out_csv)])
    assert code == 0
    rows = list(csv.DictReader(out_csv.open()))
    assert len(rows) == 3
    for r in rows:
        n = int(r["n"]) + 1
        assert int(r["q_calls"]) <= n * math.log2(n) * (math.log2(n) + 1)


def test_bench_zero_trials(tmp_path):
    out_csv = tmp_path / "b.csv"
    assert run(["bench", "--trials", "0", "--csv", str(out_csv)])[0] == 0
    assert out_csv.read_text().strip() == "trial,profile,n,m,k,k_prime,d,q_calls,wall_time,static_dfs_time"


def test_edge_list_round_trip():
    g = read_edge_list(io.StringIO(GOLDEN_TEXT))
    buf = io.StringIO()
    write_edge_list(g, buf)
    h = read_edge_list(io.StringIO(buf.getvalue()))
    assert sorted(zip(g.eu, g.ev)) == sorted(zip(h.eu, h.ev))


def test_tree_text_round_trip():
    g = read_edge_list(io.StringIO(GOLDEN_TEXT))
    from ftdfs.fault_dynamic import query_fault_tolerant

    tree = query_fault_tolerant(preprocess(g))
    parent = parse_tree(format_tree(tree, with_dfn=True), g.n, ROOT)
    assert parent == tree.parent
    assert check_dfs_tree(g, NO_FAULTS, parent, ROOT).ok


def test_update_stream_parsing():
    ups = [u for _, u in read_updates(io.StringIO("ie 1 2\n# note\nde 1 2\ndv 3\niv 9 2 1 4\n"))]
    assert [type(u).__name__ for u in ups] == ["InsertEdge", "DeleteEdge", "DeleteVertex", "InsertVertex"]
    assert ups[3].neighbors == (1, 4)
    with pytest.raises(InvalidInput, match="line 1"):
        list(read_updates(io.StringIO("iv 9 3 1 4\n")))


def test_snapshot_round_trip(tmp_path):
    g = read_edge_list(io.StringIO(GOLDEN_TEXT))
    pre = preprocess(g)
    path = tmp_path / "x.snap"
    save_snapshot(pre, path)
    back = load_snapshot(path)
    assert back.tree == pre.tree and back.shallow == pre.shallow
    assert back.index == pre.index and back.overlay == pre.overlay
    assert back.graph.eu == g.eu
    (tmp_path / "junk.snap").write_bytes(b"nope")
    with pytest.raises(InvalidInput):
        load_snapshot(tmp_path / "junk.snap")
