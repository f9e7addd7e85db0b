import math
import random

import pytest

from ftdfs.errors import InvalidInput
from ftdfs.fault_dynamic import (
    DeleteEdge,
    DeleteVertex,
    DynamicDFS,
    InsertEdge,
    InsertVertex,
    RebuildSchedule,
    UpdateBatch,
    apply_faults,
    apply_update,
    fault_tolerant_session,
    k_prime,
    query_fault_tolerant,
)
from ftdfs.fileio import update_from_tuple
from ftdfs.graph_core import NO_FAULTS, ROOT, FaultSet, build_graph, failure_masks
from ftdfs.preprocess import preprocess
from ftdfs.verify_oracle import check_dfs_tree, random_graph, random_instance, random_updates, tree_k_prime

from conftest import ID, name


def pieces(pre, shallow):
    vat = pre.tree.vertex_at
    return [[name(vat[i]) for i in range(lo, hi + 1)] for lo, hi in zip(shallow.lo, shallow.hi)]


def test_failing_vertex_splits_path(golden):
    pre = preprocess(golden)
    sh, kp = apply_faults(pre, FaultSet({ID["c"]}))
    ps = pieces(pre, sh)
    assert ps[0] == ["0", "a", "b"]
    top = 0
    by_name = {tuple(p): i for i, p in enumerate(ps)}
    for piece in (("d",), ("e",), ("f", "g"), ("h", "i", "j"), ("l",)):
        assert sh.parent[by_name[piece]] == top
    assert sh.parent[by_name[("k",)]] == by_name[("h", "i", "j")]
    assert kp == 1


def test_failing_light_edge_keeps_paths(golden):
    pre = preprocess(golden)
    sh, _ = apply_faults(pre, FaultSet(failed_edges={golden.find_edge(ID["b"], ID["f"])}))
    assert pieces(pre, sh) == pieces(pre, pre.shallow)
    assert sh.parent == pre.shallow.parent


def test_empty_faults_keep_structures(golden):
    pre = preprocess(golden)
    assert apply_faults(pre, NO_FAULTS) == (pre.shallow, 0)


def test_fault_query_golden(golden):
    pre = preprocess(golden)
    f = FaultSet({ID["c"]})
    tree = query_fault_tolerant(pre, f)
    assert len(tree.vertex_at) - 1 == 12  # eleven vertices plus the dummy
    assert check_dfs_tree(golden, f, tree, ROOT).ok


def test_all_but_tree_edge_failed():
    g = build_graph(5, [(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3)])
    pre = preprocess(g)
    v = 3
    tree_edge = pre.tree.parent_edge[v]
    f = FaultSet(failed_edges={e for e in g.inc[v] if e != tree_edge and g.eu[e] != ROOT})
    tree = query_fault_tolerant(pre, f)
    assert check_dfs_tree(g, f, tree, ROOT).ok
    assert tree.dfn[v] > 0


def test_height_and_k_prime_bounds():
    rng = random.Random(4)
    for s in range(150):
        n = rng.randint(2, 120)
        m = rng.randint(0, min(300, n * (n - 1) // 2))
        k = min(rng.randint(0, 10), n - 1 + m)
        g, f = random_instance(s, n, m, k, rng.choice(["uniform", "path_concentrated"]))
        pre = preprocess(g)
        sh, kp = apply_faults(pre, f)
        assert kp == tree_k_prime(g, f) <= f.k
        assert sh.height <= kp + math.floor(math.log2(g.n))


def test_path_profile_concentrates_faults():
    g, f = random_instance(1, 400, 600, 12, "path_concentrated")
    assert k_prime(preprocess(g), f) == 12


def test_uniform_profile_sparse_k_prime():
    # sparse random graphs keep uniform faults off any single path
    ks = sorted(k_prime(preprocess(g), f) for g, f in
                (random_instance(s, 4096, 2048, 32, "uniform") for s in range(7)))
    assert ks[3] <= 4


def test_skips_bounded_by_failed_entries():
    for s in range(120):
        g, f = random_instance(s, 80, 300, 8, ("uniform", "path_concentrated")[s % 2])
        pre = preprocess(g)
        _, sess = fault_tolerant_session(pre, f)
        vf, ef = failure_masks(g, f)
        vat, index = pre.tree.vertex_at, pre.index
        touching = sum(
            1
            for i in range(1, len(vat))
            for a, e in zip(index.anc[i], index.eid[i])
            if ef[e] or vf[vat[a]] or vf[vat[i]]
        )
        assert sess.skips <= touching


def test_inserted_edge_seeded_in_both_lists(golden):
    pre = preprocess(golden)
    e = golden.add_edge(ID["d"], ID["l"])
    _, s = fault_tolerant_session(pre)
    assert e in s.L[ID["d"]] and e in s.L[ID["l"]]


def test_inserted_isolated_vertex_hangs_from_dummy(golden):
    pre = preprocess(golden)
    apply_update(golden, InsertVertex(13))
    tree = query_fault_tolerant(pre)
    assert tree.parent[13] == ROOT
    assert check_dfs_tree(golden, NO_FAULTS, tree, ROOT).ok


def test_inserted_vertex_joined_to_everything(golden):
    pre = preprocess(golden)
    apply_update(golden, InsertVertex(13, tuple(range(1, 13))))
    tree, s = fault_tolerant_session(pre)
    assert check_dfs_tree(golden, NO_FAULTS, tree, ROOT).ok
    assert len(s.inserted_edges) == 13


def test_update_validation(golden):
    with pytest.raises(InvalidInput):
        apply_update(golden, InsertVertex(5))
    with pytest.raises(InvalidInput):
        apply_update(golden, DeleteEdge(ID["d"], ID["l"]))
    with pytest.raises(InvalidInput):
        apply_update(golden, DeleteVertex(ROOT))
    with pytest.raises(InvalidInput):
        apply_update(golden, InsertEdge(1, 99))
    apply_update(golden, InsertVertex(15, (1,)))
    assert golden.vertex_failed[13] and golden.vertex_failed[14] and not golden.vertex_failed[15]


def test_cycle_deletions():
    g = build_graph(6, [(i, i % 6 + 1) for i in range(1, 7)])
    d = DynamicDFS(g)
    for u, v in [(1, 2), (3, 4), (5, 6)]:
        tree = d.step(DeleteEdge(u, v))
        assert check_dfs_tree(d.graph, NO_FAULTS, tree, ROOT).ok


@pytest.mark.parametrize("amortized", [False, True])
def test_alternating_same_edge(amortized):
    g = random_graph(random.Random(1), 40, 600)
    d = DynamicDFS(g, amortized=amortized)
    for i in range(40):
        up = InsertEdge(1, 2) if i % 2 == 0 else DeleteEdge(1, 2)
        tree = d.step(up)
        assert check_dfs_tree(d.graph, NO_FAULTS, tree, ROOT).ok
        assert d.pending <= d.period


@pytest.mark.parametrize("amortized", [False, True])
def test_dense_stream_pending_within_period(amortized):
    rng = random.Random(9)
    g = random_graph(rng, 120, 6000)
    d = DynamicDFS(g, amortized=amortized)
    assert d.period >= 2
    for t in random_updates(rng, g, 120):
        tree = d.step(update_from_tuple(t))
        assert d.pending <= d.period
        assert check_dfs_tree(d.graph, NO_FAULTS, tree, ROOT).ok
    assert d.rebuilds >= 120 // d.period - 1


def test_schedule_period():
    assert RebuildSchedule(100.0, 1.0, 0.0).period == 10
    assert RebuildSchedule(1.0, 100.0, 0.0).period == 1


def test_batch_container():
    b = UpdateBatch([InsertEdge(1, 2), DeleteVertex(3)])
    assert len(b) == 2 and list(b)[1] == DeleteVertex(3)
