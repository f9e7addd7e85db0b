import math

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from ftdfs.applications import biconnectivity
from ftdfs.fault_dynamic import DynamicDFS, InsertEdge, InsertVertex, DeleteEdge, DeleteVertex, fault_tolerant_session
from ftdfs.graph_core import NO_FAULTS, ROOT, FaultSet, build_graph, mark_failed
from ftdfs.preprocess import preprocess
from ftdfs.reroot_engine import run_reroot
from ftdfs.verify_oracle import check_dfs_tree, lowlink_oracle

SETTINGS = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def multigraphs(draw, max_n=14):
    n = draw(st.integers(1, max_n))
    pairs = st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda p: p[0] != p[1])
    edges = draw(st.lists(pairs, max_size=3 * n)) if n > 1 else []
    return build_graph(n, edges)


@st.composite
def graphs_with_faults(draw):
    g = draw(multigraphs())
    verts = draw(st.sets(st.integers(1, g.n - 1), max_size=3))
    user = [e for e in range(g.edge_count) if g.eu[e] != ROOT]
    edges = draw(st.sets(st.sampled_from(user), max_size=4)) if user else set()
    return g, FaultSet(verts, edges)


@SETTINGS
@given(multigraphs(), st.data())
def test_reroot_anywhere_is_valid(g, data):
    r = data.draw(st.integers(0, g.n - 1))
    tree, s = run_reroot(preprocess(g), r)
    assert check_dfs_tree(g, NO_FAULTS, tree, r).ok
    assert max(s.entered) <= math.floor(math.log2(g.n)) + 1


@SETTINGS
@given(graphs_with_faults())
def test_fault_query_is_valid_and_bounded(inst):
    g, f = inst
    tree, s = fault_tolerant_session(preprocess(g), f)
    assert check_dfs_tree(g, f, tree, ROOT).ok
    d = s.k_prime + math.floor(math.log2(g.n))
    assert s.shallow.height <= d
    assert s.q_calls <= g.n * d * (math.log2(g.n) + 1)


@SETTINGS
@given(graphs_with_faults())
def test_high_points_match_lowlink(inst):
    g, f = inst
    t = biconnectivity(preprocess(g), f)
    h = g.copy()
    mark_failed(h, f)
    o = lowlink_oracle(h)
    assert t.articulation == o.articulation
    assert t.bridges == o.bridges
    assert sorted(map(sorted, t.blocks())) == sorted(map(sorted, o.blocks))


@st.composite
def update_streams(draw):
    g = draw(multigraphs(max_n=10))
    h = g.copy()
    ups = []
    for _ in range(draw(st.integers(0, 12))):
        live = [v for v in range(1, h.n) if not h.vertex_failed[v]]
        kind = draw(st.sampled_from(["ie", "de", "dv", "iv"]))
        if kind == "ie" and len(live) >= 2:
            u, v = draw(st.lists(st.sampled_from(live), min_size=2, max_size=2, unique=True))
            up = InsertEdge(u, v)
        elif kind == "de":
            cand = [e for e in range(h.edge_count) if h.eu[e] != ROOT and h.edge_usable(e)]
            if not cand:
                continue
            e = draw(st.sampled_from(cand))
            up = DeleteEdge(h.eu[e], h.ev[e])
        elif kind == "dv" and live:
            up = DeleteVertex(draw(st.sampled_from(live)))
        elif kind == "iv":
            up = InsertVertex(h.n, tuple(draw(st.sets(st.sampled_from(live), max_size=3)) if live else ()))
        else:
            continue
        from ftdfs.fault_dynamic import apply_update

        apply_update(h, up)
        ups.append(up)
    return g, ups


@SETTINGS
@given(update_streams(), st.booleans())
def test_dynamic_stream_stays_valid(stream, amortized):
    g, ups = stream
    d = DynamicDFS(g, amortized=amortized)
    for up in ups:
        tree = d.step(up)
        assert check_dfs_tree(d.graph, NO_FAULTS, tree, ROOT).ok
        assert d.pending <= d.period
