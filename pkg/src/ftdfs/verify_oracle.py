"""Independent checks and seeded generators.

Nothing here reads the engine's paths, shallow tree or ancestor lists: the
validity checker renumbers the candidate tree itself, and the brute-force
routines work straight off the graph.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import InvalidInput
from .graph_core import NO_FAULTS, ROOT, FaultSet, Graph, build_graph, failure_masks
from .preprocess import DfsTree

CROSS_EDGE = "cross_edge"
NOT_SPANNING = "not_spanning"
FAILED_ELEMENT = "failed_element_used"
WRONG_ROOT = "wrong_root"
CYCLE = "cycle"


@dataclass
class Verdict:
    violations: list[tuple[str, object]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {k for k, _ in self.violations}


def check_dfs_tree(
    g: Graph,
    faults: FaultSet,
    parent: Sequence[int],
    root: int,
    parent_edge: Optional[Sequence[int]] = None,
) -> Verdict:
    """Is ``parent`` a DFS tree of ``g`` minus ``faults`` rooted at ``root``?

    Accepts a parent list or anything with ``.parent``/``.parent_edge``.
    A parent value of -1 means "no parent". With a root other than the
    dummy, dummy edges are not tested for crossing: the dummy is entered
    last and only gathers the components not containing ``root``.
    """
    if hasattr(parent, "parent"):
        parent_edge = parent.parent_edge if parent_edge is None else parent_edge
        parent = parent.parent
    vf, ef = failure_masks(g, faults)
    n = g.n
    out = Verdict()
    bad = out.violations
    if len(parent) < n:
        parent = list(parent) + [-1] * (n - len(parent))
    if not 0 <= root < n or vf[root]:
        bad.append((WRONG_ROOT, root))
        return out
    if parent[root] != -1:
        bad.append((WRONG_ROOT, root))

    kids: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        p = parent[v]
        if v == root or p == -1:
            if v != root and not vf[v]:
                bad.append((NOT_SPANNING, v))
            continue
        if vf[v] or not 0 <= p < n or vf[p]:
            bad.append((FAILED_ELEMENT, (p, v)))
            continue
        if parent_edge is not None and parent_edge[v] >= 0:
            e = parent_edge[v]
            if {g.eu[e], g.ev[e]} != {p, v}:
                bad.append((NOT_SPANNING, (p, v)))
                continue
            if ef[e]:
                bad.append((FAILED_ELEMENT, (p, v)))
                continue
        elif not any(not ef[e] for e in g.edges_between(p, v)):
            bad.append((FAILED_ELEMENT, (p, v)))
            continue
        kids[p].append(v)

    # fresh preorder numbering of the candidate tree
    pre = [0] * n
    last = [0] * n
    clock = 0
    stack = [(root, False)]
    while stack:
        v, done = stack.pop()
        if done:
            last[v] = clock
            continue
        clock += 1
        pre[v] = clock
        stack.append((v, True))
        for c in kids[v]:
            stack.append((c, False))
    for v in range(n):
        if not vf[v] and pre[v] == 0 and parent[v] != -1:
            bad.append((CYCLE, v))
    if bad:
        return out

    def related(a: int, b: int) -> bool:
        return pre[a] <= pre[b] <= last[a] or pre[b] <= pre[a] <= last[b]

    for e in range(g.edge_count):
        a, b = g.eu[e], g.ev[e]
        if ef[e] or vf[a] or vf[b] or (a == ROOT and root != ROOT):
            continue
        if not related(a, b):
            bad.append((CROSS_EDGE, (a, b)))
    return out


def brute_force_dfs(g: Graph, root: int, faults: FaultSet = NO_FAULTS) -> DfsTree:
    """Textbook DFS in adjacency order.

    For a root other than the dummy, the dummy root is entered only after
    the root's own component is exhausted, mirroring the engine.
    """
    vf, ef = failure_masks(g, faults)
    n = g.n
    parent = [-1] * n
    pedge = [-1] * n
    kids: list[list[int]] = [[] for _ in range(n)]
    seen = bytearray(n)

    def dfs(s: int, skip_dummy: bool) -> None:
        seen[s] = 1
        stack = [(s, iter(zip(g.adj[s], g.inc[s])))]
        while stack:
            v, it = stack[-1]
            for u, e in it:
                if seen[u] or ef[e] or vf[u] or (skip_dummy and u == ROOT):
                    continue
                seen[u] = 1
                parent[u] = v
                pedge[u] = e
                kids[v].append(u)
                stack.append((u, iter(zip(g.adj[u], g.inc[u]))))
                break
            else:
                stack.pop()

    if root == ROOT:
        dfs(ROOT, False)
    else:
        dfs(root, True)
        parent[ROOT] = root
        pedge[ROOT] = g.dummy_edge[root]
        kids[root].append(ROOT)
        seen[ROOT] = 1
        for v in range(1, n):
            if not seen[v] and not vf[v]:
                parent[v] = ROOT
                pedge[v] = g.dummy_edge[v]
                kids[ROOT].append(v)
                dfs(v, True)
    return DfsTree.from_parents(root, parent, pedge, kids)


def tree_k_prime(g: Graph, faults: FaultSet) -> int:
    """Max faults (vertices plus tree edges) on a root-leaf path of the
    textbook DFS tree from the dummy root, by explicit path enumeration."""
    t = brute_force_dfs(g, ROOT)
    parent, pedge = t.parent, t.parent_edge
    kids: list[list[int]] = [[] for _ in range(g.n)]
    for v, p in enumerate(parent):
        if p >= 0:
            kids[p].append(v)
    best = 0
    for leaf in range(g.n):
        if kids[leaf] or (leaf != ROOT and parent[leaf] < 0):
            continue
        c = 0
        v = leaf
        while v != ROOT:
            c += (v in faults.failed_vertices) + (pedge[v] in faults.failed_edges)
            v = parent[v]
        best = max(best, c)
    return best


# -- generators -----------------------------------------------------------

PROFILES = ("uniform", "path_concentrated")


def random_graph(rng: random.Random, n: int, m: int) -> Graph:
    if n < 1 or m < 0 or m > n * (n - 1) // 2:
        raise InvalidInput(f"cannot place {m} simple edges on {n} vertices")
    edges: set[tuple[int, int]] = set()
    if m > n * (n - 1) // 4:
        pool = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
        chosen = rng.sample(pool, m)
    else:
        chosen = []
        while len(chosen) < m:
            u, v = rng.randint(1, n), rng.randint(1, n)
            if u == v:
                continue
            key = (min(u, v), max(u, v))
            if key not in edges:
                edges.add(key)
                chosen.append(key)
    return build_graph(n, chosen)


def random_instance(
    seed: int, n: int, m: int, k_faults: int, profile: str = "uniform"
) -> tuple[Graph, FaultSet]:
    """Seeded random simple graph plus a mixed vertex/edge fault set."""
    if profile not in PROFILES:
        raise InvalidInput(f"unknown profile {profile!r}")
    rng = random.Random(seed)
    g = random_graph(rng, n, m)
    return g, draw_faults(rng, g, k_faults, profile)


def draw_faults(rng: random.Random, g: Graph, k_faults: int, profile: str = "uniform") -> FaultSet:
    """``uniform`` draws from all vertices and non-dummy edges.

    ``path_concentrated`` draws only from the vertices and tree edges of
    one deepest root-leaf path of the textbook DFS tree, so k' = k. When
    that path is shorter than ``k_faults`` the count is clamped to it.
    """
    if profile not in PROFILES:
        raise InvalidInput(f"unknown profile {profile!r}")
    if k_faults < 0:
        raise InvalidInput("negative fault count")
    if profile == "uniform":
        pool = [("v", v) for v in range(1, g.n) if not g.vertex_failed[v]]
        pool += [("e", e) for e in range(g.edge_count) if g.eu[e] != ROOT and g.edge_usable(e)]
    else:
        t = brute_force_dfs(g, ROOT)
        depth = t.depth()
        v = max(t.vertex_at[1:], key=lambda x: (depth[x], -x))
        pool = []
        while v != ROOT:
            pool.append(("v", v))
            if t.parent[v] != ROOT:
                pool.append(("e", t.parent_edge[v]))
            v = t.parent[v]
        k_faults = min(k_faults, len(pool))
    if k_faults > len(pool):
        raise InvalidInput(f"only {len(pool)} fault candidates for k={k_faults}")
    picked = rng.sample(pool, k_faults)
    return FaultSet(
        frozenset(x for kind, x in picked if kind == "v"),
        frozenset(x for kind, x in picked if kind == "e"),
    )


def random_updates(rng: random.Random, g: Graph, count: int, max_new_degree: int = 4) -> list[tuple]:
    """Valid update stream against a private copy of ``g``.

    Updates are ``("ie", u, v)``, ``("de", u, v)``, ``("iv", w, [x...])`` and
    ``("dv", u)`` with 1-based original ids, in the stream-file vocabulary.
    """
    h = g.copy()
    out: list[tuple] = []
    while len(out) < count:
        live = [v for v in range(1, h.n) if not h.vertex_failed[v]]
        r = rng.random()
        if r < 0.4 and len(live) >= 2:
            u, v = rng.sample(live, 2)
            h.add_edge(u, v)
            out.append(("ie", u, v))
        elif r < 0.8:
            cand = [e for e in range(h.edge_count) if h.eu[e] != ROOT and h.edge_usable(e)]
            if not cand:
                continue
            e = rng.choice(cand)
            h.fail_edge(e)
            out.append(("de", h.eu[e], h.ev[e]))
        elif r < 0.9 and len(live) > 2:
            u = rng.choice(live)
            h.fail_vertex(u)
            out.append(("dv", u))
        else:
            nbrs = rng.sample(live, min(len(live), rng.randint(0, max_new_degree)))
            w = h.add_vertex()
            for x in nbrs:
                h.add_edge(w, x)
            out.append(("iv", w, nbrs))
    return out


# -- application oracles ----------------------------------------------------

class UnionFind:
    def __init__(self, n: int):
        self.p = list(range(n))

    def find(self, x: int) -> int:
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            self.p[a] = b


def connectivity_oracle(g: Graph) -> UnionFind:
    """Union-find over the usable original (non-dummy) edges."""
    uf = UnionFind(g.n)
    for a, b in g.original_edges():
        uf.union(a, b)
    return uf


@dataclass
class LowLinkResult:
    articulation: set[int]
    bridges: set[int]
    blocks: list[set[int]]
    two_edge_label: dict[int, int]


def lowlink_oracle(g: Graph) -> LowLinkResult:
    """Hopcroft-Tarjan on the original graph (dummy edges ignored).

    Multigraph-safe: the edge to the parent is excluded by id, so a
    parallel copy counts as a back edge.
    """
    n = g.n
    vf = g.vertex_failed
    disc = [0] * n
    low = [0] * n
    clock = 0
    art: set[int] = set()
    bridges: set[int] = set()
    blocks: list[set[int]] = []
    estack: list[int] = []
    for s in range(1, n):
        if vf[s] or disc[s]:
            continue
        clock += 1
        disc[s] = low[s] = clock
        root_children = 0
        stack = [(s, -1, iter(zip(g.adj[s], g.inc[s])))]
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for u, e in it:
                if u == ROOT or e == pe or not g.edge_usable(e):
                    continue
                if not disc[u]:
                    estack.append(e)
                    clock += 1
                    disc[u] = low[u] = clock
                    stack.append((u, e, iter(zip(g.adj[u], g.inc[u]))))
                    advanced = True
                    break
                if disc[u] < disc[v]:
                    estack.append(e)
                    low[v] = min(low[v], disc[u])
            if advanced:
                continue
            stack.pop()
            if not stack:
                continue
            p = stack[-1][0]
            low[p] = min(low[p], low[v])
            if low[v] > disc[p]:
                bridges.add(pe)
            if low[v] >= disc[p]:
                if p == s:
                    root_children += 1
                else:
                    art.add(p)
                block: set[int] = set()
                while True:
                    e = estack.pop()
                    block.add(g.eu[e])
                    block.add(g.ev[e])
                    if e == pe:
                        break
                blocks.append(block)
        if root_children >= 2:
            art.add(s)
    uf = UnionFind(n)
    for e in range(g.edge_count):
        if g.eu[e] != ROOT and g.edge_usable(e) and e not in bridges:
            uf.union(g.eu[e], g.ev[e])
    label = {v: uf.find(v) for v in range(1, n) if not vf[v]}
    return LowLinkResult(art, bridges, blocks, label)


def count_report(session) -> dict:
    """Instrumentation totals of a finished reroot session."""
    entered = session.entered
    return {
        "q_calls": session.q_calls,
        "cascade_calls": session.stats.calls,
        "cascade_comparisons": session.stats.comparisons,
        "skips": session.skips,
        "attaches": session.attaches,
        "nodes_entered": list(entered),
        "max_entered": max(entered, default=0),
        "shallow_height": session.shallow.height,
        "k_prime": session.k_prime,
    }


def q_call_bound(n: int, d: int) -> float:
    return n * d * (math.log2(n) + 1)
