"""Linear-time preprocessing: static DFS, heavy paths, shallow tree, ancestor lists.

All per-vertex arrays are indexed by vertex id; dfn values are 1-based and
the dummy root always gets dfn 1. Vertices that are failed (or absent) at
build time get dfn 0 and belong to no path.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .cascade import CascadeOverlay, cascade_build, cascade_build_steps
from .graph_core import ROOT, Graph


@dataclass
class DfsTree:
    root: int
    parent: list[int]
    parent_edge: list[int]
    dfn: list[int]
    vertex_at: list[int]
    size: list[int]
    heavy_child: list[int]
    subtree_last: list[int]

    @property
    def n(self) -> int:
        """Number of vertices spanned by the tree."""
        return len(self.vertex_at) - 1

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in self.parent]
        for v in self.vertex_at[1:]:
            p = self.parent[v]
            if p >= 0:
                kids[p].append(v)
        return kids

    def is_ancestor(self, a: int, d: int) -> bool:
        """True when ``a`` is ``d`` or a proper ancestor of ``d``."""
        da = self.dfn[a]
        return da > 0 and da <= self.dfn[d] <= self.subtree_last[a]

    def depth(self) -> list[int]:
        dep = [0] * len(self.parent)
        for v in self.vertex_at[2:]:
            dep[v] = dep[self.parent[v]] + 1
        return dep

    @classmethod
    def from_parents(
        cls,
        root: int,
        parent: Sequence[int],
        parent_edge: Optional[Sequence[int]] = None,
        children: Optional[list[list[int]]] = None,
    ) -> "DfsTree":
        """Derive numbering, sizes and heavy children from parent links.

        Children are visited in ``children`` order when given, otherwise in
        increasing vertex id. Vertices not reachable from ``root`` through
        the parent links are left out (dfn 0).
        """
        nv = len(parent)
        if children is None:
            children = [[] for _ in range(nv)]
            for v in range(nv):
                p = parent[v]
                if p >= 0 and v != root:
                    children[p].append(v)
        dfn = [0] * nv
        order = [0]
        stack = [root]
        while stack:
            v = stack.pop()
            order.append(v)
            dfn[v] = len(order) - 1
            stack.extend(reversed(children[v]))
        size = [0] * nv
        heavy = [-1] * nv
        last = [0] * nv
        for v in reversed(order[1:]):
            s = 1
            best = -1
            lst = dfn[v]
            for c in children[v]:
                s += size[c]
                if best < 0 or size[c] > size[best] or (size[c] == size[best] and c < best):
                    best = c
                if last[c] > lst:
                    lst = last[c]
            size[v] = s
            heavy[v] = best
            last[v] = lst
        par = list(parent)
        par[root] = -1
        pe = list(parent_edge) if parent_edge is not None else [-1] * nv
        pe[root] = -1
        return cls(root, par, pe, dfn, order, size, heavy, last)


@dataclass
class PathSet:
    paths: list[tuple[int, int]]
    path_of: list[int]


@dataclass
class ShallowTree:
    """Heavy paths collapsed into nodes.

    ``lo[i]``/``hi[i]`` are the dfn of the top and bottom vertex of node
    ``i``'s path; an exhausted node has ``lo > hi``.
    """

    parent: list[int]
    lo: list[int]
    hi: list[int]
    node_of: list[int]
    depth: list[int]

    @property
    def height(self) -> int:
        return max(self.depth, default=0)

    def __len__(self) -> int:
        return len(self.parent)

    def path_set(self, tree: DfsTree) -> PathSet:
        vat = tree.vertex_at
        return PathSet([(vat[a], vat[b]) for a, b in zip(self.lo, self.hi)], list(self.node_of))

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in self.parent]
        for i, p in enumerate(self.parent):
            if p >= 0:
                kids[p].append(i)
        return kids


@dataclass
class AncestorIndex:
    """Per-vertex ancestor-neighbour lists, stored by owner dfn.

    ``anc[i]`` holds the dfn of every tree ancestor adjacent to ``v(i)``
    (one entry per edge) in increasing order, and ``eid[i]`` the matching
    edge ids.
    """

    anc: list[list[int]]
    eid: list[list[int]]

    @property
    def total(self) -> int:
        return sum(len(a) for a in self.anc)

    def of(self, tree: DfsTree, u: int) -> list[tuple[int, int]]:
        """D(u) as (ancestor vertex, edge id) pairs."""
        i = tree.dfn[u]
        vat = tree.vertex_at
        return [(vat[a], e) for a, e in zip(self.anc[i], self.eid[i])]


@dataclass
class Preprocessed:
    graph: Graph
    n0: int
    m0: int
    vfail0: bytearray
    efail0: bytearray
    tree: DfsTree
    shallow: ShallowTree
    index: AncestorIndex
    overlay: CascadeOverlay

    @property
    def paths(self) -> PathSet:
        return self.shallow.path_set(self.tree)

    @property
    def m(self) -> int:
        return self.index.total


def _static_dfs_steps(g: Graph, n0: int, m0: int, vf: bytearray, ef: bytearray, collect: bool = True):
    adj, inc = g.adj, g.inc
    parent = [-1] * n0
    pedge = [-1] * n0
    children: list[list[int]] = [[] for _ in range(n0)]
    d_anc: list[list[int]] = [[] for _ in range(n0)]
    d_eid: list[list[int]] = [[] for _ in range(n0)]
    seen = bytearray(n0)
    ptr = [0] * n0
    # with no snapshot bounds in play the id checks can be skipped
    bounded = m0 < len(g.eu) or n0 < len(adj)

    def usable(u: int, e: int) -> bool:
        return e < m0 and u < n0 and not seen[u] and not ef[e] and not vf[u]

    v = ROOT
    while True:
        # announce v to its unvisited neighbours
        seen[v] = 1
        if not collect:
            pass
        elif bounded:
            for u, e in zip(adj[v], inc[v]):
                if usable(u, e):
                    d_anc[u].append(v)
                    d_eid[u].append(e)
        else:
            for u, e in zip(adj[v], inc[v]):
                if not seen[u] and not ef[e] and not vf[u]:
                    d_anc[u].append(v)
                    d_eid[u].append(e)
        yield len(adj[v]) + 1
        # descend to the next unvisited neighbour, backtracking as needed
        nxt = -1
        while v >= 0:
            nbrs = adj[v]
            edges = inc[v]
            i = ptr[v]
            deg = len(nbrs)
            while i < deg:
                u = nbrs[i]
                e = edges[i]
                i += 1
                if (not bounded or (e < m0 and u < n0)) and not seen[u] and not ef[e] and not vf[u]:
                    nxt = u
                    break
            ptr[v] = i
            if nxt >= 0:
                break
            v = parent[v]
        if nxt < 0:
            break
        parent[nxt] = v
        pedge[nxt] = e
        children[v].append(nxt)
        v = nxt
    tree = DfsTree.from_parents(ROOT, parent, pedge, children)
    return tree, children, d_anc, d_eid


def static_dfs(g: Graph) -> tuple[DfsTree, AncestorIndex]:
    """DFS from the dummy root collecting sizes, heavy children and D.

    Before descending from a vertex ``v``, ``v`` is appended to D(u) for
    every still-unvisited neighbour ``u``; this leaves each D(u) sorted by
    ancestor depth.
    """
    tree, _, d_anc, d_eid = _drain(
        _static_dfs_steps(g, g.n, g.edge_count, g.vertex_failed, g.edge_failed)
    )
    dfn, vat = tree.dfn, tree.vertex_at
    anc = [[]] + [[dfn[a] for a in d_anc[vat[i]]] for i in range(1, len(vat))]
    eid = [[]] + [list(d_eid[vat[i]]) for i in range(1, len(vat))]
    return tree, AncestorIndex(anc, eid)


def manipulate_dfn(
    tree: DfsTree, children: Optional[list[list[int]]] = None
) -> tuple[DfsTree, PathSet, ShallowTree]:
    """Renumber so that every heavy path gets consecutive dfn.

    The second traversal always descends into the heavy child first and
    then into the remaining children in their original order. A vertex
    starts a new path unless it is its parent's heavy child.
    """
    if children is None:
        children = tree.children()
    heavy = tree.heavy_child
    ordered = [[] for _ in children]
    for v, kids in enumerate(children):
        h = heavy[v]
        if h >= 0:
            ordered[v] = [h] + [c for c in kids if c != h]
    new = DfsTree.from_parents(tree.root, tree.parent, tree.parent_edge, ordered)
    nv = len(tree.parent)
    node_of = [-1] * nv
    parent_node: list[int] = []
    lo: list[int] = []
    hi: list[int] = []
    depth: list[int] = []
    for i in range(1, len(new.vertex_at)):
        v = new.vertex_at[i]
        p = new.parent[v]
        if p >= 0 and heavy[p] == v:
            node = node_of[p]
            hi[node] = i
        else:
            node = len(lo)
            pn = node_of[p] if p >= 0 else -1
            parent_node.append(pn)
            depth.append(depth[pn] + 1 if pn >= 0 else 0)
            lo.append(i)
            hi.append(i)
        node_of[v] = node
    shallow = ShallowTree(parent_node, lo, hi, node_of, depth)
    return new, shallow.path_set(new), shallow


def shallow_depth(s: ShallowTree, node: int) -> int:
    d = 0
    while s.parent[node] >= 0:
        node = s.parent[node]
        d += 1
    return d


def build_steps(
    g: Graph,
    n0: Optional[int] = None,
    m0: Optional[int] = None,
    vfail: Optional[bytearray] = None,
    efail: Optional[bytearray] = None,
) -> Iterator[int]:
    """Resumable preprocessing of ``g`` restricted to a snapshot.

    The snapshot is the first ``n0`` vertices and ``m0`` edge ids with the
    given failure masks; later growth of ``g`` is ignored, so the build can
    be advanced in slices while ``g`` keeps changing. Yields units of work;
    the return value is the :class:`Preprocessed` bundle.
    """
    n0 = g.n if n0 is None else n0
    m0 = g.edge_count if m0 is None else m0
    vfail = bytearray(g.vertex_failed[:n0]) if vfail is None else vfail
    efail = bytearray(g.edge_failed[:m0]) if efail is None else efail
    tree, children, d_anc, d_eid = yield from _static_dfs_steps(g, n0, m0, vfail, efail)
    new, _, shallow = manipulate_dfn(tree, children)
    yield len(new.vertex_at)
    dfn, vat = new.dfn, new.vertex_at
    anc: list[list[int]] = [[]]
    eid: list[list[int]] = [[]]
    for i in range(1, len(vat)):
        v = vat[i]
        anc.append([dfn[a] for a in d_anc[v]])
        eid.append(d_eid[v])
    yield len(vat)
    overlay = yield from cascade_build_steps(anc)
    return Preprocessed(g, n0, m0, vfail, efail, new, shallow, AncestorIndex(anc, eid), overlay)


def preprocess(g: Graph) -> Preprocessed:
    """One-shot preprocessing of the whole current graph.

    Same result as draining :func:`build_steps`, but the ancestor lists are
    assembled in bulk after the traversal instead of during it.
    """
    n0, m0 = g.n, g.edge_count
    vf, ef = bytearray(g.vertex_failed), bytearray(g.edge_failed)
    tree, children, _, _ = _drain(_static_dfs_steps(g, n0, m0, vf, ef, collect=False))
    new, _, shallow = manipulate_dfn(tree, children)
    index = _bulk_ancestor_index(g, new, vf, ef, m0)
    overlay = cascade_build(index.anc)
    return Preprocessed(g, n0, m0, vf, ef, new, shallow, index, overlay)


def _bulk_ancestor_index(g: Graph, tree: DfsTree, vf: bytearray, ef: bytearray, m0: int) -> AncestorIndex:
    # every usable edge joins an ancestor to a descendant, so D(u) is the
    # set of edges whose other end has a smaller dfn, ordered by that dfn
    # and then by edge id (the traversal's adjacency order)
    dfn = np.asarray(tree.dfn, dtype=np.int64)
    eu = np.asarray(g.eu[:m0], dtype=np.int64)
    ev = np.asarray(g.ev[:m0], dtype=np.int64)
    vfa = np.frombuffer(bytes(vf), dtype=np.uint8)
    ok = (np.frombuffer(bytes(ef[:m0]), dtype=np.uint8) == 0) & (vfa[eu] == 0) & (vfa[ev] == 0)
    ok &= (dfn[eu] > 0) & (dfn[ev] > 0)
    ids = np.nonzero(ok)[0]
    du, dv = dfn[eu[ids]], dfn[ev[ids]]
    owner = np.maximum(du, dv)
    anc = np.minimum(du, dv)
    order = np.lexsort((ids, anc, owner))
    owner, anc, ids = owner[order], anc[order], ids[order]
    nv = len(tree.vertex_at)
    bounds = np.searchsorted(owner, np.arange(nv + 1)).tolist()
    anc_l, ids_l = anc.tolist(), ids.tolist()
    return AncestorIndex(
        [anc_l[bounds[i]:bounds[i + 1]] for i in range(nv)],
        [ids_l[bounds[i]:bounds[i + 1]] for i in range(nv)],
    )


def estimated_work(g: Graph) -> int:
    """Rough total of the units :func:`build_steps` yields for ``g``."""
    return 3 * g.n + 4 * g.edge_count


def _drain(steps):
    while True:
        try:
            next(steps)
        except StopIteration as stop:
            return stop.value
