"""Connectivity and biconnectivity answers read off a DFS tree.

Connectivity is an LCA test against the dummy root. Biconnected and
2-edge-connected structure comes from high-points, computed from the tree
edges plus a compact auxiliary edge list collected during the reroot.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

from .errors import InternalInvariantError, InvalidQuery
from .graph_core import NO_FAULTS, ROOT, FaultSet, Graph
from .preprocess import DfsTree, Preprocessed
from .reroot_engine import Session


class LcaIndex:
    """Euler tour with a sparse table of (depth, vertex) minima."""

    def __init__(self, tree: DfsTree):
        self.tree = tree
        nv = len(tree.parent)
        kids = tree.children()
        depth = [0] * nv
        first = [-1] * nv
        euler: list[int] = []
        root = tree.root
        stack = [(root, 0)]
        while stack:
            v, i = stack.pop()
            if i == 0:
                first[v] = len(euler)
            euler.append(v)
            if i < len(kids[v]):
                stack.append((v, i + 1))
                c = kids[v][i]
                depth[c] = depth[v] + 1
                stack.append((c, 0))
        self.depth = depth
        self.first = first
        keys = [depth[v] * nv + v for v in euler]
        table = [keys]
        j = 1
        while 2 * j <= len(keys):
            prev = table[-1]
            table.append([min(prev[i], prev[i + j]) for i in range(len(prev) - j)])
            j *= 2
        self._table = table
        self._nv = nv

    def lca(self, u: int, v: int) -> int:
        fu, fv = self._first(u), self._first(v)
        if fu > fv:
            fu, fv = fv, fu
        k = (fv - fu + 1).bit_length() - 1
        row = self._table[k]
        return min(row[fu], row[fv - (1 << k) + 1]) % self._nv

    def _first(self, v: int) -> int:
        if not 0 <= v < self._nv or self.first[v] < 0:
            raise InvalidQuery(f"vertex {v} is not in the current tree")
        return self.first[v]


def is_connected(index: LcaIndex, u: int, v: int) -> bool:
    """Whether ``u`` and ``v`` share a component of the graph without the dummy."""
    root = index.tree.root
    if root != ROOT:
        raise InvalidQuery("connectivity needs a tree rooted at the dummy vertex")
    return index.lca(u, v) != ROOT


@dataclass(frozen=True)
class AuxEdgeList:
    edges: tuple[int, ...]


def collect_aux_edges(session: Session) -> AuxEdgeList:
    """Edges a session gathered for high-points (run with ``collect_aux``)."""
    return AuxEdgeList(tuple(session.aux_edges()))


@dataclass
class HighPointTable:
    tree: DfsTree
    high: list[int]
    articulation: set[int]
    bridges: set[int]
    block_of: list[int]
    block_head: list[int]
    two_edge: list[int]

    def blocks(self) -> list[set[int]]:
        """Biconnected components as vertex sets."""
        out: list[set[int]] = [{h} for h in self.block_head]
        for v, b in enumerate(self.block_of):
            if b >= 0:
                out[b].add(v)
        return out


def compute_high_points(g: Graph, tree: DfsTree, aux: AuxEdgeList | Iterable[int]) -> HighPointTable:
    """High-points from tree edges plus ``aux``, then the derived structure.

    The tree must be rooted at the dummy vertex; its children are the roots
    of the DFS forest of the original graph. Dummy edges are ignored.
    """
    if tree.root != ROOT:
        raise InvalidQuery("high-points need a tree rooted at the dummy vertex")
    edges = aux.edges if isinstance(aux, AuxEdgeList) else tuple(aux)
    dfn, last, par, pedge = tree.dfn, tree.subtree_last, tree.parent, tree.parent_edge
    vat = tree.vertex_at
    nv = len(par)
    high = list(dfn)
    for e in edges:
        a, b = g.eu[e], g.ev[e]
        if a == ROOT or e == pedge[a] or e == pedge[b]:
            continue
        if dfn[a] > dfn[b]:
            a, b = b, a
        if not dfn[a] or not dfn[a] <= dfn[b] <= last[a]:
            raise InternalInvariantError(f"auxiliary edge {e} is not a back edge")
        if dfn[a] < high[b]:
            high[b] = dfn[a]
    for i in range(len(vat) - 1, 1, -1):
        v = vat[i]
        p = par[v]
        if high[v] < high[p]:
            high[p] = high[v]

    articulation: set[int] = set()
    bridges: set[int] = set()
    block_of = [-1] * nv
    block_head: list[int] = []
    two_edge = [-1] * nv
    n_labels = 0
    forest_kids = [0] * nv
    for i in range(2, len(vat)):
        v = vat[i]
        p = par[v]
        if p == ROOT:
            two_edge[v] = n_labels
            n_labels += 1
            continue
        if par[p] == ROOT:
            forest_kids[p] += 1
        elif high[v] >= dfn[p]:
            articulation.add(p)
        if high[v] >= dfn[p] or par[p] == ROOT:
            block_of[v] = len(block_head)
            block_head.append(p)
        else:
            block_of[v] = block_of[p]
        if high[v] == dfn[v]:
            bridges.add(pedge[v])
            two_edge[v] = n_labels
            n_labels += 1
        else:
            two_edge[v] = two_edge[p]
    articulation.update(v for v in range(nv) if forest_kids[v] >= 2)
    return HighPointTable(tree, high, articulation, bridges, block_of, block_head, two_edge)


def same_component(
    table: HighPointTable, kind: Literal["biconnected", "two_edge"], u: int, v: int
) -> bool:
    if kind == "two_edge":
        return table.two_edge[u] == table.two_edge[v] and table.two_edge[u] >= 0
    if kind != "biconnected":
        raise InvalidQuery(f"unknown component kind {kind!r}")
    if u == v:
        return True
    bu, bv = table.block_of[u], table.block_of[v]
    head = table.block_head
    return (bu >= 0 and bu == bv) or (bv >= 0 and head[bv] == u) or (bu >= 0 and head[bu] == v)


def full_high_points(g: Graph, tree: DfsTree, faults: FaultSet = NO_FAULTS) -> HighPointTable:
    """Reference pass over every usable edge instead of the auxiliary list."""
    fv, fe = faults.failed_vertices, faults.failed_edges
    usable = [
        e for e in range(g.edge_count)
        if g.edge_usable(e) and e not in fe and g.eu[e] not in fv and g.ev[e] not in fv
    ]
    return compute_high_points(g, tree, usable)


def biconnectivity(pre: Preprocessed, faults: FaultSet = NO_FAULTS) -> HighPointTable:
    """Fault-tolerant DFS with auxiliary collection, then high-points."""
    from .fault_dynamic import fault_tolerant_session

    tree, session = fault_tolerant_session(pre, faults, collect_aux=True)
    return compute_high_points(pre.graph, tree, collect_aux_edges(session))
