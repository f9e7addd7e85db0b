"""Undirected multigraph with a dummy root and active/failed marks.

Vertex 0 is the dummy root. It is joined to every other vertex by a dummy
edge, so the graph is always connected and a DFS tree rooted at 0 restricts
to a DFS forest of the original graph.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import InvalidInput, InvalidQuery

ROOT = 0


@dataclass(frozen=True)
class FaultSet:
    """Failed vertices and failed edges (by edge id) for one query."""

    failed_vertices: frozenset[int] = field(default_factory=frozenset)
    failed_edges: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "failed_vertices", frozenset(self.failed_vertices))
        object.__setattr__(self, "failed_edges", frozenset(self.failed_edges))

    @property
    def k(self) -> int:
        return len(self.failed_vertices) + len(self.failed_edges)

    def __bool__(self) -> bool:
        return self.k > 0


NO_FAULTS = FaultSet()


class Graph:
    """Indexed undirected multigraph.

    Adjacency is stored as two parallel per-vertex lists, ``adj[v]`` holding
    neighbours and ``inc[v]`` holding the matching edge ids. Adjacency lists
    only ever grow; deletions flip state bytes instead.
    """

    def __init__(self) -> None:
        self.adj: list[list[int]] = [[]]
        self.inc: list[list[int]] = [[]]
        self.eu: list[int] = []
        self.ev: list[int] = []
        self.vertex_failed = bytearray(1)
        self.edge_failed = bytearray()
        self.dummy_edge: list[int] = [-1]
        self._pairs: Optional[dict[tuple[int, int], list[int]]] = None  # built on demand
        self._active_edges = 0

    # -- size ---------------------------------------------------------
    @property
    def n(self) -> int:
        """Vertex count including the dummy root and failed vertices."""
        return len(self.adj)

    @property
    def edge_count(self) -> int:
        """Number of edge ids ever allocated."""
        return len(self.eu)

    @property
    def m(self) -> int:
        """Active edge count (dummy edges included)."""
        return self._active_edges

    def active_vertex_count(self) -> int:
        return self.n - sum(self.vertex_failed)

    # -- mutation -----------------------------------------------------
    def add_vertex(self) -> int:
        v = len(self.adj)
        self.adj.append([])
        self.inc.append([])
        self.vertex_failed.append(0)
        self.dummy_edge.append(-1)
        if v != ROOT:
            self.dummy_edge[v] = self._link(ROOT, v)
        return v

    def add_edge(self, u: int, v: int) -> int:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise InvalidInput(f"self-loop at vertex {u}")
        if u == ROOT or v == ROOT:
            raise InvalidInput("edges to the dummy root are implicit")
        if self.vertex_failed[u] or self.vertex_failed[v]:
            raise InvalidInput(f"edge ({u},{v}) touches a deleted vertex")
        return self._link(u, v)

    def _link(self, u: int, v: int) -> int:
        e = len(self.eu)
        self.eu.append(u)
        self.ev.append(v)
        self.edge_failed.append(0)
        self.adj[u].append(v)
        self.inc[u].append(e)
        self.adj[v].append(u)
        self.inc[v].append(e)
        if self._pairs is not None:
            self._pairs.setdefault((min(u, v), max(u, v)), []).append(e)
        self._active_edges += 1
        return e

    def _pair_index(self) -> dict[tuple[int, int], list[int]]:
        if self._pairs is None:
            pairs: dict[tuple[int, int], list[int]] = {}
            for e, (u, v) in enumerate(zip(self.eu, self.ev)):
                pairs.setdefault((min(u, v), max(u, v)), []).append(e)
            self._pairs = pairs
        return self._pairs

    def fail_vertex(self, v: int) -> None:
        self._check_vertex(v)
        if v == ROOT:
            raise InvalidInput("the dummy root cannot fail")
        if self.vertex_failed[v]:
            return
        for u, e in zip(self.adj[v], self.inc[v]):
            if not self.edge_failed[e] and not self.vertex_failed[u]:
                self._active_edges -= 1
        self.vertex_failed[v] = 1

    def fail_edge(self, e: int) -> None:
        if not 0 <= e < len(self.eu):
            raise InvalidInput(f"unknown edge id {e}")
        if self.eu[e] == ROOT:
            raise InvalidInput("dummy edges cannot fail")
        if self.edge_failed[e]:
            return
        if not self.vertex_failed[self.eu[e]] and not self.vertex_failed[self.ev[e]]:
            self._active_edges -= 1
        self.edge_failed[e] = 1

    # -- queries ------------------------------------------------------
    def other(self, e: int, v: int) -> int:
        return self.eu[e] ^ self.ev[e] ^ v

    def edge_usable(self, e: int) -> bool:
        return not (
            self.edge_failed[e] or self.vertex_failed[self.eu[e]] or self.vertex_failed[self.ev[e]]
        )

    def edges_between(self, u: int, v: int) -> list[int]:
        return list(self._pair_index().get((min(u, v), max(u, v)), ()))

    def find_edge(self, u: int, v: int) -> int:
        """Most recently inserted usable edge joining u and v."""
        for e in reversed(self._pair_index().get((min(u, v), max(u, v)), ())):
            if self.edge_usable(e):
                return e
        raise InvalidInput(f"no active edge between {u} and {v}")

    def active_neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        if self.vertex_failed[v]:
            raise InvalidQuery(f"vertex {v} has failed")
        vf, ef = self.vertex_failed, self.edge_failed
        return [u for u, e in zip(self.adj[v], self.inc[v]) if not ef[e] and not vf[u]]

    def original_edges(self) -> list[tuple[int, int]]:
        """Usable non-dummy edges as vertex pairs."""
        return [
            (self.eu[e], self.ev[e])
            for e in range(len(self.eu))
            if self.eu[e] != ROOT and self.edge_usable(e)
        ]

    def copy(self) -> "Graph":
        g = Graph.__new__(Graph)
        g.adj = [list(a) for a in self.adj]
        g.inc = [list(a) for a in self.inc]
        g.eu = list(self.eu)
        g.ev = list(self.ev)
        g.vertex_failed = bytearray(self.vertex_failed)
        g.edge_failed = bytearray(self.edge_failed)
        g.dummy_edge = list(self.dummy_edge)
        g._pairs = None
        g._active_edges = self._active_edges
        return g

    def _check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < len(self.adj):
            raise InvalidInput(f"vertex {v} out of range")


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Graph on vertices 1..n plus the dummy root 0.

    Dummy edges get ids 0..n-1 (edge ``v-1`` joins 0 and ``v``); the given
    edges follow in input order.
    """
    if n < 0:
        raise InvalidInput("negative vertex count")
    g = Graph()
    for _ in range(n):
        g.add_vertex()
    adj, inc, eu, ev = g.adj, g.inc, g.eu, g.ev
    e = len(eu)
    for u, v in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise InvalidInput(f"edge ({u},{v}) has an endpoint outside [1, {n}]")
        if u == v:
            raise InvalidInput(f"self-loop at vertex {u}")
        eu.append(u)
        ev.append(v)
        adj[u].append(v)
        inc[u].append(e)
        adj[v].append(u)
        inc[v].append(e)
        e += 1
    g.edge_failed.extend(bytes(e - len(g.edge_failed)))
    g._active_edges = e
    return g


def validate_faults(g: Graph, faults: FaultSet) -> None:
    for v in faults.failed_vertices:
        if not isinstance(v, int) or not 0 <= v < g.n:
            raise InvalidInput(f"fault on unknown vertex {v}")
        if v == ROOT:
            raise InvalidInput("the dummy root cannot fail")
    for e in faults.failed_edges:
        if not isinstance(e, int) or not 0 <= e < g.edge_count:
            raise InvalidInput(f"fault on unknown edge {e}")
        if g.eu[e] == ROOT:
            raise InvalidInput("dummy edges cannot fail")


def mark_failed(g: Graph, faults: FaultSet) -> Graph:
    """Persistently fail the given vertices and edges of ``g`` (in place)."""
    validate_faults(g, faults)
    for v in faults.failed_vertices:
        g.fail_vertex(v)
    for e in faults.failed_edges:
        g.fail_edge(e)
    return g


def failure_masks(g: Graph, faults: FaultSet = NO_FAULTS) -> tuple[bytearray, bytearray]:
    """Vertex and edge failure bytes of ``g`` with ``faults`` overlaid."""
    vf = bytearray(g.vertex_failed)
    ef = bytearray(g.edge_failed)
    for v in faults.failed_vertices:
        vf[v] = 1
    for e in faults.failed_edges:
        ef[e] = 1
    return vf, ef
