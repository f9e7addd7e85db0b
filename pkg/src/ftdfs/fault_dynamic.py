"""Fault queries and the fully dynamic wrapper.

The first half splits heavy paths around failed vertices and failed solid
edges. The second half keeps one built structure plus a list of pending
updates, answers every update by a fault-tolerant query over that pair, and
rebuilds the next structure in the background a slice at a time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

from .errors import InvalidInput
from .graph_core import NO_FAULTS, ROOT, FaultSet, Graph, failure_masks, validate_faults
from .preprocess import DfsTree, Preprocessed, ShallowTree, build_steps, estimated_work
from .reroot_engine import Session

__all__ = [
    "FaultSet",
    "apply_faults",
    "apply_fault_masks",
    "k_prime",
    "query_fault_tolerant",
    "fault_tolerant_session",
    "absorb_insertions",
    "InsertVertex",
    "InsertEdge",
    "DeleteVertex",
    "DeleteEdge",
    "UpdateBatch",
    "RebuildSchedule",
    "DynamicDFS",
    "dynamic_step",
]


def apply_fault_masks(pre: Preprocessed, vf: bytearray, ef: bytearray) -> tuple[ShallowTree, int]:
    """Shallow tree of the surviving path pieces, plus k'.

    One sweep in dfn order. A piece starts at a base path top, after a
    failed vertex, or below a failed solid edge; it hangs from the node
    holding the closest active ancestor of its top vertex.
    """
    tree = pre.tree
    base = pre.shallow
    vat, par, pe = tree.vertex_at, tree.parent, tree.parent_edge
    base_node = base.node_of
    nv = len(par)
    node_of = [-1] * nv
    act_anc = [-1] * nv
    count = [0] * nv
    lo: list[int] = []
    hi: list[int] = []
    parent_node: list[int] = []
    depth: list[int] = []
    kp = 0
    for i in range(1, len(vat)):
        v = vat[i]
        p = par[v]
        if p >= 0:
            act_anc[v] = p if not vf[p] else act_anc[p]
            c = count[p] + vf[v] + ef[pe[v]]
            count[v] = c
            if c > kp:
                kp = c
        if vf[v]:
            continue
        if p >= 0 and base_node[p] == base_node[v] and not vf[p] and not ef[pe[v]]:
            node = node_of[p]
            hi[node] = i
        else:
            node = len(lo)
            a = act_anc[v]
            pn = node_of[a] if a >= 0 else -1
            parent_node.append(pn)
            depth.append(depth[pn] + 1 if pn >= 0 else 0)
            lo.append(i)
            hi.append(i)
        node_of[v] = node
    return ShallowTree(parent_node, lo, hi, node_of, depth), kp


def apply_faults(pre: Preprocessed, faults: FaultSet = NO_FAULTS) -> tuple[ShallowTree, int]:
    if not faults:
        return pre.shallow, 0
    validate_faults(pre.graph, faults)
    vf, ef = failure_masks(pre.graph, faults)
    return apply_fault_masks(pre, vf, ef)


def k_prime(pre: Preprocessed, faults: FaultSet) -> int:
    """Most faults on any root-to-leaf path of the preprocessed tree.

    Counts failed vertices and failed tree edges; a failed non-tree edge
    lies on no tree path.
    """
    return apply_faults(pre, faults)[1]


# -- queries ----------------------------------------------------------------

def fault_tolerant_session(
    pre: Preprocessed, faults: FaultSet = NO_FAULTS, collect_aux: bool = False
) -> tuple[DfsTree, Session]:
    """Like :func:`query_fault_tolerant` but also returns the session counters.

    Anything in ``pre.graph`` beyond the preprocessed snapshot (later vertex
    ids, later edge ids) is treated as inserted; deletions since the
    snapshot show up through the graph's current failure masks.
    """
    g = pre.graph
    validate_faults(g, faults)
    vf, ef = failure_masks(g, faults)
    shallow, kp = apply_fault_masks(pre, vf, ef) if _differs(pre, vf, ef) else (pre.shallow, 0)
    new_v, new_e = absorb_insertions(pre, vf, ef)
    s = Session(pre, shallow, vf, ef, new_v, new_e, collect_aux=collect_aux)
    s.k_prime = kp
    return s.run(ROOT), s


def query_fault_tolerant(pre: Preprocessed, faults: FaultSet = NO_FAULTS) -> DfsTree:
    """DFS tree of the current graph minus ``faults``, rooted at the dummy."""
    return fault_tolerant_session(pre, faults)[0]


def _differs(pre: Preprocessed, vf: bytearray, ef: bytearray) -> bool:
    return vf[: pre.n0] != pre.vfail0 or ef[: pre.m0] != pre.efail0


def absorb_insertions(
    pre: Preprocessed, vf: Optional[bytearray] = None, ef: Optional[bytearray] = None
) -> tuple[list[int], list[int]]:
    """Vertices and edges added to ``pre.graph`` after the snapshot.

    Only surviving ones are returned. The session seeds each edge into the
    reduced lists of both endpoints; a new vertex is reached at the latest
    through its dummy edge, which is itself a new edge.
    """
    g = pre.graph
    vf = g.vertex_failed if vf is None else vf
    ef = g.edge_failed if ef is None else ef
    verts = [v for v in range(pre.n0, g.n) if not vf[v]]
    edges = [
        e for e in range(pre.m0, g.edge_count)
        if not ef[e] and not vf[g.eu[e]] and not vf[g.ev[e]]
    ]
    return verts, edges


# -- updates ----------------------------------------------------------------

@dataclass(frozen=True)
class InsertVertex:
    v: int
    neighbors: tuple[int, ...] = ()


@dataclass(frozen=True)
class InsertEdge:
    u: int
    v: int


@dataclass(frozen=True)
class DeleteVertex:
    v: int


@dataclass(frozen=True)
class DeleteEdge:
    u: int
    v: int


Update = Union[InsertVertex, InsertEdge, DeleteVertex, DeleteEdge]


@dataclass
class UpdateBatch:
    updates: list = field(default_factory=list)

    def __iter__(self) -> Iterator[Update]:
        return iter(self.updates)

    def __len__(self) -> int:
        return len(self.updates)


def apply_update(g: Graph, up: Update) -> None:
    """Mutate ``g``; malformed updates raise :class:`InvalidInput`."""
    if isinstance(up, InsertEdge):
        g.add_edge(up.u, up.v)
    elif isinstance(up, DeleteEdge):
        g.fail_edge(g.find_edge(up.u, up.v))
    elif isinstance(up, DeleteVertex):
        if not 0 < up.v < g.n or g.vertex_failed[up.v]:
            raise InvalidInput(f"cannot delete vertex {up.v}")
        g.fail_vertex(up.v)
    elif isinstance(up, InsertVertex):
        if up.v < g.n:
            raise InvalidInput(f"vertex {up.v} already exists")
        for x in up.neighbors:
            if not 0 < x < g.n or g.vertex_failed[x]:
                raise InvalidInput(f"new vertex {up.v} joins unknown or deleted vertex {x}")
        # skipped ids are created already deleted
        while g.n < up.v:
            g.fail_vertex(g.add_vertex())
        g.add_vertex()
        for x in dict.fromkeys(up.neighbors):
            g.add_edge(up.v, x)
    else:
        raise InvalidInput(f"unknown update {up!r}")


# -- schedule ---------------------------------------------------------------

@dataclass
class RebuildSchedule:
    """Cost proxies and the rebuild period derived from them.

    ``f`` is the rebuild cost (active edges), ``g`` the per-update query
    cost (n log2 n) and ``h`` the additive term (n log2^2 n).
    """

    f: float
    g: float
    h: float

    @property
    def period(self) -> int:
        return max(1, math.ceil(math.sqrt(self.f / self.g)))

    @classmethod
    def measured(cls, graph: Graph) -> "RebuildSchedule":
        n = max(2, graph.active_vertex_count())
        lg = math.log2(n)
        return cls(float(graph.m), n * lg, n * lg * lg)


class DynamicDFS:
    """DFS tree maintained under an online stream of updates.

    Each build runs over a frozen snapshot and is spread over ``window``
    updates (half the period), so the structure in use is never more than
    one period behind. With ``amortized=True`` the whole rebuild happens at
    once whenever the pending count reaches the period.
    """

    def __init__(self, graph: Graph, amortized: bool = False, copy: bool = True):
        self.graph = graph.copy() if copy else graph
        self.amortized = amortized
        self.pre = _build_now(self.graph)
        self.schedule = RebuildSchedule.measured(self.graph)
        self.period = self.schedule.period
        self.pending = 0
        self.max_pending = 0
        self.rebuilds = 0
        self.steps = 0
        self._build: Optional[Iterator[int]] = None
        self._build_pending = 0
        self._window = 1
        self._quantum = 1
        self._since_start = 0
        self._base_window = 0
        self.tree: Optional[DfsTree] = None
        self.session: Optional[Session] = None

    def step(self, update: Update) -> DfsTree:
        apply_update(self.graph, update)
        self.steps += 1
        self.pending += 1
        if self.amortized:
            if self.pending >= self.period:
                self._swap(_build_now(self.graph))
        else:
            if self._build is not None:
                self._build_pending += 1
                self._since_start += 1
                self._advance()
            if self._build is None:
                self._start()
        self.max_pending = max(self.max_pending, self.pending)
        self.tree, self.session = fault_tolerant_session(self.pre)
        return self.tree

    def current(self) -> DfsTree:
        if self.tree is None:
            self.tree, self.session = fault_tolerant_session(self.pre)
        return self.tree

    # -- background build ----------------------------------------------------
    def _start(self) -> None:
        g = self.graph
        sched = RebuildSchedule.measured(g)
        p = sched.period
        # the base in use already carries _base_window pending updates
        self.schedule, self.period = sched, p
        self._window = max(1, min(p // 2, p + 1 - self._base_window))
        self._quantum = max(1, math.ceil(estimated_work(g) / self._window))
        self._build = build_steps(
            g, g.n, g.edge_count, bytearray(g.vertex_failed), bytearray(g.edge_failed)
        )
        self._build_pending = 0
        self._since_start = 0

    def _advance(self) -> None:
        steps = self._build
        force = self._since_start >= self._window
        done = 0
        try:
            while force or done < self._quantum:
                done += next(steps)
        except StopIteration as stop:
            self._build = None
            self._base_window = self._build_pending
            self._swap(stop.value, self._build_pending)

    def _swap(self, pre: Preprocessed, pending: int = 0) -> None:
        self.pre = pre
        self.pending = pending
        self.rebuilds += 1
        if self.amortized:
            self.schedule = RebuildSchedule.measured(self.graph)
            self.period = self.schedule.period


def _build_now(g: Graph) -> Preprocessed:
    steps = build_steps(g, g.n, g.edge_count, bytearray(g.vertex_failed), bytearray(g.edge_failed))
    while True:
        try:
            next(steps)
        except StopIteration as stop:
            return stop.value


def dynamic_step(state: DynamicDFS, update: Update) -> DfsTree:
    return state.step(update)
