"""DFS over heavy-path super vertices guided by the shallow tree.

A session grows a new tree T* from a start vertex. Entering a path node at
``x`` walks to the farther live end ``y``, attaches that stretch to T*,
fills the reduced adjacency lists ``L`` of its vertices, then backtracks
from ``y`` to ``x`` recursing into unvisited entries of ``L``.

``L`` holds edge ids; the neighbour is recovered from the edge endpoints.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Iterable, Optional

from .ancestor_query import descendant_hits
from .cascade import SearchStats
from .errors import InvalidQuery
from .graph_core import NO_FAULTS, ROOT, FaultSet, failure_masks
from .preprocess import DfsTree, Preprocessed, ShallowTree


class Session:
    def __init__(
        self,
        pre: Preprocessed,
        shallow: Optional[ShallowTree] = None,
        vf: Optional[bytearray] = None,
        ef: Optional[bytearray] = None,
        inserted_vertices: Iterable[int] = (),
        inserted_edges: Iterable[int] = (),
        collect_aux: bool = False,
    ):
        g = pre.graph
        tree = pre.tree
        nv = g.n
        self.pre = pre
        self.graph = g
        self.shallow = shallow if shallow is not None else pre.shallow
        self.vf = vf if vf is not None else bytearray(g.vertex_failed)
        self.ef = ef if ef is not None else bytearray(g.edge_failed)
        self.n_base = len(tree.vertex_at) - 1
        self.vat = list(tree.vertex_at)
        self.dfn = tree.dfn + [0] * (nv - len(tree.dfn))
        for w in inserted_vertices:
            if not self.vf[w]:
                self.vat.append(w)
                self.dfn[w] = len(self.vat) - 1
        self.lo = list(self.shallow.lo)
        self.hi = list(self.shallow.hi)
        self.visited = bytearray(nv)
        self.parent = [-1] * nv
        self.parent_edge = [-1] * nv
        self.L: list[list[int]] = [[] for _ in range(nv)]
        eu, ev, vf_, ef_ = g.eu, g.ev, self.vf, self.ef
        self.inserted_edges = []
        for e in inserted_edges:
            a, b = eu[e], ev[e]
            if not ef_[e] and not vf_[a] and not vf_[b]:
                self.L[a].append(e)
                self.L[b].append(e)
                self.inserted_edges.append(e)
        self.aux: Optional[list[int]] = [] if collect_aux else None
        self.ef_aux: Optional[bytearray] = None
        if collect_aux:
            # high-points ignore dummy edges, so aux picks must skip them
            self.ef_aux = bytearray(ef_)
            for e in g.dummy_edge:
                if e >= 0:
                    self.ef_aux[e] = 1
        self.q_calls = 0
        self.skips = 0
        self.attaches = 0
        self.entered = [0] * len(self.lo)
        self.stats = SearchStats()
        self.root: Optional[int] = None
        self.k_prime = 0

    # -- traversal ----------------------------------------------------
    def run(self, r: int) -> DfsTree:
        """Build T* rooted at ``r`` over every active vertex."""
        if not 0 <= r < len(self.visited) or self.vf[r]:
            raise InvalidQuery(f"cannot root at failed or unknown vertex {r}")
        self.root = r
        if r == ROOT:
            self.reroot(ROOT)
        else:
            # Keep the dummy root out of the first phase so the part of T*
            # around r is a DFS tree of the original graph; the dummy then
            # hangs below r and collects the other components.
            self.visited[ROOT] = 1
            rn = self.shallow.node_of[ROOT]
            self.lo[rn] = max(self.lo[rn], self.pre.tree.dfn[ROOT] + 1)
            self.reroot(r)
            g = self.graph
            self.parent[ROOT] = r
            self.parent_edge[ROOT] = g.dummy_edge[r]
            for v in range(1, len(self.visited)):
                if not self.visited[v] and not self.vf[v]:
                    self.parent[v] = ROOT
                    self.parent_edge[v] = g.dummy_edge[v]
                    self.reroot(v)
        return self.result()

    def reroot(self, x: int) -> None:
        """Traverse everything reachable from unvisited ``x``."""
        if self.visited[x] or self.vf[x]:
            raise InvalidQuery(f"vertex {x} is visited or failed")
        visited, vat, L = self.visited, self.vat, self.L
        parent, parent_edge = self.parent, self.parent_edge
        eu, ev = self.graph.eu, self.graph.ev
        enter = self._enter
        stack = [enter(x)]
        while stack:
            fr = stack[-1]
            i = fr[0]
            v = vat[i]
            lv = L[v]
            li = fr[3]
            nxt = -1
            while li < len(lv):
                e = lv[li]
                li += 1
                u = eu[e] ^ ev[e] ^ v
                if not visited[u]:
                    nxt = u
                    break
            if nxt >= 0:
                fr[3] = li
                parent[nxt] = v
                parent_edge[nxt] = e
                stack.append(enter(nxt))
            elif i == fr[1]:
                stack.pop()
            else:
                fr[0] = i + fr[2]
                fr[3] = 0

    def _enter(self, x: int) -> list[int]:
        """Attach the walk from ``x`` to the farther live end; return its frame."""
        dx = self.dfn[x]
        visited = self.visited
        if dx > self.n_base:
            visited[x] = 1
            return [dx, dx, 1, 0]
        node = self.shallow.node_of[x]
        lo, hi = self.lo[node], self.hi[node]
        self.entered[node] += 1
        self.attaches += 1
        vat, parent, parent_edge = self.vat, self.parent, self.parent_edge
        tpe = self.pre.tree.parent_edge
        visited[x] = 1
        if hi - dx >= dx - lo:
            dy = hi
            self.hi[node] = dx - 1
            for i in range(dx + 1, dy + 1):
                v = vat[i]
                visited[v] = 1
                parent[v] = vat[i - 1]
                parent_edge[v] = tpe[v]
            self.reduced_al(dx, dy, node)
            return [dy, dx, -1, 0]
        dy = lo
        self.lo[node] = dx + 1
        for i in range(dx - 1, dy - 1, -1):
            v = vat[i]
            c = vat[i + 1]
            visited[v] = 1
            parent[v] = c
            parent_edge[v] = tpe[c]
        self.reduced_al(dx, dy, node)
        return [dy, dx, 1, 0]

    def reduced_al(self, dx: int, dy: int, node: int) -> None:
        """Fill L for the stretch between dfn ``dx`` (entry) and ``dy`` (far end)."""
        pre = self.pre
        vat, L, vf, ef = self.vat, self.L, self.vf, self.ef
        lo, hi = self.lo, self.hi
        t, b = (dx, dy) if dx <= dy else (dy, dx)
        down = dy == b

        # ancestor side: live parts of shallow ancestors, plus our own
        # remainder when we walked towards the leaf
        segs = []
        if down and lo[node] <= hi[node]:
            segs.append((lo[node], hi[node]))
        sp = self.shallow.parent
        mu = sp[node]
        while mu >= 0:
            if lo[mu] <= hi[mu]:
                segs.append((lo[mu], hi[mu]))
            mu = sp[mu]
        if segs:
            anc_all, eid_all = pre.index.anc, pre.index.eid
            q = 0
            skips = 0
            for i in range(t, b + 1):
                al = anc_all[i]
                if not al:
                    continue
                el = eid_all[i]
                lv = L[vat[i]]
                for slo, shi in segs:
                    q += 1
                    j = bisect_right(al, shi) - 1
                    while j >= 0:
                        a = al[j]
                        if a < slo:
                            break
                        e = el[j]
                        if ef[e] or vf[vat[a]]:
                            skips += 1
                            j -= 1
                            continue
                        lv.append(e)
                        break
            self.q_calls += q
            self.skips += skips

        # descendant side: one cascaded query, attach nearest the far end
        visited = self.visited
        aux = self.aux
        if aux is None:
            hits, skips, asked = descendant_hits(pre, t, b, down, vf, ef, visited, 0, self.stats)
            for u, w, e in hits:
                L[w].append(e)
        else:
            hits, skips, asked = descendant_hits(pre, t, b, down, vf, ef, visited, 0, self.stats)
            for u, w, e in hits:
                L[w].append(e)
            aux.extend(e for _, _, e in hits)
            efa = self.ef_aux
            near_far, s2, _ = descendant_hits(pre, t, b, down, vf, efa, visited, 1, self.stats, True)
            near_entry, s3, _ = descendant_hits(pre, t, b, not down, vf, efa, visited, 0, self.stats, True)
            aux.extend(e for _, _, e in near_far)
            aux.extend(e for _, _, e in near_entry)
            skips += s2 + s3
            self._aux_within(t, b)
        self.q_calls += asked
        self.skips += skips

    def _aux_within(self, t: int, b: int) -> None:
        # for each vertex of the stretch, its edge to the topmost stretch vertex
        anc_all, eid_all = self.pre.index.anc, self.pre.index.eid
        vat, vf, ef, aux = self.vat, self.vf, self.ef_aux, self.aux
        for i in range(t + 1, b + 1):
            al = anc_all[i]
            el = eid_all[i]
            j = bisect_left(al, t)
            while j < len(al):
                e = el[j]
                if ef[e] or vf[vat[al[j]]]:
                    j += 1
                    continue
                aux.append(e)
                # a parallel copy, in case e ends up as a tree edge
                a = al[j]
                j += 1
                while j < len(al) and al[j] == a:
                    if not ef[el[j]]:
                        aux.append(el[j])
                        break
                    j += 1
                break

    # -- results ------------------------------------------------------
    def result(self) -> DfsTree:
        return DfsTree.from_parents(self.root, self.parent, self.parent_edge)

    def reduced_adjacency(self) -> list[list[int]]:
        g = self.graph
        return [[g.other(e, v) for e in lv] for v, lv in enumerate(self.L)]

    def aux_edges(self) -> list[int]:
        """Edge ids sufficient for high-points (needs ``collect_aux``)."""
        if self.aux is None:
            raise InvalidQuery("session was run without collect_aux")
        seen = set(self.aux)
        seen.update(self.inserted_edges)
        for lv in self.L:
            seen.update(lv)
        return sorted(seen)


def run_reroot(
    pre: Preprocessed, r: int, faults: FaultSet = NO_FAULTS, collect_aux: bool = False
) -> tuple[DfsTree, Session]:
    """DFS tree of the active graph (minus ``faults``) rooted at ``r``."""
    from .fault_dynamic import apply_faults  # fault_dynamic builds on this module

    shallow, kp = apply_faults(pre, faults)
    vf, ef = failure_masks(pre.graph, faults)
    s = Session(pre, shallow, vf, ef, collect_aux=collect_aux)
    s.k_prime = kp
    if not 0 <= r < pre.graph.n or vf[r]:
        raise InvalidQuery(f"cannot root at failed or unknown vertex {r}")
    return s.run(r), s
