"""Edge queries from a vertex to an ancestor path of the static tree.

Paths are always dfn-contiguous segments of heavy paths, so "the part of
D(u) lying on the path" is a contiguous slice of D(u) found by binary
search, and "nearest to an endpoint" is the extreme dfn within that slice.
Failed entries are skipped by walking the slice away from the requested
endpoint.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Optional

from .cascade import SearchStats, cascade_search
from .errors import InvalidQuery
from .graph_core import NO_FAULTS, FaultSet, failure_masks
from .preprocess import Preprocessed


@dataclass(frozen=True)
class QuerySpec:
    u: int
    p_s: int
    p_e: int


def _masks(pre: Preprocessed, faults):
    if isinstance(faults, FaultSet):
        return failure_masks(pre.graph, faults)
    return faults


def query_Q(pre: Preprocessed, spec: QuerySpec, faults=NO_FAULTS) -> Optional[tuple[int, int]]:
    """Edge from ``spec.u`` to path(p_s, p_e) landing nearest ``p_e``.

    Returns ``(w, edge_id)`` with ``w`` on the path, or ``None``. ``faults``
    is a :class:`FaultSet` or a pair of (vertex, edge) failure masks.
    """
    tree = pre.tree
    dfn = tree.dfn
    u, ps, pe = spec.u, spec.p_s, spec.p_e
    for v in (u, ps, pe):
        if not 0 <= v < len(dfn) or dfn[v] == 0:
            raise InvalidQuery(f"vertex {v} is not in the preprocessed tree")
    top, bot = (ps, pe) if dfn[ps] <= dfn[pe] else (pe, ps)
    depth = pre_depth(pre)
    if not tree.is_ancestor(top, bot) or dfn[bot] - dfn[top] != depth[bot] - depth[top]:
        raise InvalidQuery("endpoints must bound a dfn-contiguous ancestor-descendant path")
    if not tree.is_ancestor(top, u) or dfn[top] <= dfn[u] <= dfn[bot]:
        raise InvalidQuery("u must be a descendant of the path's top and not on the path")
    vf, ef = _masks(pre, faults)
    i = dfn[u]
    anc, eid = pre.index.anc[i], pre.index.eid[i]
    lo, hi = dfn[top], dfn[bot]
    vat = tree.vertex_at
    if pe == bot:
        j = bisect_right(anc, hi) - 1
        while j >= 0 and anc[j] >= lo:
            e = eid[j]
            w = vat[anc[j]]
            if not ef[e] and not vf[w]:
                return w, e
            j -= 1
    else:
        j = bisect_left(anc, lo)
        while j < len(anc) and anc[j] <= hi:
            e = eid[j]
            w = vat[anc[j]]
            if not ef[e] and not vf[w]:
                return w, e
            j += 1
    return None


def pre_depth(pre: Preprocessed) -> list[int]:
    depth = getattr(pre, "_depth", None)
    if depth is None:
        depth = pre.tree.depth()
        pre._depth = depth
    return depth


def descendant_hits(
    pre: Preprocessed,
    lo: int,
    hi: int,
    toward_hi: bool,
    vf: bytearray,
    ef: bytearray,
    select: Optional[bytearray] = None,
    select_value: int = 0,
    stats: Optional[SearchStats] = None,
    twins: bool = False,
) -> tuple[list[tuple[int, int, int]], int, int]:
    """One cascaded query for every owner below the segment [lo, hi].

    Owners are the vertices with dfn in ``hi+1 .. last(v(lo))``. For each
    active owner ``u`` with ``select[u] == select_value`` (all active owners
    when ``select`` is None) the edge to the segment nearest its deep end
    (``toward_hi``) or its top end is reported as ``(u, w, edge_id)``.
    Also returns the number of failed entries skipped and of owners asked.
    With ``twins`` a second valid edge to the same ancestor (a parallel
    copy) is reported too.
    """
    tree = pre.tree
    vat = tree.vertex_at
    first = hi + 1
    last = tree.subtree_last[vat[lo]]
    if first > last:
        return [], 0, 0
    anc_all, eid_all = pre.index.anc, pre.index.eid
    key = hi + 1 if toward_hi else lo
    pos = cascade_search(pre.overlay, key, first, last - first, stats)
    out = []
    skips = 0
    asked = 0
    for off, p in enumerate(pos):
        i = first + off
        u = vat[i]
        if vf[u] or (select is not None and select[u] != select_value):
            continue
        asked += 1
        anc = anc_all[i]
        eid = eid_all[i]
        if toward_hi:
            j = p - 1
            while j >= 0 and anc[j] >= lo:
                e = eid[j]
                w = vat[anc[j]]
                if not ef[e] and not vf[w]:
                    out.append((u, w, e))
                    if twins:
                        a = anc[j]
                        j -= 1
                        while j >= 0 and anc[j] == a:
                            if not ef[eid[j]]:
                                out.append((u, w, eid[j]))
                                break
                            j -= 1
                    break
                skips += 1
                j -= 1
        else:
            j = p
            n_anc = len(anc)
            while j < n_anc and anc[j] <= hi:
                e = eid[j]
                w = vat[anc[j]]
                if not ef[e] and not vf[w]:
                    out.append((u, w, e))
                    if twins:
                        a = anc[j]
                        j += 1
                        while j < n_anc and anc[j] == a:
                            if not ef[eid[j]]:
                                out.append((u, w, eid[j]))
                                break
                            j += 1
                    break
                skips += 1
                j += 1
    return out, skips, asked


def batched_descendant_edges(
    pre: Preprocessed, x: int, y: int, faults=NO_FAULTS
) -> list[tuple[int, int]]:
    """(descendant u, attach vertex w) pairs for the path from ``x`` down to ``y``.

    Every vertex below the path inside T(x) is queried in one cascaded
    search; the attach vertex is the one nearest ``y``.
    """
    dfn = pre.tree.dfn
    if not pre.tree.is_ancestor(x, y):
        raise InvalidQuery("x must be an ancestor of y")
    depth = pre_depth(pre)
    if dfn[y] - dfn[x] != depth[y] - depth[x]:
        raise InvalidQuery("path(x, y) must be dfn-contiguous")
    vf, ef = _masks(pre, faults)
    hits, _, _ = descendant_hits(pre, dfn[x], dfn[y], True, vf, ef)
    return [(u, w) for u, w, _ in hits]
