"""Line-oriented text formats and the snapshot container.

Edge lists: header ``n m`` then ``m`` lines ``u v`` with 1-based ids;
``#`` starts a comment. Update streams: ``ie u v``, ``de u v``, ``dv u``,
``iv u d x1 .. xd``. Trees: one ``v parent`` line per vertex, ``-`` for
the root, optionally followed by the dfn.
"""
from __future__ import annotations

import io
import pickle
from pathlib import Path
from typing import Iterator, TextIO

from .errors import EmptyGraph, InvalidInput
from .fault_dynamic import DeleteEdge, DeleteVertex, InsertEdge, InsertVertex, Update
from .graph_core import ROOT, FaultSet, Graph, build_graph
from .preprocess import DfsTree, Preprocessed

SNAPSHOT_MAGIC = b"FTDFS-SNAP\n"
SNAPSHOT_VERSION = 1


def _lines(src: TextIO) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(src, 1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield no, body


def _ints(no: int, toks: list[str]) -> list[int]:
    try:
        return [int(t) for t in toks]
    except ValueError:
        raise InvalidInput(f"line {no}: expected integers, got {' '.join(toks)!r}") from None


def read_edge_list(src: TextIO) -> Graph:
    text = src.read()
    if "#" not in text:
        # bulk path; anything irregular is re-parsed line by line for the error
        try:
            nums = list(map(int, text.split()))
        except ValueError:
            nums = None
        if nums and len(nums) >= 2 and nums[0] > 0 and len(nums) == 2 + 2 * nums[1]:
            try:
                it = iter(nums[2:])
                return build_graph(nums[0], zip(it, it))
            except InvalidInput:
                pass
    return _read_edge_lines(io.StringIO(text))


def _read_edge_lines(src: TextIO) -> Graph:
    it = _lines(src)
    try:
        no, head = next(it)
    except StopIteration:
        raise EmptyGraph("empty input: missing 'n m' header") from None
    hv = _ints(no, head)
    if len(hv) != 2:
        raise InvalidInput(f"line {no}: header must be 'n m'")
    n, m = hv
    if n <= 0:
        raise EmptyGraph("graph has no vertices")
    edges = []
    for no, toks in it:
        vals = _ints(no, toks)
        if len(vals) != 2:
            raise InvalidInput(f"line {no}: expected 'u v'")
        u, v = vals
        if not (1 <= u <= n and 1 <= v <= n):
            raise InvalidInput(f"line {no}: vertex out of range 1..{n}")
        if u == v:
            raise InvalidInput(f"line {no}: self-loop")
        edges.append((u, v))
    if len(edges) != m:
        raise InvalidInput(f"header promises {m} edges, found {len(edges)}")
    return build_graph(n, edges)


def load_edge_list(path: str | Path) -> Graph:
    with open(path) as fh:
        return read_edge_list(fh)


def write_edge_list(g: Graph, out: TextIO) -> None:
    edges = g.original_edges()
    out.write(f"{g.n - 1} {len(edges)}\n")
    for u, v in edges:
        out.write(f"{u} {v}\n")


def read_updates(src: TextIO) -> Iterator[tuple[int, Update]]:
    """Yields ``(line number, update)``; shape errors carry the line number."""
    for no, toks in _lines(src):
        op, args = toks[0], _ints(no, toks[1:])
        if op == "ie" and len(args) == 2:
            yield no, InsertEdge(*args)
        elif op == "de" and len(args) == 2:
            yield no, DeleteEdge(*args)
        elif op == "dv" and len(args) == 1:
            yield no, DeleteVertex(args[0])
        elif op == "iv" and len(args) >= 2 and len(args) == 2 + args[1]:
            yield no, InsertVertex(args[0], tuple(args[2:]))
        else:
            raise InvalidInput(f"line {no}: malformed update {' '.join(toks)!r}")


def format_update(up: Update) -> str:
    if isinstance(up, InsertEdge):
        return f"ie {up.u} {up.v}"
    if isinstance(up, DeleteEdge):
        return f"de {up.u} {up.v}"
    if isinstance(up, DeleteVertex):
        return f"dv {up.v}"
    return " ".join(map(str, ["iv", up.v, len(up.neighbors), *up.neighbors]))


def update_from_tuple(t: tuple) -> Update:
    """Convert the tuples produced by ``random_updates``."""
    kind = t[0]
    if kind == "ie":
        return InsertEdge(t[1], t[2])
    if kind == "de":
        return DeleteEdge(t[1], t[2])
    if kind == "dv":
        return DeleteVertex(t[1])
    if kind == "iv":
        return InsertVertex(t[1], tuple(t[2]))
    raise InvalidInput(f"unknown update kind {kind!r}")


def parse_faults(spec: str, g: Graph) -> FaultSet:
    """``"v:3,e:2-6"`` -> failed vertex 3 and the edge joining 2 and 6."""
    verts: set[int] = set()
    edges: set[int] = set()
    for item in filter(None, (x.strip() for x in spec.split(","))):
        kind, _, body = item.partition(":")
        try:
            if kind == "v":
                v = int(body)
                if not 0 < v < g.n:
                    raise InvalidInput(f"unknown vertex {v} in fault spec")
                verts.add(v)
            elif kind == "e":
                a, _, b = body.partition("-")
                edges.add(g.find_edge(int(a), int(b)))
            else:
                raise InvalidInput(f"fault item {item!r} must start with 'v:' or 'e:'")
        except InvalidInput:
            raise
        except ValueError:
            raise InvalidInput(f"cannot parse fault item {item!r}") from None
    return FaultSet(frozenset(verts), frozenset(edges))


def format_tree(tree: DfsTree, with_dfn: bool = False, include_dummy: bool = False) -> str:
    out = io.StringIO()
    for v in tree.vertex_at[1:]:
        if v == ROOT and not include_dummy:
            continue
        p = tree.parent[v]
        ps = "-" if p < 0 else str(p)
        out.write(f"{v} {ps} {tree.dfn[v]}\n" if with_dfn else f"{v} {ps}\n")
    return out.getvalue()


def parse_tree(text: str, n: int, root: int) -> list[int]:
    """Parent list from :func:`format_tree` output; ``n`` counts the dummy."""
    parent = [-1] * n
    seen_root = False
    for no, toks in _lines(io.StringIO(text)):
        v = _ints(no, toks[:1])[0]
        if toks[1] == "-":
            seen_root = True
        else:
            parent[v] = _ints(no, toks[1:2])[0]
    if root != ROOT and not seen_root:
        raise InvalidInput("tree output has no root line")
    return parent


def save_snapshot(pre: Preprocessed, path: str | Path) -> None:
    with open(path, "wb") as fh:
        fh.write(SNAPSHOT_MAGIC)
        fh.write(SNAPSHOT_VERSION.to_bytes(2, "big"))
        pickle.dump(pre, fh, protocol=pickle.HIGHEST_PROTOCOL)


def load_snapshot(path: str | Path) -> Preprocessed:
    with open(path, "rb") as fh:
        if fh.read(len(SNAPSHOT_MAGIC)) != SNAPSHOT_MAGIC:
            raise InvalidInput(f"{path}: not a snapshot file")
        version = int.from_bytes(fh.read(2), "big")
        if version != SNAPSHOT_VERSION:
            raise InvalidInput(f"{path}: unsupported snapshot version {version}")
        pre = pickle.load(fh)
    if not isinstance(pre, Preprocessed):
        raise InvalidInput(f"{path}: snapshot payload is not a preprocessed graph")
    return pre
