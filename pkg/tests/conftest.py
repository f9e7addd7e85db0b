import pytest

from ftdfs.graph_core import build_graph

LETTERS = "abcdefghijkl"
ID = {c: i + 1 for i, c in enumerate(LETTERS)}
GOLDEN_EDGES = [
    ("a", "b"), ("b", "c"), ("c", "d"), ("c", "e"), ("b", "f"), ("f", "g"),
    ("a", "h"), ("h", "i"), ("i", "j"), ("h", "k"), ("a", "l"),
]


def golden_graph():
    """Twelve-vertex tree a..l = 1..12 with six heavy paths."""
    return build_graph(12, [(ID[u], ID[v]) for u, v in GOLDEN_EDGES])


def name(v):
    return "0" if v == 0 else LETTERS[v - 1]


@pytest.fixture
def golden():
    return golden_graph()


@pytest.fixture
def chain5():
    # 1-2-3-4-5 plus back edges (5,1) and (5,3)
    return build_graph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (5, 3)])
