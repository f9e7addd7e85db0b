from bisect import bisect_left

from hypothesis import given, settings
from hypothesis import strategies as st

from ftdfs.cascade import SearchStats, cascade_build, cascade_search, cascade_successors

A = [[], [1, 5, 9], [2, 6], [3, 7]]


def test_merge_rule():
    ov = cascade_build(A)
    assert ov.F[1:] == [[1, 5, 9], [2, 5, 6], [3, 5, 7]]


def test_single_and_empty():
    assert cascade_build([[4, 8]]).F == [[4, 8]]
    assert cascade_build([]).F == []
    assert cascade_build([[], []]).F == [[], []]


def test_successors_example():
    ov = cascade_build(A)
    assert cascade_successors(ov, 6, 1, 2) == [9, 6, 7]
    assert cascade_successors(ov, 10, 1, 2) == [None, None, None]
    assert cascade_successors(ov, 0, 1, 2) == [1, 2, 3]


lists = st.lists(st.lists(st.integers(0, 60), max_size=8).map(sorted), min_size=1, max_size=12)


@settings(max_examples=300, deadline=None)
@given(lists, st.integers(-1, 62), st.data())
def test_matches_binary_search(ls, x, data):
    ov = cascade_build(ls)
    i = data.draw(st.integers(0, len(ls) - 1))
    k = data.draw(st.integers(0, len(ls) - 1 - i))
    stats = SearchStats()
    got = cascade_search(ov, x, i, k, stats)
    assert got == [bisect_left(ls[i + j], x) for j in range(k + 1)]
    assert stats.calls == 1
