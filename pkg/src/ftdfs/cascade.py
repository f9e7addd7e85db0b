"""Fractional cascading over a family of sorted integer lists.

``F[i]`` merges ``A[i]`` with every second element (odd 0-based positions)
of ``F[i-1]``. Each element of ``F[i]`` keeps two references: the first
position in ``A[i]`` holding a value >= it, and the first position in
``F[i-1]`` among the sampled elements holding a value >= it. A successor
search over ``A[i..i+k]`` is one binary search in ``F[i+k]`` followed by at
most three comparisons per list while walking down.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence


@dataclass
class SearchStats:
    calls: int = 0
    comparisons: int = 0


@dataclass
class CascadeOverlay:
    A: list[list[int]]
    F: list[list[int]] = field(default_factory=list)
    to_a: list[list[int]] = field(default_factory=list)
    to_prev: list[list[int]] = field(default_factory=list)

    @property
    def size(self) -> int:
        return sum(len(f) for f in self.F)

    def __len__(self) -> int:
        return len(self.A)


def cascade_build_steps(lists: Sequence[list[int]]) -> Iterator[int]:
    """Generator form of :func:`cascade_build`; yields units of work done.

    The finished overlay is the generator's return value.
    """
    A = list(lists)
    F: list[list[int]] = []
    to_a: list[list[int]] = []
    to_prev: list[list[int]] = []
    prev: list[int] = []
    for a in A:
        sampled = prev[1::2]
        cap = len(prev)
        if not sampled:
            f = list(a)
            to_a.append(list(range(len(a))))
            to_prev.append([min(1, cap)] * len(f))
        elif not a:
            f = sampled
            to_a.append([0] * len(f))
            to_prev.append(list(range(1, cap, 2)))
        else:
            f = a + sampled
            f.sort()  # two sorted runs, linear in practice
            to_a.append([bisect_left(a, v) for v in f])
            to_prev.append([min(2 * bisect_left(sampled, v) + 1, cap) for v in f])
        F.append(f)
        prev = f
        yield len(f) + 1
    return CascadeOverlay(A, F, to_a, to_prev)


def cascade_build(lists: Sequence[list[int]]) -> CascadeOverlay:
    steps = cascade_build_steps(lists)
    while True:
        try:
            next(steps)
        except StopIteration as stop:
            return stop.value


def cascade_search(
    ov: CascadeOverlay, x: int, i: int, k: int, stats: Optional[SearchStats] = None
) -> list[int]:
    """Successor positions of ``x`` in ``A[i], ..., A[i+k]``.

    Entry ``j`` of the result is the index of the first element >= x in
    ``A[i+j]`` (``len(A[i+j])`` when there is none).
    """
    F, to_a, to_prev, A = ov.F, ov.to_a, ov.to_prev, ov.A
    top = i + k
    out = [0] * (k + 1)
    f = F[top]
    s = bisect_left(f, x)
    comps = len(f).bit_length()
    out[k] = to_a[top][s] if s < len(f) else len(A[top])
    for j in range(top, i, -1):
        f_here = f
        f = F[j - 1]
        q = to_prev[j][s] if s < len(f_here) else len(f)
        # the sampled element two slots back is < x, so this walk is short
        while q > 0:
            comps += 1
            if f[q - 1] >= x:
                q -= 1
            else:
                break
        s = q
        out[j - 1 - i] = to_a[j - 1][s] if s < len(f) else len(A[j - 1])
    if stats is not None:
        stats.calls += 1
        stats.comparisons += comps
    return out


def cascade_successors(ov: CascadeOverlay, x: int, i: int, k: int) -> list[Optional[int]]:
    """Successor values (``None`` where absent) for ``A[i..i+k]``."""
    pos = cascade_search(ov, x, i, k)
    return [ov.A[i + j][p] if p < len(ov.A[i + j]) else None for j, p in enumerate(pos)]
