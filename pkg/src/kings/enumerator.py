"""Explicit full-board arrangements built by stacking compatible strips."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from kings.bounds import bounds_profile
from kings.engine import count_kings_rect
from kings.oracle import DEFAULT_ENUMERATION_BUDGET, BoardGrid, EnumerationTooLarge
from kings.strips import StripIndex, all_strips, decode


@dataclass(frozen=True)
class BoardAssembly:
    n: int
    m: int
    strips: tuple[StripIndex, ...]  # top to bottom


def _submasks_ascending(A: int) -> list[int]:
    subs = []
    B = A
    while True:
        subs.append(B)
        if B == 0:
            break
        B = (B - 1) & A
    return subs[::-1]


def successors(s: StripIndex) -> list[StripIndex]:
    """Strips that can sit directly below ``s``, ordered by (mask, split)."""
    out = []
    for B in _submasks_ascending(s.top_set):
        prof = bounds_profile(s.top_set, B, s.n)
        out.extend(StripIndex(s.n, B, i) for i in prof.interval(s.split))
    return out


def enumerate_boards(n: int, m: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> Iterator[BoardAssembly]:
    """Lazily yield every m-strip stack on the 2m x 2n board.

    Raises :class:`EnumerationTooLarge` up front when the total exceeds ``budget``.
    """
    total = count_kings_rect(n, m).count
    if total > budget:
        raise EnumerationTooLarge(total, budget)
    return _walk(n, m)


def _walk(n, m):
    cache: dict[StripIndex, list[StripIndex]] = {}

    def below(s):
        if s not in cache:
            cache[s] = successors(s)
        return cache[s]

    def go(stack):
        if len(stack) == m:
            yield BoardAssembly(n, m, tuple(stack))
            return
        for t in below(stack[-1]):
            stack.append(t)
            yield from go(stack)
            stack.pop()

    for top in all_strips(n):
        yield from go([top])


def render(b: BoardAssembly) -> BoardGrid:
    cells = set()
    for j, s in enumerate(b.strips):
        cells.update((r + 2 * j, c) for r, c in decode(s).kings)
    return BoardGrid(2 * b.n, 2 * b.m, cells)
