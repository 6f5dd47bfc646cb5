"""Brute-force reference counts for nonattacking kings on arbitrary boards.

Nothing here knows about strips or split indices.  The board is swept row
by row; a row is a bit pattern of occupied columns, and the state carried
between rows is ``(pattern of the last row, kings placed so far)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterator

DEFAULT_MAX_WIDTH = 12
DEFAULT_ENUMERATION_BUDGET = 1_000_000


class EnumerationTooLarge(RuntimeError):
    def __init__(self, count, budget):
        super().__init__(f"enumeration would produce {count} boards, budget is {budget}")
        self.count = count
        self.budget = budget


@dataclass(frozen=True)
class BoardGrid:
    width: int
    height: int
    occupied: frozenset  # of (row, col), 1-indexed

    def __post_init__(self):
        object.__setattr__(self, "occupied", frozenset(self.occupied))
        for r, c in self.occupied:
            if not (1 <= r <= self.height and 1 <= c <= self.width):
                raise ValueError(f"cell ({r}, {c}) is off the {self.width}x{self.height} board")

    def is_independent(self) -> bool:
        cells = self.occupied
        for r, c in cells:
            for dr in (-1, 0, 1):
                for dc in (-1, 0, 1):
                    if (dr or dc) and (r + dr, c + dc) in cells:
                        return False
        return True

    def text(self) -> str:
        rows = [["."] * self.width for _ in range(self.height)]
        for r, c in self.occupied:
            rows[r - 1][c - 1] = "K"
        return "\n".join("".join(row) for row in rows)

    def cells(self) -> list[list[int]]:
        return [[r, c] for r, c in sorted(self.occupied)]


@dataclass(frozen=True)
class OracleResult:
    max_size: int
    count: int


def _row_patterns(width: int) -> list[int]:
    return [s for s in range(1 << width) if not s & (s >> 1)]


def _compatible(a: int, b: int) -> bool:
    return not b & (a | (a << 1) | (a >> 1))


def _check_dims(width, height, max_width):
    if width < 1 or height < 1:
        raise ValueError(f"board must be at least 1x1, got {width}x{height}")
    if width > max_width:
        raise ValueError(f"width {width} exceeds the oracle limit of {max_width}")


def _transitions(width):
    pats = _row_patterns(width)
    return pats, {a: [b for b in pats if _compatible(a, b)] for a in pats}


def oracle_count(width: int, height: int, max_width: int = DEFAULT_MAX_WIDTH) -> OracleResult:
    _check_dims(width, height, max_width)
    pats, nxt = _transitions(width)
    state: dict[tuple[int, int], int] = {(s, bin(s).count("1")): 1 for s in pats}
    for _ in range(height - 1):
        new: dict[tuple[int, int], int] = defaultdict(int)
        for (a, kings), ways in state.items():
            for b in nxt[a]:
                new[b, kings + bin(b).count("1")] += ways
        state = new
    by_size: dict[int, int] = defaultdict(int)
    for (_, kings), ways in state.items():
        by_size[kings] += ways
    top = max(by_size)
    return OracleResult(top, by_size[top])


def oracle_max_size(width: int, height: int, max_width: int = DEFAULT_MAX_WIDTH) -> int:
    return oracle_count(width, height, max_width).max_size


def oracle_enumerate(width: int, height: int, budget: int = DEFAULT_ENUMERATION_BUDGET,
                     max_width: int = DEFAULT_MAX_WIDTH) -> Iterator[BoardGrid]:
    """Every maximum placement, each exactly once, in lexicographic row-pattern order."""
    _check_dims(width, height, max_width)
    res = oracle_count(width, height, max_width)
    if res.count > budget:
        raise EnumerationTooLarge(res.count, budget)
    pats, nxt = _transitions(width)
    pop = {s: bin(s).count("1") for s in pats}

    # best[r][s]: most kings placeable in rows r.. given row r holds pattern s
    best = [dict.fromkeys(pats, 0) for _ in range(height)]
    for s in pats:
        best[height - 1][s] = pop[s]
    for r in range(height - 2, -1, -1):
        for s in pats:
            best[r][s] = pop[s] + max(best[r + 1][t] for t in nxt[s])

    def cells_of(rows):
        return {(r + 1, c + 1) for r, s in enumerate(rows) for c in range(width) if s >> c & 1}

    def walk(rows, placed):
        r = len(rows)
        if r == height:
            yield BoardGrid(width, height, cells_of(rows))
            return
        options = pats if r == 0 else nxt[rows[-1]]
        for s in options:
            if placed + best[r][s] == res.max_size:
                rows.append(s)
                yield from walk(rows, placed + pop[s])
                rows.pop()

    return walk([], 0)
