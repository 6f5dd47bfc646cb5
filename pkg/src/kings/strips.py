"""Encoding of maximum king arrangements on a 2 x 2n strip.

A strip is cut into n 2x2 squares numbered 1..n from the left, each holding
exactly one king.  An arrangement is named by a pair ``(A, k)``:

* ``A`` is the set of squares whose king sits in the top row, stored as an
  n-bit mask with square ``j`` on bit ``j - 1``;
* ``k`` is the split index, 1 <= k <= n + 1.  Squares ``< k`` hold their king
  in the left column, squares ``>= k`` in the right column.

Rows and columns are 1-indexed, row 1 being the top row.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator


def to_mask(squares: Iterable[int], n: int) -> int:
    """Pack 1-indexed square numbers into a bit mask, rejecting anything outside 1..n."""
    mask = 0
    for j in squares:
        if not 1 <= j <= n:
            raise ValueError(f"square {j} is outside 1..{n}")
        mask |= 1 << (j - 1)
    return mask


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def mirror_mask(mask: int, n: int) -> int:
    """Reflect a square set left to right: square j goes to n + 1 - j."""
    out = 0
    for j in range(n):
        if mask >> j & 1:
            out |= 1 << (n - 1 - j)
    return out


def chebyshev_independent(cells: Iterable[tuple[int, int]]) -> bool:
    """True when no two cells are within king distance of each other."""
    cells = list(cells)
    if len(set(cells)) != len(cells):
        return False
    for (r1, c1), (r2, c2) in combinations(cells, 2):
        if abs(r1 - r2) <= 1 and abs(c1 - c2) <= 1:
            return False
    return True


@dataclass(frozen=True, order=True)
class StripIndex:
    n: int
    top_set: int
    split: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"strip size must be positive, got {self.n}")
        if self.top_set < 0 or self.top_set >> self.n:
            raise ValueError(f"top set {self.top_set:#b} is not a subset of 1..{self.n}")
        if not 1 <= self.split <= self.n + 1:
            raise ValueError(f"split {self.split} is outside 1..{self.n + 1}")

    @classmethod
    def of(cls, n: int, squares: Iterable[int], split: int) -> StripIndex:
        return cls(n, to_mask(squares, n), split)

    @property
    def squares(self) -> tuple[int, ...]:
        return from_mask(self.top_set)

    def mirrored(self) -> StripIndex:
        return StripIndex(self.n, mirror_mask(self.top_set, self.n), self.n + 2 - self.split)

    def __str__(self):
        return "({%s}, %d)" % (",".join(map(str, self.squares)), self.split)


@dataclass(frozen=True)
class StripLayout:
    n: int
    kings: tuple[tuple[int, int], ...]

    def __post_init__(self):
        # canonical order: left to right, i.e. by square
        kings = sorted((tuple(c) for c in self.kings), key=lambda rc: (rc[1], rc[0]))
        object.__setattr__(self, "kings", tuple(kings))

    def text(self) -> str:
        return render_cells(self.kings, 2, 2 * self.n)


def render_cells(cells: Iterable[tuple[int, int]], height: int, width: int) -> str:
    """Text picture of a board: ``K`` for a king, ``.`` for an empty cell."""
    grid = [["."] * width for _ in range(height)]
    for r, c in cells:
        grid[r - 1][c - 1] = "K"
    return "\n".join("".join(row) for row in grid)


def all_strips(n: int) -> Iterator[StripIndex]:
    """Every strip index for size n, ordered by (mask value, split)."""
    for mask in range(1 << n):
        for k in range(1, n + 2):
            yield StripIndex(n, mask, k)


def decode(s: StripIndex) -> StripLayout:
    kings = []
    for j in range(1, s.n + 1):
        row = 1 if s.top_set >> (j - 1) & 1 else 2
        col = 2 * j - 1 if j < s.split else 2 * j
        kings.append((row, col))
    return StripLayout(s.n, tuple(kings))


def encode(layout: StripLayout) -> StripIndex:
    n = layout.n
    per_square: dict[int, list[tuple[int, int]]] = {}
    for row, col in layout.kings:
        if row not in (1, 2) or not 1 <= col <= 2 * n:
            raise ValueError(f"king at ({row}, {col}) lies outside the 2 x {2 * n} strip")
        per_square.setdefault((col + 1) // 2, []).append((row, col))
    mask = 0
    split = None
    for j in range(1, n + 1):
        cells = per_square.get(j, [])
        if len(cells) != 1:
            raise ValueError(f"square {j} holds {len(cells)} kings, expected exactly 1")
        row, col = cells[0]
        if row == 1:
            mask |= 1 << (j - 1)
        right = col == 2 * j
        if right and split is None:
            split = j
        elif not right and split is not None:
            raise ValueError(
                f"left-column king in square {j} follows a right-column king in square {split}; "
                "the two attack each other")
    return StripIndex(n, mask, n + 1 if split is None else split)


def compatible_by_grid(upper: StripIndex, lower: StripIndex) -> bool:
    """Stack ``lower`` directly under ``upper`` and test the 4 x 2n result cell by cell."""
    if upper.n != lower.n:
        raise ValueError(f"strip sizes differ: {upper.n} vs {lower.n}")
    cells = list(decode(upper).kings) + [(r + 2, c) for r, c in decode(lower).kings]
    return chebyshev_independent(cells)
