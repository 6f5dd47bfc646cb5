"""Admissible split ranges for stacking one strip under another.

For an upper strip ``(A, k)`` and a lower top set ``B`` with ``B <= A``, the
lower strips ``(B, i)`` that can sit directly underneath are exactly those
with ``p(A, B, k) <= i <= q(A, B, k)``, where

    p(A, B, k) = max({i in 1..n+1 : i < k, i not in A, i-1 in B} | {1})
    q(A, B, k) = min({i in 1..n+1 : i > k, i in B, i-1 not in A} | {n+1})

Sets are bit masks, square j on bit j-1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _check(A: int, B: int, n: int, k: int | None = None) -> None:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if A < 0 or A >> n or B < 0 or B >> n:
        raise ValueError(f"sets must be subsets of 1..{n}")
    if B & ~A:
        raise ValueError("B is not a subset of A; no strip indexed by B can sit under A")
    if k is not None and not 1 <= k <= n + 1:
        raise ValueError(f"split {k} is outside 1..{n + 1}")


def _has(mask: int, j: int) -> bool:
    return j >= 1 and bool(mask >> (j - 1) & 1)


def p_bound(A: int, B: int, k: int, n: int) -> int:
    """Smallest admissible split for a B-strip under ``(A, k)``."""
    _check(A, B, n, k)
    return max([i for i in range(1, n + 2) if i < k and not _has(A, i) and _has(B, i - 1)] + [1])


def q_bound(A: int, B: int, k: int, n: int) -> int:
    """Largest admissible split for a B-strip under ``(A, k)``."""
    _check(A, B, n, k)
    return min([i for i in range(1, n + 2) if i > k and _has(B, i) and not _has(A, i - 1)] + [n + 1])


@dataclass(frozen=True)
class BoundsProfile:
    """p and q for every split k; ``p[k - 1]`` holds p(A, B, k)."""

    n: int
    A: int
    B: int
    p: tuple[int, ...]
    q: tuple[int, ...]

    def interval(self, k: int) -> range:
        return range(self.p[k - 1], self.q[k - 1] + 1)


def trigger_masks(A: int, B: int, n: int) -> tuple[int, int]:
    """Bit masks over positions 1..n+1 (bit i-1) of the p- and q-trigger sets."""
    full = (1 << (n + 1)) - 1
    not_a = ~A & full  # position n+1 is never in A
    low = not_a & (B << 1)
    high = B & ((not_a << 1) | 1) & full
    return low, high


def bounds_profile(A: int, B: int, n: int) -> BoundsProfile:
    _check(A, B, n)
    low, high = trigger_masks(A, B, n)
    p = []
    best = 1
    for k in range(1, n + 2):
        p.append(best)
        if low >> (k - 1) & 1:
            best = k
    q = [0] * (n + 1)
    best = n + 1
    for k in range(n + 1, 0, -1):
        q[k - 1] = best
        if high >> (k - 1) & 1:
            best = k
    return BoundsProfile(n, A, B, tuple(p), tuple(q))


def bounds_arrays(A: np.ndarray, B: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`bounds_profile` over many (A, B) pairs at once.

    Returns ``(p, q)`` of shape ``(len(A), n + 1)``; column ``k - 1`` is split k.
    Inputs are assumed valid (``B & ~A == 0``).
    """
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    rows = A.shape[0]
    dtype = np.int16 if n < 32000 else np.int64
    p = np.empty((rows, n + 1), dtype=dtype)
    q = np.empty((rows, n + 1), dtype=dtype)

    best = np.ones(rows, dtype=dtype)
    for k in range(1, n + 2):
        p[:, k - 1] = best
        # k not in A, k-1 in B
        in_a = (A >> (k - 1)) & 1 if k <= n else np.zeros_like(A)
        prev_in_b = (B >> (k - 2)) & 1 if k >= 2 else np.zeros_like(B)
        np.copyto(best, k, where=(in_a == 0) & (prev_in_b == 1))

    best = np.full(rows, n + 1, dtype=dtype)
    for k in range(n + 1, 0, -1):
        q[:, k - 1] = best
        in_b = (B >> (k - 1)) & 1 if k <= n else np.zeros_like(B)
        prev_in_a = (A >> (k - 2)) & 1 if k >= 2 else np.zeros_like(A)
        np.copyto(best, k, where=(in_b == 1) & (prev_in_a == 0))
    return p, q
